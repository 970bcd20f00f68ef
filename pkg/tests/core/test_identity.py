"""Tests for identity checks."""

# pylint: disable=import-error

from __future__ import annotations

import unittest

import pytest

from src.core.models.identity import CheckStatus, IdentityCheck
from src.core.scalars import phase_unit

TC = unittest.TestCase()


def test_status_follows_exact_equality() -> None:
    q = phase_unit(1, 2)
    TC.assertIs(IdentityCheck("unit", q * q.inverse(), 1).status, CheckStatus.PASS)
    TC.assertIs(IdentityCheck("unit", q, 1).status, CheckStatus.FAIL)


def test_informational_checks_never_fail() -> None:
    check = IdentityCheck("control", 1, 2, informational=True)
    TC.assertIs(check.status, CheckStatus.INFO)
    TC.assertTrue(check.passed)


def test_label_appends_witness() -> None:
    TC.assertEqual(IdentityCheck("det", 1, 1, witness=(1, 2)).label(), "det(1, 2)")
    TC.assertEqual(IdentityCheck("det", 1, 1).label(), "det")


def test_identity_name_required() -> None:
    with pytest.raises(ValueError, match="identity"):
        IdentityCheck("", 1, 1)
