"""Tests for braided Kähler differentials."""

# pylint: disable=import-error

from __future__ import annotations

import random
import unittest

import pytest

from src.core.errors import AlgebraError
from src.core.scalars import phase_unit
from src.toric.charts import chart_algebra
from src.toric.kaehler import differential, kaehler_relations, verify_leibniz
from src.toric.lattice_fans import Cone

TC = unittest.TestCase()

PLANE = chart_algebra(Cone.from_rays([(1, 0), (0, 1)]), label="plane")


def test_differential_of_product() -> None:
    """d(x1 x2) = q12^2 x2 dx1 + x1 dx2."""

    TC.assertEqual(differential(PLANE, (1, 1)).canonical(), "(q12^2)*x2*dx1 + x1*dx2")


def test_bimodule_relations() -> None:
    lines = [relation.text() for relation in kaehler_relations(PLANE).commutation]
    TC.assertIn("x1*dx2 = q12^2*dx2*x1", lines)
    TC.assertIn("x2*dx1 = q12^-2*dx1*x2", lines)


def test_leibniz_rule_on_random_monomials() -> None:
    report = verify_leibniz(PLANE, 25, random.Random(3))
    TC.assertTrue(report.ok, msg=str(report.failures))


def test_leibniz_rule_in_three_variables() -> None:
    chart = chart_algebra(Cone.from_rays([(1, 0, 0), (0, 1, 0), (0, 0, 1)]))
    TC.assertTrue(verify_leibniz(chart, 15, random.Random(5)).ok)


def test_charts_with_binomials_are_rejected() -> None:
    orbifold = chart_algebra(Cone.from_rays([(1, 0), (1, 2)]))
    with pytest.raises(AlgebraError, match="binomial"):
        differential(orbifold, (1, 0, 0))


def test_negative_powers_are_rejected() -> None:
    with pytest.raises(AlgebraError, match="negative"):
        differential(PLANE, (-1, 0))


def test_differential_of_constant_is_zero() -> None:
    TC.assertTrue(differential(PLANE, (0, 0), phase_unit(1, 2)).is_zero())
