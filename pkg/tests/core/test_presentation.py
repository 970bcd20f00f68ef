"""Tests for algebra presentations."""

# pylint: disable=import-error

from __future__ import annotations

import json
import unittest

import pytest

from src.core.models.presentation import (
    AlgebraPresentation,
    BinomialRelation,
    CommutationRelation,
    PolynomialRelation,
)
from src.core.scalars import ONE, phase_unit

TC = unittest.TestCase()

Q12 = phase_unit(1, 2)


def _presentation() -> AlgebraPresentation:
    return AlgebraPresentation(
        name="sigma",
        generators=("x", "y", "z"),
        commutation=(CommutationRelation("x", "y", Q12**4), CommutationRelation("x", "z", ONE)),
        binomials=(BinomialRelation((("x", 1), ("y", 1)), (("z", 2),), Q12**2),),
        relations=(PolynomialRelation("r1", "x*y - z"),),
    )


def test_commutation_text() -> None:
    TC.assertEqual(CommutationRelation("x", "y", Q12**4).text(), "x*y = q12^4*y*x")
    TC.assertEqual(CommutationRelation("x", "z", ONE).text(), "x*z = z*x")


def test_binomial_text_signs() -> None:
    lhs, rhs = (("x", 1), ("y", 1)), (("z", 2),)
    TC.assertEqual(BinomialRelation(lhs, rhs, Q12**2).text(), "x*y - q12^2*z^2 = 0")
    TC.assertEqual(BinomialRelation(lhs, rhs, -Q12).text(), "x*y + q12*z^2 = 0")
    TC.assertEqual(BinomialRelation(lhs, rhs, ONE).text(), "x*y - z^2 = 0")


def test_phase_lookup_both_orders() -> None:
    presentation = _presentation()
    TC.assertEqual(presentation.phase("y", "x"), Q12**-4)
    TC.assertEqual(presentation.phase("y", "y"), ONE)
    with pytest.raises(KeyError):
        presentation.phase("y", "z")


def test_json_is_deterministic() -> None:
    first, second = _presentation().to_json(), _presentation().to_json()
    TC.assertEqual(first, second)
    data = json.loads(first)
    TC.assertEqual(data["commutation"][0], ["x", "y", "q12^4"])
    TC.assertEqual(data["binomials"][0]["text"], "x*y - q12^2*z^2 = 0")
    TC.assertEqual(data["relations"], [{"label": "r1", "text": "x*y - z"}])
    TC.assertNotIn("nilpotent", data)


def test_text_lines() -> None:
    lines = _presentation().text_lines()
    TC.assertEqual(lines[0], "sigma: generators x, y, z")
    TC.assertIn("  [r1] x*y - z = 0", lines)
