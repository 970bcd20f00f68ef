"""Tests for the deformed Laurent algebra."""

# pylint: disable=import-error

from __future__ import annotations

import unittest

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from src.core.errors import AlgebraError
from src.core.scalars import ONE, PhaseScalar, phase_unit
from src.toric.quantum_torus import LaurentElement, skew_exponents, skew_phase, star, torus_generator

TC = unittest.TestCase()

_points = st.tuples(*[st.integers(min_value=-2, max_value=2)] * 3)
_coefficients = st.sampled_from(
    [ONE, PhaseScalar.constant(-2), phase_unit(1, 3), ONE + phase_unit(2, 3)]
)
_elements = st.dictionaries(_points, _coefficients, max_size=3).map(
    lambda terms: LaurentElement(3, terms)
)


def test_skew_exponents() -> None:
    TC.assertEqual(skew_exponents((1, 0), (0, 1)), (1,))
    TC.assertEqual(skew_exponents((1, 2, 0), (0, 1, 1)), (1, 1, 2))
    TC.assertEqual(skew_phase((2, -1), (0, 1)), phase_unit(1, 2) ** 2)


def test_generators_commute_up_to_q_squared() -> None:
    t1, t2 = torus_generator(1, 2), torus_generator(2, 2)
    TC.assertEqual(t1 * t2, (t2 * t1).scale(phase_unit(1, 2) ** 2))
    TC.assertEqual((t1 * t2).canonical(), "(q12)*chi(1,1)")


def test_inverse_characters() -> None:
    point = (2, -1, 3)
    product = LaurentElement.character(point) * LaurentElement.character((-2, 1, -3))
    TC.assertEqual(product, LaurentElement.one(3))


def test_rank_checks() -> None:
    with pytest.raises(AlgebraError, match="wrong rank"):
        LaurentElement(2, {(1, 0, 0): ONE})
    with pytest.raises(AlgebraError, match="Rank mismatch"):
        star(LaurentElement.one(2), LaurentElement.one(3))
    with pytest.raises(AlgebraError, match="out of range"):
        torus_generator(3, 2)


@settings(max_examples=50, deadline=None)
@given(_elements, _elements, _elements)
def test_star_is_associative_with_unit(
    a: LaurentElement, b: LaurentElement, c: LaurentElement
) -> None:
    TC.assertEqual((a * b) * c, a * (b * c))
    TC.assertEqual(a * LaurentElement.one(3), a)
    TC.assertEqual(LaurentElement.one(3) * a, a)
    TC.assertEqual(a * (b + c), a * b + a * c)
