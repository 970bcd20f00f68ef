"""Tests for quasi-commutative normal ordering."""

# pylint: disable=import-error

from __future__ import annotations

import unittest

import pytest

from src.core.errors import AlgebraError
from src.core.scalars import ONE, PhaseScalar, phase_unit
from src.core.words import QuasiCommutativeAlgebra, QuasiPolynomial, phase_table, sum_polynomials

TC = unittest.TestCase()

Q12 = phase_unit(1, 2)
MINUS = PhaseScalar.constant(-1)


def _plane(**kwargs: object) -> QuasiCommutativeAlgebra:
    """x * y = q12^2 * y * x."""

    return QuasiCommutativeAlgebra(
        names=("x", "y"), phases=phase_table(2, lambda a, b: Q12**2), **kwargs
    )


def test_normal_form_collects_phase() -> None:
    algebra = _plane()
    phase, exps = algebra.normal_form([1, 0])
    TC.assertEqual(exps, (1, 1))
    TC.assertEqual(phase, Q12**-2)


def test_commutation_phase_matches_table() -> None:
    algebra = _plane()
    TC.assertEqual(algebra.commutation_phase((1, 0), (0, 1)), Q12**2)
    TC.assertEqual(algebra.commutation_phase((2, 0), (0, 3)), Q12**12)


def test_word_and_product_agree() -> None:
    algebra = _plane()
    x, y = algebra.generator(0), algebra.generator(1)
    TC.assertEqual(y * x * y, algebra.word([1, 0, 1]))
    TC.assertEqual((x * y).canonical(), "x*y")
    TC.assertEqual((y * x).canonical(), "q12^-2*x*y")


def test_multiplication_is_associative() -> None:
    algebra = _plane()
    x, y = algebra.generator(0), algebra.generator(1)
    a, b, c = x + y, y * y - x, x * y + algebra.one()
    TC.assertEqual((a * b) * c, a * (b * c))


def test_nilpotent_squares_vanish() -> None:
    exterior = QuasiCommutativeAlgebra(
        names=("e1", "e2"), phases=phase_table(2, lambda a, b: MINUS), nilpotent=True
    )
    e1, e2 = exterior.generator(0), exterior.generator(1)
    TC.assertTrue((e1 * e1).is_zero())
    TC.assertEqual(e2 * e1, -(e1 * e2))
    TC.assertTrue(exterior.word([0, 1, 0]).is_zero())


def test_negative_power_requires_invertible_generator() -> None:
    with pytest.raises(AlgebraError, match="Negative power"):
        _plane().normal_form([(0, -1)])
    localized = _plane(invertible=frozenset({0}))
    TC.assertEqual(localized.word([(0, 1), (0, -1)]), localized.one())


def test_phase_table_must_be_consistent() -> None:
    with pytest.raises(AlgebraError, match="mutually inverse"):
        QuasiCommutativeAlgebra(names=("x", "y"), phases=((ONE, Q12), (Q12, ONE)))
    with pytest.raises(AlgebraError, match="square"):
        QuasiCommutativeAlgebra(names=("x", "y"), phases=((ONE,),))


def test_operands_must_share_algebra() -> None:
    other = QuasiCommutativeAlgebra(names=("u", "v"), phases=phase_table(2, lambda a, b: ONE))
    with pytest.raises(AlgebraError, match="different algebras"):
        _ = _plane().generator(0) + other.generator(0)


def test_sum_and_canonical_ordering() -> None:
    algebra = _plane()
    total = sum_polynomials(algebra, [algebra.generator(0), algebra.generator(1)])
    TC.assertEqual(total.canonical(), "y + x")
    TC.assertEqual(QuasiPolynomial(algebra, {}).canonical(), "0")
    TC.assertEqual(total.degrees(), {1})
