"""Tests for the deformed matrix algebra and its localization at det."""

# pylint: disable=import-error

from __future__ import annotations

import itertools
import unittest

import pytest

from src.core.errors import AlgebraError
from src.core.scalars import phase_unit
from src.matrices.qpolynomial import (
    QMatrixContext,
    all_entries,
    localize_det,
    normalize,
    ore_product,
    ore_sum,
    product,
)

TC = unittest.TestCase()

CTX2 = QMatrixContext(2)


def test_generators_commute_up_to_q_squared() -> None:
    """g11 g12 = Q²_{11;12} g12 g11 with Q_{11;12} = q12."""

    g11, g12 = CTX2.gen(1, 1), CTX2.gen(1, 2)
    TC.assertEqual(g11 * g12, (g12 * g11).scale(phase_unit(1, 2) ** 2))
    TC.assertNotEqual(g11 * g12, g12 * g11)


def test_normalize_matches_product() -> None:
    word = [(2, 2), (1, 2), (2, 1), (1, 1)]
    TC.assertEqual(normalize(CTX2, word), product(CTX2, [CTX2.gen(i, j) for i, j in word]))
    TC.assertEqual(normalize(CTX2, [(1, 2, 3)]), CTX2.gen(1, 2) ** 3)


def test_multiplication_is_associative() -> None:
    g = {entry: CTX2.gen(*entry) for entry in all_entries(2)}
    a = g[(1, 1)] + g[(2, 2)]
    b = g[(1, 2)] * g[(2, 1)] - CTX2.one()
    c = g[(2, 1)] + g[(1, 2)].scale(3)
    TC.assertEqual((a * b) * c, a * (b * c))


def test_untwisted_product_is_commutative() -> None:
    for first, second in itertools.combinations(all_entries(2), 2):
        x, y = CTX2.gen(*first), CTX2.gen(*second)
        TC.assertEqual(x.untwisted_mul(y), y.untwisted_mul(x), msg=f"{first} {second}")


def test_localization_cancels_det() -> None:
    det = CTX2.det
    TC.assertEqual(localize_det(det, 1), CTX2.one())
    TC.assertEqual(localize_det(det, 1).reduced().canonical(), "1")
    TC.assertEqual(CTX2.det_symbol(2), det * det)


def test_ore_product_and_sum() -> None:
    det = CTX2.det
    TC.assertEqual(ore_product(1, det, 0, CTX2.one()), CTX2.one())
    TC.assertEqual(ore_sum(1, det, 2, det * det), CTX2.one().scale(2))


def test_det_crossing_moves_det_past_generators() -> None:
    det = CTX2.det
    for entry in all_entries(2):
        gen = CTX2.gen(*entry)
        crossing = CTX2.det_crossing(CTX2.algebra.basis_exponents(CTX2.index(*entry)))
        TC.assertEqual(det * gen, (gen * det).scale(crossing))


def test_bidegree_and_weights() -> None:
    TC.assertEqual(CTX2.gen(1, 2).bidegree(), ((1, 0), (0, 1)))
    TC.assertEqual(CTX2.gen(1, 2).column_weight(), (0, 1))
    TC.assertEqual(CTX2.det.bidegree(), ((1, 1), (1, 1)))
    with pytest.raises(AlgebraError, match="bihomogeneous"):
        (CTX2.gen(1, 1) + CTX2.gen(1, 2)).bidegree()


def test_canonical_text() -> None:
    TC.assertEqual(CTX2.one().canonical(), "1")
    TC.assertEqual(CTX2.zero().canonical(), "0")
    TC.assertEqual(CTX2.gen(1, 2).canonical(), "g[1,2]")


def test_context_validation() -> None:
    with pytest.raises(AlgebraError, match="positive"):
        QMatrixContext(0)
    with pytest.raises(AlgebraError, match="out of range"):
        CTX2.gen(3, 1)
    with pytest.raises(AlgebraError, match="Negative powers"):
        _ = CTX2.gen(1, 1) ** -1
    with pytest.raises(AlgebraError, match="different matrix algebras"):
        _ = CTX2.gen(1, 1) + QMatrixContext(3).gen(1, 1)
