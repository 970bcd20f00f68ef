"""Tests for quantum minors, determinants and their identities."""

# pylint: disable=import-error

from __future__ import annotations

import itertools
import unittest

import numpy as np
import pytest

from src.core.errors import AlgebraError
from src.core.scalars import ZERO, ThetaSpec, random_theta
from src.matrices.minors import (
    det_centrality_condition,
    det_commutator_residuals,
    det_permutability_check,
    epsilon_c,
    epsilon_r,
    laplace_col,
    laplace_row,
    leibniz_det,
    minor,
    minor_commutation_check,
    permutation_sign,
    qdet,
)
from src.matrices.qpolynomial import QMatrixContext

TC = unittest.TestCase()

CTX2 = QMatrixContext(2)
CTX3 = QMatrixContext(3)


def test_permutation_sign() -> None:
    TC.assertEqual(permutation_sign((1, 2, 3)), 1)
    TC.assertEqual(permutation_sign((2, 1, 3)), -1)
    TC.assertEqual(permutation_sign((3, 1, 2)), 1)
    TC.assertEqual(permutation_sign((1, 1)), 0)
    TC.assertEqual(permutation_sign(()), 1)


def test_levi_civita_symbols_vanish_on_repeats() -> None:
    TC.assertEqual(epsilon_c((2, 2)), ZERO)
    TC.assertEqual(epsilon_r((1, 3, 1)), ZERO)
    TC.assertEqual(epsilon_c((1, 2, 3)).canonical(), "1")


@pytest.mark.parametrize(
    "ctx",
    [CTX2, CTX3, pytest.param(QMatrixContext(4), marks=pytest.mark.slow)],
    ids=["n2", "n3", "n4"],
)
def test_qdet_matches_both_leibniz_forms(ctx: QMatrixContext) -> None:
    det = qdet(ctx)
    TC.assertEqual(det, leibniz_det(ctx))
    TC.assertEqual(det, leibniz_det(ctx, by_columns=True))


def test_minor_sign_and_repeats() -> None:
    TC.assertEqual(minor(CTX3, (2, 1), (1, 3)), -minor(CTX3, (1, 2), (1, 3)))
    TC.assertEqual(minor(CTX3, (1, 2), (3, 1)), -minor(CTX3, (1, 2), (1, 3)))
    TC.assertTrue(minor(CTX3, (1, 1), (1, 2)).is_zero())
    TC.assertEqual(minor(CTX3, (2,), (3,)), CTX3.gen(2, 3))
    TC.assertEqual(minor(CTX3, (), ()), CTX3.one())


def test_minor_validation() -> None:
    with pytest.raises(AlgebraError, match=r"\|I\| = \|J\|"):
        minor(CTX3, (1, 2), (1,))
    with pytest.raises(AlgebraError, match="out of range"):
        minor(CTX3, (1, 4), (1, 2))


@pytest.mark.parametrize("k", [1, 2, 3])
def test_laplace_expansions_of_det(k: int) -> None:
    full = (1, 2, 3)
    TC.assertEqual(laplace_row(CTX3, full, full, k), CTX3.det)
    TC.assertEqual(laplace_col(CTX3, full, full, k), CTX3.det)


def test_laplace_index_out_of_range() -> None:
    with pytest.raises(AlgebraError, match="Laplace"):
        laplace_row(CTX2, (1, 2), (1, 2), 3)


def test_single_entry_minors_commute_like_generators() -> None:
    for first, second in itertools.combinations(itertools.product((1, 2, 3), repeat=2), 2):
        TC.assertTrue(
            minor_commutation_check(CTX3, (first[0],), (first[1],), (second[0],), (second[1],))
        )


def test_two_by_two_minor_commutation() -> None:
    TC.assertTrue(minor_commutation_check(CTX3, (1, 2), (1, 2), (2, 3), (1, 3)))
    TC.assertTrue(minor_commutation_check(CTX3, (1, 3), (2, 3), (1, 2), (1, 2)))


@pytest.mark.parametrize(
    "ctx",
    [CTX2, CTX3, pytest.param(QMatrixContext(4), marks=pytest.mark.slow)],
    ids=["n2", "n3", "n4"],
)
def test_det_permutability(ctx: QMatrixContext) -> None:
    report = det_permutability_check(ctx)
    TC.assertTrue(report.ok, msg=str(report.results))
    TC.assertEqual(len(report.results), ctx.n * ctx.n)


def test_det_centrality_condition() -> None:
    TC.assertTrue(det_centrality_condition(ThetaSpec.zero(3)))
    upper = np.array([[0.0, 0.4, 0.0], [0.0, 0.0, 0.0], [0.0, 0.0, 0.0]])
    TC.assertFalse(det_centrality_condition(ThetaSpec.numeric(upper - upper.T)))


def test_det_is_central_at_zero_theta() -> None:
    residuals = det_commutator_residuals(CTX2, ThetaSpec.zero(2))
    TC.assertEqual(set(residuals), {(1, 1), (1, 2), (2, 1), (2, 2)})
    TC.assertTrue(all(value < 1e-12 for value in residuals.values()))


def _cyclic_theta(a: float) -> ThetaSpec:
    """θ12 = θ23 = -θ13 = a, which has equal column sums."""

    upper = np.array([[0.0, a, -a], [0.0, 0.0, a], [0.0, 0.0, 0.0]])
    return ThetaSpec.numeric(upper - upper.T)


def test_det_is_central_at_cyclic_theta() -> None:
    theta = _cyclic_theta(0.83)
    TC.assertTrue(det_centrality_condition(theta))
    residuals = det_commutator_residuals(CTX3, theta)
    TC.assertTrue(all(value < 1e-9 for value in residuals.values()), msg=residuals)


@pytest.mark.slow
def test_centrality_condition_matches_commutators_on_random_theta() -> None:
    rng = np.random.default_rng(11)
    verdicts = []
    for draw in range(20):
        theta = _cyclic_theta(float(rng.uniform(-3.0, 3.0))) if draw % 2 else random_theta(3, rng)
        central = max(det_commutator_residuals(CTX3, theta).values()) < 1e-9
        TC.assertEqual(central, det_centrality_condition(theta), msg=draw)
        verdicts.append(central)
    TC.assertEqual(verdicts.count(True), 10)
