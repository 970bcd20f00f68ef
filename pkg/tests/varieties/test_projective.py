"""Tests for quantum projective spaces, their quotients and Koszul duals."""

# pylint: disable=import-error

from __future__ import annotations

import unittest

import pytest

from src.core.errors import AlgebraError
from src.varieties.projective import (
    chart_iso_check,
    frobenius_pairing_matrix,
    frobenius_pairing_rank,
    graded_dimension,
    grassmannian_variety,
    hilbert_series,
    koszul_dual,
    koszul_hilbert_series,
    localize_degree0,
    localized_phase,
    ore_commutation_phase,
    projective_fan,
    projective_space,
    quotient_variety,
    series_product_identity,
)

TC = unittest.TestCase()

PLANE = projective_space(2)


def test_projective_space_phases() -> None:
    TC.assertEqual(PLANE.names, ("w1", "w2", "w3"))
    presentation = PLANE.presentation()
    TC.assertEqual(presentation.phase("w1", "w2").canonical(), "q12^2")
    TC.assertEqual(presentation.phase("w1", "w3").canonical(), "1")
    TC.assertEqual(PLANE.weights[2], (0, 0))
    with pytest.raises(AlgebraError, match="n ≥ 1"):
        projective_space(0)
    with pytest.raises(AlgebraError, match="out of range"):
        PLANE.generator(4)


def test_free_hilbert_series() -> None:
    TC.assertEqual(hilbert_series(PLANE, 3), [1, 3, 6, 10])
    TC.assertEqual(graded_dimension(PLANE, -1), 0)


def test_quotient_by_central_generator() -> None:
    line = quotient_variety(PLANE, [PLANE.generator(3)], name="w3=0")
    TC.assertEqual(line.name, "w3=0")
    TC.assertEqual(graded_dimension(line, 2), 3)
    TC.assertEqual(len(line.presentation().relations), 1)


def test_quotient_rejects_inhomogeneous_relations() -> None:
    mixed = PLANE.generator(1) + PLANE.generator(1) * PLANE.generator(2)
    with pytest.raises(AlgebraError, match="homogeneous"):
        quotient_variety(PLANE, [mixed])
    weights_mixed = PLANE.generator(1) + PLANE.generator(2)
    with pytest.raises(AlgebraError, match="homogeneous"):
        quotient_variety(PLANE, [weights_mixed])


def test_grassmannian_graded_dimensions() -> None:
    TC.assertEqual(hilbert_series(grassmannian_variety(2, 4), 3), [1, 6, 20, 50])


def test_koszul_dual_dimensions() -> None:
    dual = koszul_dual(PLANE)
    TC.assertEqual(koszul_hilbert_series(dual, 4), [1, 3, 3, 1, 0])
    presentation = dual.presentation()
    TC.assertTrue(presentation.nilpotent)
    TC.assertEqual(presentation.phase("w1v", "w2v").canonical(), "-q12^2")


def test_koszul_dual_needs_free_algebra() -> None:
    line = quotient_variety(PLANE, [PLANE.generator(3)])
    with pytest.raises(AlgebraError, match="free quantum algebra"):
        koszul_dual(line)


def test_series_product_identity() -> None:
    check = series_product_identity(2, degree=6)
    TC.assertTrue(check.passed)
    TC.assertEqual(check.lhs, [1, 0, 0, 0, 0, 0, 0])


@pytest.mark.parametrize(("n", "k", "rank"), [(2, 1, 3), (2, 0, 1), (3, 2, 6)])
def test_frobenius_pairing_is_perfect(n: int, k: int, rank: int) -> None:
    TC.assertEqual(frobenius_pairing_rank(koszul_dual(projective_space(n)), k), rank)


def test_frobenius_pairing_range() -> None:
    with pytest.raises(AlgebraError, match="out of range"):
        frobenius_pairing_matrix(koszul_dual(PLANE), 4)


def test_localized_phase_matches_ore_formula() -> None:
    for index in (1, 2, 3):
        others = [k for k in (1, 2, 3) if k != index]
        TC.assertEqual(
            localized_phase(PLANE, index, *others),
            ore_commutation_phase(PLANE, index, *others),
            msg=f"index {index}",
        )
    TC.assertEqual(localized_phase(PLANE, 3, 1, 2).canonical(), "q12^2")


def test_localize_degree0_presentation() -> None:
    presentation = localize_degree0(PLANE, 3)
    TC.assertEqual(presentation.generators, ("y1", "y2"))
    TC.assertEqual(presentation.metadata["localized_at"], "w3")
    TC.assertEqual(presentation.metadata["weights"], {"y1": [1, 0], "y2": [0, 1]})
    with pytest.raises(AlgebraError, match="Localization index"):
        localize_degree0(PLANE, 5)


def test_projective_fan() -> None:
    fan = projective_fan(2)
    TC.assertEqual(len(fan.maximal_cones), 3)
    TC.assertTrue(fan.is_smooth())
    TC.assertNotIn((-1, -1), fan.cone_by_id("U3").rays)


@pytest.mark.parametrize("n", [2])
def test_charts_match_localizations(n: int) -> None:
    report = chart_iso_check(n)
    TC.assertTrue(report.ok, msg=[check.label() for check in report.checks if not check.passed])
