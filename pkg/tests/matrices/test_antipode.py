"""Tests for the quantum adjugate and antipode."""

# pylint: disable=import-error

from __future__ import annotations

import unittest

import pytest

from src.core.errors import AlgebraError
from src.core.scalars import ONE
from src.matrices.antipode import (
    adjugate_entry,
    adjugate_phase,
    antipode_checks,
    antipode_entry,
    generator_matrix,
    matrix_product,
    quantum_adjugate,
    rectangular_quotient,
    right_adjugate_entry,
    solve_adjugate_coefficients,
    verify_antipode,
)
from src.matrices.qpolynomial import QMatrixContext

TC = unittest.TestCase()


def test_adjugate_of_one_by_one_is_unit() -> None:
    ctx = QMatrixContext(1)
    TC.assertEqual(adjugate_entry(ctx, 1, 1), ctx.one())
    TC.assertEqual(adjugate_phase(1, 1, 1), ONE)


def test_antipode_identities_n2() -> None:
    report = antipode_checks(QMatrixContext(2))
    TC.assertTrue(report.ok, msg=str(report.failures))
    verify_antipode(QMatrixContext(2))


@pytest.mark.slow
def test_antipode_identities_n3() -> None:
    report = antipode_checks(QMatrixContext(3))
    TC.assertTrue(report.ok, msg=str(report.failures))


@pytest.mark.slow
def test_antipode_identities_n4() -> None:
    report = antipode_checks(QMatrixContext(4))
    TC.assertTrue(report.ok, msg=str(report.failures))


@pytest.mark.parametrize("n", [2, 3])
def test_solved_adjugate_coefficients_match_closed_form(n: int) -> None:
    ctx = QMatrixContext(n)
    left = solve_adjugate_coefficients(ctx)
    right = solve_adjugate_coefficients(ctx, right=True)
    TC.assertEqual(len(left), n * n)
    for i in range(1, n + 1):
        for m in range(1, n + 1):
            expected = adjugate_phase(n, i, m) * (-1) ** (i + m)
            TC.assertEqual(left[(i, m)], expected, msg=(i, m))
            TC.assertEqual(right[(i, m)], expected * ctx.permutability[ctx.index(m, i)], msg=(i, m))


def test_left_adjugate_is_one_sided_because_det_is_not_central() -> None:
    ctx = QMatrixContext(2)
    report = antipode_checks(ctx)
    TC.assertTrue(report.adjugate_right)
    TC.assertFalse(report.left_adjugate_two_sided)
    TC.assertNotEqual(ctx.permutability[ctx.index(1, 2)], ONE)
    product = matrix_product(generator_matrix(ctx), quantum_adjugate(ctx), ctx)
    TC.assertFalse(product[0][1].is_zero())
    TC.assertTrue(antipode_checks(QMatrixContext(1)).left_adjugate_two_sided)


def test_right_adjugate_rescales_by_permutability() -> None:
    ctx = QMatrixContext(2)
    TC.assertEqual(right_adjugate_entry(ctx, 1, 1), adjugate_entry(ctx, 1, 1))
    TC.assertEqual(
        right_adjugate_entry(ctx, 2, 1),
        adjugate_entry(ctx, 2, 1).scale(ctx.permutability[ctx.index(1, 2)]),
    )


def test_antipode_entry_is_localized() -> None:
    ctx = QMatrixContext(2)
    entry = antipode_entry(ctx, 1, 1)
    TC.assertEqual({k for (k, _), _ in entry.items()}, {-1})


def test_rectangular_quotient() -> None:
    presentation = rectangular_quotient(QMatrixContext(3), 1)
    TC.assertEqual(presentation.generators, ("g[1,1]", "g[1,2]", "g[1,3]"))
    TC.assertEqual(len(presentation.commutation), 3)
    TC.assertEqual(presentation.commutation[0].text(), "g[1,1]*g[1,2] = q12^2*g[1,2]*g[1,1]")
    with pytest.raises(AlgebraError, match="1 ≤ d < n"):
        rectangular_quotient(QMatrixContext(3), 3)
