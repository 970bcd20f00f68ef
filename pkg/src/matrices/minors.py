"""Deformed Levi-Civita symbols, quantum minors and their identities.

Purpose: ε^{(r)}, ε^{(c)}, det_θ in both the symbol and the Leibniz form,
minors Λ^{IJ}, Laplace expansions, minor commutation and the
permutability and centrality of det_θ.
Related tests: tests/matrices/test_minors.py
"""

from __future__ import annotations

import itertools
import logging
import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Sequence

import numpy as np
from sympy.combinatorics import Permutation

from src.core.errors import AlgebraError
from src.core.scalars import ONE, ZERO, PhaseScalar, ThetaSpec, q_coeff, r_coeff, specialize

from .qpolynomial import QMatrixContext, QPolynomial, normalize

logger = logging.getLogger(__name__)

MultiIndex = tuple[int, ...]


def permutation_sign(sequence: Sequence[int]) -> int:
    """Sign of a sequence of distinct integers relative to sorted order, 0 on repeats."""

    if len(set(sequence)) != len(sequence):
        return 0
    ranks = sorted(range(len(sequence)), key=lambda position: sequence[position])
    return Permutation(ranks).signature() if sequence else 1


def epsilon_c(columns: Sequence[int]) -> PhaseScalar:
    """sgn(J) ∏_{α<β} Q_{β j_β; α j_α}."""

    sign = permutation_sign(columns)
    if sign == 0:
        return ZERO
    phase = PhaseScalar.constant(sign)
    for alpha, beta in itertools.combinations(range(len(columns)), 2):
        phase = phase * q_coeff(beta + 1, columns[beta], alpha + 1, columns[alpha])
    return phase


def epsilon_r(rows: Sequence[int]) -> PhaseScalar:
    """sgn(I) ∏_{α<β} Q_{i_β β; i_α α}."""

    sign = permutation_sign(rows)
    if sign == 0:
        return ZERO
    phase = PhaseScalar.constant(sign)
    for alpha, beta in itertools.combinations(range(len(rows)), 2):
        phase = phase * q_coeff(rows[beta], beta + 1, rows[alpha], alpha + 1)
    return phase


def _check_indices(ctx: QMatrixContext, indices: Sequence[int]) -> None:
    for value in indices:
        if not 1 <= value <= ctx.n:
            raise AlgebraError("Multi-index entry out of range", witness=tuple(indices))


@lru_cache(maxsize=4096)
def _minor(ctx: QMatrixContext, rows: MultiIndex, cols: MultiIndex) -> QPolynomial:
    size = len(rows)
    if size == 0:
        return ctx.one()
    sign = permutation_sign(rows) * permutation_sign(cols)
    if sign == 0:
        return ctx.zero()
    total = ctx.zero()
    for row_order in itertools.permutations(rows):
        row_symbol = epsilon_r(row_order)
        for col_order in itertools.permutations(cols):
            coeff = row_symbol * epsilon_c(col_order)
            word = normalize(ctx, list(zip(row_order, col_order)))
            total = total + word.scale(coeff)
    return total.scale(PhaseScalar.constant(Fraction(sign, math.factorial(size))))


def minor(ctx: QMatrixContext, rows: Sequence[int], cols: Sequence[int]) -> QPolynomial:
    """Λ^{IJ} = (1/d!) Σ ε^{(r)} ε^{(c)} g_{i_1 j_1} ⋯ g_{i_d j_d}.

    Reordering I or J changes the sign by the reordering permutation, and a
    repeated index gives zero.
    """

    if len(rows) != len(cols):
        raise AlgebraError("Minor requires |I| = |J|", witness=(tuple(rows), tuple(cols)))
    _check_indices(ctx, rows)
    _check_indices(ctx, cols)
    return _minor(ctx, tuple(rows), tuple(cols))


def qdet(ctx: QMatrixContext) -> QPolynomial:
    full = tuple(range(1, ctx.n + 1))
    return minor(ctx, full, full)


def leibniz_det(ctx: QMatrixContext, *, by_columns: bool = False) -> QPolynomial:
    """Σ_σ sgn(σ) (∏ Q) g_{1σ(1)} ⋯ g_{nσ(n)}, or the column-ordered variant."""

    n = ctx.n
    total = ctx.zero()
    for perm in itertools.permutations(range(1, n + 1)):
        sign = permutation_sign(perm)
        coeff = PhaseScalar.constant(sign)
        for alpha, beta in itertools.combinations(range(n), 2):
            if by_columns:
                coeff = coeff * q_coeff(perm[beta], beta + 1, perm[alpha], alpha + 1)
            else:
                coeff = coeff * q_coeff(beta + 1, perm[beta], alpha + 1, perm[alpha])
        if by_columns:
            word = [(perm[position], position + 1) for position in range(n)]
        else:
            word = [(position + 1, perm[position]) for position in range(n)]
        total = total + normalize(ctx, word).scale(coeff)
    return total


def _without(indices: Sequence[int], position: int) -> MultiIndex:
    return tuple(value for index, value in enumerate(indices) if index != position)


def laplace_row(ctx: QMatrixContext, rows: Sequence[int], cols: Sequence[int], k: int) -> QPolynomial:
    """Expansion of Λ^{IJ} along its k-th row (1-based position in I)."""

    size = len(rows)
    if len(cols) != size or not 1 <= k <= size:
        raise AlgebraError("Laplace expansion index out of range", witness=(k, size))
    row = rows[k - 1]
    rest_rows = _without(rows, k - 1)
    total = ctx.zero()
    for alpha in range(1, size + 1):
        col = cols[alpha - 1]
        rest_cols = _without(cols, alpha - 1)
        coeff = PhaseScalar.constant((-1) ** (k + alpha))
        for i, j in zip(rest_rows, rest_cols):
            coeff = coeff * q_coeff(i, j, row, col)
        term = ctx.gen(row, col) * minor(ctx, rest_rows, rest_cols)
        total = total + term.scale(coeff)
    return total


def laplace_col(ctx: QMatrixContext, rows: Sequence[int], cols: Sequence[int], k: int) -> QPolynomial:
    """Expansion of Λ^{IJ} along its k-th column (1-based position in J)."""

    size = len(rows)
    if len(cols) != size or not 1 <= k <= size:
        raise AlgebraError("Laplace expansion index out of range", witness=(k, size))
    col = cols[k - 1]
    rest_cols = _without(cols, k - 1)
    total = ctx.zero()
    for alpha in range(1, size + 1):
        row = rows[alpha - 1]
        rest_rows = _without(rows, alpha - 1)
        coeff = PhaseScalar.constant((-1) ** (k + alpha))
        for i, j in zip(rest_rows, rest_cols):
            coeff = coeff * q_coeff(i, j, row, col)
        term = ctx.gen(row, col) * minor(ctx, rest_rows, rest_cols)
        total = total + term.scale(coeff)
    return total


def transposed(indices: Sequence[int], alpha: int, beta: int) -> MultiIndex:
    """Swap the entries at 1-based positions alpha and beta."""

    values = list(indices)
    values[alpha - 1], values[beta - 1] = values[beta - 1], values[alpha - 1]
    return tuple(values)


def minor_commutation_sides(
    ctx: QMatrixContext,
    rows: Sequence[int],
    cols: Sequence[int],
    rows_other: Sequence[int],
    cols_other: Sequence[int],
) -> tuple[QPolynomial, QPolynomial]:
    """Λ^{IJ} Λ^{I'J'} and R²_{IJ;I'J'} Λ^{I'J'} Λ^{IJ}."""

    first = minor(ctx, rows, cols)
    second = minor(ctx, rows_other, cols_other)
    factor = r_coeff(rows, cols, rows_other, cols_other) ** 2
    return first * second, (second * first).scale(factor)


def minor_commutation_check(
    ctx: QMatrixContext,
    rows: Sequence[int],
    cols: Sequence[int],
    rows_other: Sequence[int],
    cols_other: Sequence[int],
) -> bool:
    lhs, rhs = minor_commutation_sides(ctx, rows, cols, rows_other, cols_other)
    return lhs == rhs


def det_permutability_sides(ctx: QMatrixContext, k: int, l: int) -> tuple[QPolynomial, QPolynomial]:
    """det_θ g_kl and (∏_i Q²_{ii;kl}) g_kl det_θ."""

    det = ctx.det
    factor = ONE
    for i in range(1, ctx.n + 1):
        factor = factor * q_coeff(i, i, k, l) ** 2
    gen = ctx.gen(k, l)
    return det * gen, (gen * det).scale(factor)


@dataclass
class PermutabilityReport:
    n: int
    results: dict[tuple[int, int], bool] = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return all(self.results.values())


def det_permutability_check(ctx: QMatrixContext) -> PermutabilityReport:
    report = PermutabilityReport(n=ctx.n)
    for k, l in itertools.product(range(1, ctx.n + 1), repeat=2):
        lhs, rhs = det_permutability_sides(ctx, k, l)
        report.results[(k, l)] = lhs == rhs
    logger.debug("det permutability n=%d: %s", ctx.n, report.ok)
    return report


def det_centrality_condition(theta: ThetaSpec, *, tolerance: float = 1e-9) -> bool:
    """Σ_k θ^{ki} ≡ Σ_k θ^{kj} (mod 2π) for all i, j."""

    matrix = theta.require_numeric()
    sums = matrix.sum(axis=0)
    phases = np.exp(1j * (sums - sums[0]))
    return bool(np.all(np.abs(phases - 1) < tolerance))


def det_commutator_residuals(ctx: QMatrixContext, theta: ThetaSpec) -> dict[tuple[int, int], float]:
    """max |coefficient| of det g_kl - g_kl det at a numeric θ, per entry."""

    det = ctx.det
    residuals = {}
    for k, l in itertools.product(range(1, ctx.n + 1), repeat=2):
        gen = ctx.gen(k, l)
        difference = det * gen - gen * det
        values = [abs(specialize(coeff, theta)) for _, coeff in difference.items()]
        residuals[(k, l)] = max(values, default=0.0)
    return residuals
