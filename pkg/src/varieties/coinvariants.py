"""The η-coinvariant projector algebra of the tautological bundle.

Purpose: η_ij built from the antipode of F_n^θ[det^{-1}], its complement
η⊥ = Id - η and the rescaled η̂, together with the projector, commutation
and torus-weight checks.
Related tests: tests/varieties/test_coinvariants.py
"""

from __future__ import annotations

import itertools
import logging
from dataclasses import dataclass, field
from typing import Callable

from src.core.errors import AlgebraError
from src.core.models.identity import IdentityCheck
from src.core.scalars import ThetaSpec, k_coeff, phase_unit
from src.matrices.antipode import antipode_entry
from src.matrices.qpolynomial import QMatrixContext, QPolynomial

logger = logging.getLogger(__name__)

Grid = tuple[tuple[QPolynomial, ...], ...]
Product = Callable[[QPolynomial, QPolynomial], QPolynomial]


@dataclass(frozen=True)
class CoinvariantAlgebra:
    """η, η⊥, η̂ and η̂⊥ for Gr_θ(d; n), entries indexed from 0."""

    d: int
    n: int
    ctx: QMatrixContext
    eta: Grid
    eta_perp: Grid
    eta_hat: Grid
    eta_hat_perp: Grid

    def entry(self, name: str, i: int, j: int) -> QPolynomial:
        return getattr(self, name)[i - 1][j - 1]


def _grid(n: int, build: Callable[[int, int], QPolynomial]) -> Grid:
    return tuple(tuple(build(i, j) for j in range(1, n + 1)) for i in range(1, n + 1))


def eta_matrix(d: int, n: int, theta: ThetaSpec | None = None) -> CoinvariantAlgebra:
    """η̂_ij = Σ_{k≤d} S(g_ik) g_kj and η_ij = q_ij η̂_ij."""

    if not 1 <= d <= n:
        raise AlgebraError("eta_matrix requires 1 ≤ d ≤ n", witness=(d, n))
    ctx = QMatrixContext(n, theta)
    antipode = _grid(n, lambda i, k: antipode_entry(ctx, i, k))

    def partial(i: int, j: int, ks: range) -> QPolynomial:
        total = ctx.zero()
        for k in ks:
            total = total + antipode[i - 1][k - 1] * ctx.gen(k, j)
        return total

    eta_hat = _grid(n, lambda i, j: partial(i, j, range(1, d + 1)))
    eta_hat_perp = _grid(n, lambda i, j: partial(i, j, range(d + 1, n + 1)))
    eta = _grid(n, lambda i, j: eta_hat[i - 1][j - 1].scale(phase_unit(i, j)))
    eta_perp = _grid(
        n, lambda i, j: (ctx.one() if i == j else ctx.zero()) - eta[i - 1][j - 1]
    )
    logger.debug("Built η for Gr(%d;%d)", d, n)
    return CoinvariantAlgebra(
        d=d,
        n=n,
        ctx=ctx,
        eta=eta,
        eta_perp=eta_perp,
        eta_hat=eta_hat,
        eta_hat_perp=eta_hat_perp,
    )


@dataclass
class EtaReport:
    d: int
    n: int
    checks: list[IdentityCheck] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return all(check.passed for check in self.checks)

    @property
    def failures(self) -> list[IdentityCheck]:
        return [check for check in self.checks if not check.passed]


def _square(grid: Grid, other: Grid, ctx: QMatrixContext, multiply: Product, i: int, j: int) -> QPolynomial:
    total = ctx.zero()
    for m in range(len(grid)):
        total = total + multiply(grid[i][m], other[m][j])
    return total


def _deformed(left: QPolynomial, right: QPolynomial) -> QPolynomial:
    return left * right


def _untwisted(left: QPolynomial, right: QPolynomial) -> QPolynomial:
    return left.untwisted_mul(right)


def projector_checks(
    algebra: CoinvariantAlgebra,
    name: str,
    grid: Grid,
    other: Grid | None,
    multiply: Product,
    trace: int | None,
    *,
    informational: bool = False,
) -> list[IdentityCheck]:
    """grid² = grid (or grid·other = 0) entrywise, plus the trace when given."""

    ctx, n = algebra.ctx, algebra.n
    checks = []
    for i, j in itertools.product(range(n), repeat=2):
        if other is None:
            lhs, rhs = _square(grid, grid, ctx, multiply, i, j), grid[i][j]
        else:
            lhs, rhs = _square(grid, other, ctx, multiply, i, j), ctx.zero()
        checks.append(IdentityCheck(name, lhs, rhs, witness=(i + 1, j + 1), informational=informational))
    if trace is not None:
        total = ctx.zero()
        for i in range(n):
            total = total + grid[i][i]
        checks.append(IdentityCheck(f"trace({name})", total, ctx.one().scale(trace)))
    return checks


def commutation_checks(algebra: CoinvariantAlgebra, name: str, left: Grid, right: Grid) -> list[IdentityCheck]:
    """x_ij y_i'j' = K²_{ij;i'j'} y_i'j' x_ij for every pair of entries."""

    n = algebra.n
    checks = []
    entries = list(itertools.product(range(1, n + 1), repeat=2))
    for (i, j), (k, l) in itertools.product(entries, repeat=2):
        if left is right and (k, l) <= (i, j):
            continue
        x, y = left[i - 1][j - 1], right[k - 1][l - 1]
        rhs = (y * x).scale(k_coeff(i, j, k, l) ** 2)
        checks.append(IdentityCheck(name, x * y, rhs, witness=(i, j, k, l)))
    return checks


def weight_checks(algebra: CoinvariantAlgebra) -> list[IdentityCheck]:
    """H_a η_ij = (δ_aj - δ_ai) η_ij."""

    n = algebra.n
    checks = []
    for i, j in itertools.product(range(1, n + 1), repeat=2):
        entry = algebra.eta[i - 1][j - 1]
        if entry.is_zero():
            continue
        expected = tuple(int(a == j) - int(a == i) for a in range(1, n + 1))
        weight = entry.reduced().column_weight()
        checks.append(IdentityCheck("weight(eta)", weight, expected, witness=(i, j)))
    return checks


def eta_checks(algebra: CoinvariantAlgebra, *, commutation: bool = True) -> EtaReport:
    """Projector, commutation and weight identities of the coinvariant algebra.

    η and η⊥ are projectors for the undeformed product; η̂ and η̂⊥ for the
    deformed one. The deformed square of η is kept as a negative control.
    """

    d, n = algebra.d, algebra.n
    report = EtaReport(d=d, n=n)
    checks = report.checks
    checks.extend(projector_checks(algebra, "eta^2=eta", algebra.eta, None, _untwisted, d))
    checks.extend(
        projector_checks(algebra, "eta_perp^2=eta_perp", algebra.eta_perp, None, _untwisted, n - d)
    )
    checks.extend(projector_checks(algebra, "eta_hat^2=eta_hat", algebra.eta_hat, None, _deformed, d))
    checks.extend(
        projector_checks(
            algebra, "eta_hat_perp^2=eta_hat_perp", algebra.eta_hat_perp, None, _deformed, n - d
        )
    )
    checks.extend(
        projector_checks(algebra, "eta_hat*eta_hat_perp=0", algebra.eta_hat, algebra.eta_hat_perp, _deformed, None)
    )
    ctx = algebra.ctx
    for i, j in itertools.product(range(n), repeat=2):
        total = algebra.eta_hat[i][j] + algebra.eta_hat_perp[i][j]
        expected = ctx.one() if i == j else ctx.zero()
        checks.append(IdentityCheck("eta_hat+eta_hat_perp=Id", total, expected, witness=(i + 1, j + 1)))
    if commutation:
        checks.extend(commutation_checks(algebra, "eta*eta", algebra.eta, algebra.eta))
        checks.extend(commutation_checks(algebra, "eta*eta_perp", algebra.eta, algebra.eta_perp))
        checks.extend(commutation_checks(algebra, "eta_perp*eta_perp", algebra.eta_perp, algebra.eta_perp))
        checks.extend(commutation_checks(algebra, "eta_hat*eta_hat", algebra.eta_hat, algebra.eta_hat))
        checks.extend(
            commutation_checks(algebra, "eta_hat*eta_hat_perp", algebra.eta_hat, algebra.eta_hat_perp)
        )
    checks.extend(weight_checks(algebra))
    if d < n:
        checks.extend(
            projector_checks(
                algebra, "eta^2=eta (deformed)", algebra.eta, None, _deformed, None, informational=True
            )
        )
    logger.info(
        "η checks for Gr(%d;%d): %d identities, %d failures",
        d,
        n,
        len(checks),
        len(report.failures),
    )
    return report
