"""Quantum adjugate, antipode entries and rectangular quotients of F_n^θ.

Related tests: tests/matrices/test_antipode.py
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field

from src.core.errors import AlgebraError, VerificationError
from src.core.models.presentation import AlgebraPresentation, CommutationRelation
from src.core.scalars import ONE, PhaseScalar, phase_unit

from .minors import minor
from .qpolynomial import QMatrixContext, QPolynomial, localize_det

Matrix = tuple[tuple[QPolynomial, ...], ...]


def adjugate_phase(n: int, i: int, m: int) -> PhaseScalar:
    """(∏_{r≠m} q_rm)(∏_{c≠i} q_ic)."""

    phase = ONE
    for r in range(1, n + 1):
        if r != m:
            phase = phase * phase_unit(r, m)
        if r != i:
            phase = phase * phase_unit(i, r)
    return phase


def adjugate_entry(ctx: QMatrixContext, i: int, m: int) -> QPolynomial:
    """adj_im = (-1)^{i+m} (phase) Λ^{[n]∖m, [n]∖i}."""

    n = ctx.n
    rows = tuple(r for r in range(1, n + 1) if r != m)
    cols = tuple(c for c in range(1, n + 1) if c != i)
    coeff = adjugate_phase(n, i, m) * (-1) ** (i + m)
    return minor(ctx, rows, cols).scale(coeff)


def quantum_adjugate(ctx: QMatrixContext) -> Matrix:
    n = ctx.n
    return tuple(
        tuple(adjugate_entry(ctx, i, m) for m in range(1, n + 1)) for i in range(1, n + 1)
    )


def right_adjugate_entry(ctx: QMatrixContext, i: int, m: int) -> QPolynomial:
    """adj'_im = P_mi adj_im, so that Σ_i g_ki adj'_im = δ_km det.

    det is not central, so the left adjugate fails G·adj = det·Id. Moving det^{-1}
    across g_mi in G·S = I produces P_mi, and P_ki / P_mi does not depend on i.
    """

    return adjugate_entry(ctx, i, m).scale(ctx.permutability[ctx.index(m, i)])


def right_quantum_adjugate(ctx: QMatrixContext) -> Matrix:
    n = ctx.n
    return tuple(
        tuple(right_adjugate_entry(ctx, i, m) for m in range(1, n + 1)) for i in range(1, n + 1)
    )


def _complement(n: int, index: int) -> tuple[int, ...]:
    return tuple(value for value in range(1, n + 1) if value != index)


def _match_against_det(
    ctx: QMatrixContext, products: dict[tuple[int, int], QPolynomial]
) -> dict[tuple[int, int], PhaseScalar]:
    """Scalar c_key with Σ c_key * product_key = det, read off term by term."""

    det_terms = ctx.det.polynomial_terms()
    uncovered = set(det_terms)
    solved: dict[tuple[int, int], PhaseScalar] = {}
    for key, candidate in products.items():
        ratio: PhaseScalar | None = None
        for exps, coeff in candidate.polynomial_terms().items():
            if exps not in det_terms:
                raise VerificationError("Expansion term is not a det term", witness=(key, exps))
            found = det_terms[exps] * coeff.inverse()
            if ratio is not None and found != ratio:
                raise VerificationError(
                    "Expansion coefficients do not match det",
                    witness=(key, ratio.canonical(), found.canonical()),
                )
            ratio = found
            uncovered.discard(exps)
        if ratio is None:
            raise VerificationError("Expansion product vanishes", witness=key)
        solved[key] = ratio
    if uncovered:
        raise VerificationError("det terms not reached by the expansion", witness=sorted(uncovered)[:3])
    return solved


def solve_adjugate_coefficients(ctx: QMatrixContext, *, right: bool = False) -> dict[tuple[int, int], PhaseScalar]:
    """Match the column (left) or row (right) expansion of det against its terms.

    Returns c_im with adj_im = c_im Λ^{[n]∖m, [n]∖i}: for fixed i the left side
    solves Σ_m adj_im g_mi = det, for fixed m the right side solves
    Σ_i g_mi adj_im = det. No closed-form weight is used.
    """

    n = ctx.n
    solved: dict[tuple[int, int], PhaseScalar] = {}
    for outer in range(1, n + 1):
        products: dict[tuple[int, int], QPolynomial] = {}
        for inner in range(1, n + 1):
            i, m = (inner, outer) if right else (outer, inner)
            cofactor = minor(ctx, _complement(n, m), _complement(n, i))
            if right:
                products[(i, m)] = ctx.gen(m, i) * cofactor
            else:
                products[(i, m)] = cofactor * ctx.gen(m, i)
        solved.update(_match_against_det(ctx, products))
    return solved


def antipode_entry(ctx: QMatrixContext, i: int, j: int) -> QPolynomial:
    """S(g_ij) = det^{-1} adj_ij in the localized algebra."""

    return localize_det(adjugate_entry(ctx, i, j), 1)


def generator_matrix(ctx: QMatrixContext) -> Matrix:
    n = ctx.n
    return tuple(tuple(ctx.gen(i, j) for j in range(1, n + 1)) for i in range(1, n + 1))


def matrix_product(left: Matrix, right: Matrix, ctx: QMatrixContext) -> Matrix:
    size = len(left)
    out = []
    for i in range(size):
        row = []
        for j in range(size):
            total = ctx.zero()
            for k in range(size):
                total = total + left[i][k] * right[k][j]
            row.append(total)
        out.append(tuple(row))
    return tuple(out)


@dataclass
class AntipodeReport:
    n: int
    adjugate_left: bool = False
    adjugate_right: bool = False
    antipode_left: bool = False
    antipode_right: bool = False
    # G·adj = det·Id with the left adjugate; expected False for n ≥ 2.
    left_adjugate_two_sided: bool = False
    failures: list[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return self.adjugate_left and self.adjugate_right and self.antipode_left and self.antipode_right


def _is_scalar_matrix(product: Matrix, diagonal: QPolynomial, ctx: QMatrixContext) -> list[tuple[int, int]]:
    bad = []
    for i, j in itertools.product(range(ctx.n), repeat=2):
        expected = diagonal if i == j else ctx.zero()
        if product[i][j] != expected:
            bad.append((i + 1, j + 1))
    return bad


def antipode_checks(ctx: QMatrixContext) -> AntipodeReport:
    """adj·G = det·I, G·adj' = det·I, S·G = I and G·S = I."""

    report = AntipodeReport(n=ctx.n)
    generators = generator_matrix(ctx)
    adjugate = quantum_adjugate(ctx)
    antipode = tuple(tuple(localize_det(entry, 1) for entry in row) for row in adjugate)
    report.left_adjugate_two_sided = not _is_scalar_matrix(
        matrix_product(generators, adjugate, ctx), ctx.det, ctx
    )
    checks = (
        ("adj*G", matrix_product(adjugate, generators, ctx), ctx.det),
        ("G*adj'", matrix_product(generators, right_quantum_adjugate(ctx), ctx), ctx.det),
        ("S*G", matrix_product(antipode, generators, ctx), ctx.one()),
        ("G*S", matrix_product(generators, antipode, ctx), ctx.one()),
    )
    outcomes = []
    for label, product, diagonal in checks:
        bad = _is_scalar_matrix(product, diagonal, ctx)
        outcomes.append(not bad)
        report.failures.extend(f"{label}[{i},{j}]" for i, j in bad)
    report.adjugate_left, report.adjugate_right, report.antipode_left, report.antipode_right = outcomes
    return report


def verify_antipode(ctx: QMatrixContext) -> None:
    report = antipode_checks(ctx)
    if not report.ok:
        raise VerificationError("Antipode identities fail", witness=report.failures)


def rectangular_quotient(ctx: QMatrixContext, d: int) -> AlgebraPresentation:
    """F_n^θ / ⟨g_ij : i > d⟩ with the inherited commutation phases."""

    n = ctx.n
    if not 1 <= d < n:
        raise AlgebraError("rectangular_quotient requires 1 ≤ d < n", witness=(d, n))
    entries = [(i, j) for i in range(1, d + 1) for j in range(1, n + 1)]
    algebra = ctx.algebra
    names = tuple(f"g[{i},{j}]" for i, j in entries)
    relations = []
    for first, second in itertools.combinations(entries, 2):
        a, b = ctx.index(*first), ctx.index(*second)
        relations.append(
            CommutationRelation(algebra.names[a], algebra.names[b], algebra.phases[a][b])
        )
    return AlgebraPresentation(
        name=f"F_{n}^theta/rows>{d}",
        generators=names,
        commutation=tuple(relations),
        metadata={"rows": d, "columns": n},
    )
