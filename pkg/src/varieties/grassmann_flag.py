"""Noncommutative grassmannians and flag varieties.

Purpose: Plücker coordinates Λ^J as row-(1..d) minors of F_n^θ, the Θ-matrix
of the ambient projective space, Plücker and Young-symmetry relations with
their classification, grassmannian and flag presentations, and the defining
relations of the tautological bundle.
Related tests: tests/varieties/test_grassmann_flag.py
"""

from __future__ import annotations

import itertools
import logging
import math
from dataclasses import dataclass, field
from enum import Enum
from functools import cached_property
from typing import Mapping, Sequence

import numpy as np

from src.core.errors import AlgebraError
from src.core.models.presentation import (
    AlgebraPresentation,
    CommutationRelation,
    PolynomialRelation,
)
from src.core.scalars import (
    ONE,
    ZERO,
    PhaseScalar,
    ThetaSpec,
    pair_count,
    pair_from_index,
    pair_index,
    phase_unit,
    r_coeff,
)
from src.matrices.minors import minor, permutation_sign
from src.matrices.qpolynomial import QMatrixContext, QPolynomial
from src.toric.lattice import hermite_form, solve_integer

logger = logging.getLogger(__name__)

MultiIndex = tuple[int, ...]
TWO_PI = 2 * math.pi


@dataclass(frozen=True)
class PlueckerContext:
    """Plücker coordinates of sizes ``sizes`` inside F_n^θ."""

    n: int
    sizes: tuple[int, ...]
    theta: ThetaSpec | None = field(default=None, compare=False)

    def __post_init__(self) -> None:
        if not self.sizes:
            raise AlgebraError("PlueckerContext needs at least one size")
        if list(self.sizes) != sorted(set(self.sizes)):
            raise AlgebraError("Sizes must be strictly increasing", witness=self.sizes)
        if not all(1 <= d <= self.n for d in self.sizes):
            raise AlgebraError("Sizes must lie in 1..n", witness=(self.sizes, self.n))

    @classmethod
    def grassmannian(cls, d: int, n: int, theta: ThetaSpec | None = None) -> PlueckerContext:
        return cls(n=n, sizes=(d,), theta=theta)

    @classmethod
    def from_partition(cls, gamma: Sequence[int], theta: ThetaSpec | None = None) -> PlueckerContext:
        """Sizes d_i = γ_1 + ... + γ_i for i ≤ r, where γ = (γ_1, ..., γ_{r+1})."""

        parts = tuple(int(part) for part in gamma)
        if len(parts) < 2 or any(part < 1 for part in parts):
            raise AlgebraError("A flag partition needs at least two positive parts", witness=parts)
        sizes = tuple(itertools.accumulate(parts[:-1]))
        return cls(n=sum(parts), sizes=sizes, theta=theta)

    @cached_property
    def matrix(self) -> QMatrixContext:
        return QMatrixContext(self.n, self.theta)

    def generators(self, d: int) -> list[MultiIndex]:
        return list(itertools.combinations(range(1, self.n + 1), d))

    def all_generators(self) -> list[MultiIndex]:
        return [cols for d in self.sizes for cols in self.generators(d)]

    def coordinate(self, cols: Sequence[int]) -> QPolynomial:
        """Λ^J = minor((1..d), J)."""

        return minor(self.matrix, tuple(range(1, len(cols) + 1)), tuple(cols))

    @staticmethod
    def name(cols: Sequence[int]) -> str:
        return "L[" + ",".join(str(c) for c in cols) + "]"


def _check_same_length(cols: Sequence[int], cols_other: Sequence[int]) -> None:
    if len(cols) != len(cols_other):
        raise AlgebraError(
            "Θ requires multi-indices of equal length", witness=(tuple(cols), tuple(cols_other))
        )


def theta_capital(cols: Sequence[int], cols_other: Sequence[int]) -> PhaseScalar:
    """∏_{α,β} q_{j_α j'_β}, the phase of exp(iΘ^{JJ'}/2)."""

    _check_same_length(cols, cols_other)
    phase = ONE
    for a in cols:
        for b in cols_other:
            phase = phase * phase_unit(a, b)
    return phase


def theta_capital_value(cols: Sequence[int], cols_other: Sequence[int], theta: ThetaSpec) -> complex:
    """Θ^{JJ'} = Σ_{α,β} θ^{j_α j'_β}."""

    _check_same_length(cols, cols_other)
    matrix = theta.require_numeric()
    return complex(sum(matrix[a - 1, b - 1] for a in cols for b in cols_other))


def theta_capital_matrix(d: int, n: int, theta: ThetaSpec) -> np.ndarray:
    """Θ over the ordered generators of Gr(d; n)."""

    generators = list(itertools.combinations(range(1, n + 1), d))
    size = len(generators)
    out = np.zeros((size, size), dtype=complex)
    for a, b in itertools.product(range(size), repeat=2):
        out[a, b] = theta_capital_value(generators[a], generators[b], theta)
    return out


class RelationClass(Enum):
    TRIVIAL = "trivial"
    ALTERNATING = "alternating"
    STRUCTURE = "structure"
    PLUECKER = "pluecker"


@dataclass(frozen=True)
class RelationTerm:
    """coefficient * Λ^{left} Λ^{right} with unnormalized multi-indices."""

    coefficient: PhaseScalar
    left: MultiIndex
    right: MultiIndex

    @property
    def vanishes(self) -> bool:
        return len(set(self.left)) < len(self.left) or len(set(self.right)) < len(self.right)

    def normalized(self) -> tuple[PhaseScalar, MultiIndex, MultiIndex]:
        """Sort both multi-indices, absorbing the alternation signs."""

        sign = permutation_sign(self.left) * permutation_sign(self.right)
        return self.coefficient * sign, tuple(sorted(self.left)), tuple(sorted(self.right))


@dataclass(frozen=True)
class QuadraticRelation:
    """Σ c Λ^A Λ^B for a Plücker, Young or higher Plücker relation."""

    label: str
    context: PlueckerContext
    terms: tuple[RelationTerm, ...]

    @property
    def surviving(self) -> tuple[RelationTerm, ...]:
        return tuple(term for term in self.terms if not term.vanishes)

    @cached_property
    def polynomial(self) -> QPolynomial:
        ctx = self.context
        total = ctx.matrix.zero()
        for term in self.surviving:
            product = ctx.coordinate(term.left) * ctx.coordinate(term.right)
            total = total + product.scale(term.coefficient)
        return total

    def normalized_terms(self) -> dict[tuple[MultiIndex, MultiIndex], PhaseScalar]:
        out: dict[tuple[MultiIndex, MultiIndex], PhaseScalar] = {}
        for term in self.surviving:
            coeff, left, right = term.normalized()
            out[(left, right)] = out.get((left, right), ZERO) + coeff
        return {key: value for key, value in out.items() if not value.is_zero()}

    def support(self) -> frozenset[frozenset[MultiIndex]]:
        return frozenset(frozenset(key) for key in self.normalized_terms())

    def text(self) -> str:
        pieces = []
        for (left, right), coeff in sorted(self.normalized_terms().items()):
            body = f"{PlueckerContext.name(left)}*{PlueckerContext.name(right)}"
            text = coeff.canonical()
            if text == "1":
                pieces.append(body)
            elif " " in text:
                pieces.append(f"({text})*{body}")
            else:
                pieces.append(f"{text}*{body}")
        return " + ".join(pieces) or "0"


def _check_range(ctx: PlueckerContext, indices: Sequence[int]) -> None:
    for value in indices:
        if not 1 <= value <= ctx.n:
            raise AlgebraError("Multi-index entry out of range", witness=tuple(indices))


def young_relation(
    ctx: PlueckerContext, rows: Sequence[int], cols: Sequence[int], d: int, d_prime: int
) -> QuadraticRelation:
    """Σ_γ (-1)^{γ+1} ∏_μ q_{i_γ i^γ_μ} ∏_ν q_{i_γ j_ν} Λ^{I^γ} Λ^{i_γ ∪ J}.

    ``rows`` is the (d+1)-index I and ``cols`` the (d'-1)-index J.
    """

    if d < d_prime or len(rows) != d + 1 or len(cols) != d_prime - 1 or d_prime < 1:
        raise AlgebraError(
            "Young relation requires |I| = d+1, |J| = d'-1 and d ≥ d' ≥ 1",
            witness=(tuple(rows), tuple(cols), d, d_prime),
        )
    _check_range(ctx, rows)
    _check_range(ctx, cols)
    terms = []
    for gamma, pivot in enumerate(rows, start=1):
        rest = tuple(value for position, value in enumerate(rows, start=1) if position != gamma)
        coeff = PhaseScalar.constant((-1) ** (gamma + 1))
        for value in (*rest, *cols):
            coeff = coeff * phase_unit(pivot, value)
        terms.append(RelationTerm(coeff, rest, (pivot, *cols)))
    label = f"young{tuple(rows)}|{tuple(cols)}"
    return QuadraticRelation(label=label, context=ctx, terms=tuple(terms))


def pluecker_relation(ctx: PlueckerContext, rows: Sequence[int], cols: Sequence[int]) -> QuadraticRelation:
    """The r = 1 Plücker relation for |I| = d+1, |J| = d-1."""

    d = len(rows) - 1
    if d < 1 or len(cols) != d - 1:
        raise AlgebraError(
            "Plücker relation requires |I| = d+1 and |J| = d-1",
            witness=(tuple(rows), tuple(cols)),
        )
    relation = young_relation(ctx, rows, cols, d, d)
    return QuadraticRelation(
        label=f"pluecker{tuple(rows)}|{tuple(cols)}", context=ctx, terms=relation.terms
    )


def higher_pluecker_relation(
    ctx: PlueckerContext, rows: Sequence[int], cols: Sequence[int], r: int
) -> QuadraticRelation:
    """Σ_Ξ sign(Ξ) ∏_{y∈Ξ, x∈I∖Ξ} q_yx ∏_{y∈Ξ, j∈J} q_yj Λ^{I∖Ξ} Λ^{Ξ ∪ J}.

    Here |I| = d+r and |J| = d-r; the sum runs over r-subsets Ξ of positions
    in I. Not imposed in presentations.
    """

    d = len(rows) - r
    if r < 1 or d < r or len(cols) != d - r:
        raise AlgebraError(
            "Higher Plücker relation requires |I| = d+r, |J| = d-r and d ≥ r ≥ 1",
            witness=(tuple(rows), tuple(cols), r),
        )
    _check_range(ctx, rows)
    _check_range(ctx, cols)
    terms = []
    for chosen in itertools.combinations(range(len(rows)), r):
        picked = tuple(rows[position] for position in chosen)
        rest = tuple(value for position, value in enumerate(rows) if position not in chosen)
        order = [position for position in range(len(rows)) if position not in chosen]
        coeff = PhaseScalar.constant(permutation_sign([*order, *chosen]))
        for y in picked:
            for value in (*rest, *cols):
                coeff = coeff * phase_unit(y, value)
        terms.append(RelationTerm(coeff, rest, (*picked, *cols)))
    label = f"pluecker{r}{tuple(rows)}|{tuple(cols)}"
    return QuadraticRelation(label=label, context=ctx, terms=tuple(terms))


def classify_relation(relation: QuadraticRelation) -> RelationClass:
    """Classify by the terms left after dropping minors with repeated indices."""

    surviving = relation.surviving
    if len(surviving) >= 3:
        return RelationClass.PLUECKER
    if len(surviving) <= 1:
        return RelationClass.TRIVIAL
    first, second = (term.normalized()[1:] for term in surviving)
    if first == second:
        return RelationClass.ALTERNATING
    return RelationClass.STRUCTURE


def _quadratic_relations(
    ctx: PlueckerContext, d: int, d_prime: int
) -> list[QuadraticRelation]:
    """Plücker-class Young relations for (d, d'), one per support."""

    seen: set[frozenset[frozenset[MultiIndex]]] = set()
    out = []
    for rows in itertools.combinations(range(1, ctx.n + 1), d + 1):
        for cols in itertools.combinations(range(1, ctx.n + 1), d_prime - 1):
            if d == d_prime:
                relation = pluecker_relation(ctx, rows, cols)
            else:
                relation = young_relation(ctx, rows, cols, d, d_prime)
            if classify_relation(relation) is not RelationClass.PLUECKER:
                continue
            support = relation.support()
            if support in seen:
                continue
            seen.add(support)
            out.append(relation)
    return out


def _commutation(ctx: PlueckerContext) -> tuple[CommutationRelation, ...]:
    relations = []
    for first, second in itertools.combinations(ctx.all_generators(), 2):
        rows = tuple(range(1, len(first) + 1))
        rows_other = tuple(range(1, len(second) + 1))
        phase = r_coeff(rows, first, rows_other, second) ** 2
        relations.append(CommutationRelation(ctx.name(first), ctx.name(second), phase))
    return tuple(relations)


def pluecker_relations(d: int, n: int, theta: ThetaSpec | None = None) -> list[QuadraticRelation]:
    """Independent r = 1 Plücker relations of Gr(d; n), one per support."""

    ctx = PlueckerContext.grassmannian(d, n, theta)
    return [] if d + 1 > n else _quadratic_relations(ctx, d, d)


def grassmannian_algebra(d: int, n: int, theta: ThetaSpec | None = None) -> AlgebraPresentation:
    """Λ^J for increasing J with Λ^J Λ^{J'} = ∏ q²_{j_α j'_β} Λ^{J'} Λ^J and r = 1 Plücker relations."""

    ctx = PlueckerContext.grassmannian(d, n, theta)
    relations = pluecker_relations(d, n, theta)
    logger.debug("Gr(%d;%d): %d Plücker relations", d, n, len(relations))
    metadata = {"d": d, "n": n}
    if d == 1:
        metadata["dual"] = f"CP^{n - 1}"
    return AlgebraPresentation(
        name=f"Gr_theta({d};{n})",
        generators=tuple(ctx.name(cols) for cols in ctx.generators(d)),
        commutation=_commutation(ctx),
        relations=tuple(PolynomialRelation(rel.label, rel.text()) for rel in relations),
        metadata=metadata,
    )


def flag_algebra(gamma: Sequence[int], theta: ThetaSpec | None = None) -> AlgebraPresentation:
    """Coordinates of every size d_i with cross-size phases and Young relations."""

    ctx = PlueckerContext.from_partition(gamma, theta)
    relations: list[QuadraticRelation] = []
    for d, d_prime in itertools.combinations_with_replacement(ctx.sizes, 2):
        high, low = max(d, d_prime), min(d, d_prime)
        if high + 1 <= ctx.n:
            relations.extend(_quadratic_relations(ctx, high, low))
    truncations = {
        f"p{position}": [ctx.name(cols) for cols in ctx.generators(d)]
        for position, d in enumerate(ctx.sizes, start=1)
    }
    return AlgebraPresentation(
        name="Fl_theta(" + ",".join(str(part) for part in gamma) + ")",
        generators=tuple(ctx.name(cols) for cols in ctx.all_generators()),
        commutation=_commutation(ctx),
        relations=tuple(PolynomialRelation(rel.label, rel.text()) for rel in relations),
        metadata={"n": ctx.n, "sizes": list(ctx.sizes), "truncations": truncations},
    )


@dataclass(frozen=True)
class SectionRelation:
    """Σ_α (-1)^α ∏_β q_{j_α j^α_β} Λ^{J^α} w_{j_α} = 0 for one (d+1)-index J."""

    context: PlueckerContext
    cols: MultiIndex
    terms: tuple[tuple[PhaseScalar, MultiIndex, int], ...]

    def substitute(self, sections: Mapping[int, QPolynomial]) -> QPolynomial:
        total = self.context.matrix.zero()
        for coeff, minor_cols, index in self.terms:
            total = total + (self.context.coordinate(minor_cols) * sections[index]).scale(coeff)
        return total

    def text(self) -> str:
        pieces = []
        for coeff, minor_cols, index in self.terms:
            text = coeff.canonical()
            body = f"{PlueckerContext.name(minor_cols)}*w{index}"
            pieces.append(body if text == "1" else f"({text})*{body}")
        return " + ".join(pieces)


def taut_section_relations(d: int, n: int, theta: ThetaSpec | None = None) -> list[SectionRelation]:
    ctx = PlueckerContext.grassmannian(d, n, theta)
    out = []
    for cols in itertools.combinations(range(1, n + 1), d + 1):
        terms = []
        for alpha, pivot in enumerate(cols, start=1):
            rest = tuple(value for value in cols if value != pivot)
            coeff = PhaseScalar.constant((-1) ** alpha)
            for value in rest:
                coeff = coeff * phase_unit(pivot, value)
            terms.append((coeff, rest, pivot))
        out.append(SectionRelation(context=ctx, cols=cols, terms=tuple(terms)))
    return out


def row_sections(ctx: PlueckerContext, row: int) -> dict[int, QPolynomial]:
    """w_j = g_{row, j}; a solution whenever row ≤ d."""

    return {j: ctx.matrix.gen(row, j) for j in range(1, ctx.n + 1)}


def _embedding_system(d: int, n: int) -> tuple[list[tuple[MultiIndex, MultiIndex]], list[list[int]]]:
    """Integer matrix of Θ^{JJ'} = Σ θ^{j_α j'_β} over pairs J < J' and θ pairs a < b."""

    generators = list(itertools.combinations(range(1, n + 1), d))
    pairs = list(itertools.combinations(generators, 2))
    matrix = []
    for cols, cols_other in pairs:
        row = [0] * pair_count(n)
        for a in cols:
            for b in cols_other:
                if a < b:
                    row[pair_index(a, b)] += 1
                elif a > b:
                    row[pair_index(b, a)] -= 1
        matrix.append(row)
    return pairs, matrix


@dataclass
class EmbeddingResult:
    """A compatible θ (or integer θ exponents), or the equation that fails."""

    theta: ThetaSpec | None = None
    exponents: tuple[int, ...] | None = None
    witness: tuple[MultiIndex, MultiIndex] | None = None

    @property
    def compatible(self) -> bool:
        return self.witness is None and (self.theta is not None or self.exponents is not None)


def _theta_from_pairs(values: Sequence[complex], n: int) -> ThetaSpec:
    matrix = np.zeros((n, n), dtype=complex)
    for index, value in enumerate(values):
        a, b = pair_from_index(index)
        matrix[a - 1, b - 1] = value
        matrix[b - 1, a - 1] = -value
    return ThetaSpec.numeric(matrix)


def embedding_compatible(
    capital: np.ndarray, d: int, n: int, *, tolerance: float = 1e-9
) -> EmbeddingResult:
    """Solve Θ^{JJ'} ≡ Σ_{α,β} θ^{j_α j'_β} (mod 2π) for a skew θ."""

    values = np.asarray(capital, dtype=complex)
    if not np.allclose(values, -values.T, atol=tolerance):
        raise AlgebraError("Θ must be skew-symmetric")
    pairs, matrix = _embedding_system(d, n)
    generators = list(itertools.combinations(range(1, n + 1), d))
    position = {cols: index for index, cols in enumerate(generators)}
    target = np.array([values[position[a], position[b]] for a, b in pairs], dtype=complex)
    if not pairs or pair_count(n) == 0:
        if np.all(np.abs(np.exp(1j * target) - 1) < tolerance):
            return EmbeddingResult(theta=ThetaSpec.zero(n))
        return EmbeddingResult(witness=pairs[int(np.argmax(np.abs(target)))])
    reduced, transform = hermite_form(matrix)
    transformed = np.asarray(transform, dtype=float) @ target
    rank = sum(1 for row in reduced if any(row))
    for r in range(rank, len(reduced)):
        residual = transformed[r]
        winding = residual.real / TWO_PI
        if abs(residual.imag) > tolerance or abs(winding - round(winding)) > tolerance:
            weights = np.abs(np.asarray(transform[r], dtype=float))
            return EmbeddingResult(witness=pairs[int(np.argmax(weights))])
    top = np.asarray(reduced[:rank], dtype=float)
    solution, *_ = np.linalg.lstsq(top, transformed[:rank], rcond=None)
    return EmbeddingResult(theta=_theta_from_pairs(solution, n))


def embedding_compatible_exact(
    capital: Sequence[Sequence[int]], d: int, n: int
) -> EmbeddingResult:
    """Integer q-exponent version: Θ^{JJ'} = Σ θ^{j_α j'_β} exactly over ℤ."""

    pairs, matrix = _embedding_system(d, n)
    generators = list(itertools.combinations(range(1, n + 1), d))
    position = {cols: index for index, cols in enumerate(generators)}
    target = [int(capital[position[a]][position[b]]) for a, b in pairs]
    if not pairs:
        return EmbeddingResult(exponents=(0,) * pair_count(n))
    solution = solve_integer(matrix, target)
    if solution is not None:
        return EmbeddingResult(exponents=solution)
    reduced, transform = hermite_form(matrix)
    for r, row in enumerate(reduced):
        if any(row):
            continue
        if sum(u * t for u, t in zip(transform[r], target)):
            weights = [abs(value) for value in transform[r]]
            return EmbeddingResult(witness=pairs[weights.index(max(weights))])
    return EmbeddingResult(witness=pairs[0])
