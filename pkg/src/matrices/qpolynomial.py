"""Normal-ordered elements of F_n^θ, optionally localized at det_θ.

Purpose: Exact arithmetic in the quasi-commutative matrix algebra with
g_ij g_kl = Q²_{ij;kl} g_kl g_ij, with terms c * det^k * g^m stored in the
row-major normal order.
Related tests: tests/matrices/test_qpolynomial.py
"""

from __future__ import annotations

import itertools
import logging
from dataclasses import dataclass, field
from functools import cached_property, lru_cache
from typing import Iterable, Iterator, Mapping, Sequence

from src.core.errors import AlgebraError
from src.core.scalars import (
    ONE,
    ZERO,
    Exponents,
    PhaseScalar,
    ThetaSpec,
    add_exponents,
    q_coeff_exponents,
    scale_exponents,
)
from src.core.words import QuasiCommutativeAlgebra, phase_table
from src.toric.quantum_torus import skew_phase

logger = logging.getLogger(__name__)

Entry = tuple[int, int]
TermKey = tuple[int, Exponents]


@dataclass(frozen=True)
class QMatrixContext:
    """The algebra F_n^θ of an n×n deformed matrix of generators g_ij."""

    n: int
    theta: ThetaSpec | None = field(default=None, compare=False)

    def __post_init__(self) -> None:
        if self.n < 1:
            raise AlgebraError("QMatrixContext.n must be positive", witness=self.n)

    @property
    def size(self) -> int:
        return self.n * self.n

    def index(self, i: int, j: int) -> int:
        if not (1 <= i <= self.n and 1 <= j <= self.n):
            raise AlgebraError("Matrix entry out of range", witness=(i, j))
        return (i - 1) * self.n + (j - 1)

    def entry(self, index: int) -> Entry:
        return index // self.n + 1, index % self.n + 1

    @cached_property
    def algebra(self) -> QuasiCommutativeAlgebra:
        def phase(a: int, b: int) -> PhaseScalar:
            (i, j), (k, l) = self.entry(a), self.entry(b)
            return PhaseScalar.monomial(scale_exponents(q_coeff_exponents(i, j, k, l), 2))

        names = tuple(f"g[{i},{j}]" for i in range(1, self.n + 1) for j in range(1, self.n + 1))
        return QuasiCommutativeAlgebra(names=names, phases=phase_table(self.size, phase))

    @cached_property
    def permutability(self) -> tuple[PhaseScalar, ...]:
        """P_kl with det g_kl = P_kl g_kl det, i.e. ∏_i Q²_{ii;kl}."""

        out = []
        for index in range(self.size):
            k, l = self.entry(index)
            exps: Exponents = ()
            for i in range(1, self.n + 1):
                exps = add_exponents(exps, q_coeff_exponents(i, i, k, l))
            out.append(PhaseScalar.monomial(scale_exponents(exps, 2)))
        return tuple(out)

    def det_crossing(self, exps: Exponents) -> PhaseScalar:
        """P(m) with det * g^m = P(m) * g^m * det."""

        phase = ONE
        for index, power in enumerate(exps):
            if power:
                phase = phase * self.permutability[index] ** power
        return phase

    def zero(self) -> QPolynomial:
        return QPolynomial(self, {})

    def one(self) -> QPolynomial:
        return QPolynomial(self, {(0, self.algebra.zero_exponents()): ONE})

    def gen(self, i: int, j: int) -> QPolynomial:
        return QPolynomial(self, {(0, self.algebra.basis_exponents(self.index(i, j))): ONE})

    def monomial(self, exps: Sequence[int], coeff: PhaseScalar = ONE, det_power: int = 0) -> QPolynomial:
        key = tuple(exps)
        if len(key) != self.size or any(power < 0 for power in key):
            raise AlgebraError("Invalid monomial exponents", witness=key)
        return QPolynomial(self, {(det_power, key): coeff})

    def det_symbol(self, power: int) -> QPolynomial:
        """det_θ^power kept as a symbol; equal to the expanded power when power ≥ 0."""

        return QPolynomial(self, {(power, self.algebra.zero_exponents()): ONE})

    @cached_property
    def det(self) -> QPolynomial:
        from .minors import qdet

        return qdet(self)

    def det_power(self, power: int) -> dict[Exponents, PhaseScalar]:
        """Expanded polynomial terms of det^power for power ≥ 0."""

        return dict(_det_power_terms(self, power))

    def format_term(self, det_power: int, exps: Exponents) -> str:
        factors = []
        for index, power in enumerate(exps):
            if power:
                i, j = self.entry(index)
                factors.append(f"g[{i},{j}]" if power == 1 else f"g[{i},{j}]^{power}")
        if det_power:
            factors.append(f"det^{det_power}")
        return " * ".join(factors) or "1"


@lru_cache(maxsize=64)
def _det_power_terms(ctx: QMatrixContext, power: int) -> tuple[tuple[Exponents, PhaseScalar], ...]:
    if power < 0:
        raise AlgebraError("Only non-negative det powers expand", witness=power)
    if power == 0:
        return ((ctx.algebra.zero_exponents(), ONE),)
    logger.debug("Expanding det^%d in F_%d", power, ctx.n)
    previous = dict(_det_power_terms(ctx, power - 1))
    det_terms = ctx.det.polynomial_terms()
    return tuple(sorted(_poly_mul(ctx, previous, det_terms).items()))


def _poly_mul(
    ctx: QMatrixContext,
    left: Mapping[Exponents, PhaseScalar],
    right: Mapping[Exponents, PhaseScalar],
) -> dict[Exponents, PhaseScalar]:
    algebra = ctx.algebra
    out: dict[Exponents, PhaseScalar] = {}
    for left_exps, left_coeff in left.items():
        for right_exps, right_coeff in right.items():
            exps = tuple(a + b for a, b in zip(left_exps, right_exps))
            coeff = left_coeff * right_coeff * algebra.merge_phase(left_exps, right_exps)
            out[exps] = out.get(exps, ZERO) + coeff
    return {key: value for key, value in out.items() if not value.is_zero()}


def term_bidegree(ctx: QMatrixContext, det_power: int, exps: Exponents) -> tuple[tuple[int, ...], tuple[int, ...]]:
    rows = [det_power] * ctx.n
    cols = [det_power] * ctx.n
    for index, power in enumerate(exps):
        if power:
            i, j = ctx.entry(index)
            rows[i - 1] += power
            cols[j - 1] += power
    return tuple(rows), tuple(cols)


def twist_phase(
    left: tuple[tuple[int, ...], tuple[int, ...]],
    right: tuple[tuple[int, ...], tuple[int, ...]],
) -> PhaseScalar:
    """Ψ((a, b), (a', b')) = q^{ω(b, b') - ω(a, a')}; on generators Ψ(g_ij, g_kl) = Q_{ij;kl}."""

    return skew_phase(left[1], right[1]) * skew_phase(left[0], right[0]).inverse()


class QPolynomial:
    """Σ c * det^k * g^m in F_n^θ[det^{-1}]."""

    __slots__ = ("ctx", "_terms")

    def __init__(self, ctx: QMatrixContext, terms: Mapping[TermKey, PhaseScalar]) -> None:
        self.ctx = ctx
        self._terms = {key: value for key, value in terms.items() if not value.is_zero()}

    def items(self) -> Iterator[tuple[TermKey, PhaseScalar]]:
        return iter(self._terms.items())

    @property
    def terms(self) -> dict[TermKey, PhaseScalar]:
        return dict(self._terms)

    def polynomial_terms(self) -> dict[Exponents, PhaseScalar]:
        """Terms of a det-free element, expanding non-negative det powers."""

        base, terms = self._lowered(0)
        if base < 0:
            raise AlgebraError("Element involves negative det powers")
        return terms

    def _check(self, other: QPolynomial) -> None:
        if other.ctx != self.ctx:
            raise AlgebraError("Operands belong to different matrix algebras")

    def __add__(self, other: QPolynomial) -> QPolynomial:
        self._check(other)
        out = dict(self._terms)
        for key, value in other._terms.items():
            out[key] = out.get(key, ZERO) + value
        return QPolynomial(self.ctx, out)

    def __neg__(self) -> QPolynomial:
        return QPolynomial(self.ctx, {k: -v for k, v in self._terms.items()})

    def __sub__(self, other: QPolynomial) -> QPolynomial:
        return self + (-other)

    def scale(self, scalar: PhaseScalar | int) -> QPolynomial:
        factor = scalar if isinstance(scalar, PhaseScalar) else PhaseScalar.constant(scalar)
        return QPolynomial(self.ctx, {k: v * factor for k, v in self._terms.items()})

    def __mul__(self, other: QPolynomial) -> QPolynomial:
        """Deformed product; det^{k'} crosses g^m with the phase P(m)^{-k'}."""

        self._check(other)
        ctx = self.ctx
        algebra = ctx.algebra
        out: dict[TermKey, PhaseScalar] = {}
        for (k1, m1), c1 in self._terms.items():
            for (k2, m2), c2 in other._terms.items():
                exps = tuple(a + b for a, b in zip(m1, m2))
                coeff = c1 * c2 * algebra.merge_phase(m1, m2)
                if k2:
                    coeff = coeff * ctx.det_crossing(m1) ** (-k2)
                key = (k1 + k2, exps)
                out[key] = out.get(key, ZERO) + coeff
        return QPolynomial(ctx, out)

    def __pow__(self, power: int) -> QPolynomial:
        if power < 0:
            raise AlgebraError("Negative powers of general elements are not defined")
        result = self.ctx.one()
        for _ in range(power):
            result = result * self
        return result

    def untwisted_mul(self, other: QPolynomial) -> QPolynomial:
        """Product of the undeformed coordinate ring: x · y = Ψ(deg x, deg y)^{-1} x × y."""

        self._check(other)
        ctx = self.ctx
        out: dict[TermKey, PhaseScalar] = {}
        for (k1, m1), c1 in self._terms.items():
            left_degree = term_bidegree(ctx, k1, m1)
            for (k2, m2), c2 in other._terms.items():
                correction = twist_phase(left_degree, term_bidegree(ctx, k2, m2)).inverse()
                single = QPolynomial(ctx, {(k1, m1): c1}) * QPolynomial(ctx, {(k2, m2): c2})
                for key, value in single._terms.items():
                    out[key] = out.get(key, ZERO) + value * correction
        return QPolynomial(ctx, out)

    def _lowered(self, base: int) -> tuple[int, dict[Exponents, PhaseScalar]]:
        """Write the element as det^b * y with y det-free and b ≤ base."""

        lowest = min([base, *(k for k, _ in self._terms)])
        out: dict[Exponents, PhaseScalar] = {}
        for (k, m), coeff in self._terms.items():
            power = k - lowest
            if power == 0:
                out[m] = out.get(m, ZERO) + coeff
                continue
            expanded = _poly_mul(self.ctx, self.ctx.det_power(power), {m: coeff})
            for exps, value in expanded.items():
                out[exps] = out.get(exps, ZERO) + value
        return lowest, {key: value for key, value in out.items() if not value.is_zero()}

    def is_zero(self) -> bool:
        return not self._lowered(0)[1]

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, QPolynomial):
            return NotImplemented
        return self.ctx == other.ctx and (self - other).is_zero()

    __hash__ = None  # type: ignore[assignment]

    def reduced(self) -> QPolynomial:
        """Canonical representative: det-free when possible, else det^b * y with b maximal."""

        base, terms = self._lowered(0)
        while base < 0 and terms:
            quotient = _left_divide_by_det(self.ctx, terms)
            if quotient is None:
                break
            terms, base = quotient, base + 1
        if base >= 0:
            return QPolynomial(self.ctx, {(0, m): c for m, c in terms.items()})
        return QPolynomial(self.ctx, {(base, m): c for m, c in terms.items()})

    def aligned(self, other: QPolynomial) -> list[tuple[PhaseScalar, PhaseScalar]]:
        self._check(other)
        base = min([0, *(k for k, _ in self._terms), *(k for k, _ in other._terms)])
        _, left = self._lowered(base)
        _, right = other._lowered(base)
        keys = sorted(set(left) | set(right))
        return [(left.get(k, ZERO), right.get(k, ZERO)) for k in keys]

    def bidegree(self) -> tuple[tuple[int, ...], tuple[int, ...]]:
        """(row degrees, column degrees) of a homogeneous element."""

        n = self.ctx.n
        found = {term_bidegree(self.ctx, k, m) for (k, m) in self._terms}
        if len(found) > 1:
            raise AlgebraError("Element is not bihomogeneous", witness=sorted(found))
        if not found:
            return (0,) * n, (0,) * n
        return found.pop()

    def column_weight(self) -> tuple[int, ...]:
        """Eigenvalues of H_1..H_n, where H_a g_kl = δ_al g_kl."""

        return self.bidegree()[1]

    def canonical(self) -> str:
        reduced = self.reduced()
        if not reduced._terms:
            return "0"
        pieces = []
        for (k, m) in sorted(reduced._terms, key=lambda key: (key[0], key[1]), reverse=True):
            coeff = reduced._terms[(k, m)].canonical()
            body = self.ctx.format_term(k, m)
            if body == "1":
                pieces.append(coeff)
            elif coeff == "1":
                pieces.append(body)
            elif " " in coeff:
                pieces.append(f"({coeff}) * {body}")
            else:
                pieces.append(f"{coeff} * {body}")
        return " + ".join(pieces)

    def __repr__(self) -> str:
        return f"QPolynomial({self.canonical()!r})"


def _left_divide_by_det(
    ctx: QMatrixContext, terms: Mapping[Exponents, PhaseScalar]
) -> dict[Exponents, PhaseScalar] | None:
    """z with det * z = y, or None when det does not divide y."""

    det_terms = ctx.det.polynomial_terms()
    lead = max(det_terms)
    lead_coeff = det_terms[lead]
    if not lead_coeff.is_unit():
        return None
    remainder = dict(terms)
    quotient: dict[Exponents, PhaseScalar] = {}
    while remainder:
        top = max(remainder)
        shift = tuple(a - b for a, b in zip(top, lead))
        if any(value < 0 for value in shift):
            return None
        coeff = remainder[top] * (lead_coeff * ctx.algebra.merge_phase(lead, shift)).inverse()
        quotient[shift] = quotient.get(shift, ZERO) + coeff
        for exps, value in _poly_mul(ctx, det_terms, {shift: coeff}).items():
            remainder[exps] = remainder.get(exps, ZERO) - value
            if remainder[exps].is_zero():
                del remainder[exps]
    return quotient


def normalize(ctx: QMatrixContext, word: Sequence[Entry | tuple[int, int, int]]) -> QPolynomial:
    """Sort a word of entries g_ij (optionally g_ij^p as (i, j, p)) into normal order."""

    letters = []
    for letter in word:
        if len(letter) == 3:
            i, j, power = letter  # type: ignore[misc]
        else:
            (i, j), power = letter, 1  # type: ignore[misc]
        letters.append((ctx.index(i, j), power))
    phase, exps = ctx.algebra.normal_form(letters)
    return QPolynomial(ctx, {(0, exps): phase})


def product(ctx: QMatrixContext, factors: Iterable[QPolynomial]) -> QPolynomial:
    result = ctx.one()
    for factor in factors:
        result = result * factor
    return result


def localize_det(element: QPolynomial, power: int) -> QPolynomial:
    """det^{-power} * element."""

    return QPolynomial(
        element.ctx, {(k - power, m): c for (k, m), c in element.items()}
    )


def _move_right_of_det(element: QPolynomial, power: int) -> QPolynomial:
    """a' with a * det^{-power} = det^{-power} * a'."""

    ctx = element.ctx
    return QPolynomial(
        ctx, {(k, m): c * ctx.det_crossing(m) ** power for (k, m), c in element.items()}
    )


def ore_product(k1: int, a: QPolynomial, k2: int, b: QPolynomial) -> QPolynomial:
    """(det^{-k1} a)(det^{-k2} b) = det^{-(k1+k2)} a' b, a' moved across det^{-k2}."""

    moved = _move_right_of_det(a, k2)
    return localize_det(moved * b, k1 + k2)


def ore_sum(k1: int, a: QPolynomial, k2: int, b: QPolynomial) -> QPolynomial:
    """det^{-k1} a + det^{-k2} b over the common denominator det^{max}."""

    top = max(k1, k2)
    ctx = a.ctx
    left = ctx.det_symbol(top - k1) * a
    right = ctx.det_symbol(top - k2) * b
    return localize_det(left + right, top)


def all_entries(n: int) -> list[Entry]:
    return list(itertools.product(range(1, n + 1), repeat=2))
