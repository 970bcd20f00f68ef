"""The quantum Laurent algebra with its phase-deformed star product.

Purpose: χ_p ⋆ χ_q = q^{ω(p,q)} χ_{p+q} where ω(p,q)_{ij} = p_i q_j - p_j q_i
for i < j, with every phase kept as an exact exponent vector.
Related tests: tests/toric/test_quantum_torus.py
"""

from __future__ import annotations

from functools import lru_cache
from typing import Iterator, Mapping, Sequence

from src.core.errors import AlgebraError
from src.core.scalars import ONE, ZERO, Exponents, PhaseScalar, pair_from_index, pair_count

from .lattice import LatticePoint


@lru_cache(maxsize=65536)
def skew_exponents(p: LatticePoint, q: LatticePoint) -> Exponents:
    """Exponents of ∏_{i<j} q_ij^{p_i q_j - p_j q_i}."""

    if len(p) != len(q):
        raise AlgebraError("Rank mismatch in skew pairing", witness=(p, q))
    out = []
    for index in range(pair_count(len(p))):
        i, j = pair_from_index(index)
        out.append(p[i - 1] * q[j - 1] - p[j - 1] * q[i - 1])
    while out and out[-1] == 0:
        out.pop()
    return tuple(out)


def skew_phase(p: LatticePoint, q: LatticePoint) -> PhaseScalar:
    return PhaseScalar.monomial(skew_exponents(tuple(p), tuple(q)))


class LaurentElement:
    """Finite sum Σ c_p χ_p in ℂ_θ(t_1, ..., t_n)."""

    __slots__ = ("rank", "_terms")

    def __init__(self, rank: int, terms: Mapping[Sequence[int], PhaseScalar] | None = None) -> None:
        self.rank = rank
        clean: dict[LatticePoint, PhaseScalar] = {}
        for point, coeff in (terms or {}).items():
            key = tuple(int(value) for value in point)
            if len(key) != rank:
                raise AlgebraError("Character has the wrong rank", witness=key)
            total = clean.get(key, ZERO) + coeff
            clean[key] = total
        self._terms = {key: value for key, value in clean.items() if not value.is_zero()}

    @classmethod
    def character(cls, point: Sequence[int], coeff: PhaseScalar = ONE) -> LaurentElement:
        return cls(len(point), {tuple(point): coeff})

    @classmethod
    def one(cls, rank: int) -> LaurentElement:
        return cls(rank, {(0,) * rank: ONE})

    def items(self) -> Iterator[tuple[LatticePoint, PhaseScalar]]:
        return iter(self._terms.items())

    @property
    def terms(self) -> dict[LatticePoint, PhaseScalar]:
        return dict(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def _check(self, other: LaurentElement) -> None:
        if self.rank != other.rank:
            raise AlgebraError("Rank mismatch", witness=(self.rank, other.rank))

    def __add__(self, other: LaurentElement) -> LaurentElement:
        self._check(other)
        out = dict(self._terms)
        for key, value in other._terms.items():
            out[key] = out.get(key, ZERO) + value
        return LaurentElement(self.rank, out)

    def __neg__(self) -> LaurentElement:
        return LaurentElement(self.rank, {k: -v for k, v in self._terms.items()})

    def __sub__(self, other: LaurentElement) -> LaurentElement:
        return self + (-other)

    def scale(self, scalar: PhaseScalar) -> LaurentElement:
        return LaurentElement(self.rank, {k: v * scalar for k, v in self._terms.items()})

    def __mul__(self, other: LaurentElement) -> LaurentElement:
        return star(self, other)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, LaurentElement):
            return NotImplemented
        return self.rank == other.rank and self._terms == other._terms

    def __hash__(self) -> int:
        return hash((self.rank, frozenset(self._terms.items())))

    def aligned(self, other: LaurentElement) -> list[tuple[PhaseScalar, PhaseScalar]]:
        self._check(other)
        keys = sorted(set(self._terms) | set(other._terms))
        return [(self._terms.get(k, ZERO), other._terms.get(k, ZERO)) for k in keys]

    def canonical(self) -> str:
        if not self._terms:
            return "0"
        pieces = []
        for point in sorted(self._terms):
            coeff = self._terms[point].canonical()
            label = "chi(" + ",".join(str(v) for v in point) + ")"
            pieces.append(label if coeff == "1" else f"({coeff})*{label}")
        return " + ".join(pieces)

    def __repr__(self) -> str:
        return f"LaurentElement({self.canonical()!r})"


def star(left: LaurentElement, right: LaurentElement) -> LaurentElement:
    """Bilinear extension of χ_p ⋆ χ_q = q^{ω(p,q)} χ_{p+q}."""

    left._check(right)
    out: dict[LatticePoint, PhaseScalar] = {}
    for p, left_coeff in left.items():
        for q, right_coeff in right.items():
            key = tuple(a + b for a, b in zip(p, q))
            coeff = (left_coeff * right_coeff).shifted(skew_exponents(p, q))
            out[key] = out.get(key, ZERO) + coeff
    return LaurentElement(left.rank, out)


def torus_generator(index: int, rank: int, power: int = 1) -> LaurentElement:
    """t_index^power as the character of power * e_index."""

    if not 1 <= index <= rank:
        raise AlgebraError("Torus generator index out of range", witness=index)
    point = [0] * rank
    point[index - 1] = power
    return LaurentElement.character(point)
