"""Quasi-commutative algebras and their normal-ordered polynomials.

Purpose: A single implementation of normal ordering for algebras whose
generators commute up to phase scalars, shared by chart algebras, the
homogeneous coordinate algebras of projective spaces and grassmannians, and
the phase-deformed exterior (Koszul dual) algebras.
Related tests: tests/core/test_words.py
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from typing import Any, Callable, Iterable, Iterator, Mapping, Sequence

from .errors import AlgebraError
from .scalars import ONE, ZERO, Exponents, PhaseScalar

Letter = int | tuple[int, int]


@dataclass(frozen=True)
class QuasiCommutativeAlgebra:
    """Generators x_a with x_a x_b = phases[a][b] x_b x_a.

    ``nilpotent`` algebras additionally impose x_a^2 = 0 (phase-deformed
    exterior algebras); ``invertible`` generators may carry negative
    exponents (Ore localization at normal elements).
    """

    names: tuple[str, ...]
    phases: tuple[tuple[PhaseScalar, ...], ...]
    nilpotent: bool = False
    invertible: frozenset[int] = field(default_factory=frozenset)

    def __post_init__(self) -> None:
        size = len(self.names)
        if len(self.phases) != size or any(len(row) != size for row in self.phases):
            raise AlgebraError("Phase table must be square", witness=size)
        for a in range(size):
            for b in range(a + 1, size):
                if self.phases[a][b] * self.phases[b][a] != ONE:
                    raise AlgebraError(
                        "Commutation phases must be mutually inverse", witness=(a, b)
                    )
                if not self.phases[a][b].is_unit():
                    raise AlgebraError(
                        "Commutation phases must be single terms", witness=(a, b)
                    )

    @property
    def size(self) -> int:
        return len(self.names)

    def zero_exponents(self) -> Exponents:
        return (0,) * self.size

    def basis_exponents(self, index: int, power: int = 1) -> Exponents:
        out = [0] * self.size
        out[index] = power
        return tuple(out)

    def merge_phase(self, left: Exponents, right: Exponents) -> PhaseScalar:
        """Phase c with X^left X^right = c X^(left+right) in normal order."""

        return _merge_phase(self.phases, left, right)

    def allows(self, exps: Exponents) -> bool:
        for index, power in enumerate(exps):
            if power < 0 and index not in self.invertible:
                return False
            if self.nilpotent and power > 1:
                return False
        return True

    def normal_form(self, word: Sequence[Letter]) -> tuple[PhaseScalar, Exponents]:
        """Normal-order a word of generators, optionally with integer powers.

        Letters are generator indices or ``(index, power)`` pairs. Returns the
        accumulated phase (zero when the word vanishes) and the exponents.
        """

        phase = ONE
        exps = self.zero_exponents()
        for letter in word:
            index, power = (letter, 1) if isinstance(letter, int) else letter
            if not 0 <= index < self.size:
                raise AlgebraError("Generator index out of range", witness=index)
            step = self.basis_exponents(index, power)
            phase = phase * self.merge_phase(exps, step)
            exps = tuple(a + b for a, b in zip(exps, step))
            if not self.allows(exps):
                if self.nilpotent and power > 0:
                    return ZERO, exps
                raise AlgebraError(
                    "Negative power of a non-invertible generator", witness=index
                )
        return phase, exps

    def monomial(self, exps: Sequence[int], coeff: PhaseScalar = ONE) -> QuasiPolynomial:
        key = tuple(exps)
        if len(key) != self.size:
            raise AlgebraError("Exponent vector has the wrong length", witness=key)
        if not self.allows(key):
            if self.nilpotent and all(value >= 0 for value in key):
                return QuasiPolynomial(self, {})
            raise AlgebraError("Exponents not allowed in this algebra", witness=key)
        return QuasiPolynomial(self, {key: coeff})

    def generator(self, index: int) -> QuasiPolynomial:
        return self.monomial(self.basis_exponents(index))

    def word(self, letters: Sequence[Letter]) -> QuasiPolynomial:
        phase, exps = self.normal_form(letters)
        if phase.is_zero():
            return QuasiPolynomial(self, {})
        return QuasiPolynomial(self, {exps: phase})

    def one(self) -> QuasiPolynomial:
        return QuasiPolynomial(self, {self.zero_exponents(): ONE})

    def commutation_phase(self, left: Exponents, right: Exponents) -> PhaseScalar:
        """c with X^left X^right = c X^right X^left."""

        return self.merge_phase(left, right) * self.merge_phase(right, left).inverse()

    def format_exponents(self, exps: Exponents) -> str:
        factors = []
        for index, power in enumerate(exps):
            if power == 0:
                continue
            name = self.names[index]
            factors.append(name if power == 1 else f"{name}^{power}")
        return "*".join(factors) or "1"


@lru_cache(maxsize=None)
def _merge_phase(
    phases: tuple[tuple[PhaseScalar, ...], ...], left: Exponents, right: Exponents
) -> PhaseScalar:
    phase = ONE
    for a, left_power in enumerate(left):
        if left_power == 0:
            continue
        for b in range(a):
            right_power = right[b]
            if right_power:
                phase = phase * phases[a][b] ** (left_power * right_power)
    return phase


class QuasiPolynomial:
    """Finite sum of normal-ordered monomials with phase-scalar coefficients."""

    __slots__ = ("algebra", "_terms")

    def __init__(
        self, algebra: QuasiCommutativeAlgebra, terms: Mapping[Exponents, PhaseScalar]
    ) -> None:
        self.algebra = algebra
        self._terms = {key: value for key, value in terms.items() if not value.is_zero()}

    def items(self) -> Iterator[tuple[Exponents, PhaseScalar]]:
        return iter(self._terms.items())

    @property
    def terms(self) -> dict[Exponents, PhaseScalar]:
        return dict(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def _check(self, other: QuasiPolynomial) -> None:
        if other.algebra != self.algebra:
            raise AlgebraError("Operands belong to different algebras")

    def __add__(self, other: QuasiPolynomial) -> QuasiPolynomial:
        self._check(other)
        out = dict(self._terms)
        for key, value in other._terms.items():
            out[key] = out.get(key, ZERO) + value
        return QuasiPolynomial(self.algebra, out)

    def __neg__(self) -> QuasiPolynomial:
        return QuasiPolynomial(self.algebra, {k: -v for k, v in self._terms.items()})

    def __sub__(self, other: QuasiPolynomial) -> QuasiPolynomial:
        return self + (-other)

    def scale(self, scalar: PhaseScalar) -> QuasiPolynomial:
        return QuasiPolynomial(
            self.algebra, {key: value * scalar for key, value in self._terms.items()}
        )

    def __mul__(self, other: QuasiPolynomial) -> QuasiPolynomial:
        self._check(other)
        algebra = self.algebra
        out: dict[Exponents, PhaseScalar] = {}
        for left_exps, left_coeff in self._terms.items():
            for right_exps, right_coeff in other._terms.items():
                exps = tuple(a + b for a, b in zip(left_exps, right_exps))
                if algebra.nilpotent and any(power > 1 for power in exps):
                    continue
                coeff = left_coeff * right_coeff * algebra.merge_phase(left_exps, right_exps)
                out[exps] = out.get(exps, ZERO) + coeff
        return QuasiPolynomial(algebra, out)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, QuasiPolynomial):
            return NotImplemented
        return self.algebra == other.algebra and self._terms == other._terms

    def __hash__(self) -> int:
        return hash(frozenset(self._terms.items()))

    def degrees(self) -> set[int]:
        return {sum(exps) for exps in self._terms}

    def weights(self, weight_of: Callable[[int], Sequence[int]]) -> set[tuple[int, ...]]:
        """Set of total weights of the terms under a per-generator weight map."""

        found: set[tuple[int, ...]] = set()
        for exps in self._terms:
            total: list[int] | None = None
            for index, power in enumerate(exps):
                if power == 0:
                    continue
                vector = weight_of(index)
                if total is None:
                    total = [0] * len(vector)
                for position, value in enumerate(vector):
                    total[position] += power * value
            found.add(tuple(total or ()))
        return found

    def substitute(self, images: Sequence[Any], one: Any) -> Any:
        """Evaluate in another algebra, generator a ↦ images[a] in index order."""

        total: Any = None
        for exps, coeff in sorted(self._terms.items()):
            value = one
            for index, power in enumerate(exps):
                for _ in range(power):
                    value = value * images[index]
            value = value.scale(coeff)
            total = value if total is None else total + value
        return total if total is not None else one.scale(ZERO)

    def aligned(self, other: QuasiPolynomial) -> list[tuple[PhaseScalar, PhaseScalar]]:
        self._check(other)
        keys = sorted(set(self._terms) | set(other._terms))
        return [(self._terms.get(k, ZERO), other._terms.get(k, ZERO)) for k in keys]

    def canonical(self) -> str:
        if not self._terms:
            return "0"
        pieces = []
        for exps in sorted(self._terms):
            coeff = self._terms[exps].canonical()
            monomial = self.algebra.format_exponents(exps)
            if monomial == "1":
                pieces.append(coeff)
            elif coeff == "1":
                pieces.append(monomial)
            elif " " in coeff:
                pieces.append(f"({coeff})*{monomial}")
            else:
                pieces.append(f"{coeff}*{monomial}")
        return " + ".join(pieces)

    def __repr__(self) -> str:
        return f"QuasiPolynomial({self.canonical()!r})"


def phase_table(
    size: int, phase_of: Callable[[int, int], PhaseScalar]
) -> tuple[tuple[PhaseScalar, ...], ...]:
    """Build a full phase table from a rule for pairs a < b."""

    rows: list[list[PhaseScalar]] = [[ONE] * size for _ in range(size)]
    for a in range(size):
        for b in range(a + 1, size):
            phase = phase_of(a, b)
            rows[a][b] = phase
            rows[b][a] = phase.inverse()
    return tuple(tuple(row) for row in rows)


def sum_polynomials(
    algebra: QuasiCommutativeAlgebra, items: Iterable[QuasiPolynomial]
) -> QuasiPolynomial:
    total = QuasiPolynomial(algebra, {})
    for item in items:
        total = total + item
    return total
