"""Exact phase scalars for θ-deformed algebras.

Purpose: Represent every deformation coefficient as a Laurent polynomial in
the units q_ij = exp(iθ^{ij}/2) with rational coefficients, and specialize
such scalars at numeric θ for floating-point cross-checks.
Related tests: tests/core/test_scalars.py
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Iterable, Iterator, Literal, Mapping, Sequence

import numpy as np

from .errors import ScalarError

Exponents = tuple[int, ...]
Coefficient = int | Fraction

NUMERIC_TOLERANCE = 1e-9


def pair_index(i: int, j: int) -> int:
    """Return the position of the pair (i, j), 1 <= i < j, in colex order."""

    if not 1 <= i < j:
        raise ScalarError("pair_index requires 1 <= i < j", witness=(i, j))
    return (j - 1) * (j - 2) // 2 + (i - 1)


def pair_from_index(index: int) -> tuple[int, int]:
    """Inverse of :func:`pair_index`."""

    j = 2
    while (j - 1) * j // 2 <= index:
        j += 1
    i = index - (j - 1) * (j - 2) // 2 + 1
    return i, j


def pair_count(n: int) -> int:
    return n * (n - 1) // 2


def add_exponents(left: Exponents, right: Exponents) -> Exponents:
    """Add two exponent vectors and trim trailing zeros."""

    if len(left) < len(right):
        left, right = right, left
    if not right:
        return left
    out = list(left)
    for position, value in enumerate(right):
        out[position] += value
    while out and out[-1] == 0:
        out.pop()
    return tuple(out)


def scale_exponents(exps: Exponents, factor: int) -> Exponents:
    if factor == 0:
        return ()
    return tuple(value * factor for value in exps)


def unit_exponents(i: int, j: int, power: int = 1) -> Exponents:
    """Exponent vector of q_ij^power with q_ji = q_ij^{-1} and q_ii = 1."""

    if i == j or power == 0:
        return ()
    if i > j:
        i, j, power = j, i, -power
    out = [0] * (pair_index(i, j) + 1)
    out[-1] = power
    return tuple(out)


def _normalize_coefficient(value: Coefficient) -> Coefficient:
    if isinstance(value, Fraction) and value.denominator == 1:
        return value.numerator
    return value


def _trim(exps: Iterable[int]) -> Exponents:
    out = list(exps)
    while out and out[-1] == 0:
        out.pop()
    return tuple(out)


class PhaseScalar:
    """Element of ℚ[q_ij^{±1}] stored as {exponent vector: coefficient}."""

    __slots__ = ("_terms", "_hash")

    def __init__(
        self, terms: Mapping[Sequence[int], Coefficient] | None = None
    ) -> None:
        clean: dict[Exponents, Coefficient] = {}
        for exps, coeff in (terms or {}).items():
            key = _trim(exps)
            total = clean.get(key, 0) + coeff
            clean[key] = total
        self._terms: dict[Exponents, Coefficient] = {
            key: _normalize_coefficient(value)
            for key, value in clean.items()
            if value != 0
        }
        self._hash: int | None = None

    @classmethod
    def _from_clean(cls, terms: dict[Exponents, Coefficient]) -> PhaseScalar:
        scalar = cls.__new__(cls)
        scalar._terms = terms
        scalar._hash = None
        return scalar

    @classmethod
    def zero(cls) -> PhaseScalar:
        return cls._from_clean({})

    @classmethod
    def one(cls) -> PhaseScalar:
        return cls._from_clean({(): 1})

    @classmethod
    def constant(cls, value: Coefficient) -> PhaseScalar:
        if value == 0:
            return cls.zero()
        return cls._from_clean({(): _normalize_coefficient(value)})

    @classmethod
    def monomial(cls, exps: Sequence[int], coeff: Coefficient = 1) -> PhaseScalar:
        if coeff == 0:
            return cls.zero()
        return cls._from_clean({_trim(exps): _normalize_coefficient(coeff)})

    def items(self) -> Iterator[tuple[Exponents, Coefficient]]:
        return iter(self._terms.items())

    @property
    def terms(self) -> dict[Exponents, Coefficient]:
        return dict(self._terms)

    def __len__(self) -> int:
        return len(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def is_unit(self) -> bool:
        """True for a single nonzero term, the only invertible scalars."""

        return len(self._terms) == 1

    def exponent_length(self) -> int:
        return max((len(exps) for exps in self._terms), default=0)

    def leading_exponents(self) -> Exponents:
        if not self.is_unit():
            raise ScalarError("Scalar is not a single phase monomial", witness=str(self))
        return next(iter(self._terms))

    def __add__(self, other: object) -> PhaseScalar:
        other_scalar = _coerce(other)
        if other_scalar is None:
            return NotImplemented
        if not other_scalar._terms:
            return self
        if not self._terms:
            return other_scalar
        out = dict(self._terms)
        for exps, coeff in other_scalar._terms.items():
            total = out.get(exps, 0) + coeff
            if total == 0:
                out.pop(exps, None)
            else:
                out[exps] = _normalize_coefficient(total)
        return PhaseScalar._from_clean(out)

    __radd__ = __add__

    def __neg__(self) -> PhaseScalar:
        return PhaseScalar._from_clean(
            {exps: -coeff for exps, coeff in self._terms.items()}
        )

    def __sub__(self, other: object) -> PhaseScalar:
        other_scalar = _coerce(other)
        if other_scalar is None:
            return NotImplemented
        return self + (-other_scalar)

    def __rsub__(self, other: object) -> PhaseScalar:
        other_scalar = _coerce(other)
        if other_scalar is None:
            return NotImplemented
        return other_scalar + (-self)

    def __mul__(self, other: object) -> PhaseScalar:
        other_scalar = _coerce(other)
        if other_scalar is None:
            return NotImplemented
        if not self._terms or not other_scalar._terms:
            return PhaseScalar.zero()
        out: dict[Exponents, Coefficient] = {}
        for left_exps, left_coeff in self._terms.items():
            for right_exps, right_coeff in other_scalar._terms.items():
                key = add_exponents(left_exps, right_exps)
                out[key] = out.get(key, 0) + left_coeff * right_coeff
        return PhaseScalar._from_clean(
            {
                key: _normalize_coefficient(value)
                for key, value in out.items()
                if value != 0
            }
        )

    __rmul__ = __mul__

    def shifted(self, exps: Exponents, coeff: Coefficient = 1) -> PhaseScalar:
        """Multiply by the unit ``coeff * q^exps``."""

        if coeff == 0:
            return PhaseScalar.zero()
        if not exps and coeff == 1:
            return self
        return PhaseScalar._from_clean(
            {
                add_exponents(key, exps): _normalize_coefficient(value * coeff)
                for key, value in self._terms.items()
            }
        )

    def inverse(self) -> PhaseScalar:
        if not self.is_unit():
            raise ScalarError(
                "Only single-term phase scalars are invertible", witness=str(self)
            )
        exps, coeff = next(iter(self._terms.items()))
        return PhaseScalar._from_clean(
            {scale_exponents(exps, -1): _normalize_coefficient(Fraction(1) / coeff)}
        )

    def __pow__(self, power: int) -> PhaseScalar:
        if power < 0:
            return self.inverse() ** (-power)
        if self.is_unit():
            exps, coeff = next(iter(self._terms.items()))
            return PhaseScalar._from_clean(
                {
                    scale_exponents(exps, power): _normalize_coefficient(
                        Fraction(coeff) ** power
                    )
                }
            )
        result = PhaseScalar.one()
        for _ in range(power):
            result = result * self
        return result

    def __eq__(self, other: object) -> bool:
        other_scalar = _coerce(other)
        if other_scalar is None:
            return NotImplemented
        return self._terms == other_scalar._terms

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(frozenset(self._terms.items()))
        return self._hash

    def evaluate(self, values: Sequence[Any]) -> Any:
        """Substitute ``values[pair_index]`` for each q_ij and sum the terms."""

        total: Any = 0
        for exps, coeff in self._terms.items():
            term: Any = coeff
            for position, power in enumerate(exps):
                if power:
                    term = term * values[position] ** power
            total = total + term
        return total

    def canonical(self) -> str:
        """Canonical text form such as ``q12^2*q13^-1`` or ``1 - q12^2``."""

        if not self._terms:
            return "0"
        pieces = [
            _format_term(exps, self._terms[exps]) for exps in sorted(self._terms)
        ]
        text = pieces[0]
        for piece in pieces[1:]:
            if piece.startswith("-"):
                text += " - " + piece[1:]
            else:
                text += " + " + piece
        return text

    def __str__(self) -> str:
        return self.canonical()

    def __repr__(self) -> str:
        return f"PhaseScalar({self.canonical()!r})"


def _coerce(value: object) -> PhaseScalar | None:
    if isinstance(value, PhaseScalar):
        return value
    if isinstance(value, (int, Fraction)) and not isinstance(value, bool):
        return PhaseScalar.constant(value)
    return None


def _pair_name(index: int) -> str:
    i, j = pair_from_index(index)
    if i < 10 and j < 10:
        return f"q{i}{j}"
    return f"q{i}_{j}"


def format_monomial(exps: Exponents) -> str:
    factors = []
    for position, power in enumerate(exps):
        if power == 0:
            continue
        name = _pair_name(position)
        factors.append(name if power == 1 else f"{name}^{power}")
    return "*".join(factors)


def _format_term(exps: Exponents, coeff: Coefficient) -> str:
    monomial = format_monomial(exps)
    if not monomial:
        return str(coeff)
    if coeff == 1:
        return monomial
    if coeff == -1:
        return "-" + monomial
    return f"{coeff}*{monomial}"


ONE = PhaseScalar.one()
ZERO = PhaseScalar.zero()


def _check_index(value: int, n: int | None) -> None:
    if value < 1 or (n is not None and value > n):
        raise ScalarError("Phase index out of range", witness=(value, n))


def phase_unit(i: int, j: int, *, n: int | None = None) -> PhaseScalar:
    """q_ij, normalized so that q_ii = 1 and q_ji = q_ij^{-1}."""

    _check_index(i, n)
    _check_index(j, n)
    return PhaseScalar.monomial(unit_exponents(i, j))


def q_exponents(i: int, j: int, power: int = 1) -> Exponents:
    """Unchecked exponent vector of q_ij^power for hot loops."""

    return unit_exponents(i, j, power)


def q_coeff(i: int, j: int, k: int, l: int, *, n: int | None = None) -> PhaseScalar:
    """Q_{ij;kl} = q_ki q_jl."""

    for index in (i, j, k, l):
        _check_index(index, n)
    return PhaseScalar.monomial(add_exponents(unit_exponents(k, i), unit_exponents(j, l)))


def q_coeff_exponents(i: int, j: int, k: int, l: int) -> Exponents:
    return add_exponents(unit_exponents(k, i), unit_exponents(j, l))


def r_coeff(
    rows: Sequence[int],
    cols: Sequence[int],
    rows_other: Sequence[int],
    cols_other: Sequence[int],
) -> PhaseScalar:
    """R_{IJ;I'J'} = ∏_{α,α'} Q_{i_α j_α; i'_α' j'_α'}."""

    if len(rows) != len(cols) or len(rows_other) != len(cols_other):
        raise ScalarError(
            "r_coeff requires |I| = |J| and |I'| = |J'|",
            witness=(tuple(rows), tuple(cols), tuple(rows_other), tuple(cols_other)),
        )
    exps: Exponents = ()
    for i, j in zip(rows, cols):
        for k, l in zip(rows_other, cols_other):
            exps = add_exponents(exps, q_coeff_exponents(i, j, k, l))
    return PhaseScalar.monomial(exps)


def k_coeff(i: int, j: int, i2: int, j2: int, *, n: int | None = None) -> PhaseScalar:
    """K_{ij;i'j'} = q_ii' q_j'i q_i'j q_jj'."""

    for index in (i, j, i2, j2):
        _check_index(index, n)
    exps = add_exponents(unit_exponents(i, i2), unit_exponents(j2, i))
    exps = add_exponents(exps, unit_exponents(i2, j))
    exps = add_exponents(exps, unit_exponents(j, j2))
    return PhaseScalar.monomial(exps)


@dataclass(frozen=True)
class ThetaSpec:
    """Deformation parameters: symbolic, or a numeric complex skew matrix."""

    n: int
    mode: Literal["symbolic", "numeric"] = "symbolic"
    numeric_values: np.ndarray | None = field(default=None, compare=False)

    def __post_init__(self) -> None:
        if self.n < 1:
            raise ScalarError("ThetaSpec.n must be positive", witness=self.n)
        if self.mode not in ("symbolic", "numeric"):
            raise ScalarError("ThetaSpec.mode must be symbolic or numeric")
        if self.mode == "symbolic":
            return
        if self.numeric_values is None:
            raise ScalarError("Numeric ThetaSpec requires a matrix")
        matrix = np.asarray(self.numeric_values, dtype=complex)
        if matrix.shape != (self.n, self.n):
            raise ScalarError(
                "θ matrix shape does not match n", witness=(matrix.shape, self.n)
            )
        if not np.allclose(matrix, -matrix.T, atol=1e-12):
            bad = np.argwhere(~np.isclose(matrix, -matrix.T, atol=1e-12))[0]
            raise ScalarError(
                "θ must be skew-symmetric",
                witness=(int(bad[0]) + 1, int(bad[1]) + 1),
            )
        object.__setattr__(self, "numeric_values", matrix)

    @classmethod
    def symbolic(cls, n: int) -> ThetaSpec:
        return cls(n=n)

    @classmethod
    def numeric(cls, matrix: Any) -> ThetaSpec:
        array = np.asarray(matrix, dtype=complex)
        if array.ndim != 2:
            raise ScalarError("θ must be a square matrix", witness=array.shape)
        return cls(n=array.shape[0], mode="numeric", numeric_values=array)

    @classmethod
    def zero(cls, n: int) -> ThetaSpec:
        return cls.numeric(np.zeros((n, n), dtype=complex))

    @classmethod
    def from_json(cls, data: Mapping[str, Any]) -> ThetaSpec:
        """Parse ``{"n": int, "theta": [[[re, im], ...], ...]}``.

        Plain real entries are accepted in place of ``[re, im]`` pairs.
        """

        try:
            n = int(data["n"])
            rows = data["theta"]
        except (KeyError, TypeError, ValueError) as exc:
            raise ScalarError("θ JSON requires 'n' and 'theta'") from exc
        if not isinstance(rows, list) or len(rows) != n:
            raise ScalarError("θ JSON must hold an n×n matrix", witness=n)
        matrix = np.zeros((n, n), dtype=complex)
        for a, row in enumerate(rows):
            if not isinstance(row, list) or len(row) != n:
                raise ScalarError("θ JSON row has the wrong length", witness=a + 1)
            for b, entry in enumerate(row):
                matrix[a, b] = _parse_complex(entry)
        return cls(n=n, mode="numeric", numeric_values=matrix)

    def to_json(self) -> dict[str, Any]:
        if self.numeric_values is None:
            return {"n": self.n, "mode": "symbolic"}
        return {
            "n": self.n,
            "theta": [
                [[float(value.real), float(value.imag)] for value in row]
                for row in self.numeric_values
            ],
        }

    def require_numeric(self) -> np.ndarray:
        if self.mode != "numeric" or self.numeric_values is None:
            raise ScalarError("Operation requires a numeric θ")
        return self.numeric_values

    def pair_angles(self, length: int | None = None) -> np.ndarray:
        """θ^{ij} for the first ``length`` pairs i<j in colex order (all pairs by default)."""

        matrix = self.require_numeric()
        size = pair_count(self.n)
        total = size if length is None else length
        if total > size:
            raise ScalarError(
                "Phase involves pairs beyond the θ matrix", witness={"pairs": total, "theta_n": self.n}
            )
        angles = np.zeros(total, dtype=complex)
        for index in range(total):
            i, j = pair_from_index(index)
            angles[index] = matrix[i - 1, j - 1]
        return angles

    def embedded(self, size: int) -> ThetaSpec:
        """Block embedding diag(θ, 0) into a larger torus."""

        if size < self.n:
            raise ScalarError("Cannot embed θ into a smaller torus", witness=size)
        if self.numeric_values is None:
            return ThetaSpec.symbolic(size)
        matrix = np.zeros((size, size), dtype=complex)
        matrix[: self.n, : self.n] = self.numeric_values
        return ThetaSpec.numeric(matrix)

    def leading(self, size: int) -> ThetaSpec:
        """The leading size×size block, θ restricted to the first ``size`` coordinates."""

        if not 1 <= size <= self.n:
            raise ScalarError("Cannot restrict θ to a larger torus", witness=(size, self.n))
        if self.numeric_values is None:
            return ThetaSpec.symbolic(size)
        return ThetaSpec.numeric(self.numeric_values[:size, :size])


def _parse_complex(entry: Any) -> complex:
    if isinstance(entry, (int, float)) and not isinstance(entry, bool):
        return complex(entry)
    if isinstance(entry, list) and len(entry) == 2:
        return complex(float(entry[0]), float(entry[1]))
    raise ScalarError("θ entries must be numbers or [re, im] pairs", witness=entry)


def specialize(scalar: PhaseScalar, theta: ThetaSpec) -> complex:
    """Evaluate ``scalar`` with q_ij = exp((i/2)θ^{ij})."""

    angles = theta.pair_angles(scalar.exponent_length())
    total = 0j
    for exps, coeff in scalar.items():
        phase = np.dot(np.asarray(exps, dtype=float), angles[: len(exps)]) if exps else 0
        total += float(coeff) * complex(np.exp(0.5j * phase))
    return total


def random_theta(
    n: int, rng: np.random.Generator, *, imaginary: float = 0.0
) -> ThetaSpec:
    """Draw a skew θ with entries in (-π, π] plus an optional imaginary part."""

    upper = rng.uniform(-math.pi, math.pi, size=(n, n))
    if imaginary:
        upper = upper + 1j * rng.uniform(-imaginary, imaginary, size=(n, n))
    matrix = np.triu(upper, k=1)
    return ThetaSpec.numeric(matrix - matrix.T)
