"""Braided Kähler differentials over a free quantum affine chart.

Purpose: Ω¹ as the bimodule generated by dx_a with x_a dx_b = q̌_ab^2 dx_b x_a,
the derivation d, and a randomized Leibniz-rule check.
Related tests: tests/toric/test_kaehler.py
"""

from __future__ import annotations

import logging
import random
from dataclasses import dataclass, field
from typing import Iterator, Mapping, Sequence

from src.core.errors import AlgebraError
from src.core.models.presentation import AlgebraPresentation, CommutationRelation
from src.core.scalars import ONE, ZERO, Exponents, PhaseScalar

from .charts import ChartAlgebra

logger = logging.getLogger(__name__)

FormKey = tuple[Exponents, int]


def _require_free(chart: ChartAlgebra) -> None:
    if chart.binomial_relations:
        raise AlgebraError(
            "Kähler differentials are only built for charts without binomial relations",
            witness=chart.label,
        )


class KaehlerForm:
    """Σ c X^e dx_b with every coefficient written to the left of dx_b."""

    __slots__ = ("chart", "_terms")

    def __init__(self, chart: ChartAlgebra, terms: Mapping[FormKey, PhaseScalar] | None = None) -> None:
        self.chart = chart
        self._terms = {key: value for key, value in (terms or {}).items() if not value.is_zero()}

    def items(self) -> Iterator[tuple[FormKey, PhaseScalar]]:
        return iter(self._terms.items())

    def is_zero(self) -> bool:
        return not self._terms

    def __add__(self, other: KaehlerForm) -> KaehlerForm:
        out = dict(self._terms)
        for key, value in other._terms.items():
            out[key] = out.get(key, ZERO) + value
        return KaehlerForm(self.chart, out)

    def scale(self, scalar: PhaseScalar) -> KaehlerForm:
        return KaehlerForm(self.chart, {k: v * scalar for k, v in self._terms.items()})

    def left_mul(self, exps: Exponents) -> KaehlerForm:
        """X^f · ω."""

        algebra = self.chart.algebra
        out: dict[FormKey, PhaseScalar] = {}
        for (e, b), coeff in self._terms.items():
            key = (tuple(x + y for x, y in zip(exps, e)), b)
            out[key] = out.get(key, ZERO) + coeff * algebra.merge_phase(exps, e)
        return KaehlerForm(self.chart, out)

    def right_mul(self, exps: Exponents) -> KaehlerForm:
        """ω · X^f, moving X^f across dx_b with the phases of x_b."""

        algebra = self.chart.algebra
        out: dict[FormKey, PhaseScalar] = {}
        for (e, b), coeff in self._terms.items():
            crossing = algebra.commutation_phase(algebra.basis_exponents(b), exps)
            key = (tuple(x + y for x, y in zip(e, exps)), b)
            out[key] = out.get(key, ZERO) + coeff * crossing * algebra.merge_phase(e, exps)
        return KaehlerForm(self.chart, out)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, KaehlerForm):
            return NotImplemented
        return self.chart == other.chart and self._terms == other._terms

    def __hash__(self) -> int:
        return hash(frozenset(self._terms.items()))

    def aligned(self, other: KaehlerForm) -> list[tuple[PhaseScalar, PhaseScalar]]:
        keys = sorted(set(self._terms) | set(other._terms))
        return [(self._terms.get(k, ZERO), other._terms.get(k, ZERO)) for k in keys]

    def canonical(self) -> str:
        if not self._terms:
            return "0"
        algebra = self.chart.algebra
        pieces = []
        for (exps, b) in sorted(self._terms):
            coeff = self._terms[(exps, b)].canonical()
            prefix = algebra.format_exponents(exps)
            body = f"d{self.chart.names[b]}" if prefix == "1" else f"{prefix}*d{self.chart.names[b]}"
            pieces.append(body if coeff == "1" else f"({coeff})*{body}")
        return " + ".join(pieces)

    def __repr__(self) -> str:
        return f"KaehlerForm({self.canonical()!r})"


def differential(chart: ChartAlgebra, exps: Sequence[int], coeff: PhaseScalar = ONE) -> KaehlerForm:
    """d(c X^e), expanding the ordered word x_1^{e_1}⋯x_l^{e_l} by Leibniz."""

    _require_free(chart)
    if any(power < 0 for power in exps):
        raise AlgebraError("Differential of a negative power", witness=tuple(exps))
    algebra = chart.algebra
    letters = [a for a, power in enumerate(exps) for _ in range(power)]
    total = KaehlerForm(chart)
    for position, letter in enumerate(letters):
        prefix = [0] * algebra.size
        suffix = [0] * algebra.size
        for a in letters[:position]:
            prefix[a] += 1
        for a in letters[position + 1:]:
            suffix[a] += 1
        base = KaehlerForm(chart, {(tuple(prefix), letter): coeff})
        total = total + base.right_mul(tuple(suffix))
    return total


def kaehler_relations(chart: ChartAlgebra) -> AlgebraPresentation:
    """Bimodule relations of Ω¹: x_a dx_b = q̌_ab^2 dx_b x_a for all a, b."""

    _require_free(chart)
    algebra = chart.algebra
    names = chart.names
    relations = [
        CommutationRelation(names[a], names[b], algebra.phases[a][b])
        for a in range(algebra.size)
        for b in range(a + 1, algebra.size)
    ]
    relations.extend(
        CommutationRelation(names[a], f"d{names[b]}", algebra.phases[a][b])
        for a in range(algebra.size)
        for b in range(algebra.size)
    )
    return AlgebraPresentation(
        name=f"Omega1({chart.label})",
        generators=(*names, *(f"d{name}" for name in names)),
        commutation=tuple(relations),
        metadata={"kind": "bimodule", "differential": "d(x_a) = dx_a"},
    )


@dataclass
class LeibnizReport:
    trials: int
    failures: list[tuple[Exponents, Exponents]] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.failures


def verify_leibniz(chart: ChartAlgebra, trials: int, rng: random.Random, *, max_power: int = 2) -> LeibnizReport:
    """Check d(fg) = (df) g + f (dg) on random monomial pairs."""

    algebra = chart.algebra
    report = LeibnizReport(trials=trials)
    for _ in range(trials):
        f = tuple(rng.randint(0, max_power) for _ in range(algebra.size))
        g = tuple(rng.randint(0, max_power) for _ in range(algebra.size))
        product = tuple(a + b for a, b in zip(f, g))
        lhs = differential(chart, product, algebra.merge_phase(f, g))
        rhs = differential(chart, f).right_mul(g) + differential(chart, g).left_mul(f)
        if lhs != rhs:
            report.failures.append((f, g))
    logger.debug("Leibniz check on %s: %d/%d failures", chart.label, len(report.failures), trials)
    return report
