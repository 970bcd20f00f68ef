"""Deformed chart algebras ℂ_θ[σ], gluing identities and torus weights.

Purpose: Build the quasi-commutative chart algebra of a cone from the Hilbert
basis of its dual semigroup, with commutation phases q̌_ab^2 and binomial
relations from the relation lattice, and describe how charts glue.
Related tests: tests/toric/test_charts.py
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from typing import Sequence

import sympy

from src.core.errors import AlgebraError, LatticeError
from src.core.models.presentation import (
    AlgebraPresentation,
    BinomialRelation,
    CommutationRelation,
)
from src.core.scalars import ONE, Exponents, PhaseScalar, ThetaSpec
from src.core.words import QuasiCommutativeAlgebra, phase_table

from .lattice import LatticePoint, integer_kernel
from .lattice_fans import (
    Cone,
    cone_intersection,
    dual_cone,
    hilbert_basis,
    is_face,
    is_strongly_convex,
    relation_lattice,
)
from .quantum_torus import LaurentElement, skew_phase

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class ChartBinomial:
    """X^p = coefficient * X^r between normal-ordered chart monomials."""

    p: tuple[int, ...]
    r: tuple[int, ...]
    coefficient: PhaseScalar


@dataclass(frozen=True)
class ChartAlgebra:
    """ℂ_θ[σ] presented by dual-semigroup generators and relations."""

    cone: Cone
    generators: tuple[LatticePoint, ...]
    check_theta: tuple[tuple[PhaseScalar, ...], ...]
    commutation_relations: tuple[tuple[int, int, PhaseScalar], ...]
    binomial_relations: tuple[ChartBinomial, ...]
    names: tuple[str, ...]
    theta: ThetaSpec | None = field(compare=False, default=None)
    label: str = "chart"

    @property
    def rank(self) -> int:
        return self.cone.ambient

    @property
    def algebra(self) -> QuasiCommutativeAlgebra:
        size = len(self.generators)
        return QuasiCommutativeAlgebra(
            names=self.names,
            phases=phase_table(size, lambda a, b: self.check_theta[a][b] ** 2),
        )

    def normal_form(self, word: Sequence[int | tuple[int, int]]) -> tuple[PhaseScalar, Exponents]:
        """Sort a generator word into index order, accumulating q̌^2 phases."""

        return self.algebra.normal_form(word)

    def monomial(self, exps: Sequence[int]) -> LaurentElement:
        """The ordered product x_1^{e_1} ⋆ ... ⋆ x_l^{e_l} in the quantum torus."""

        if len(exps) != len(self.generators):
            raise AlgebraError("Exponent vector has the wrong length", witness=tuple(exps))
        element = LaurentElement.one(self.rank)
        for power, generator in zip(exps, self.generators):
            if power == 0:
                continue
            step = tuple(power * value for value in generator)
            element = element * LaurentElement.character(step)
        return element

    def weight(self, exps: Sequence[int], index: int) -> int:
        return weight(self, exps, index)

    def presentation(self) -> AlgebraPresentation:
        commutation = tuple(
            CommutationRelation(self.names[a], self.names[b], phase)
            for a, b, phase in self.commutation_relations
        )
        binomials = tuple(
            BinomialRelation(
                lhs=_powers(self.names, relation.p),
                rhs=_powers(self.names, relation.r),
                coefficient=relation.coefficient,
            )
            for relation in self.binomial_relations
        )
        return AlgebraPresentation(
            name=self.label,
            generators=self.names,
            commutation=commutation,
            binomials=binomials,
            metadata={"vectors": [list(g) for g in self.generators]},
        )


def _powers(names: Sequence[str], exps: Sequence[int]) -> tuple[tuple[str, int], ...]:
    return tuple((names[a], power) for a, power in enumerate(exps) if power)


def ordered_product_phase(
    check_theta: Sequence[Sequence[PhaseScalar]], exps: Sequence[int]
) -> PhaseScalar:
    """∏_{a<b} q̌_ab^{e_a e_b}: the phase of x_1^{e_1}⋯x_l^{e_l} over χ_{Σ e m}."""

    phase = ONE
    for a in range(len(exps)):
        if exps[a] == 0:
            continue
        for b in range(a + 1, len(exps)):
            if exps[b]:
                phase = phase * check_theta[a][b] ** (exps[a] * exps[b])
    return phase


def chart_algebra(
    cone: Cone,
    theta: ThetaSpec | None = None,
    *,
    order: Sequence[LatticePoint] | None = None,
    names: Sequence[str] | None = None,
    label: str = "chart",
) -> ChartAlgebra:
    """Chart algebra of a strongly convex cone.

    ``order`` fixes the generator numbering and must be a permutation of the
    Hilbert basis of the dual semigroup.
    """

    if not is_strongly_convex(cone):
        raise LatticeError("chart_algebra requires a strongly convex cone", witness=str(cone))
    basis = hilbert_basis(dual_cone(cone))
    if order is not None:
        wanted = tuple(tuple(v) for v in order)
        if sorted(wanted) != sorted(basis):
            raise LatticeError(
                "Generator order is not a permutation of the Hilbert basis",
                witness=[list(v) for v in basis],
            )
        basis = wanted
    size = len(basis)
    labels = tuple(names) if names else tuple(f"x{a + 1}" for a in range(size))
    if len(labels) != size:
        raise AlgebraError("Wrong number of generator names", witness=labels)
    check = tuple(
        tuple(skew_phase(basis[a], basis[b]) for b in range(size)) for a in range(size)
    )
    commutation = tuple(
        (a, b, check[a][b] ** 2) for a in range(size) for b in range(a + 1, size)
    )
    binomials = []
    for p, r in relation_lattice(basis).relations:
        coefficient = ordered_product_phase(check, p) * ordered_product_phase(check, r).inverse()
        binomials.append(ChartBinomial(p=p, r=r, coefficient=coefficient))
    logger.debug("Chart %s: %d generators, %d binomials", label, size, len(binomials))
    return ChartAlgebra(
        cone=cone,
        generators=basis,
        check_theta=check,
        commutation_relations=commutation,
        binomial_relations=tuple(binomials),
        names=labels,
        theta=theta or ThetaSpec.symbolic(cone.ambient),
        label=label,
    )


def weight(chart: ChartAlgebra, exps: Sequence[int], index: int) -> int:
    """Eigenvalue of H_index on a chart monomial: Σ_a e_a (m_a)_index."""

    if not 1 <= index <= chart.rank:
        raise AlgebraError("Torus index out of range", witness=index)
    return sum(power * chart.generators[a][index - 1] for a, power in enumerate(exps))


def binomial_holds(chart: ChartAlgebra, relation: ChartBinomial) -> bool:
    """Evaluate both sides in the quantum torus."""

    lhs = chart.monomial(relation.p)
    rhs = chart.monomial(relation.r).scale(relation.coefficient)
    return lhs == rhs


@dataclass(frozen=True)
class GluingIdentity:
    """X^u ⋆ X'^{u'} = coefficient * X^v ⋆ X'^{v'} inside ℂ_θ[τ]."""

    u: tuple[int, ...]
    u_prime: tuple[int, ...]
    v: tuple[int, ...]
    v_prime: tuple[int, ...]
    coefficient: PhaseScalar

    def text(self, first: ChartAlgebra, second: ChartAlgebra) -> str:
        def side(exps: Sequence[int], exps_prime: Sequence[int]) -> str:
            parts = [
                name if power == 1 else f"{name}^{power}"
                for name, power in (*_powers(first.names, exps), *_powers(
                    tuple(f"{n}'" for n in second.names), exps_prime
                ))
            ]
            return "*".join(parts) or "1"

        coeff = self.coefficient.canonical()
        factor = "" if coeff == "1" else f"{coeff}*"
        return f"{side(self.u, self.u_prime)} = {factor}{side(self.v, self.v_prime)}"


def _side(first: ChartAlgebra, second: ChartAlgebra, exps: Sequence[int], exps_prime: Sequence[int]) -> LaurentElement:
    return first.monomial(exps) * second.monomial(exps_prime)


def gluing_relations(
    first: ChartAlgebra, second: ChartAlgebra, tau: Cone | None = None
) -> list[GluingIdentity]:
    """Identifications between two charts along their common face.

    Every kernel relation among the combined generators yields an identity
    whose coefficient combines q̌, q̌' and the mixed q̌° phases.
    """

    meet = cone_intersection(first.cone, second.cone)
    if tau is not None and tau.key != meet.key:
        raise LatticeError("τ is not the intersection of the cones", witness=str(tau))
    if not (is_face(meet, first.cone) and is_face(meet, second.cone)):
        raise LatticeError("Cones do not meet in a common face", witness=str(meet))
    size, size_prime = len(first.generators), len(second.generators)
    combined = [list(g) for g in (*first.generators, *second.generators)]
    mixed = [
        [skew_phase(first.generators[a], second.generators[b]) for b in range(size_prime)]
        for a in range(size)
    ]
    identities = []
    for vector in integer_kernel(combined):
        u = tuple(max(value, 0) for value in vector[:size])
        v = tuple(max(-value, 0) for value in vector[:size])
        u_prime = tuple(max(value, 0) for value in vector[size:])
        v_prime = tuple(max(-value, 0) for value in vector[size:])
        coefficient = (
            ordered_product_phase(first.check_theta, u)
            * ordered_product_phase(first.check_theta, v).inverse()
            * ordered_product_phase(second.check_theta, u_prime)
            * ordered_product_phase(second.check_theta, v_prime).inverse()
        )
        for a in range(size):
            for b in range(size_prime):
                power = u[a] * u_prime[b] - v[a] * v_prime[b]
                if power:
                    coefficient = coefficient * mixed[a][b] ** power
        identities.append(GluingIdentity(u, u_prime, v, v_prime, coefficient))
    return identities


def gluing_holds(first: ChartAlgebra, second: ChartAlgebra, identity: GluingIdentity) -> bool:
    lhs = _side(first, second, identity.u, identity.u_prime)
    rhs = _side(first, second, identity.v, identity.v_prime).scale(identity.coefficient)
    return lhs == rhs


@dataclass(frozen=True)
class TransitionMap:
    """Lattice automorphism sending chart generators m_a to m'_a."""

    matrix: tuple[tuple[int, ...], ...]
    images: tuple[LaurentElement, ...]
    phases: str


def transition_map(first: ChartAlgebra, second: ChartAlgebra) -> TransitionMap:
    """Map x_a ↦ x'_a of two smooth charts of the same rank.

    ``phases`` is ``preserved`` when every q̌'_ab equals q̌_ab, ``inverted``
    when every one is the inverse, and ``mixed`` otherwise. ``images`` express
    the target generators as Laurent monomials in the source torus.
    """

    rank_n = first.rank
    if len(first.generators) != rank_n or len(second.generators) != rank_n:
        raise LatticeError("transition_map requires smooth charts with n generators")
    source = sympy.Matrix([list(g) for g in first.generators]).T
    target = sympy.Matrix([list(g) for g in second.generators]).T
    if source.det() == 0:
        raise LatticeError("Chart generators are not a lattice basis")
    matrix = target * source.inv()
    if any(value.q != 1 for value in matrix):
        raise LatticeError("Transition is not integral")
    rows = tuple(tuple(int(matrix[i, j]) for j in range(rank_n)) for i in range(rank_n))
    same = all(
        second.check_theta[a][b] == first.check_theta[a][b]
        for a in range(rank_n)
        for b in range(rank_n)
    )
    inverse = all(
        second.check_theta[a][b] == first.check_theta[a][b].inverse()
        for a in range(rank_n)
        for b in range(rank_n)
    )
    phases = "preserved" if same else "inverted" if inverse else "mixed"
    images = tuple(LaurentElement.character(g) for g in second.generators)
    return TransitionMap(matrix=rows, images=images, phases=phases)


def commutation_phase_from_star(chart: ChartAlgebra, a: int, b: int) -> PhaseScalar:
    """x_a x_b (x_b x_a)^{-1} read off from star products of characters."""

    left = LaurentElement.character(chart.generators[a]) * LaurentElement.character(chart.generators[b])
    right = LaurentElement.character(chart.generators[b]) * LaurentElement.character(chart.generators[a])
    (_, left_coeff), = left.items()
    (_, right_coeff), = right.items()
    return left_coeff * right_coeff.inverse()


__all__ = [
    "ChartAlgebra",
    "ChartBinomial",
    "GluingIdentity",
    "TransitionMap",
    "binomial_holds",
    "chart_algebra",
    "commutation_phase_from_star",
    "gluing_holds",
    "gluing_relations",
    "ordered_product_phase",
    "transition_map",
    "weight",
]
