"""Torus-invariant monomial ideals of a chart algebra ℂ_θ[σ].

Purpose: Character-spanned two-sided ideals described by a face τ of σ or by
explicit monomial generators, with membership, minimal generators and
bounding-box certificates for the ideal property and primality.
Related tests: tests/varieties/test_monomial_ideals.py
"""

from __future__ import annotations

import itertools
import logging
from dataclasses import dataclass
from functools import cached_property
from typing import Sequence

from src.core.errors import AlgebraError, FanError
from src.toric.lattice import LatticePoint, dot
from src.toric.lattice_fans import Cone, dual_cone, hilbert_basis, is_face

logger = logging.getLogger(__name__)

DEFAULT_BOX = 8


@dataclass(frozen=True)
class MonomialIdeal:
    """S ⊆ σ∨ ∩ L* closed under adding σ∨ ∩ L*.

    With a face τ, S is the set of m with ⟨m, v⟩ > 0 for some ray v of τ,
    i.e. the characters that vanish on the orbit closure of τ. With explicit
    generators, S is the semigroup ideal they generate.
    """

    cone: Cone
    face: Cone | None = None
    generators: tuple[LatticePoint, ...] = ()

    @cached_property
    def dual(self) -> Cone:
        return dual_cone(self.cone)

    @cached_property
    def semigroup_basis(self) -> tuple[LatticePoint, ...]:
        return hilbert_basis(self.dual)

    def in_semigroup(self, point: Sequence[int]) -> bool:
        return all(dot(ray, point) >= 0 for ray in self.cone.rays)

    def contains(self, point: Sequence[int]) -> bool:
        point = tuple(point)
        if len(point) != self.cone.ambient:
            raise AlgebraError("Point length does not match the lattice rank", witness=point)
        if not self.in_semigroup(point):
            return False
        if self.face is not None:
            return any(dot(point, ray) > 0 for ray in self.face.rays)
        return any(
            self.in_semigroup(tuple(a - b for a, b in zip(point, generator)))
            for generator in self.generators
        )

    def box_points(self, box: int = DEFAULT_BOX) -> list[LatticePoint]:
        """Semigroup points with every coordinate in [-box, box]."""

        span = range(-box, box + 1)
        return [
            point
            for point in itertools.product(span, repeat=self.cone.ambient)
            if self.in_semigroup(point)
        ]

    def members(self, box: int = DEFAULT_BOX) -> list[LatticePoint]:
        return [point for point in self.box_points(box) if self.contains(point)]

    def is_zero(self, box: int = DEFAULT_BOX) -> bool:
        return not self.members(box)

    def minimal_generators(self, box: int = DEFAULT_BOX) -> list[LatticePoint]:
        """Members m with m - h outside the ideal for every Hilbert basis element h."""

        out = []
        for point in self.members(box):
            shifted = (tuple(a - b for a, b in zip(point, h)) for h in self.semigroup_basis)
            if not any(self.contains(candidate) for candidate in shifted):
                out.append(point)
        return sorted(out)

    def verify_ideal_property(self, box: int = DEFAULT_BOX) -> tuple[LatticePoint, LatticePoint] | None:
        """First (m, h) with m in S, h a semigroup generator and m + h not in S."""

        for point in self.members(box):
            for h in self.semigroup_basis:
                if not self.contains(tuple(a + b for a, b in zip(point, h))):
                    return point, h
        return None


def monomial_ideal(cone: Cone, face: Cone) -> MonomialIdeal:
    """I_σ(τ): the characters of σ∨ ∩ L* outside τ⊥."""

    if not is_face(face, cone):
        raise FanError("τ is not a face of σ", witness=(str(face), str(cone)))
    return MonomialIdeal(cone=cone, face=face)


def monomial_ideal_from_generators(cone: Cone, generators: Sequence[Sequence[int]]) -> MonomialIdeal:
    gens = tuple(tuple(g) for g in generators)
    ideal = MonomialIdeal(cone=cone, generators=gens)
    for generator in gens:
        if len(generator) != cone.ambient or not ideal.in_semigroup(generator):
            raise AlgebraError("Ideal generator is not in the dual semigroup", witness=generator)
    return ideal


def prime_witness(ideal: MonomialIdeal, box: int = DEFAULT_BOX) -> tuple[LatticePoint, LatticePoint] | None:
    """a, b outside the ideal with a + b inside it, searched within the box."""

    outside = [point for point in ideal.box_points(box) if not ideal.contains(point)]
    limit = range(-box, box + 1)
    for a, b in itertools.combinations_with_replacement(outside, 2):
        total = tuple(x + y for x, y in zip(a, b))
        if all(value in limit for value in total) and ideal.contains(total):
            return a, b
    return None


def is_prime_monomial(ideal: MonomialIdeal, box: int = DEFAULT_BOX) -> bool:
    """The complement of S in σ∨ ∩ L* is closed under addition (within the box)."""

    witness = prime_witness(ideal, box)
    if witness is not None:
        logger.debug("Monomial ideal is not prime: %s + %s", *witness)
    return witness is None
