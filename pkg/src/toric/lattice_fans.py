"""Cones, dual cones, Hilbert bases, faces, fans and relation lattices.

Purpose: Integer combinatorics of rational polyhedral cones and fans at desk
scale (dimension <= 4), feeding the deformed chart algebras.
Related tests: tests/toric/test_lattice_fans.py
"""

from __future__ import annotations

import itertools
import logging
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Iterable, Sequence

import sympy

from src.core.errors import FanError, LatticeError

from .lattice import (
    LatticePoint,
    coordinates,
    dot,
    extreme_rays_of_inequalities,
    integer_kernel,
    is_primitive,
    parallelepiped_points,
    primitive,
    rank,
    right_kernel,
    unimodular_complement,
)

logger = logging.getLogger(__name__)

MAX_HILBERT_DIMENSION = 4


@dataclass(frozen=True)
class Cone:
    """Cone generated by primitive rays plus an optional linear subspace.

    ``lineality`` vectors span a subspace contained in the cone with both
    signs; it is empty for strongly convex cones and used for duals of
    lower-dimensional cones.
    """

    rays: tuple[LatticePoint, ...]
    ambient: int
    lineality: tuple[LatticePoint, ...] = ()

    def __post_init__(self) -> None:
        seen: set[LatticePoint] = set()
        for ray in (*self.rays, *self.lineality):
            if len(ray) != self.ambient:
                raise LatticeError("Ray length does not match the lattice rank", witness=ray)
            if not is_primitive(ray):
                raise LatticeError("Cone rays must be primitive and nonzero", witness=ray)
        for ray in self.rays:
            if ray in seen:
                raise LatticeError("Duplicate ray in cone", witness=ray)
            seen.add(ray)

    @classmethod
    def from_rays(
        cls, rays: Iterable[Sequence[int]], ambient: int | None = None
    ) -> Cone:
        """Build a cone, reducing rays to primitive form and dropping repeats."""

        clean: list[LatticePoint] = []
        for ray in rays:
            vector = primitive(ray)
            if not any(vector):
                continue
            if vector not in clean:
                clean.append(vector)
        if ambient is None:
            if not clean:
                raise LatticeError("Ambient rank required for the zero cone")
            ambient = len(clean[0])
        return cls(rays=tuple(clean), ambient=ambient)

    @classmethod
    def zero(cls, ambient: int) -> Cone:
        return cls(rays=(), ambient=ambient)

    @property
    def key(self) -> frozenset[LatticePoint]:
        return frozenset(self.rays)

    @property
    def dimension(self) -> int:
        return rank([list(r) for r in (*self.rays, *self.lineality)])

    def generators(self) -> list[LatticePoint]:
        """Semigroup-style generators: rays followed by ± lineality vectors."""

        out = list(self.rays)
        for vector in self.lineality:
            out.append(vector)
            out.append(tuple(-value for value in vector))
        return out

    def contains(self, point: Sequence[int]) -> bool:
        """Membership through the double dual."""

        if len(point) != self.ambient:
            raise LatticeError("Point length does not match the lattice rank", witness=tuple(point))
        dual = dual_cone(self)
        return all(dot(g, point) >= 0 for g in dual.generators())

    def facet_normals(self) -> list[LatticePoint]:
        return dual_cone(self).generators()

    def __str__(self) -> str:
        if not self.rays and not self.lineality:
            return "cone()"
        return "cone(" + ", ".join(str(list(r)) for r in self.generators()) + ")"


@dataclass(frozen=True)
class RelationLattice:
    """Relations Σ_a (p_a - r_a) m_a = 0 among dual semigroup generators."""

    generators: tuple[LatticePoint, ...]
    relations: tuple[tuple[LatticePoint, LatticePoint], ...]

    def residual(self, index: int) -> LatticePoint:
        p, r = self.relations[index]
        ambient = len(self.generators[0]) if self.generators else 0
        return tuple(
            sum((p[a] - r[a]) * self.generators[a][i] for a in range(len(p)))
            for i in range(ambient)
        )

    def __len__(self) -> int:
        return len(self.relations)


@dataclass(frozen=True)
class Fan:
    """Face-closed collection of cones whose intersections are common faces."""

    ambient: int
    cones: tuple[Cone, ...]
    maximal: tuple[Cone, ...]
    names: tuple[str, ...] = ()
    generator_orders: dict[int, tuple[LatticePoint, ...]] = field(
        default_factory=dict, compare=False
    )

    @property
    def maximal_cones(self) -> tuple[Cone, ...]:
        return self.maximal

    def cone_by_id(self, cone_id: str | int) -> Cone:
        """Resolve a maximal cone by name or index, or ``0`` for the zero cone."""

        if str(cone_id) in self.names:
            return self.maximal[self.names.index(str(cone_id))]
        if str(cone_id) in {"0", "zero", "torus"}:
            return Cone.zero(self.ambient)
        try:
            index = int(cone_id)
        except (TypeError, ValueError) as exc:
            raise FanError("Unknown cone id", witness=cone_id) from exc
        if not 1 <= index <= len(self.maximal):
            raise FanError("Unknown cone id", witness=cone_id)
        return self.maximal[index - 1]

    def name_of(self, cone: Cone) -> str:
        for index, member in enumerate(self.maximal):
            if member.key == cone.key:
                return self.names[index] if self.names else str(index + 1)
        return str(cone)

    def generator_order(self, cone: Cone) -> tuple[LatticePoint, ...] | None:
        for index, member in enumerate(self.maximal):
            if member.key == cone.key:
                return self.generator_orders.get(index)
        return None

    def is_smooth(self) -> bool:
        return all(is_smooth(cone) for cone in self.maximal)


def _adapted_coordinates(cone: Cone) -> tuple[list[LatticePoint], list[LatticePoint], list[LatticePoint]]:
    """Split L* as (complement) ⊕ σ⊥ and reduce the rays to the complement.

    Returns (lineality basis of σ⊥, complement basis, reduced rays).
    """

    ray_rows = [list(r) for r in cone.rays]
    lineality = right_kernel(ray_rows, cone.ambient)
    complement = unimodular_complement(lineality, cone.ambient)
    reduced = [tuple(dot(c, ray) for c in complement) for ray in cone.rays]
    return lineality, complement, reduced


def is_strongly_convex(cone: Cone) -> bool:
    """True iff σ ∩ (-σ) = {0}."""

    if cone.lineality:
        return False
    if not cone.rays:
        return True
    _, complement, reduced = _adapted_coordinates(cone)
    dimension = len(complement)
    dual_rays = extreme_rays_of_inequalities(reduced, dimension)
    if not dual_rays:
        return False
    interior = [sum(values) for values in zip(*dual_rays)]
    return all(dot(interior, ray) > 0 for ray in reduced)


@lru_cache(maxsize=None)
def dual_cone(cone: Cone) -> Cone:
    """Generators of σ∨ = {m : <m, u> >= 0 for u in σ}.

    The zero cone has the whole dual lattice as its dual, returned as a cone
    with the standard basis as lineality.
    """

    if not is_strongly_convex(cone):
        raise LatticeError("dual_cone requires a strongly convex cone", witness=str(cone))
    lineality, complement, reduced = _adapted_coordinates(cone)
    reduced_rays = extreme_rays_of_inequalities(reduced, len(complement))
    rays = []
    for y in reduced_rays:
        vector = tuple(
            sum(y[a] * complement[a][i] for a in range(len(complement)))
            for i in range(cone.ambient)
        )
        rays.append(primitive(vector))
    rays.sort(reverse=True)
    return Cone(rays=tuple(rays), ambient=cone.ambient, lineality=tuple(lineality))


def _reduce_to_complement(cone: Cone) -> tuple[list[LatticePoint], list[LatticePoint], list[LatticePoint]]:
    lineality = list(cone.lineality)
    complement = unimodular_complement(lineality, cone.ambient)
    basis = [*complement, *lineality]
    reduced = []
    for ray in cone.rays:
        coords = coordinates(ray, basis)
        if any(value.q != 1 for value in coords):
            raise LatticeError("Ray is not in the lattice spanned by the basis", witness=ray)
        reduced.append(tuple(int(value) for value in coords[: len(complement)]))
    return lineality, complement, reduced


@lru_cache(maxsize=None)
def hilbert_basis(dual: Cone) -> tuple[LatticePoint, ...]:
    """Minimal generating set of the semigroup ``dual ∩ L*``.

    The pointed part is covered by simplicial subcones; their fundamental
    parallelepiped points and rays are the candidates, and a candidate is kept
    iff no other candidate can be subtracted from it inside the cone.
    Extremal rays come first, then the remaining elements, each group sorted
    lexicographically descending, then ± lineality vectors.
    """

    if dual.ambient > MAX_HILBERT_DIMENSION:
        raise LatticeError(
            "Hilbert basis dimension exceeds the supported bound",
            witness=dual.ambient,
        )
    lineality, complement, reduced = _reduce_to_complement(dual)
    dimension = len(complement)
    pointed: list[LatticePoint] = []
    if dimension:
        pointed = _pointed_hilbert_basis(reduced, dimension)
    extremal = {primitive(r) for r in reduced}

    def lift(y: LatticePoint) -> LatticePoint:
        return tuple(
            sum(y[a] * complement[a][i] for a in range(dimension))
            for i in range(dual.ambient)
        )

    first = sorted((lift(y) for y in pointed if y in extremal), reverse=True)
    rest = sorted((lift(y) for y in pointed if y not in extremal), reverse=True)
    ordered = first + rest
    for vector in lineality:
        ordered.append(tuple(vector))
        ordered.append(tuple(-value for value in vector))
    logger.debug("Hilbert basis of %s: %s", dual, ordered)
    return tuple(ordered)


def _pointed_hilbert_basis(rays: Sequence[LatticePoint], dimension: int) -> list[LatticePoint]:
    rays = [primitive(r) for r in rays]
    if rank([list(r) for r in rays]) != dimension:
        raise LatticeError("Dual cone is not full dimensional in its lattice")
    normals = extreme_rays_of_inequalities(rays, dimension)

    def inside(point: Sequence[int]) -> bool:
        return all(dot(normal, point) >= 0 for normal in normals)

    candidates: set[LatticePoint] = set(rays)
    for subset in itertools.combinations(rays, dimension):
        if rank([list(r) for r in subset]) != dimension:
            continue
        for point in parallelepiped_points(subset):
            if any(point):
                candidates.add(point)
    irreducible = []
    for point in candidates:
        reducible = False
        for other in candidates:
            if other == point:
                continue
            difference = tuple(a - b for a, b in zip(point, other))
            if any(difference) and inside(difference):
                reducible = True
                break
        if not reducible:
            irreducible.append(point)
    return irreducible


def _tight_rays(cone: Cone, normals: Iterable[LatticePoint]) -> tuple[LatticePoint, ...]:
    normals = list(normals)
    return tuple(r for r in cone.rays if all(dot(m, r) == 0 for m in normals))


def faces(cone: Cone) -> list[Cone]:
    """All faces, from the zero cone up to the cone itself."""

    if not is_strongly_convex(cone):
        raise LatticeError("faces requires a strongly convex cone", witness=str(cone))
    dual = dual_cone(cone)
    found: dict[frozenset[LatticePoint], Cone] = {}
    for size in range(len(dual.rays) + 1):
        for subset in itertools.combinations(dual.rays, size):
            rays = _tight_rays(cone, subset)
            face = Cone(rays=rays, ambient=cone.ambient)
            found.setdefault(face.key, face)
    return sorted(found.values(), key=lambda f: (f.dimension, sorted(f.rays)))


def is_face(face: Cone, cone: Cone) -> bool:
    return any(member.key == face.key for member in faces(cone))


def cone_intersection(first: Cone, second: Cone) -> Cone:
    """Intersection of two strongly convex cones as a cone.

    Its rays are the extreme rays of the polyhedral cone cut out by both
    facet descriptions inside the common span.
    """

    ambient = first.ambient
    inequalities = [*first.facet_normals(), *second.facet_normals()]
    span = [list(r) for r in (*first.rays, *second.rays)]
    if not span:
        return Cone.zero(ambient)
    candidates: set[LatticePoint] = set()
    for ray in (*first.rays, *second.rays):
        if all(dot(m, ray) >= 0 for m in inequalities):
            candidates.add(primitive(ray))
    for size in range(1, ambient):
        for subset in itertools.combinations(inequalities, size):
            kernel = right_kernel([list(m) for m in subset], ambient)
            if len(kernel) != 1:
                continue
            for sign in (1, -1):
                candidate = tuple(sign * value for value in kernel[0])
                if all(dot(m, candidate) >= 0 for m in inequalities):
                    candidates.add(primitive(candidate))
    if not candidates:
        return Cone.zero(ambient)
    extreme = [
        ray
        for ray in candidates
        if rank([list(r) for r in candidates if _same_tight(inequalities, r, ray)]) == 1
    ]
    return Cone(rays=tuple(sorted(extreme, reverse=True)), ambient=ambient)


def _same_tight(inequalities: Sequence[LatticePoint], candidate: LatticePoint, ray: LatticePoint) -> bool:
    """True when every inequality tight on ``ray`` is tight on ``candidate``."""

    return all(dot(m, candidate) == 0 for m in inequalities if dot(m, ray) == 0)


def is_smooth(cone: Cone) -> bool:
    """Rays form part of a ℤ-basis of the lattice."""

    if not cone.rays:
        return True
    rows = [list(r) for r in cone.rays]
    if rank(rows) != len(rows):
        return False
    minors = sympy.Matrix(rows)
    size = len(rows)
    gcd = 0
    for columns in itertools.combinations(range(cone.ambient), size):
        gcd = _gcd(gcd, int(minors.extract(list(range(size)), list(columns)).det()))
    return gcd == 1


def _gcd(a: int, b: int) -> int:
    while b:
        a, b = b, a % b
    return abs(a)


def validate_fan(
    cones: Sequence[Cone],
    *,
    ambient: int | None = None,
    names: Sequence[str] = (),
) -> Fan:
    """Face-close a cone list and check the fan axioms.

    Raises FanError with the offending cone pair when two cones meet in a set
    that is not a face of both, or when a cone is not strongly convex.
    """

    if not cones and ambient is None:
        raise FanError("A fan needs at least one cone or an ambient rank")
    rank_n = ambient if ambient is not None else cones[0].ambient
    for cone in cones:
        if cone.ambient != rank_n:
            raise FanError("Cones live in lattices of different rank", witness=str(cone))
        if not is_strongly_convex(cone):
            raise FanError("Cone is not strongly convex", witness=str(cone))
        for ray in cone.rays:
            minimal = _tight_rays(cone, [m for m in dual_cone(cone).rays if dot(m, ray) == 0])
            if minimal != (ray,):
                raise FanError("Cone ray is not extremal", witness=(str(cone), ray))
    for first, second in itertools.combinations(cones, 2):
        meet = cone_intersection(first, second)
        if not (is_face(meet, first) and is_face(meet, second)):
            raise FanError(
                "Intersection of cones is not a face of both",
                witness=(str(first), str(second)),
            )
    closure: dict[frozenset[LatticePoint], Cone] = {}
    for cone in cones:
        for face in faces(cone):
            closure.setdefault(face.key, face)
    maximal = tuple(
        cone
        for cone in cones
        if not any(cone.key < other.key for other in cones)
    )
    ordered = tuple(sorted(closure.values(), key=lambda c: (c.dimension, sorted(c.rays))))
    maximal_names: tuple[str, ...] = ()
    if names:
        maximal_names = tuple(
            str(name) for name, cone in zip(names, cones) if cone in maximal
        )
    logger.info("Validated fan with %d cones (%d maximal)", len(ordered), len(maximal))
    return Fan(ambient=rank_n, cones=ordered, maximal=maximal, names=maximal_names)


def relation_lattice(generators: Sequence[LatticePoint]) -> RelationLattice:
    """Integer kernel of the generator matrix, split as v = p - r."""

    gens = tuple(tuple(g) for g in generators)
    relations = []
    for vector in integer_kernel([list(g) for g in gens]):
        p = tuple(max(value, 0) for value in vector)
        r = tuple(max(-value, 0) for value in vector)
        relations.append((p, r))
    return RelationLattice(generators=gens, relations=tuple(relations))
