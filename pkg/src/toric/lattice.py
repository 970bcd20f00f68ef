"""Integer linear algebra for lattices and cones.

Purpose: Echelon forms with unimodular transforms, saturated kernel bases,
integer solving, extreme rays of inequality systems and fundamental
parallelepiped enumeration. Rational nullspaces come from sympy and are
scaled to primitive integer vectors.
Related tests: tests/toric/test_lattice.py
"""

from __future__ import annotations

import itertools
import logging
import math
from typing import Iterable, Iterator, Sequence

import sympy

from src.core.errors import LatticeError

logger = logging.getLogger(__name__)

LatticePoint = tuple[int, ...]
IntMatrix = list[list[int]]


def dot(left: Sequence[int], right: Sequence[int]) -> int:
    return sum(a * b for a, b in zip(left, right))


def transpose(matrix: Sequence[Sequence[int]], columns: int | None = None) -> IntMatrix:
    if not matrix:
        return [[] for _ in range(columns or 0)]
    return [list(column) for column in zip(*matrix)]


def primitive(vector: Iterable[int]) -> LatticePoint:
    """Divide an integer vector by the gcd of its entries."""

    values = [int(value) for value in vector]
    divisor = math.gcd(*values) if values else 0
    if divisor <= 1:
        return tuple(values)
    return tuple(value // divisor for value in values)


def is_primitive(vector: Sequence[int]) -> bool:
    return math.gcd(*vector) == 1 if vector else False


def rational_to_primitive(vector: Iterable[sympy.Rational]) -> LatticePoint:
    """Scale a rational vector by the lcm of denominators, then make it primitive."""

    entries = [sympy.Rational(value) for value in vector]
    scale = sympy.ilcm(*[entry.q for entry in entries]) if entries else 1
    return primitive(int(entry * scale) for entry in entries)


def rank(matrix: Sequence[Sequence[int]]) -> int:
    if not matrix or not matrix[0]:
        return 0
    return int(sympy.Matrix(matrix).rank())


def hermite_form(matrix: Sequence[Sequence[int]]) -> tuple[IntMatrix, IntMatrix]:
    """Row echelon form H with a unimodular U such that U * A = H.

    Pivots are positive and entries above each pivot are reduced into
    [0, pivot), so H is the row Hermite normal form of A.
    """

    work = [[int(value) for value in row] for row in matrix]
    rows = len(work)
    cols = len(work[0]) if rows else 0
    transform = [[int(a == b) for b in range(rows)] for a in range(rows)]

    def subtract(target: int, source: int, factor: int) -> None:
        if factor == 0:
            return
        work[target] = [a - factor * b for a, b in zip(work[target], work[source])]
        transform[target] = [
            a - factor * b for a, b in zip(transform[target], transform[source])
        ]

    def swap(first: int, second: int) -> None:
        work[first], work[second] = work[second], work[first]
        transform[first], transform[second] = transform[second], transform[first]

    pivot_row = 0
    for col in range(cols):
        if pivot_row >= rows:
            break
        while True:
            candidates = [r for r in range(pivot_row, rows) if work[r][col] != 0]
            if not candidates:
                break
            smallest = min(candidates, key=lambda r: abs(work[r][col]))
            swap(pivot_row, smallest)
            finished = True
            for r in range(pivot_row + 1, rows):
                if work[r][col]:
                    subtract(r, pivot_row, work[r][col] // work[pivot_row][col])
                    if work[r][col]:
                        finished = False
            if finished:
                break
        if work[pivot_row][col] == 0:
            continue
        if work[pivot_row][col] < 0:
            work[pivot_row] = [-value for value in work[pivot_row]]
            transform[pivot_row] = [-value for value in transform[pivot_row]]
        pivot = work[pivot_row][col]
        for r in range(pivot_row):
            subtract(r, pivot_row, work[r][col] // pivot)
        pivot_row += 1
    return work, transform


def integer_kernel(matrix: Sequence[Sequence[int]], rows: int | None = None) -> list[LatticePoint]:
    """Saturated ℤ-basis of {v : v * A = 0}, in Hermite normal form.

    ``rows`` gives the number of rows when ``matrix`` has no columns.
    """

    size = len(matrix) if matrix else (rows or 0)
    if not matrix or not matrix[0]:
        return [tuple(int(a == b) for b in range(size)) for a in range(size)]
    reduced, transform = hermite_form(matrix)
    basis = [transform[r] for r, row in enumerate(reduced) if not any(row)]
    if not basis:
        return []
    canonical, _ = hermite_form(basis)
    return [tuple(row) for row in canonical if any(row)]


def right_kernel(matrix: Sequence[Sequence[int]], columns: int) -> list[LatticePoint]:
    """Saturated ℤ-basis of {x : A * x = 0}."""

    return integer_kernel(transpose(matrix, columns), rows=columns)


def solve_integer(
    matrix: Sequence[Sequence[int]], target: Sequence[int]
) -> LatticePoint | None:
    """Integer x with A * x = b, or None when no integer solution exists."""

    rows = len(matrix)
    if len(target) != rows:
        raise LatticeError("Right-hand side has the wrong length", witness=len(target))
    columns = len(matrix[0]) if rows else 0
    if columns == 0:
        return () if not any(target) else None
    reduced, transform = hermite_form(transpose(matrix))
    z = [0] * columns
    for index, row in enumerate(reduced):
        if not any(row):
            break
        pivot_col = next(c for c, value in enumerate(row) if value)
        partial = sum(z[j] * reduced[j][pivot_col] for j in range(index))
        remainder = target[pivot_col] - partial
        if remainder % row[pivot_col]:
            return None
        z[index] = remainder // row[pivot_col]
    solution = [
        sum(transform[k][c] * z[k] for k in range(columns)) for c in range(columns)
    ]
    if [dot(row, solution) for row in matrix] != list(target):
        return None
    return tuple(solution)


def unimodular_complement(lineality: Sequence[LatticePoint], ambient: int) -> list[LatticePoint]:
    """Vectors completing a saturated basis of a sublattice to a ℤ-basis.

    Standard basis vectors are preferred; otherwise the complement is read off
    the inverse of the echelon transform.
    """

    if not lineality:
        return [tuple(int(a == b) for b in range(ambient)) for a in range(ambient)]
    needed = ambient - len(lineality)
    units = [tuple(int(a == b) for b in range(ambient)) for a in range(ambient)]
    for choice in itertools.combinations(units, needed):
        basis = [list(vector) for vector in (*lineality, *choice)]
        if abs(int(sympy.Matrix(basis).det())) == 1:
            return list(choice)
    _, transform = hermite_form(transpose([list(v) for v in lineality]))
    inverse = sympy.Matrix(transform).inv()
    return [
        tuple(int(inverse[r, c]) for r in range(ambient))
        for c in range(len(lineality), ambient)
    ]


def coordinates(
    vector: Sequence[int], basis: Sequence[LatticePoint]
) -> tuple[sympy.Rational, ...]:
    """Coordinates of ``vector`` in a basis of the ambient space."""

    matrix = sympy.Matrix([list(b) for b in basis]).T
    solution = matrix.LUsolve(sympy.Matrix(list(vector)))
    return tuple(sympy.Rational(value) for value in solution)


def extreme_rays_of_inequalities(
    inequalities: Sequence[Sequence[int]], dimension: int
) -> list[LatticePoint]:
    """Primitive extreme rays of the pointed cone {y : <a, y> >= 0 for all a}.

    Each extreme ray is the one-dimensional solution of a rank ``dimension-1``
    subsystem of tight inequalities that satisfies the remaining ones.
    """

    if dimension == 0:
        return []
    rows = [list(map(int, row)) for row in inequalities]
    found: list[LatticePoint] = []
    seen: set[LatticePoint] = set()
    for subset in itertools.combinations(range(len(rows)), dimension - 1):
        if subset:
            system = sympy.Matrix([rows[index] for index in subset])
            if system.rank() != dimension - 1:
                continue
            nullspace = system.nullspace()
            if len(nullspace) != 1:
                continue
            direction = rational_to_primitive(nullspace[0])
        else:
            direction = (1,)
        for sign in (1, -1):
            candidate = tuple(sign * value for value in direction)
            if candidate in seen:
                continue
            if all(dot(row, candidate) >= 0 for row in rows):
                seen.add(candidate)
                found.append(candidate)
    logger.debug("Found %d extreme rays from %d inequalities", len(found), len(rows))
    return found


def parallelepiped_points(generators: Sequence[LatticePoint]) -> Iterator[LatticePoint]:
    """Lattice points of the half-open fundamental parallelepiped of a simplicial cone.

    The generators must be linearly independent and span the ambient space.
    Membership uses the integer adjugate so the test stays exact.
    """

    dimension = len(generators)
    columns = sympy.Matrix([list(g) for g in generators]).T
    determinant = int(columns.det())
    if determinant == 0:
        raise LatticeError("Simplicial generators are linearly dependent")
    adjugate = [[int(value) for value in row] for row in columns.adjugate().tolist()]
    bounds = []
    for coordinate in range(dimension):
        entries = [g[coordinate] for g in generators]
        bounds.append(
            range(sum(v for v in entries if v < 0), sum(v for v in entries if v > 0) + 1)
        )
    for point in itertools.product(*bounds):
        scaled = [dot(row, point) for row in adjugate]
        if determinant > 0:
            inside = all(0 <= value < determinant for value in scaled)
        else:
            inside = all(determinant < value <= 0 for value in scaled)
        if inside:
            yield tuple(point)
