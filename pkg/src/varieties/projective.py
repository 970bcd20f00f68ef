"""Homogeneous coordinate algebras of noncommutative projective varieties.

Purpose: CP^n_θ through its homogeneous algebra with the block-embedded
diag(θ, 0) phases, graded dimensions and Hilbert series, the Koszul dual and
its Frobenius pairing, degree-zero Ore localizations matched against the
toric charts, and quotients by homogeneous relations (grassmannians inside
CP_Θ^N).
Related tests: tests/varieties/test_projective.py
"""

from __future__ import annotations

import itertools
import logging
import math
import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterator, Sequence

import numpy as np
import sympy

from src.core.errors import AlgebraError
from src.core.models.identity import IdentityCheck
from src.core.models.presentation import (
    AlgebraPresentation,
    CommutationRelation,
    PolynomialRelation,
)
from src.core.scalars import ONE, ZERO, PhaseScalar, ThetaSpec, phase_unit, specialize
from src.core.words import QuasiCommutativeAlgebra, QuasiPolynomial, phase_table
from src.toric.charts import chart_algebra, commutation_phase_from_star
from src.toric.lattice import LatticePoint
from src.toric.lattice_fans import Cone, Fan, validate_fan

from .grassmann_flag import PlueckerContext, QuadraticRelation, pluecker_relations, theta_capital

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class HomogeneousAlgebra:
    """Quasi-commutative algebra graded by degree, with torus weights per generator."""

    name: str
    algebra: QuasiCommutativeAlgebra
    weights: tuple[tuple[int, ...], ...]
    relations: tuple[QuasiPolynomial, ...] = ()
    theta: ThetaSpec | None = field(default=None, compare=False)

    @property
    def size(self) -> int:
        return self.algebra.size

    @property
    def names(self) -> tuple[str, ...]:
        return self.algebra.names

    def generator(self, index: int) -> QuasiPolynomial:
        """w_index, 1-based."""

        if not 1 <= index <= self.size:
            raise AlgebraError("Generator index out of range", witness=index)
        return self.algebra.generator(index - 1)

    def presentation(self) -> AlgebraPresentation:
        commutation = tuple(
            CommutationRelation(self.names[a], self.names[b], self.algebra.phases[a][b])
            for a, b in itertools.combinations(range(self.size), 2)
        )
        relations = tuple(
            PolynomialRelation(f"f{index}", relation.canonical())
            for index, relation in enumerate(self.relations, start=1)
        )
        return AlgebraPresentation(
            name=self.name,
            generators=self.names,
            commutation=commutation,
            relations=relations,
            metadata={"grading": "degree", "weights": [list(w) for w in self.weights]},
        )


def projective_space(n: int, theta: ThetaSpec | None = None) -> HomogeneousAlgebra:
    """w_i w_j = q_ij^2 w_j w_i for i, j ≤ n and w_{n+1} central."""

    if n < 1:
        raise AlgebraError("projective_space requires n ≥ 1", witness=n)

    def phase(a: int, b: int) -> PhaseScalar:
        if b == n:
            return ONE
        return phase_unit(a + 1, b + 1) ** 2

    names = tuple(f"w{k}" for k in range(1, n + 2))
    weights = tuple(
        tuple(int(a == k) for a in range(1, n + 1)) for k in range(1, n + 2)
    )
    return HomogeneousAlgebra(
        name=f"CP^{n}_theta",
        algebra=QuasiCommutativeAlgebra(names=names, phases=phase_table(n + 1, phase)),
        weights=weights,
        theta=theta.embedded(n + 1) if theta is not None else None,
    )


def grassmannian_ambient(d: int, n: int, theta: ThetaSpec | None = None) -> HomogeneousAlgebra:
    """CP_Θ^N on the Plücker coordinates L[J] with phases exp(iΘ^{JJ'})."""

    ctx = PlueckerContext.grassmannian(d, n, theta)
    generators = ctx.generators(d)
    names = tuple(ctx.name(cols) for cols in generators)
    phases = phase_table(
        len(generators), lambda a, b: theta_capital(generators[a], generators[b]) ** 2
    )
    weights = tuple(
        tuple(int(a in cols) for a in range(1, n + 1)) for cols in generators
    )
    return HomogeneousAlgebra(
        name=f"CP^{len(generators) - 1}_Theta",
        algebra=QuasiCommutativeAlgebra(names=names, phases=phases),
        weights=weights,
        theta=theta,
    )


def quotient_variety(
    algebra: HomogeneousAlgebra, relations: Sequence[QuasiPolynomial], *, name: str | None = None
) -> HomogeneousAlgebra:
    """A/I for homogeneous, weight-homogeneous relations f_1..f_m."""

    kept = list(algebra.relations)
    for relation in relations:
        if relation.algebra != algebra.algebra:
            raise AlgebraError("Relation lives in a different algebra", witness=relation.canonical())
        if relation.is_zero():
            continue
        weights = relation.weights(lambda index: algebra.weights[index])
        if len(relation.degrees()) > 1 or len(weights) > 1:
            raise AlgebraError("Quotient relations must be homogeneous", witness=relation.canonical())
        kept.append(relation)
    return HomogeneousAlgebra(
        name=name or algebra.name,
        algebra=algebra.algebra,
        weights=algebra.weights,
        relations=tuple(kept),
        theta=algebra.theta,
    )


def relation_in_ambient(ambient: HomogeneousAlgebra, relation: QuadraticRelation) -> QuasiPolynomial:
    """Σ c L[A] L[B] as an element of the Plücker ambient algebra."""

    position = {name: index for index, name in enumerate(ambient.names)}
    total = QuasiPolynomial(ambient.algebra, {})
    for (left, right), coeff in sorted(relation.normalized_terms().items()):
        word = [position[PlueckerContext.name(left)], position[PlueckerContext.name(right)]]
        total = total + ambient.algebra.word(word).scale(coeff)
    return total


def grassmannian_variety(d: int, n: int, theta: ThetaSpec | None = None) -> HomogeneousAlgebra:
    """Gr_θ(d; n) inside CP_Θ^N cut out by its r = 1 Plücker relations."""

    ambient = grassmannian_ambient(d, n, theta)
    relations = [relation_in_ambient(ambient, rel) for rel in pluecker_relations(d, n, theta)]
    return quotient_variety(ambient, relations, name=f"Gr_theta({d};{n})")


def _compositions(total: int, parts: int) -> Iterator[tuple[int, ...]]:
    if parts == 0:
        if total == 0:
            yield ()
        return
    for bars in itertools.combinations(range(total + parts - 1), parts - 1):
        previous = -1
        out = []
        for bar in (*bars, total + parts - 1):
            out.append(bar - previous - 1)
            previous = bar
        yield tuple(out)


def _random_point(length: int, seed: int) -> list[Fraction]:
    rng = random.Random(seed)
    return [Fraction(rng.randint(2, 997), rng.randint(2, 997)) for _ in range(length)]


def _rational(value: object) -> sympy.Rational:
    fraction = Fraction(value)  # type: ignore[arg-type]
    return sympy.Rational(fraction.numerator, fraction.denominator)


def _exact_rank(rows: Sequence[Sequence[PhaseScalar]], seed: int) -> int:
    """Rank over the field of phase scalars, evaluated at a random rational point."""

    if not rows or not rows[0]:
        return 0
    length = max((entry.exponent_length() for row in rows for entry in row), default=0)
    point = _random_point(length, seed)
    matrix = sympy.Matrix(
        [[_rational(entry.evaluate(point)) for entry in row] for row in rows]
    )
    return int(matrix.rank())


def graded_dimension(algebra: HomogeneousAlgebra, k: int, *, seed: int = 0) -> int:
    """dim A_k; C(N+k, N) for the free algebra on N+1 generators."""

    if k < 0:
        return 0
    size = algebra.size
    if not algebra.relations:
        return math.comb(size - 1 + k, size - 1)
    basis = list(_compositions(k, size))
    position = {exps: index for index, exps in enumerate(basis)}
    rows: list[list[PhaseScalar]] = []
    for relation in algebra.relations:
        degree = next(iter(relation.degrees()))
        rest = k - degree
        if rest < 0:
            continue
        for left_degree in range(rest + 1):
            for left in _compositions(left_degree, size):
                for right in _compositions(rest - left_degree, size):
                    element = algebra.algebra.monomial(left) * relation * algebra.algebra.monomial(right)
                    row = [ZERO] * len(basis)
                    for exps, coeff in element.items():
                        row[position[exps]] = coeff
                    rows.append(row)
    return len(basis) - _exact_rank(rows, seed)


def hilbert_series(algebra: HomogeneousAlgebra, degree: int) -> list[int]:
    """Coefficients of H_A(s) = Σ dim A_k s^k up to ``degree``."""

    return [graded_dimension(algebra, k) for k in range(degree + 1)]


@dataclass(frozen=True)
class KoszulDual:
    """A^!: w̌_i w̌_j + p_ij w̌_j w̌_i = 0 and w̌_i^2 = 0."""

    base: HomogeneousAlgebra
    algebra: QuasiCommutativeAlgebra

    @property
    def size(self) -> int:
        return self.algebra.size

    def basis(self, k: int) -> list[tuple[int, ...]]:
        """Strictly increasing index words of length k, as 0/1 exponents."""

        out = []
        for chosen in itertools.combinations(range(self.size), k):
            exps = tuple(int(a in chosen) for a in range(self.size))
            if not self.algebra.monomial(exps).is_zero():
                out.append(exps)
        return out

    def presentation(self) -> AlgebraPresentation:
        commutation = tuple(
            CommutationRelation(self.algebra.names[a], self.algebra.names[b], self.algebra.phases[a][b])
            for a, b in itertools.combinations(range(self.size), 2)
        )
        return AlgebraPresentation(
            name=f"{self.base.name}^!",
            generators=self.algebra.names,
            commutation=commutation,
            nilpotent=True,
            metadata={"grading": "degree"},
        )


def koszul_dual(algebra: HomogeneousAlgebra) -> KoszulDual:
    if algebra.relations:
        raise AlgebraError("koszul_dual is only defined for the free quantum algebra")
    size = algebra.size
    base = algebra.algebra
    names = tuple(f"{name}v" for name in base.names)
    phases = phase_table(size, lambda a, b: -base.phases[a][b])
    return KoszulDual(
        base=algebra,
        algebra=QuasiCommutativeAlgebra(names=names, phases=phases, nilpotent=True),
    )


def koszul_hilbert_series(dual: KoszulDual, degree: int) -> list[int]:
    return [len(dual.basis(k)) if k <= dual.size else 0 for k in range(degree + 1)]


def series_product_identity(n: int, degree: int = 10, theta: ThetaSpec | None = None) -> IdentityCheck:
    """H_A(s) H_{A^!}(-s) = 1 as power series truncated at ``degree``."""

    algebra = projective_space(n, theta)
    first = hilbert_series(algebra, degree)
    second = koszul_hilbert_series(koszul_dual(algebra), degree)
    product = [
        sum(first[a] * second[k - a] * (-1) ** (k - a) for a in range(k + 1))
        for k in range(degree + 1)
    ]
    expected = [1] + [0] * degree
    return IdentityCheck("H_A(s)*H_A!(-s)=1", product, expected, witness=(n, degree))


def frobenius_pairing_matrix(dual: KoszulDual, k: int) -> list[list[PhaseScalar]]:
    """Top-degree coefficient of X^u X^v for u of degree k and v of degree N+1-k."""

    top = dual.size
    if not 0 <= k <= top:
        raise AlgebraError("Frobenius pairing degree out of range", witness=(k, top))
    top_exps = (1,) * top
    rows = []
    for left in dual.basis(k):
        row = []
        for right in dual.basis(top - k):
            product = dual.algebra.monomial(left) * dual.algebra.monomial(right)
            row.append(product.terms.get(top_exps, ZERO))
        rows.append(row)
    return rows


def frobenius_pairing_rank(
    dual: KoszulDual, k: int, *, theta: ThetaSpec | None = None, seed: int = 0
) -> int:
    """Rank of A^!_k ⊗ A^!_{N+1-k} → A^!_{N+1}.

    Exact at a random rational point of the q-torus, or floating point after
    specialization when a numeric θ is given.
    """

    matrix = frobenius_pairing_matrix(dual, k)
    if theta is not None and theta.mode == "numeric":
        values = np.array([[specialize(entry, theta) for entry in row] for row in matrix], dtype=complex)
        return int(np.linalg.matrix_rank(values)) if values.size else 0
    return _exact_rank(matrix, seed)


def _localized(algebra: HomogeneousAlgebra, index: int) -> QuasiCommutativeAlgebra:
    if not 1 <= index <= algebra.size:
        raise AlgebraError("Localization index out of range", witness=index)
    base = algebra.algebra
    return QuasiCommutativeAlgebra(
        names=base.names, phases=base.phases, invertible=frozenset({index - 1})
    )


def _degree0_generator(localized: QuasiCommutativeAlgebra, index: int, k: int) -> QuasiPolynomial:
    """y_k = w_index^{-1} w_k."""

    return localized.word([(index - 1, -1), (k - 1, 1)])


def localized_phase(algebra: HomogeneousAlgebra, index: int, k: int, l: int) -> PhaseScalar:
    """c with y_k y_l = c y_l y_k, computed by normal ordering in A[w_index^{-1}]."""

    localized = _localized(algebra, index)
    y_k = _degree0_generator(localized, index, k)
    y_l = _degree0_generator(localized, index, l)
    (_, forward), = (y_k * y_l).items()
    (_, backward), = (y_l * y_k).items()
    return forward * backward.inverse()


def ore_commutation_phase(algebra: HomogeneousAlgebra, index: int, k: int, l: int) -> PhaseScalar:
    """p_ki^{-1} p_li p_kl from w_i^{-1} w_k = p_ki w_k w_i^{-1}."""

    p = algebra.algebra.phases
    i, a, b = index - 1, k - 1, l - 1
    return p[a][i].inverse() * p[b][i] * p[a][b]


def localize_degree0(algebra: HomogeneousAlgebra, index: int) -> AlgebraPresentation:
    """Degree-zero part of A[w_index^{-1}] on y_k = w_index^{-1} w_k."""

    _localized(algebra, index)
    others = [k for k in range(1, algebra.size + 1) if k != index]
    names = tuple(f"y{k}" for k in others)
    commutation = tuple(
        CommutationRelation(f"y{k}", f"y{l}", localized_phase(algebra, index, k, l))
        for k, l in itertools.combinations(others, 2)
    )
    weights = {
        f"y{k}": [a - b for a, b in zip(algebra.weights[k - 1], algebra.weights[index - 1])]
        for k in others
    }
    return AlgebraPresentation(
        name=f"{algebra.name}[w{index}^-1]_0",
        generators=names,
        commutation=commutation,
        metadata={"localized_at": algebra.names[index - 1], "weights": weights},
    )


def projective_fan(n: int) -> Fan:
    """Fan of CP^n: rays e_1..e_n, e_0 = -Σ e_i; cone U_i omits the ray dual to w_i."""

    rays = [tuple(int(a == k) for a in range(n)) for k in range(n)]
    rays.append(tuple(-1 for _ in range(n)))
    cones = []
    for index in range(1, n + 2):
        omitted = n if index == n + 1 else index - 1
        cones.append(Cone.from_rays([ray for position, ray in enumerate(rays) if position != omitted], n))
    return validate_fan(cones, names=[f"U{index}" for index in range(1, n + 2)])


@dataclass
class ChartIsoReport:
    n: int
    checks: list[IdentityCheck] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return all(check.passed for check in self.checks)


def chart_iso_check(n: int, theta: ThetaSpec | None = None) -> ChartIsoReport:
    """Match each chart algebra of CP^n with the degree-zero localization at w_i.

    x_k ↦ y_k = w_i^{-1} w_k, where the chart generator of x_k is the weight
    e_k - e_i (e_{n+1} = 0).
    """

    algebra = projective_space(n, theta)
    fan = projective_fan(n)
    report = ChartIsoReport(n=n)
    for index in range(1, n + 2):
        others = [k for k in range(1, n + 2) if k != index]
        vectors: list[LatticePoint] = [
            tuple(a - b for a, b in zip(algebra.weights[k - 1], algebra.weights[index - 1]))
            for k in others
        ]
        chart = chart_algebra(
            fan.cone_by_id(f"U{index}"),
            theta,
            order=vectors,
            names=[f"y{k}" for k in others],
            label=f"U{index}",
        )
        for a, b in itertools.combinations(range(len(others)), 2):
            k, l = others[a], others[b]
            direct = localized_phase(algebra, index, k, l)
            witness = (index, k, l)
            report.checks.append(IdentityCheck("chart=localized", chart.check_theta[a][b] ** 2, direct, witness))
            report.checks.append(IdentityCheck("ore=localized", ore_commutation_phase(algebra, index, k, l), direct, witness))
            report.checks.append(IdentityCheck("star=localized", commutation_phase_from_star(chart, a, b), direct, witness))
        localized = _localized(algebra, index)
        for a, k in enumerate(others):
            y_k = _degree0_generator(localized, index, k)
            (weight,) = y_k.weights(lambda position: algebra.weights[position])
            unit = tuple(int(b == a) for b in range(len(others)))
            chart_weight = tuple(chart.weight(unit, t) for t in range(1, n + 1))
            report.checks.append(IdentityCheck("weight", weight, chart_weight, witness=(index, k)))
    logger.info("Chart isomorphism CP^%d: %d checks, ok=%s", n, len(report.checks), report.ok)
    return report
