"""Named verification suites and their execution.

Purpose: Expand each suite into picklable work items, run the items inline or
on a process pool, and aggregate the identity outcomes in item order.
Related tests: tests/services/test_suites.py
"""

from __future__ import annotations

import itertools
import json
import logging
import math
import random
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field
from pathlib import Path
from typing import Any, Callable

from src.core.errors import InputError
from src.core.models.identity import CheckStatus, IdentityCheck
from src.core.scalars import PhaseScalar, ThetaSpec, pair_count, r_coeff
from src.matrices.antipode import (
    adjugate_phase,
    antipode_entry,
    generator_matrix,
    matrix_product,
    quantum_adjugate,
    right_quantum_adjugate,
    solve_adjugate_coefficients,
)
from src.matrices.minors import (
    det_centrality_condition,
    det_commutator_residuals,
    det_permutability_sides,
    laplace_col,
    laplace_row,
    leibniz_det,
    minor,
    minor_commutation_sides,
    qdet,
)
from src.matrices.qpolynomial import QMatrixContext, localize_det, ore_product, ore_sum
from src.toric.charts import chart_algebra, gluing_holds, gluing_relations, transition_map
from src.toric.kaehler import differential, verify_leibniz
from src.toric.lattice_fans import Cone, faces
from src.toric.quantum_torus import LaurentElement, star
from src.varieties.coinvariants import commutation_checks, eta_checks, eta_matrix
from src.varieties.grassmann_flag import (
    PlueckerContext,
    RelationClass,
    classify_relation,
    higher_pluecker_relation,
    pluecker_relation,
    pluecker_relations,
    row_sections,
    taut_section_relations,
    theta_capital,
    young_relation,
)
from src.varieties.monomial_ideals import (
    monomial_ideal,
    monomial_ideal_from_generators,
    prime_witness,
)
from src.varieties.projective import (
    chart_iso_check,
    frobenius_pairing_rank,
    grassmannian_variety,
    hilbert_series,
    koszul_dual,
    koszul_hilbert_series,
    projective_fan,
    projective_space,
    series_product_identity,
)

from .config import SizeLimits
from .inputs import load_fan
from .reports import CheckResult, VerificationReport, check_result

logger = logging.getLogger(__name__)

RESOURCES_DIR = Path(__file__).resolve().parent.parent / "resources"
GOLDEN_DIR = RESOURCES_DIR / "golden"
FANS_DIR = RESOURCES_DIR / "fans"

Item = tuple[Any, ...]
Checks = list[IdentityCheck]


@dataclass(frozen=True)
class SuiteParams:
    """Sizes and seeds for one suite run; ``None`` sizes use the suite default."""

    n: int | None = None
    d: int | None = None
    degree: int = 6
    box: int = 8
    seed: int = 0
    trials: int = 100
    theta: dict[str, Any] | None = field(default=None, compare=False)

    def theta_spec(self) -> ThetaSpec | None:
        return ThetaSpec.from_json(self.theta) if self.theta is not None else None

    def size(self, default: int) -> int:
        return self.n if self.n is not None else default

    def rank(self, default: int) -> int:
        return self.d if self.d is not None else default

    def describe(self) -> dict[str, Any]:
        data = asdict(self)
        data.pop("theta")
        return {key: value for key, value in data.items() if value is not None}


@dataclass(frozen=True)
class Suite:
    name: str
    description: str
    expand: Callable[[SuiteParams], list[Item]]
    run: Callable[[SuiteParams, Item], Checks]
    # Smallest numeric θ covering every phase the suite produces.
    theta_size: Callable[[SuiteParams], int]


def _torus(default: int, extra: int = 0) -> Callable[[SuiteParams], int]:
    def size(params: SuiteParams) -> int:
        return params.size(default) + extra

    return size


def _fixed_torus(rank: int) -> Callable[[SuiteParams], int]:
    return lambda params: rank


def check_caps(params: SuiteParams, limits: SizeLimits) -> None:
    """Reject sizes above the configured caps."""

    for label, value, cap in (
        ("n", params.n, limits.max_n),
        ("d", params.d, limits.max_d),
        ("degree", params.degree, limits.max_degree),
        ("box", params.box, limits.box),
    ):
        if value is not None and value > cap:
            raise InputError(f"{label} exceeds the configured cap", witness={label: value, "cap": cap})
        if value is not None and value < 1 and label != "degree":
            raise InputError(f"{label} must be positive", witness={label: value})


# star-assoc -----------------------------------------------------------------

STAR_CHUNK = 25


def _random_element(rng: random.Random, rank: int) -> LaurentElement:
    terms: dict[tuple[int, ...], PhaseScalar] = {}
    for _ in range(rng.randint(1, 2)):
        point = tuple(rng.randint(-2, 2) for _ in range(rank))
        exps = tuple(rng.randint(-1, 1) for _ in range(pair_count(rank)))
        terms[point] = PhaseScalar.monomial(exps, rng.choice((1, -1, 2)))
    return LaurentElement(rank, terms)


def _expand_star(params: SuiteParams) -> list[Item]:
    return [
        (start, min(STAR_CHUNK, params.trials - start))
        for start in range(0, params.trials, STAR_CHUNK)
    ]


def _run_star(params: SuiteParams, item: Item) -> Checks:
    start, count = item
    rank = params.size(3)
    rng = random.Random(params.seed * 100003 + start)
    checks = []
    for index in range(start, start + count):
        a, b, c = (_random_element(rng, rank) for _ in range(3))
        checks.append(IdentityCheck("star-assoc", star(star(a, b), c), star(a, star(b, c)), witness=index))
        checks.append(IdentityCheck("star-unit", star(a, LaurentElement.one(rank)), a, witness=index))
    return checks


# det ------------------------------------------------------------------------


def _expand_det(params: SuiteParams) -> list[Item]:
    n = params.size(3)
    items: list[Item] = [("leibniz", m) for m in range(1, n + 1)]
    items.append(("permutability", n))
    items.extend(("adjugate-oracle", m) for m in range(1, n + 1))
    items.extend(("antipode", m) for m in range(1, n + 1))
    items.append(("ore", min(n, 2)))
    if params.theta is not None:
        items.append(("centrality", n))
    return items


def _run_det(params: SuiteParams, item: Item) -> Checks:
    kind, m = item
    ctx = QMatrixContext(m)
    if kind == "leibniz":
        det = qdet(ctx)
        return [
            IdentityCheck("qdet=leibniz(rows)", det, leibniz_det(ctx), witness=m),
            IdentityCheck("qdet=leibniz(cols)", det, leibniz_det(ctx, by_columns=True), witness=m),
        ]
    if kind == "permutability":
        checks = []
        for k, l in itertools.product(range(1, m + 1), repeat=2):
            lhs, rhs = det_permutability_sides(ctx, k, l)
            checks.append(IdentityCheck("det-permutability", lhs, rhs, witness=(k, l)))
        return checks
    if kind == "adjugate-oracle":
        return _adjugate_oracle_checks(ctx)
    if kind == "antipode":
        return _antipode_checks(ctx)
    if kind == "ore":
        return _ore_checks(ctx)
    full = params.theta_spec()
    if full is None:
        raise InputError("det-centrality requires a numeric θ")
    theta = full.leading(m)
    central = det_centrality_condition(theta)
    residual = max(det_commutator_residuals(ctx, theta).values())
    return [IdentityCheck("det-centrality", residual < 1e-9, central, witness=m)]


def _antipode_checks(ctx: QMatrixContext) -> Checks:
    n = ctx.n
    generators = generator_matrix(ctx)
    adjugate = quantum_adjugate(ctx)
    antipode = tuple(
        tuple(antipode_entry(ctx, i, j) for j in range(1, n + 1)) for i in range(1, n + 1)
    )
    checks = []
    for label, product, diagonal in (
        ("adj*G=det", matrix_product(adjugate, generators, ctx), ctx.det),
        ("G*adj'=det", matrix_product(generators, right_quantum_adjugate(ctx), ctx), ctx.det),
        ("S*G=I", matrix_product(antipode, generators, ctx), ctx.one()),
        ("G*S=I", matrix_product(generators, antipode, ctx), ctx.one()),
    ):
        for i, j in itertools.product(range(n), repeat=2):
            expected = diagonal if i == j else ctx.zero()
            checks.append(IdentityCheck(label, product[i][j], expected, witness=(n, i + 1, j + 1)))
    return checks


def _adjugate_oracle_checks(ctx: QMatrixContext) -> Checks:
    n = ctx.n
    left = solve_adjugate_coefficients(ctx)
    right = solve_adjugate_coefficients(ctx, right=True)
    checks = []
    for (i, m), solved in sorted(left.items()):
        closed = adjugate_phase(n, i, m) * (-1) ** (i + m)
        checks.append(IdentityCheck("adjugate-weight(left)", solved, closed, witness=(n, i, m)))
        closed_right = closed * ctx.permutability[ctx.index(m, i)]
        checks.append(IdentityCheck("adjugate-weight(right)", right[(i, m)], closed_right, witness=(n, i, m)))
    return checks


def _ore_checks(ctx: QMatrixContext) -> Checks:
    checks = []
    entries = list(itertools.product(range(1, ctx.n + 1), repeat=2))
    for first, second in itertools.product(entries, repeat=2):
        a, b = ctx.gen(*first), ctx.gen(*second)
        direct = localize_det(a, 1) * localize_det(b, 2)
        checks.append(IdentityCheck("ore-product", ore_product(1, a, 2, b), direct, witness=(first, second)))
        added = localize_det(a, 1) + localize_det(b, 2)
        checks.append(IdentityCheck("ore-sum", ore_sum(1, a, 2, b), added, witness=(first, second)))
    return checks


# laplace --------------------------------------------------------------------


def _expand_laplace(params: SuiteParams) -> list[Item]:
    n = params.size(4)
    sizes = [params.d] if params.d is not None else range(1, min(3, n) + 1)
    return [(d, rows) for d in sizes for rows in itertools.combinations(range(1, n + 1), d)]


def _run_laplace(params: SuiteParams, item: Item) -> Checks:
    d, rows = item
    n = params.size(4)
    ctx = QMatrixContext(n)
    checks = []
    for cols in itertools.combinations(range(1, n + 1), d):
        expected = minor(ctx, rows, cols)
        for k in range(1, d + 1):
            witness = (rows, cols, k)
            checks.append(IdentityCheck("laplace-row", laplace_row(ctx, rows, cols, k), expected, witness))
            checks.append(IdentityCheck("laplace-col", laplace_col(ctx, rows, cols, k), expected, witness))
    return checks


# minors ---------------------------------------------------------------------


def _minor_indices(n: int, d: int) -> list[tuple[tuple[int, ...], tuple[int, ...]]]:
    combos = list(itertools.combinations(range(1, n + 1), d))
    return list(itertools.product(combos, repeat=2))


def _expand_minors(params: SuiteParams) -> list[Item]:
    n = params.size(4)
    top = min(params.rank(2), n)
    items: list[Item] = []
    for d in range(1, top + 1):
        items.extend(("commute", d, rows, cols) for rows, cols in _minor_indices(n, d))
    items.extend(("theta", d) for d in range(1, top + 1))
    return items


def _run_minors(params: SuiteParams, item: Item) -> Checks:
    n = params.size(4)
    if item[0] == "theta":
        d = item[1]
        rows = tuple(range(1, d + 1))
        return [
            IdentityCheck("R^2=exp(iTheta)", r_coeff(rows, cols, rows, other) ** 2, theta_capital(cols, other) ** 2, (cols, other))
            for cols, other in itertools.product(itertools.combinations(range(1, n + 1), d), repeat=2)
        ]
    _, d, rows, cols = item
    ctx = QMatrixContext(n)
    top = min(params.rank(2), n)
    checks = []
    for d_other in range(1, top + 1):
        for rows_other, cols_other in _minor_indices(n, d_other):
            lhs, rhs = minor_commutation_sides(ctx, rows, cols, rows_other, cols_other)
            checks.append(IdentityCheck("minor-commutation", lhs, rhs, (rows, cols, rows_other, cols_other)))
    return checks


# pluecker / young / classify --------------------------------------------------


def _grassmann_sizes(params: SuiteParams) -> tuple[int, int]:
    d, n = params.rank(2), params.size(4)
    if not 1 <= d <= n:
        raise InputError("Grassmannian suites require 1 ≤ d ≤ n", witness=(d, n))
    return d, n


def _expand_pluecker(params: SuiteParams) -> list[Item]:
    d, n = _grassmann_sizes(params)
    items: list[Item] = []
    if d + 1 <= n:
        items.extend(("r1", rows) for rows in itertools.combinations(range(1, n + 1), d + 1))
    if d >= 2 and d + 2 <= n:
        items.extend(("r2", rows) for rows in itertools.combinations(range(1, n + 1), d + 2))
    items.append(("sections",))
    return items


def _run_pluecker(params: SuiteParams, item: Item) -> Checks:
    d, n = _grassmann_sizes(params)
    ctx = PlueckerContext.grassmannian(d, n)
    zero = ctx.matrix.zero()
    checks = []
    if item[0] == "sections":
        for relation in taut_section_relations(d, n):
            for row in range(1, d + 1):
                value = relation.substitute(row_sections(ctx, row))
                checks.append(IdentityCheck("taut-section", value, zero, witness=(relation.cols, row)))
        return checks
    kind, rows = item
    r = 1 if kind == "r1" else 2
    for cols in itertools.combinations(range(1, n + 1), d - r):
        if r == 1:
            relation = pluecker_relation(ctx, rows, cols)
        else:
            relation = higher_pluecker_relation(ctx, rows, cols, r)
        checks.append(IdentityCheck(f"pluecker(r={r})", relation.polynomial, zero, witness=(rows, cols)))
    return checks


def _expand_young(params: SuiteParams) -> list[Item]:
    d, n = _grassmann_sizes(params)
    if d + 1 > n:
        return []
    return [
        (d_prime, rows)
        for d_prime in range(1, d)
        for rows in itertools.combinations(range(1, n + 1), d + 1)
    ]


def _run_young(params: SuiteParams, item: Item) -> Checks:
    d, n = _grassmann_sizes(params)
    d_prime, rows = item
    ctx = PlueckerContext(n=n, sizes=tuple(sorted({d, d_prime})))
    zero = ctx.matrix.zero()
    return [
        IdentityCheck("young", young_relation(ctx, rows, cols, d, d_prime).polynomial, zero, (d_prime, rows, cols))
        for cols in itertools.combinations(range(1, n + 1), d_prime - 1)
    ]


def _expected_class(rows: tuple[int, ...], cols: tuple[int, ...]) -> RelationClass:
    repeated = [value for value in set(rows) if rows.count(value) > 1]
    if repeated:
        return RelationClass.TRIVIAL if repeated[0] in cols else RelationClass.ALTERNATING
    surviving = len(rows) - len(set(rows) & set(cols))
    return RelationClass.PLUECKER if surviving >= 3 else RelationClass.STRUCTURE


def _expand_classify(params: SuiteParams) -> list[Item]:
    d, n = _grassmann_sizes(params)
    if d + 1 > n:
        return [("count",)]
    items: list[Item] = [("rows", rows) for rows in itertools.combinations(range(1, n + 1), d + 1)]
    for rows in itertools.combinations(range(1, n + 1), d):
        for position in range(d):
            items.append(("rows", tuple(sorted((*rows, rows[position])))))
    items.append(("count",))
    return items


def _run_classify(params: SuiteParams, item: Item) -> Checks:
    d, n = _grassmann_sizes(params)
    if item[0] == "count":
        found = len(pluecker_relations(d, n))
        if d == 1:
            return [IdentityCheck("pluecker-count", found, 0, witness=(d, n))]
        if d == 2:
            return [IdentityCheck("pluecker-count", found, math.comb(n, 4), witness=(d, n))]
        return [IdentityCheck("pluecker-count", found, found, witness=(d, n), informational=True)]
    rows = item[1]
    ctx = PlueckerContext.grassmannian(d, n)
    zero = ctx.matrix.zero()
    checks = []
    for cols in itertools.combinations(range(1, n + 1), d - 1):
        relation = pluecker_relation(ctx, rows, cols)
        found = classify_relation(relation)
        checks.append(IdentityCheck("classify", found.value, _expected_class(rows, cols).value, (rows, cols)))
        if found is RelationClass.ALTERNATING:
            checks.append(IdentityCheck("alternating-cancels", relation.normalized_terms(), {}, (rows, cols)))
        if found is RelationClass.STRUCTURE:
            checks.append(IdentityCheck("structure-vanishes", relation.polynomial, zero, (rows, cols)))
    return checks


# chart-iso / hilbert / koszul -------------------------------------------------


def _expand_per_size(default: int) -> Callable[[SuiteParams], list[Item]]:
    def expand(params: SuiteParams) -> list[Item]:
        return [(m,) for m in range(1, params.size(default) + 1)]

    return expand


def _run_chart_iso(params: SuiteParams, item: Item) -> Checks:
    return chart_iso_check(item[0]).checks


def _expand_hilbert(params: SuiteParams) -> list[Item]:
    return [*_expand_per_size(2)(params), ("grassmannian",)]


def _run_hilbert(params: SuiteParams, item: Item) -> Checks:
    degree = params.degree
    if item[0] == "grassmannian":
        top = min(degree, 3)
        expected = [(k + 1) * (k + 2) ** 2 * (k + 3) // 12 for k in range(top + 1)]
        actual = hilbert_series(grassmannian_variety(2, 4), top)
        return [IdentityCheck("hilbert(Gr(2;4))", actual, expected, witness=(2, 4))]
    m = item[0]
    free = [math.comb(m + k, m) for k in range(degree + 1)]
    return [
        series_product_identity(m, degree),
        IdentityCheck("hilbert(CP^n)", hilbert_series(projective_space(m), degree), free, witness=m),
    ]


def _run_koszul(params: SuiteParams, item: Item) -> Checks:
    (m,) = item
    dual = koszul_dual(projective_space(m))
    top = dual.size
    checks = [
        IdentityCheck(
            "koszul-dimensions",
            koszul_hilbert_series(dual, top),
            [math.comb(top, k) for k in range(top + 1)],
            witness=m,
        )
    ]
    theta = params.theta_spec()
    for k in range(top + 1):
        rank = frobenius_pairing_rank(dual, k, theta=theta, seed=params.seed)
        checks.append(IdentityCheck("frobenius-perfect", rank, math.comb(top, k), witness=(m, k)))
    return checks


# eta ------------------------------------------------------------------------

ETA_PAIRS = (
    ("eta*eta", "eta", "eta"),
    ("eta*eta_perp", "eta", "eta_perp"),
    ("eta_perp*eta_perp", "eta_perp", "eta_perp"),
    ("eta_hat*eta_hat", "eta_hat", "eta_hat"),
    ("eta_hat*eta_hat_perp", "eta_hat", "eta_hat_perp"),
)


def _expand_eta(params: SuiteParams) -> list[Item]:
    params_d, n = params.rank(1), params.size(3)
    if not 1 <= params_d <= n:
        raise InputError("eta requires 1 ≤ d ≤ n", witness=(params_d, n))
    return [("projectors",), *(("commute", name) for name, _, _ in ETA_PAIRS)]


def _run_eta(params: SuiteParams, item: Item) -> Checks:
    algebra = eta_matrix(params.rank(1), params.size(3))
    if item[0] == "projectors":
        return eta_checks(algebra, commutation=False).checks
    name = item[1]
    _, left, right = next(entry for entry in ETA_PAIRS if entry[0] == name)
    left_grid, right_grid = getattr(algebra, left), getattr(algebra, right)
    return commutation_checks(algebra, name, left_grid, right_grid)


# ideals ---------------------------------------------------------------------

IDEAL_CONES: dict[str, tuple[tuple[tuple[int, ...], ...], int]] = {
    "plane": (((1, 0), (0, 1)), 2),
    "orbifold": (((1, 0), (1, 2)), 2),
    "conifold": (((1, 0, 0), (0, 1, 0), (1, 0, 1), (0, 1, 1)), 3),
}


def _expand_ideals(params: SuiteParams) -> list[Item]:
    return [(name,) for name in IDEAL_CONES] + [("non-prime",)]


def _run_ideals(params: SuiteParams, item: Item) -> Checks:
    if item[0] == "non-prime":
        plane = Cone.from_rays(IDEAL_CONES["plane"][0], 2)
        ideal = monomial_ideal_from_generators(plane, [(1, 1)])
        return [
            IdentityCheck("ideal-closed", ideal.verify_ideal_property(params.box), None, witness="<(1,1)>"),
            IdentityCheck("non-prime-witness", prime_witness(ideal, params.box), ((0, 1), (1, 0)), witness="<(1,1)>"),
        ]
    rays, ambient = IDEAL_CONES[item[0]]
    cone = Cone.from_rays(rays, ambient)
    box = params.box if ambient <= 2 else min(params.box, 3)
    checks = []
    for face in faces(cone):
        ideal = monomial_ideal(cone, face)
        witness = (item[0], [list(ray) for ray in face.rays])
        checks.append(IdentityCheck("ideal-closed", ideal.verify_ideal_property(box), None, witness))
        checks.append(IdentityCheck("face-ideal-prime", prime_witness(ideal, box), None, witness))
        checks.append(IdentityCheck("zero-iff-trivial-face", ideal.is_zero(box), not face.rays, witness))
    return checks


# kaehler --------------------------------------------------------------------


def _expand_kaehler(params: SuiteParams) -> list[Item]:
    return [(f"U{index}",) for index in range(1, 4)] + [("moyal",)]


def _run_kaehler(params: SuiteParams, item: Item) -> Checks:
    if item[0] == "moyal":
        chart = chart_algebra(Cone.from_rays([(1, 0), (0, 1)], 2), label="plane")
        dx2 = differential(chart, (0, 1))
        phase = chart.algebra.phases[0][1]
        return [IdentityCheck("x1*dx2=q^2*dx2*x1", dx2.left_mul((1, 0)), dx2.right_mul((1, 0)).scale(phase))]
    fan = projective_fan(2)
    chart = chart_algebra(fan.cone_by_id(item[0]), label=item[0])
    report = verify_leibniz(chart, params.trials, random.Random(params.seed))
    return [IdentityCheck("leibniz", report.failures, [], witness=item[0])]


# examples -------------------------------------------------------------------


def _expand_examples(params: SuiteParams) -> list[Item]:
    return [(path.name,) for path in sorted(GOLDEN_DIR.glob("*.json"))]


def _run_examples(params: SuiteParams, item: Item) -> Checks:
    golden = json.loads((GOLDEN_DIR / item[0]).read_text(encoding="utf-8"))
    fan_input = load_fan(FANS_DIR / golden["fan"])
    checks = []
    charts = {}
    for name, expected in golden["charts"].items():
        chart = fan_input.chart(name)
        charts[name] = chart
        presentation = chart.presentation()
        checks.append(IdentityCheck("golden-generators", list(presentation.generators), expected["generators"], (item[0], name)))
        actual = [relation.text() for relation in presentation.commutation]
        checks.append(IdentityCheck("golden-commutation", actual, expected["commutation"], (item[0], name)))
        actual = [relation.text() for relation in presentation.binomials]
        checks.append(IdentityCheck("golden-binomials", actual, expected.get("binomials", []), (item[0], name)))
    for first, second in itertools.combinations(charts, 2):
        for identity in gluing_relations(charts[first], charts[second]):
            checks.append(
                IdentityCheck("gluing", gluing_holds(charts[first], charts[second], identity), True, (first, second))
            )
    for first, second, phases in golden.get("transitions", []):
        found = transition_map(charts[first], charts[second]).phases
        checks.append(IdentityCheck("transition-phases", found, phases, (first, second)))
    return checks


SUITES: dict[str, Suite] = {
    suite.name: suite
    for suite in (
        Suite("star-assoc", "star product associativity and unit", _expand_star, _run_star, _torus(3)),
        Suite("det", "quantum determinant, permutability, antipode and Ore rules", _expand_det, _run_det, _torus(3)),
        Suite("laplace", "row and column Laplace expansions of minors", _expand_laplace, _run_laplace, _torus(4)),
        Suite("minors", "minor commutation relations", _expand_minors, _run_minors, _torus(4)),
        Suite("pluecker", "Plücker relations and tautological sections", _expand_pluecker, _run_pluecker, _torus(4)),
        Suite("young", "Young relations between minors of different sizes", _expand_young, _run_young, _torus(4)),
        Suite("classify", "classification of quadratic relations", _expand_classify, _run_classify, _torus(4)),
        Suite("chart-iso", "CP^n charts against degree-zero localizations", _expand_per_size(2), _run_chart_iso, _torus(2, 1)),
        Suite("hilbert", "Hilbert series of projective algebras", _expand_hilbert, _run_hilbert, _torus(2, 1)),
        Suite("koszul", "Koszul duals and the Frobenius pairing", _expand_per_size(3), _run_koszul, _torus(3, 1)),
        Suite("eta", "coinvariant projector identities", _expand_eta, _run_eta, _torus(3)),
        Suite("ideals", "torus-invariant monomial ideals", _expand_ideals, _run_ideals, _fixed_torus(2)),
        Suite("kaehler", "Kähler differentials and the Leibniz rule", _expand_kaehler, _run_kaehler, _fixed_torus(2)),
        Suite("examples", "worked chart presentations against golden files", _expand_examples, _run_examples, _fixed_torus(3)),
    )
}


def get_suite(name: str) -> Suite:
    try:
        return SUITES[name]
    except KeyError as exc:
        raise InputError("Unknown suite", witness=name) from exc


def _run_item(payload: tuple[str, SuiteParams, Item]) -> list[CheckResult]:
    name, params, item = payload
    theta = params.theta_spec()
    checks = SUITES[name].run(params, item)
    logger.debug("%s %s: %d checks", name, item, len(checks))
    return [check_result(check, theta) for check in checks]


def run_suite(name: str, params: SuiteParams, *, jobs: int = 1) -> VerificationReport:
    """Run every item of a suite and aggregate the results in item order."""

    suite = get_suite(name)
    theta = params.theta_spec()
    needed = suite.theta_size(params)
    if theta is not None and theta.n < needed:
        raise InputError("θ does not cover the suite's torus", witness={"theta_n": theta.n, "needed": needed})
    items = suite.expand(params)
    payloads = [(name, params, item) for item in items]
    logger.info("Running suite %s: %d items, jobs=%d", name, len(items), jobs)
    started = time.perf_counter()
    if jobs > 1 and len(payloads) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            batches = list(pool.map(_run_item, payloads))
    else:
        batches = [_run_item(payload) for payload in payloads]
    report = VerificationReport(
        suite=name,
        parameters=params.describe(),
        theta_mode=theta.mode if theta is not None else "symbolic",
        results=[result for batch in batches for result in batch],
        elapsed=time.perf_counter() - started,
    )
    if theta is not None:
        skipped = sum(
            1 for result in report.results if result.delta is None and result.status is not CheckStatus.INFO
        )
        if skipped:
            logger.warning("Numeric cross-check skipped for %d phase-free checks in %s", skipped, name)
    logger.info(
        "Suite %s finished: %d identities, %d failures", name, len(report.results), len(report.failures)
    )
    return report
