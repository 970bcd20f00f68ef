# pylint: disable=import-error
"""Tests for suite expansion, execution and size caps."""

from __future__ import annotations

import unittest

import pytest

from src.core.errors import InputError
from src.core.scalars import ThetaSpec
from src.services.config import SizeLimits
from src.services.suites import SUITES, SuiteParams, check_caps, get_suite, run_suite

TC = unittest.TestCase()

SMALL_THETA = ThetaSpec.numeric([[0, 0.3], [-0.3, 0]]).to_json()


def _assert_passes(name: str, params: SuiteParams) -> None:
    report = run_suite(name, params)
    TC.assertTrue(report.results, msg=name)
    TC.assertTrue(report.passed, msg=[(r.identity, r.witness) for r in report.failures])


def test_registry_lists_every_suite() -> None:
    TC.assertEqual(
        sorted(SUITES),
        sorted(
            [
                "star-assoc",
                "det",
                "laplace",
                "minors",
                "pluecker",
                "young",
                "classify",
                "chart-iso",
                "hilbert",
                "koszul",
                "eta",
                "ideals",
                "kaehler",
                "examples",
            ]
        ),
    )
    with pytest.raises(InputError, match="Unknown suite"):
        get_suite("nope")


def test_params_describe_drops_unset_sizes() -> None:
    params = SuiteParams(n=2, theta=SMALL_THETA)
    TC.assertEqual(params.describe(), {"n": 2, "degree": 6, "box": 8, "seed": 0, "trials": 100})
    TC.assertEqual(params.theta_spec().n, 2)
    TC.assertIsNone(SuiteParams().theta_spec())
    TC.assertEqual((SuiteParams().size(3), SuiteParams(d=2).rank(1)), (3, 2))


def test_check_caps() -> None:
    limits = SizeLimits(max_n=4, max_d=3, max_degree=10, box=8)
    check_caps(SuiteParams(n=4, d=3, degree=10, box=8), limits)
    with pytest.raises(InputError, match="n exceeds the configured cap"):
        check_caps(SuiteParams(n=5), limits)
    check_caps(SuiteParams(n=5, d=3), SizeLimits())
    with pytest.raises(InputError, match="degree exceeds"):
        check_caps(SuiteParams(degree=11), limits)
    with pytest.raises(InputError, match="box must be positive"):
        check_caps(SuiteParams(box=0), limits)


def test_star_assoc_items_and_results() -> None:
    params = SuiteParams(n=2, trials=30)
    TC.assertEqual(get_suite("star-assoc").expand(params), [(0, 25), (25, 5)])
    report = run_suite("star-assoc", params)
    TC.assertTrue(report.passed)
    TC.assertEqual(len(report.results), 60)
    TC.assertEqual(report.theta_mode, "symbolic")
    TC.assertEqual(report.parameters["trials"], 30)


@pytest.mark.parametrize(
    ("name", "params"),
    [
        ("det", SuiteParams(n=2)),
        ("laplace", SuiteParams(n=3)),
        ("minors", SuiteParams(n=3, d=1)),
        ("pluecker", SuiteParams(n=4, d=2)),
        ("young", SuiteParams(n=3, d=2)),
        ("classify", SuiteParams(n=4, d=2)),
        ("chart-iso", SuiteParams(n=2)),
        ("hilbert", SuiteParams(n=2, degree=4)),
        ("koszul", SuiteParams(n=2)),
        ("eta", SuiteParams(n=2, d=1)),
        ("ideals", SuiteParams(box=3)),
        ("kaehler", SuiteParams(trials=5)),
        ("examples", SuiteParams()),
    ],
)
def test_suites_pass_at_small_sizes(name: str, params: SuiteParams) -> None:
    _assert_passes(name, params)


def test_grassmann_suites_validate_sizes() -> None:
    with pytest.raises(InputError, match="1 ≤ d ≤ n"):
        run_suite("pluecker", SuiteParams(n=2, d=3))
    with pytest.raises(InputError, match="eta requires"):
        run_suite("eta", SuiteParams(n=2, d=3))


def test_numeric_theta_adds_centrality_and_deltas() -> None:
    params = SuiteParams(n=2, theta=SMALL_THETA)
    TC.assertIn(("centrality", 2), get_suite("det").expand(params))
    report = run_suite("det", params)
    TC.assertEqual(report.theta_mode, "numeric")
    TC.assertTrue(report.passed, msg=[(r.identity, r.witness) for r in report.failures])
    TC.assertIsNotNone(report.max_delta)
    TC.assertLess(report.max_delta, 1e-9)


@pytest.mark.slow
def test_parallel_run_matches_inline() -> None:
    params = SuiteParams(n=2, trials=50)
    inline = run_suite("star-assoc", params)
    pooled = run_suite("star-assoc", params, jobs=2)
    TC.assertEqual(inline.to_dict()["checks"], pooled.to_dict()["checks"])


@pytest.mark.slow
@pytest.mark.parametrize("name", ["det", "laplace", "minors", "pluecker", "classify", "koszul", "eta"])
def test_suites_pass_at_default_sizes(name: str) -> None:
    _assert_passes(name, SuiteParams())


@pytest.mark.slow
@pytest.mark.parametrize(("d", "expected"), [(2, 75), (3, 70)])
def test_pluecker_suite_at_five_columns(d: int, expected: int) -> None:
    params = SuiteParams(n=5, d=d)
    check_caps(params, SizeLimits())
    report = run_suite("pluecker", params)
    TC.assertTrue(report.passed, msg=[(r.identity, r.witness) for r in report.failures])
    TC.assertEqual(len(report.results), expected)


def test_theta_sizes_cover_homogeneous_coordinates() -> None:
    params = SuiteParams(n=2)
    TC.assertEqual(get_suite("det").theta_size(params), 2)
    TC.assertEqual(get_suite("chart-iso").theta_size(params), 3)
    TC.assertEqual(get_suite("koszul").theta_size(params), 3)
    TC.assertEqual(get_suite("examples").theta_size(params), 3)
    TC.assertEqual(get_suite("laplace").theta_size(SuiteParams()), 4)


def test_theta_smaller_than_suite_torus_is_rejected() -> None:
    with pytest.raises(InputError, match="does not cover"):
        run_suite("koszul", SuiteParams(n=2, theta=SMALL_THETA))


def test_centrality_uses_leading_theta_block(numeric_theta: ThetaSpec) -> None:
    report = run_suite("det", SuiteParams(n=2, theta=numeric_theta.to_json()))
    centrality = [result for result in report.results if result.identity == "det-centrality"]
    TC.assertEqual([result.witness for result in centrality], [2])
    TC.assertTrue(report.passed, msg=[(r.identity, r.witness) for r in report.failures])
