"""Tests for deformed chart algebras and their gluing."""

# pylint: disable=import-error

from __future__ import annotations

import itertools
import unittest
from pathlib import Path
from typing import Any, Callable

import pytest

from src.core.errors import InputError, LatticeError
from src.core.scalars import ONE, phase_unit
from src.services.inputs import load_fan
from src.toric.charts import (
    binomial_holds,
    chart_algebra,
    commutation_phase_from_star,
    gluing_holds,
    gluing_relations,
    transition_map,
    weight,
)
from src.toric.lattice_fans import Cone
from src.toric.quantum_torus import LaurentElement, star

TC = unittest.TestCase()

GOLDEN_FANS = ["cp2", "orbifold", "orbifold_resolved", "conifold", "conifold_resolved", "moyal"]


@pytest.mark.parametrize("name", GOLDEN_FANS)
def test_chart_presentations_match_golden(
    name: str, fan_path: Callable[[str], Path], golden: Callable[[str], dict[str, Any]]
) -> None:
    """Commutation and binomial lines are reproduced exactly."""

    fan_input = load_fan(fan_path(name))
    for cone, expected in golden(name)["charts"].items():
        presentation = fan_input.chart(cone).presentation()
        TC.assertEqual(list(presentation.generators), expected["generators"])
        TC.assertEqual([r.text() for r in presentation.commutation], expected["commutation"])
        TC.assertEqual(
            [r.text() for r in presentation.binomials], expected.get("binomials", [])
        )


@pytest.mark.parametrize("name", GOLDEN_FANS)
def test_binomials_hold_in_quantum_torus(name: str, fan_path: Callable[[str], Path]) -> None:
    fan_input = load_fan(fan_path(name))
    for cone in fan_input.names:
        chart = fan_input.chart(cone)
        for relation in chart.binomial_relations:
            TC.assertTrue(binomial_holds(chart, relation))


@pytest.mark.parametrize("name", ["cp2", "orbifold_resolved", "conifold_resolved"])
def test_gluing_identities_hold(name: str, fan_path: Callable[[str], Path]) -> None:
    fan_input = load_fan(fan_path(name))
    for first, second in itertools.combinations(fan_input.names, 2):
        left, right = fan_input.chart(first), fan_input.chart(second)
        identities = gluing_relations(left, right)
        TC.assertTrue(identities)
        for identity in identities:
            TC.assertTrue(gluing_holds(left, right, identity), msg=identity.text(left, right))


def test_resolved_orbifold_transition_inverts_phases(fan_path: Callable[[str], Path]) -> None:
    fan_input = load_fan(fan_path("orbifold_resolved"))
    transition = transition_map(fan_input.chart("sigma_minus"), fan_input.chart("sigma_plus"))
    TC.assertEqual(transition.phases, "inverted")
    TC.assertEqual(len(transition.images), 2)


def test_commutation_phase_is_check_theta_squared() -> None:
    chart = chart_algebra(Cone.from_rays([(1, 0), (1, 2)]), names=["x", "y", "z"])
    for a, b, phase in chart.commutation_relations:
        TC.assertEqual(commutation_phase_from_star(chart, a, b), phase)


def test_normal_form_uses_chart_phases() -> None:
    chart = chart_algebra(Cone.from_rays([(1, 0), (0, 1)]))
    phase, exps = chart.normal_form([1, 0])
    TC.assertEqual(exps, (1, 1))
    TC.assertEqual(phase, phase_unit(1, 2) ** -2)


def test_torus_chart_has_inverse_pairs() -> None:
    chart = chart_algebra(Cone.zero(2))
    TC.assertEqual(chart.generators, ((1, 0), (-1, 0), (0, 1), (0, -1)))
    TC.assertEqual(chart.monomial((1, 1, 0, 0)), chart.monomial((0, 0, 0, 0)))


def test_weights_of_chart_monomials() -> None:
    chart = chart_algebra(Cone.from_rays([(1, 0), (1, 2)]), names=["x", "y", "z"])
    TC.assertEqual(chart.generators, ((2, -1), (0, 1), (1, 0)))
    TC.assertEqual(weight(chart, (1, 2, 0), 1), 2)
    TC.assertEqual(weight(chart, (1, 2, 0), 2), 1)


def test_generator_order_must_permute_hilbert_basis() -> None:
    with pytest.raises(LatticeError, match="permutation"):
        chart_algebra(Cone.from_rays([(1, 0), (0, 1)]), order=[(1, 0), (1, 1)])


def test_unknown_generator_order_cone(tmp_path: Path) -> None:
    path = tmp_path / "fan.json"
    path.write_text(
        '{"n": 2, "rays": [[1, 0], [0, 1]], "cones": [[0, 1]], "names": ["a"],'
        ' "generator_order": {"b": [[1, 0], [0, 1]]}}',
        encoding="utf-8",
    )
    with pytest.raises(InputError, match="unknown cone"):
        load_fan(path)


def test_identity_phase_on_diagonal() -> None:
    chart = chart_algebra(Cone.from_rays([(1, 0), (0, 1)]))
    TC.assertEqual(chart.check_theta[0][0], ONE)


def test_conifold_relations_follow_from_star_products(golden: Callable[[str], dict[str, Any]]) -> None:
    """z*w and the binomial coefficient, derived from characters of e3 and e1 + e2 - e3."""

    x, y, z, w = (
        LaurentElement.character(point)
        for point in ((1, 0, 0), (0, 1, 0), (0, 0, 1), (1, 1, -1))
    )
    q12, q13, q23 = phase_unit(1, 2), phase_unit(1, 3), phase_unit(2, 3)
    middle = (1, 1, 0)
    zw, wz, xy = star(z, w).terms[middle], star(w, z).terms[middle], star(x, y).terms[middle]
    TC.assertEqual(zw, (q13 * q23).inverse())
    commutation = zw * wz.inverse()
    binomial = xy * zw.inverse()
    TC.assertEqual(commutation, q13**-2 * q23**-2)
    TC.assertEqual(binomial, q12 * q13 * q23)
    # The inverted phases q13^2 q23^2 and q12^2 q13^-2 q23^-2 are not star products.
    TC.assertNotEqual(commutation, q13**2 * q23**2)
    TC.assertNotEqual(binomial, q12**2 * q13**-2 * q23**-2)
    chart = golden("conifold")["charts"]["sigma"]
    TC.assertIn(f"z*w = {commutation.canonical()}*w*z", chart["commutation"])
    TC.assertEqual(chart["binomials"], [f"x*y - {binomial.canonical()}*z*w = 0"])
