"""Tests for cones, Hilbert bases and fan validation."""

# pylint: disable=import-error

from __future__ import annotations

import unittest

import pytest

from src.core.errors import FanError, LatticeError
from src.toric.lattice_fans import (
    Cone,
    cone_intersection,
    dual_cone,
    faces,
    hilbert_basis,
    is_face,
    is_smooth,
    is_strongly_convex,
    relation_lattice,
    validate_fan,
)

TC = unittest.TestCase()

QUADRANT = Cone.from_rays([(1, 0), (0, 1)])
ORBIFOLD = Cone.from_rays([(1, 0), (1, 2)])


def _cp2_cones() -> list[Cone]:
    rays = [(1, 0), (0, 1), (-1, -1)]
    return [Cone.from_rays([rays[a], rays[b]]) for a, b in ((1, 2), (2, 0), (0, 1))]


def test_cone_rays_must_be_primitive() -> None:
    with pytest.raises(LatticeError, match="primitive"):
        Cone(rays=((2, 0),), ambient=2)
    TC.assertEqual(Cone.from_rays([(2, 0), (1, 0), (0, 3)]).rays, ((1, 0), (0, 1)))


def test_dual_of_quadrant_and_zero_cone() -> None:
    TC.assertEqual(dual_cone(QUADRANT).rays, ((1, 0), (0, 1)))
    zero_dual = dual_cone(Cone.zero(2))
    TC.assertEqual(zero_dual.rays, ())
    TC.assertEqual(zero_dual.lineality, ((1, 0), (0, 1)))


def test_hilbert_basis_of_orbifold_cone() -> None:
    """Extremal rays first, then the interior generator."""

    TC.assertEqual(hilbert_basis(dual_cone(ORBIFOLD)), ((2, -1), (0, 1), (1, 0)))


def test_hilbert_basis_of_torus_is_plus_minus_units() -> None:
    TC.assertEqual(
        hilbert_basis(dual_cone(Cone.zero(2))), ((1, 0), (-1, 0), (0, 1), (0, -1))
    )


def test_membership_and_faces() -> None:
    TC.assertTrue(QUADRANT.contains((1, 1)))
    TC.assertFalse(QUADRANT.contains((-1, 0)))
    TC.assertEqual(len(faces(QUADRANT)), 4)
    TC.assertTrue(is_face(Cone.from_rays([(0, 1)]), QUADRANT))
    TC.assertFalse(is_face(Cone.from_rays([(1, 1)]), QUADRANT))


def test_strong_convexity() -> None:
    TC.assertTrue(is_strongly_convex(QUADRANT))
    TC.assertFalse(is_strongly_convex(Cone.from_rays([(1, 0), (-1, 0)])))


def test_smoothness() -> None:
    TC.assertTrue(is_smooth(QUADRANT))
    TC.assertFalse(is_smooth(ORBIFOLD))
    TC.assertTrue(is_smooth(Cone.from_rays([(1, 0, 0), (0, 1, 0), (1, 0, 1)])))


def test_intersection_of_adjacent_cones_is_common_ray() -> None:
    first, second, _ = _cp2_cones()
    TC.assertEqual(cone_intersection(first, second).rays, ((-1, -1),))


def test_validate_projective_plane_fan() -> None:
    fan = validate_fan(_cp2_cones(), names=["sigma1", "sigma2", "sigma3"])
    TC.assertEqual(len(fan.cones), 7)
    TC.assertEqual(len(fan.maximal), 3)
    TC.assertTrue(fan.is_smooth())
    TC.assertEqual(fan.cone_by_id("sigma2").key, _cp2_cones()[1].key)
    TC.assertEqual(fan.cone_by_id(3).key, QUADRANT.key)
    TC.assertEqual(fan.cone_by_id("0").rays, ())
    TC.assertEqual(fan.name_of(QUADRANT), "sigma3")


def test_validate_fan_rejects_overlap() -> None:
    cones = [QUADRANT, Cone.from_rays([(-1, 0), (2, 1)])]
    with pytest.raises(FanError, match="not a face"):
        validate_fan(cones)


def test_validate_fan_rejects_half_plane() -> None:
    with pytest.raises(FanError, match="strongly convex"):
        validate_fan([Cone.from_rays([(1, 0), (-1, 0), (0, 1)])])


def test_unknown_cone_id() -> None:
    fan = validate_fan(_cp2_cones())
    with pytest.raises(FanError, match="Unknown cone"):
        fan.cone_by_id("sigma9")
    with pytest.raises(FanError, match="Unknown cone"):
        fan.cone_by_id(4)


def test_relation_lattice_of_orbifold_generators() -> None:
    lattice = relation_lattice([(2, -1), (0, 1), (1, 0)])
    TC.assertEqual(lattice.relations, (((1, 1, 0), (0, 0, 2)),))
    TC.assertEqual(lattice.residual(0), (0, 0))
    TC.assertEqual(len(relation_lattice([(1, 0), (0, 1)])), 0)
