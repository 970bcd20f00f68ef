"""Load θ and fan inputs from JSON.

Purpose: Turn user supplied θ matrices and fan descriptions into ThetaSpec and
Fan objects, reporting malformed files as InputError with the file path.
Related tests: tests/services/test_inputs.py
"""

from __future__ import annotations

import json
import logging
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Mapping

from src.core.errors import InputError, LatticeError, ScalarError
from src.core.scalars import ThetaSpec
from src.toric.charts import ChartAlgebra, chart_algebra
from src.toric.lattice import LatticePoint
from src.toric.lattice_fans import Cone, Fan, is_smooth, validate_fan

from .config import ThetaSource

logger = logging.getLogger(__name__)


def _read_json(path: Path) -> Any:
    if not path.exists():
        raise InputError("Input file not found", source=path)
    try:
        return json.loads(path.read_text(encoding="utf-8"))
    except json.JSONDecodeError as exc:
        raise InputError(f"Invalid JSON: {exc.msg}", witness=exc.lineno, source=path) from exc


def parse_theta(data: Any, *, source: Path | None = None) -> ThetaSpec:
    if not isinstance(data, Mapping):
        raise InputError("θ JSON must be an object", source=source)
    try:
        return ThetaSpec.from_json(data)
    except ScalarError as exc:
        raise InputError(exc.message, witness=exc.witness, source=source) from exc


def load_theta(source: ThetaSource) -> ThetaSpec | None:
    """Numeric θ from a file or inline JSON; ``None`` when nothing is configured."""

    if source.path is not None:
        theta = parse_theta(_read_json(source.path), source=source.path)
        logger.debug("Loaded θ (n=%d) from %s", theta.n, source.path)
        return theta
    if source.inline is not None:
        try:
            data = json.loads(source.inline)
        except json.JSONDecodeError as exc:
            raise InputError(f"Invalid inline θ JSON: {exc.msg}") from exc
        return parse_theta(data)
    return None


@dataclass(frozen=True)
class FanInput:
    """A validated fan plus per-cone generator orders and names."""

    fan: Fan
    orders: dict[str, tuple[LatticePoint, ...]] = field(default_factory=dict)
    generator_names: dict[str, tuple[str, ...]] = field(default_factory=dict)
    source: Path | None = None

    @property
    def names(self) -> tuple[str, ...]:
        if self.fan.names:
            return self.fan.names
        return tuple(str(index) for index in range(1, len(self.fan.maximal) + 1))

    def cone_name(self, cone_id: str | int) -> str:
        cone = self.fan.cone_by_id(cone_id)
        if not cone.rays:
            return "0"
        return self.fan.name_of(cone)

    def chart(self, cone_id: str | int, theta: ThetaSpec | None = None) -> ChartAlgebra:
        cone = self.fan.cone_by_id(cone_id)
        name = self.cone_name(cone_id)
        try:
            return chart_algebra(
                cone,
                theta,
                order=self.orders.get(name),
                names=self.generator_names.get(name),
                label=name,
            )
        except LatticeError as exc:
            raise InputError(exc.message, witness=exc.witness, source=self.source) from exc


def _int_vector(value: Any, ambient: int, what: str, source: Path | None) -> LatticePoint:
    if (
        not isinstance(value, list)
        or len(value) != ambient
        or not all(isinstance(v, int) and not isinstance(v, bool) for v in value)
    ):
        raise InputError(f"{what} must be a list of {ambient} integers", witness=value, source=source)
    return tuple(value)


def _per_cone(table: Any, key: str, source: Path | None) -> Mapping[str, Any]:
    if table is None:
        return {}
    if not isinstance(table, Mapping):
        raise InputError(f"'{key}' must map cone names to lists", source=source)
    return table


def parse_fan(data: Any, *, source: Path | None = None) -> FanInput:
    """Build a Fan from ``{"n", "rays", "cones", "names", "generator_order", "generator_names"}``.

    Cones list 0-based ray indices. Fan axiom violations propagate as FanError.
    """

    if not isinstance(data, Mapping):
        raise InputError("Fan JSON must be an object", source=source)
    ambient = data.get("n")
    if not isinstance(ambient, int) or isinstance(ambient, bool) or ambient < 1:
        raise InputError("Fan JSON requires a positive integer 'n'", source=source)
    raw_rays = data.get("rays")
    raw_cones = data.get("cones")
    if not isinstance(raw_rays, list) or not isinstance(raw_cones, list):
        raise InputError("Fan JSON requires 'rays' and 'cones' lists", source=source)
    rays = [_int_vector(ray, ambient, "Each ray", source) for ray in raw_rays]
    cones = []
    for position, indices in enumerate(raw_cones):
        if not isinstance(indices, list) or not all(
            isinstance(i, int) and not isinstance(i, bool) and 0 <= i < len(rays) for i in indices
        ):
            raise InputError("Cone lists unknown ray indices", witness=position, source=source)
        try:
            cones.append(Cone.from_rays([rays[i] for i in indices], ambient))
        except LatticeError as exc:
            raise InputError(exc.message, witness=exc.witness, source=source) from exc
    names = data.get("names", ())
    if names and (not isinstance(names, list) or len(names) != len(cones)):
        raise InputError("'names' must list one name per cone", source=source)
    fan = validate_fan(cones, ambient=ambient, names=[str(name) for name in names])

    known = set(fan.names) or {str(index) for index in range(1, len(fan.maximal) + 1)}
    orders: dict[str, tuple[LatticePoint, ...]] = {}
    for name, vectors in _per_cone(data.get("generator_order"), "generator_order", source).items():
        if name not in known:
            raise InputError("generator_order names an unknown cone", witness=name, source=source)
        if not isinstance(vectors, list):
            raise InputError("generator_order entries must be lists", witness=name, source=source)
        orders[name] = tuple(_int_vector(v, ambient, "Each generator", source) for v in vectors)
    generator_names: dict[str, tuple[str, ...]] = {}
    for name, labels in _per_cone(data.get("generator_names"), "generator_names", source).items():
        if name not in known:
            raise InputError("generator_names names an unknown cone", witness=name, source=source)
        if not isinstance(labels, list) or not all(isinstance(label, str) for label in labels):
            raise InputError("generator_names entries must be string lists", witness=name, source=source)
        generator_names[name] = tuple(labels)
    logger.debug("Parsed fan with %d maximal cones", len(fan.maximal))
    return FanInput(fan=fan, orders=orders, generator_names=generator_names, source=source)


def load_fan(path: Path) -> FanInput:
    return parse_fan(_read_json(path), source=path)


def fan_summary(fan_input: FanInput, theta: ThetaSpec | None = None) -> dict[str, Any]:
    """Cones, dual generators and relation lattices of every chart."""

    fan = fan_input.fan
    charts = []
    for name in fan_input.names:
        chart = fan_input.chart(name, theta)
        cone = fan.cone_by_id(name)
        charts.append(
            {
                "name": name,
                "rays": [list(ray) for ray in cone.rays],
                "smooth": is_smooth(cone),
                "generators": dict(zip(chart.names, ([list(g) for g in chart.generators]))),
                "relations": [
                    {"p": list(relation.p), "r": list(relation.r)}
                    for relation in chart.binomial_relations
                ],
            }
        )
    return {
        "n": fan.ambient,
        "cones": len(fan.cones),
        "maximal": len(fan.maximal),
        "smooth": fan.is_smooth(),
        "charts": charts,
    }
