"""Verification reports for qtoric suites.

Purpose: Collect identity outcomes into a report that renders as text or as
deterministic JSON (schema ``qtoric-report/1``), with an optional numeric
cross-check of both sides at a specialized θ.
Related tests: tests/services/test_reports.py
"""

from __future__ import annotations

import json
import logging
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any

import numpy as np

from src.core.models.identity import CheckStatus, IdentityCheck
from src.core.scalars import PhaseScalar, ThetaSpec, specialize

logger = logging.getLogger(__name__)

REPORT_SCHEMA = "qtoric-report/1"
DELTA_DIGITS = 12
EVALUATION_SEED = 0


def numeric_delta(lhs: Any, rhs: Any, theta: ThetaSpec) -> float | None:
    """|Δ| between both sides at θ, or ``None`` when the sides carry no phases.

    Algebra elements are evaluated at seeded random unit-modulus values of their
    normal-ordered monomials; each side is summed on its own.
    """

    if isinstance(lhs, PhaseScalar) and isinstance(rhs, PhaseScalar):
        return abs(specialize(lhs, theta) - specialize(rhs, theta))
    aligned = getattr(lhs, "aligned", None)
    if aligned is None or type(lhs) is not type(rhs):
        return None
    pairs = aligned(rhs)
    if not pairs:
        return 0.0
    rng = np.random.default_rng(EVALUATION_SEED)
    points = np.exp(1j * rng.uniform(0.0, 2 * np.pi, len(pairs)))
    left = np.array([specialize(value, theta) for value, _ in pairs])
    right = np.array([specialize(value, theta) for _, value in pairs])
    return float(abs(np.dot(left, points) - np.dot(right, points)))


def _plain(value: Any) -> Any:
    if value is None or isinstance(value, (bool, int, float, str)):
        return value
    if isinstance(value, (tuple, list)):
        return [_plain(item) for item in value]
    if isinstance(value, dict):
        return {str(key): _plain(item) for key, item in value.items()}
    return str(value)


@dataclass(frozen=True)
class CheckResult:
    """Outcome of one identity, reduced to plain data."""

    identity: str
    status: CheckStatus
    witness: Any = None
    delta: float | None = None

    @property
    def passed(self) -> bool:
        return self.status is not CheckStatus.FAIL

    def to_dict(self) -> dict[str, Any]:
        data: dict[str, Any] = {"identity": self.identity, "status": self.status.name.lower()}
        if self.witness is not None:
            data["witness"] = self.witness
        if self.delta is not None:
            data["delta"] = round(self.delta, DELTA_DIGITS)
        return data


def check_result(check: IdentityCheck, theta: ThetaSpec | None = None) -> CheckResult:
    delta = None
    if theta is not None and theta.mode == "numeric":
        delta = numeric_delta(check.lhs, check.rhs, theta)
    return CheckResult(
        identity=check.identity,
        status=check.status,
        witness=_plain(check.witness),
        delta=delta,
    )


@dataclass
class VerificationReport:
    """A suite passes iff every non-informational identity passes."""

    suite: str
    parameters: dict[str, Any]
    theta_mode: str = "symbolic"
    results: list[CheckResult] = field(default_factory=list)
    elapsed: float | None = None

    @property
    def passed(self) -> bool:
        return all(result.passed for result in self.results)

    @property
    def failures(self) -> list[CheckResult]:
        return [result for result in self.results if not result.passed]

    @property
    def max_delta(self) -> float | None:
        deltas = [
            result.delta
            for result in self.results
            if result.delta is not None and result.status is not CheckStatus.INFO
        ]
        return max(deltas) if deltas else None

    def counts(self) -> dict[str, int]:
        out = {status.name.lower(): 0 for status in CheckStatus}
        for result in self.results:
            out[result.status.name.lower()] += 1
        return out

    def to_dict(self, *, include_timing: bool = False) -> dict[str, Any]:
        data: dict[str, Any] = {
            "schema": REPORT_SCHEMA,
            "suite": self.suite,
            "parameters": _plain(self.parameters),
            "theta_mode": self.theta_mode,
            "passed": self.passed,
            "counts": self.counts(),
        }
        if self.max_delta is not None:
            data["max_delta"] = round(self.max_delta, DELTA_DIGITS)
        data["checks"] = [result.to_dict() for result in self.results]
        if include_timing and self.elapsed is not None:
            data["elapsed_seconds"] = round(self.elapsed, 3)
        return data

    def to_json(self, *, include_timing: bool = False) -> str:
        return json.dumps(self.to_dict(include_timing=include_timing), indent=2, ensure_ascii=False) + "\n"

    def text_lines(self) -> list[str]:
        counts = self.counts()
        verdict = "PASS" if self.passed else "FAIL"
        params = ", ".join(f"{key}={value}" for key, value in self.parameters.items())
        lines = [f"Suite: {self.suite} ({params})" if params else f"Suite: {self.suite}"]
        lines.append(f"θ mode: {self.theta_mode}")
        lines.append(
            f"Identities: {len(self.results)} "
            f"(pass {counts['pass']}, fail {counts['fail']}, info {counts['info']})"
        )
        if self.max_delta is not None:
            lines.append(f"max |Δ|: {self.max_delta:.3e}")
        for result in self.failures[:10]:
            lines.append(f"  - FAIL {result.identity} witness={result.witness}")
        if len(self.failures) > 10:
            lines.append(f"  - ... {len(self.failures) - 10} more")
        if self.elapsed is not None:
            lines.append(f"Elapsed: {self.elapsed:.2f}s")
        lines.append(f"Result: {verdict}")
        return lines

    def render(self, output_format: str, *, include_timing: bool = False) -> str:
        if output_format == "json":
            return self.to_json(include_timing=include_timing)
        return "\n".join(self.text_lines()) + "\n"


def write_report(text: str, path: Path) -> Path:
    path = path.expanduser()
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(text, encoding="utf-8")
    logger.info("Wrote report to %s", path)
    return path
