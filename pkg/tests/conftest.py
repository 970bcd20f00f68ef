"""Test fixtures and configuration."""

# pylint: disable=import-error

from __future__ import annotations

# pylint: disable=wrong-import-position,redefined-outer-name
# Imports occur after sys.path manipulation to ensure local modules resolve;
# fixtures intentionally reuse names across scopes for pytest convenience.

import json
import sys
from pathlib import Path
from typing import Any, Callable

# Ensure project root is on sys.path before local imports
ROOT_DIR = Path(__file__).parent.parent.resolve()
if str(ROOT_DIR) not in sys.path:
    sys.path.insert(0, str(ROOT_DIR))

import numpy as np
import pytest

from src.core.scalars import ThetaSpec
from src.services.suites import FANS_DIR, GOLDEN_DIR

FIXTURES_DIR = ROOT_DIR / "tests" / "fixtures"


@pytest.fixture
def fans_dir() -> Path:
    """Directory of the bundled example fans."""
    return FANS_DIR


@pytest.fixture
def fan_path() -> Callable[[str], Path]:
    """Resolve a bundled fan by name, e.g. ``fan_path("cp2")``."""

    def _resolve(name: str) -> Path:
        return FANS_DIR / f"{name}.json"

    return _resolve


@pytest.fixture
def golden() -> Callable[[str], dict[str, Any]]:
    """Load the expected presentation lines of a bundled fan."""

    def _load(name: str) -> dict[str, Any]:
        return json.loads((GOLDEN_DIR / f"{name}.json").read_text(encoding="utf-8"))

    return _load


@pytest.fixture
def invalid_fan_path() -> Path:
    """Two cones overlapping in their interiors."""
    return FIXTURES_DIR / "fans" / "invalid_overlap.json"


@pytest.fixture
def theta_file() -> Path:
    """A fixed numeric θ for n = 4."""
    return FIXTURES_DIR / "theta.json"


@pytest.fixture
def numeric_theta() -> ThetaSpec:
    """Deterministic generic θ for n = 4."""
    upper = np.array(
        [
            [0.0, 0.7, -0.3, 1.1],
            [0.0, 0.0, 0.45, -0.9],
            [0.0, 0.0, 0.0, 0.25],
            [0.0, 0.0, 0.0, 0.0],
        ]
    )
    return ThetaSpec.numeric(upper - upper.T)
