# pylint: disable=import-error
"""Tests for run configuration loading and command-line overrides."""

from __future__ import annotations

import importlib
import importlib.util
import sys
import textwrap
import unittest
from pathlib import Path
from typing import Any

import pytest

from src.services import config as config_module
from src.services.config import (
    ConfigError,
    RunConfig,
    SizeLimits,
    ThetaSource,
    load_config,
)

TC = unittest.TestCase()

CONFIG_SOURCE = Path(__file__).resolve().parents[2] / "src" / "services" / "config.py"


def _write_config(tmp_path: Path, body: str) -> Path:
    """Write TOML content to a temporary config file."""

    config_path = tmp_path / "config.toml"
    config_path.write_text(textwrap.dedent(body), encoding="utf-8")
    return config_path


def test_load_config_missing_explicit_file() -> None:
    with pytest.raises(ConfigError, match="not found"):
        load_config(Path("nonexistent.toml"))


def test_load_config_missing_default_uses_defaults(
    tmp_path: Path, monkeypatch: pytest.MonkeyPatch
) -> None:
    monkeypatch.setattr(config_module, "DEFAULT_CONFIG_PATH", tmp_path / "absent.toml")
    TC.assertEqual(load_config(), RunConfig())


def test_load_config_invalid_toml(tmp_path: Path) -> None:
    config_path = _write_config(tmp_path, "invalid [ toml")
    with pytest.raises(ConfigError, match="TOML"):
        load_config(config_path)


def test_load_config_valid(tmp_path: Path) -> None:
    config_path = _write_config(
        tmp_path,
        """
        [theta]
        path = "theta.json"

        [limits]
        max_n = 5
        box = 4

        [output]
        format = "json"
        reports_dir = "out"

        [runtime]
        jobs = 2
        seed = 7
        numeric_trials = 3
        """,
    )
    config = load_config(config_path)
    TC.assertEqual(config.theta.path, tmp_path / "theta.json")
    TC.assertTrue(config.theta.provided)
    TC.assertEqual(config.limits, SizeLimits(max_n=5, max_d=3, max_degree=10, box=4))
    TC.assertEqual(config.output.format, "json")
    TC.assertEqual(config.output.reports_dir, Path("out"))
    TC.assertEqual(
        (config.runtime.jobs, config.runtime.seed, config.runtime.numeric_trials), (2, 7, 3)
    )


def test_load_config_empty_file_gives_defaults(tmp_path: Path) -> None:
    config = load_config(_write_config(tmp_path, ""))
    TC.assertEqual(config, RunConfig())
    TC.assertFalse(config.theta.provided)


def test_theta_inline(tmp_path: Path) -> None:
    config_path = _write_config(
        tmp_path,
        """
        [theta]
        inline = '{"n": 2, "theta": [[0, 1], [-1, 0]]}'
        """,
    )
    TC.assertEqual(load_config(config_path).theta.inline, '{"n": 2, "theta": [[0, 1], [-1, 0]]}')


def test_theta_path_and_inline_are_exclusive(tmp_path: Path) -> None:
    config_path = _write_config(
        tmp_path,
        """
        [theta]
        path = "theta.json"
        inline = "{}"
        """,
    )
    with pytest.raises(ConfigError, match="mutually exclusive"):
        load_config(config_path)


@pytest.mark.parametrize(
    ("body", "match"),
    [
        ("[limits]\nmax_n = 0\n", "limits.max_n must be a positive integer"),
        ("[limits]\nbox = true\n", "limits.box must be a positive integer"),
        ("[limits]\nmax_d = 9\n", "supported bound 4"),
        ("[output]\nformat = \"yaml\"\n", "output.format"),
        ("[output]\nreports_dir = \"\"\n", "reports_dir"),
        ("[runtime]\njobs = 0\n", "runtime.jobs"),
        ("[runtime]\nseed = -1\n", "runtime.seed"),
        ("[theta]\npath = \"\"\n", "theta.path"),
        ("theta = 3\n", r"\[theta\] must be a table"),
    ],
)
def test_load_config_rejects_invalid_values(tmp_path: Path, body: str, match: str) -> None:
    with pytest.raises(ConfigError, match=match):
        load_config(_write_config(tmp_path, body))


def test_overrides() -> None:
    config = RunConfig().with_overrides(
        theta='{"n": 2, "theta": [[0, 1], [-1, 0]]}', output_format="json", jobs=3, box=5
    )
    TC.assertTrue(config.theta.inline.startswith("{"))
    TC.assertEqual(config.output.format, "json")
    TC.assertEqual(config.runtime.jobs, 3)
    TC.assertEqual(config.limits.box, 5)
    TC.assertEqual(RunConfig().with_overrides(theta="~/theta.json").theta.path, Path.home() / "theta.json")
    TC.assertEqual(RunConfig().with_overrides(), RunConfig())


def test_overrides_are_validated() -> None:
    with pytest.raises(ConfigError, match="output format"):
        RunConfig().with_overrides(output_format="xml")
    with pytest.raises(ConfigError, match="jobs"):
        RunConfig().with_overrides(jobs=0)
    with pytest.raises(ConfigError, match="supported bound"):
        RunConfig().with_overrides(box=100)


def test_theta_source_provided() -> None:
    TC.assertFalse(ThetaSource().provided)
    TC.assertTrue(ThetaSource(inline="{}").provided)


def test_toml_fallback_to_tomli(monkeypatch: Any) -> None:
    """Ensure fallback to tomli is used when tomllib is unavailable."""

    spec = importlib.util.spec_from_file_location("config_temp", CONFIG_SOURCE)
    if spec is None or spec.loader is None:
        TC.fail("Failed to load config module spec for fallback test.")

    class _TomliStub:  # pylint: disable=too-few-public-methods
        class TOMLDecodeError(Exception): ...

        @staticmethod
        def loads(_text: str) -> dict[str, Any]:
            return {}

    real_import = importlib.import_module

    def _fake_import(name: str) -> Any:
        if name == "tomllib":
            raise ModuleNotFoundError("tomllib missing")
        if name == "tomli":
            return _TomliStub()
        return real_import(name)

    monkeypatch.setattr(importlib, "import_module", _fake_import)
    module = importlib.util.module_from_spec(spec)
    sys.modules["config_temp"] = module
    try:
        spec.loader.exec_module(module)
        TC.assertIs(module._toml_loads, _TomliStub.loads)  # pylint: disable=protected-access
    finally:
        sys.modules.pop("config_temp", None)
