"""Load run configuration for qtoric.

Purpose: Load and validate the TOML configuration that fixes the θ input,
size caps, output format and parallelism of verification runs.
Related tests: tests/services/test_config.py
"""

from __future__ import annotations

import importlib
from dataclasses import dataclass, field, replace
from pathlib import Path
from typing import Any

try:
    _toml_module = importlib.import_module("tomllib")
except ModuleNotFoundError:  # pragma: no cover - exercised via test shim
    _toml_module = importlib.import_module("tomli")

_toml_loads = _toml_module.loads
_TOMLDecodeError = _toml_module.TOMLDecodeError

DEFAULT_CONFIG_PATH = Path("user") / "config.toml"

# Upper bounds the library supports at desk scale.
SUPPORTED_LIMITS = {"max_n": 6, "max_d": 4, "max_degree": 20, "box": 16}
OUTPUT_FORMATS = ("text", "json")


class ConfigError(RuntimeError):
    """Raised when configuration cannot be loaded or validated."""


@dataclass(frozen=True)
class ThetaSource:
    """Where a numeric θ comes from: a JSON file or an inline JSON string."""

    path: Path | None = None
    inline: str | None = None

    @property
    def provided(self) -> bool:
        return self.path is not None or self.inline is not None


@dataclass(frozen=True)
class SizeLimits:
    max_n: int = 5
    max_d: int = 3
    max_degree: int = 10
    box: int = 8


@dataclass(frozen=True)
class OutputSettings:
    format: str = "text"
    reports_dir: Path = Path("reports")


@dataclass(frozen=True)
class RuntimeSettings:
    jobs: int = 1
    seed: int = 0
    numeric_trials: int = 10


@dataclass(frozen=True)
class RunConfig:
    """Settings for one qtoric invocation."""

    theta: ThetaSource = field(default_factory=ThetaSource)
    limits: SizeLimits = field(default_factory=SizeLimits)
    output: OutputSettings = field(default_factory=OutputSettings)
    runtime: RuntimeSettings = field(default_factory=RuntimeSettings)

    def with_overrides(
        self,
        *,
        theta: str | None = None,
        output_format: str | None = None,
        jobs: int | None = None,
        box: int | None = None,
    ) -> RunConfig:
        """Apply command-line overrides on top of file values."""

        config = self
        if theta is not None:
            config = replace(config, theta=_theta_from_text(theta))
        if output_format is not None:
            if output_format not in OUTPUT_FORMATS:
                raise ConfigError(f"output format must be one of {OUTPUT_FORMATS}.")
            config = replace(config, output=replace(config.output, format=output_format))
        if jobs is not None:
            if jobs < 1:
                raise ConfigError("jobs must be at least 1.")
            config = replace(config, runtime=replace(config.runtime, jobs=jobs))
        if box is not None:
            config = replace(config, limits=replace(config.limits, box=_check_cap("box", box)))
        return config


def load_config(config_path: Path | None = None) -> RunConfig:
    """Load configuration from ``user/config.toml`` unless overridden.

    A missing default file yields the built-in defaults; a missing explicit
    path is an error.
    """

    path = config_path or DEFAULT_CONFIG_PATH
    if not path.exists():
        if config_path is not None:
            raise ConfigError(f"Configuration file not found at {path}.")
        return RunConfig()

    try:
        data = _toml_loads(path.read_text(encoding="utf-8"))
    except _TOMLDecodeError as exc:
        raise ConfigError(f"Config at {path} is not valid TOML: {exc}") from exc

    return RunConfig(
        theta=_load_theta(data.get("theta", {}), base=path.parent),
        limits=_load_limits(data.get("limits", {})),
        output=_load_output(data.get("output", {})),
        runtime=_load_runtime(data.get("runtime", {})),
    )


def _theta_from_text(value: str) -> ThetaSource:
    text = value.strip()
    if text.startswith("{"):
        return ThetaSource(inline=text)
    return ThetaSource(path=Path(text).expanduser())


def _load_theta(table: Any, *, base: Path) -> ThetaSource:
    if not isinstance(table, dict):
        raise ConfigError("[theta] must be a table.")
    path_value = table.get("path")
    inline_value = table.get("inline")
    if path_value is not None and inline_value is not None:
        raise ConfigError("theta.path and theta.inline are mutually exclusive.")
    if path_value is not None:
        if not isinstance(path_value, str) or not path_value.strip():
            raise ConfigError("theta.path must be a non-empty string.")
        path = Path(path_value).expanduser()
        return ThetaSource(path=path if path.is_absolute() else base / path)
    if inline_value is not None:
        if not isinstance(inline_value, str) or not inline_value.strip():
            raise ConfigError("theta.inline must be a non-empty JSON string.")
        return ThetaSource(inline=inline_value)
    return ThetaSource()


def _check_cap(key: str, value: Any) -> int:
    if not isinstance(value, int) or isinstance(value, bool) or value <= 0:
        raise ConfigError(f"limits.{key} must be a positive integer when provided.")
    bound = SUPPORTED_LIMITS[key]
    if value > bound:
        raise ConfigError(f"limits.{key} exceeds the supported bound {bound}.")
    return value


def _load_limits(table: Any) -> SizeLimits:
    if not isinstance(table, dict):
        raise ConfigError("[limits] must be a table.")
    defaults = SizeLimits()
    values = {
        key: _check_cap(key, table[key]) if key in table else getattr(defaults, key)
        for key in SUPPORTED_LIMITS
    }
    return SizeLimits(**values)


def _load_output(table: Any) -> OutputSettings:
    if not isinstance(table, dict):
        raise ConfigError("[output] must be a table.")
    output_format = table.get("format", "text")
    if output_format not in OUTPUT_FORMATS:
        raise ConfigError(f"output.format must be one of {OUTPUT_FORMATS}.")
    reports_dir = Path("reports")
    reports_value = table.get("reports_dir")
    if reports_value is not None:
        if not isinstance(reports_value, str) or not reports_value.strip():
            raise ConfigError("output.reports_dir must be a non-empty string.")
        reports_dir = Path(reports_value).expanduser()
    return OutputSettings(format=output_format, reports_dir=reports_dir)


def _load_runtime(table: Any) -> RuntimeSettings:
    if not isinstance(table, dict):
        raise ConfigError("[runtime] must be a table.")
    values = {}
    for key, minimum in (("jobs", 1), ("seed", 0), ("numeric_trials", 1)):
        if key not in table:
            continue
        value = table[key]
        if not isinstance(value, int) or isinstance(value, bool) or value < minimum:
            raise ConfigError(f"runtime.{key} must be an integer ≥ {minimum}.")
        values[key] = value
    return RuntimeSettings(**values)
