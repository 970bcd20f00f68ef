"""Command-line front end for qtoric.

Purpose: Load θ and fan inputs, print chart presentations, and run the named
verification suites symbolically or at a numeric θ.
Exit codes: 0 when every identity holds, 1 on a failed identity, 2 on bad input.
"""

from __future__ import annotations

import argparse
import json
import logging
from dataclasses import replace
from pathlib import Path
from typing import Sequence

import numpy as np

from src.core.errors import QToricError, VerificationError
from src.core.scalars import NUMERIC_TOLERANCE, random_theta
from src.services.config import ConfigError, RunConfig, load_config
from src.services.inputs import fan_summary, load_fan, load_theta
from src.services.reports import VerificationReport, write_report
from src.services.suites import SUITES, SuiteParams, check_caps, get_suite, run_suite

EXIT_OK = 0
EXIT_FAILED = 1
EXIT_INPUT = 2

logger = logging.getLogger(__name__)


def build_parser() -> argparse.ArgumentParser:
    """Builds the argument parser for the CLI.

    Returns:
        argparse.ArgumentParser: parser with fan, chart, verify and specialize
    """

    common = argparse.ArgumentParser(add_help=False)
    common.add_argument(
        "--config",
        type=Path,
        default=None,
        help="Path to a TOML config. Defaults to user/config.toml when present.",
    )
    common.add_argument(
        "--theta",
        default=None,
        help="Numeric θ as a JSON file path or an inline JSON object.",
    )
    common.add_argument("--format", choices=("text", "json"), default=None, help="Output format.")
    common.add_argument("--output", type=Path, default=None, help="Also write the output to this file.")
    common.add_argument("--verbose", "-v", action="store_true", help="Enable verbose logging.")

    sizes = argparse.ArgumentParser(add_help=False)
    sizes.add_argument("--n", type=int, default=None, help="Matrix size or torus rank.")
    sizes.add_argument("--d", type=int, default=None, help="Minor size or Grassmannian rank.")
    sizes.add_argument("--deg", type=int, default=None, help="Truncation degree for series.")
    sizes.add_argument("--box", type=int, default=None, help="Lattice box radius for ideal searches.")
    sizes.add_argument("--jobs", type=int, default=None, help="Worker processes for suite items.")
    sizes.add_argument("--timing", action="store_true", help="Include wall time in JSON reports.")

    parser = argparse.ArgumentParser(
        prog="qtoric",
        description="Exact algebra of θ-deformed toric varieties.",
    )
    commands = parser.add_subparsers(dest="command", required=True)

    fan = commands.add_parser("fan", parents=[common], help="Validate a fan and list its charts.")
    fan.add_argument("path", type=Path, help="Fan JSON file.")

    chart = commands.add_parser("chart", parents=[common], help="Print one chart presentation.")
    chart.add_argument("path", type=Path, help="Fan JSON file.")
    chart.add_argument("cone", help="Cone name, 1-based index, or 0 for the torus.")

    verify = commands.add_parser("verify", parents=[common, sizes], help="Run a verification suite.")
    verify.add_argument("suite", choices=sorted(SUITES), help="Suite name.")

    specialize = commands.add_parser(
        "specialize",
        parents=[common, sizes],
        help="Re-run a suite and compare both sides at a numeric θ.",
    )
    specialize.add_argument("suite", choices=sorted(SUITES), help="Suite name.")
    specialize.add_argument(
        "--random",
        action="store_true",
        help="Draw runtime.numeric_trials random θ instead of reading --theta.",
    )
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    """Main entry point for the CLI."""

    args = build_parser().parse_args(argv)
    _configure_logging(args.verbose)
    try:
        config = _load_configuration(args)
        args.output = _resolve_output(args.output, config)
        if args.command == "fan":
            return _cmd_fan(args, config)
        if args.command == "chart":
            return _cmd_chart(args, config)
        if args.command == "verify":
            return _cmd_verify(args, config)
        return _cmd_specialize(args, config)
    except ConfigError as err:
        print(f"Configuration error: {err}")
        return EXIT_INPUT
    except VerificationError as err:
        print(f"Verification error: {err}")
        return EXIT_FAILED
    except QToricError as err:
        print(f"{type(err).__name__}: {err}")
        return EXIT_INPUT


def _configure_logging(verbose: bool) -> None:
    """Configure logging based on verbosity setting."""
    if verbose:
        logging.basicConfig(level=logging.INFO, format="%(levelname)s %(message)s")


def _load_configuration(args: argparse.Namespace) -> RunConfig:
    """Load the run configuration and apply command-line overrides."""

    config = load_config(args.config)
    return config.with_overrides(
        theta=args.theta,
        output_format=args.format,
        jobs=getattr(args, "jobs", None),
        box=getattr(args, "box", None),
    )


def _resolve_output(output: Path | None, config: RunConfig) -> Path | None:
    """Bare file names land in the configured reports directory."""
    if output is None or output.is_absolute() or output.parent != Path("."):
        return output
    return config.output.reports_dir / output


def _emit(text: str, output: Path | None) -> None:
    print(text, end="" if text.endswith("\n") else "\n")
    if output is not None:
        write_report(text if text.endswith("\n") else text + "\n", output)


def _cmd_fan(args: argparse.Namespace, config: RunConfig) -> int:
    summary = fan_summary(load_fan(args.path), load_theta(config.theta))
    if config.output.format == "json":
        _emit(json.dumps(summary, indent=2, ensure_ascii=False), args.output)
        return EXIT_OK
    lines = [
        f"Fan: {args.path}",
        f"Rank: {summary['n']}",
        f"Cones: {summary['cones']} ({summary['maximal']} maximal)",
        f"Smooth: {'yes' if summary['smooth'] else 'no'}",
        "Charts:",
    ]
    for chart in summary["charts"]:
        generators = ", ".join(f"{name}={vector}" for name, vector in chart["generators"].items())
        lines.append(f"  {chart['name']}: rays {chart['rays']}")
        lines.append(f"    generators: {generators}")
        for relation in chart["relations"]:
            lines.append(f"    relation: p={relation['p']} r={relation['r']}")
    _emit("\n".join(lines), args.output)
    return EXIT_OK


def _cmd_chart(args: argparse.Namespace, config: RunConfig) -> int:
    chart = load_fan(args.path).chart(args.cone, load_theta(config.theta))
    presentation = chart.presentation()
    if config.output.format == "json":
        _emit(presentation.to_json(), args.output)
    else:
        _emit("\n".join(presentation.text_lines()), args.output)
    return EXIT_OK


def _suite_params(args: argparse.Namespace, config: RunConfig) -> SuiteParams:
    params = SuiteParams(
        n=args.n,
        d=args.d,
        degree=args.deg if args.deg is not None else min(6, config.limits.max_degree),
        box=config.limits.box,
        seed=config.runtime.seed,
    )
    check_caps(params, config.limits)
    return params


def _finish(report: VerificationReport, args: argparse.Namespace, config: RunConfig) -> int:
    _emit(report.render(config.output.format, include_timing=args.timing), args.output)
    return EXIT_OK if report.passed else EXIT_FAILED


def _cmd_verify(args: argparse.Namespace, config: RunConfig) -> int:
    params = _suite_params(args, config)
    theta = load_theta(config.theta)
    if theta is not None:
        params = _with_theta(params, theta.to_json())
    report = run_suite(args.suite, params, jobs=config.runtime.jobs)
    return _finish(report, args, config)


def _with_theta(params: SuiteParams, theta: dict) -> SuiteParams:
    return replace(params, theta=theta)


def _cmd_specialize(args: argparse.Namespace, config: RunConfig) -> int:
    params = _suite_params(args, config)
    if args.random:
        draws = _random_thetas(args.suite, params, config)
    else:
        theta = load_theta(config.theta)
        if theta is None:
            raise ConfigError("specialize requires a numeric θ (--theta or [theta] in config).")
        draws = [theta.to_json()]
    report = run_suite(args.suite, _with_theta(params, draws[0]), jobs=config.runtime.jobs)
    report.parameters["draws"] = len(draws)
    for draw, theta_json in enumerate(draws[1:], start=1):
        current = run_suite(args.suite, _with_theta(params, theta_json), jobs=config.runtime.jobs)
        report.results.extend(current.results)
        report.elapsed = (report.elapsed or 0.0) + (current.elapsed or 0.0)
        logger.info("Draw %d: max |Δ| = %s", draw, current.max_delta)
    delta = report.max_delta
    if delta is not None and delta > NUMERIC_TOLERANCE:
        logger.warning("Numeric deviation %.3e exceeds tolerance", delta)
        _emit(report.render(config.output.format, include_timing=args.timing), args.output)
        return EXIT_FAILED
    return _finish(report, args, config)


def _random_thetas(name: str, params: SuiteParams, config: RunConfig) -> list[dict]:
    size = get_suite(name).theta_size(params)
    rng = np.random.default_rng(config.runtime.seed)
    return [random_theta(size, rng).to_json() for _ in range(config.runtime.numeric_trials)]


if __name__ == "__main__":
    raise SystemExit(main())
