"""Command-line surface: estimate, simulate, sweep, calibrate, twq, probe.

Exit codes: 0 success, 1 usage error, 2 data error, 3 numerical failure.
"""

import argparse
import json
import logging
from collections.abc import Callable, Sequence
from pathlib import Path
from typing import Any, NoReturn

import numpy as np
from pydantic import ValidationError

from core import configure_logging, settings
from core.errors import FactorCountError, NumericalError, UsageError
from estimators import get_all_estimator_info
from harness import calibrate_C, estimate_file, rate_scaling_probe, run_experiment, sweep_alpha
from rmt.tracy_widom import TW1Table, tw1_cdf, tw1_quantile
from schema import (
    EstimatorName,
    ExperimentConfig,
    NoiseLaw,
    PresetName,
    Sigma2Mode,
)
from schema.presets import PRESETS

logger = logging.getLogger(__name__)

PROG = "factor-count"


class ArgumentParser(argparse.ArgumentParser):
    """Parser whose usage errors surface as UsageError instead of exiting with status 2."""

    def error(self, message: str) -> NoReturn:
        raise UsageError(f"{self.prog}: {message}")


def _comma_list(cast: Callable[[str], Any]) -> Callable[[str], list[Any]]:
    def parse(text: str) -> list[Any]:
        try:
            return [cast(item.strip()) for item in text.split(",") if item.strip()]
        except ValueError:
            raise argparse.ArgumentTypeError(f"invalid list: {text!r}")

    return parse


def parse_grid(text: str) -> list[list[int]]:
    """'300x300,3000x300' -> [[300, 300], [3000, 300]]."""
    try:
        return [[int(v) for v in item.lower().split("x")] for item in text.split(",")]
    except ValueError:
        raise argparse.ArgumentTypeError(f"grid must look like PxN,PxN,...: {text!r}")


def parse_strength(text: str) -> float | str:
    return "alpha" if text == "alpha" else float(text)


def parse_C(text: str) -> float | str:
    return "auto" if text == "auto" else float(text)


def preset_help() -> str:
    lines = []
    for name, preset in PRESETS.items():
        strengths = ", ".join(str(s) for s in preset["strengths"]) or "none"
        lines.append(f"  {name.value:<5} factors ({strengths}), C = {preset['C']}")
    return "presets:\n" + "\n".join(lines)


def add_experiment_args(parser: argparse.ArgumentParser) -> None:
    model = parser.add_argument_group("model")
    model.add_argument("--preset", type=PresetName, choices=list(PresetName), help="Named model")
    model.add_argument("--config", type=Path, help="JSON experiment config")
    model.add_argument("--name", help="Model label in the report")
    model.add_argument(
        "--strengths",
        type=_comma_list(parse_strength),
        help="Comma-separated factor strengths, 'alpha' marks the swept one",
    )
    model.add_argument("--sigma2", type=float, help="Noise level")
    model.add_argument("--alphas", type=_comma_list(float), help="Values swept for 'alpha'")

    grid = parser.add_argument_group("grid")
    grid.add_argument("--grid", type=parse_grid, help="(p, n) pairs as PxN,PxN,...")
    grid.add_argument("--c", type=float, help="Aspect ratio p/n, used with --n-grid")
    grid.add_argument("--n-grid", type=_comma_list(int), help="Sample sizes at fixed --c")

    est = parser.add_argument_group("estimators")
    est.add_argument(
        "--estimators", type=_comma_list(EstimatorName), help="Comma-separated subset of py,kn"
    )
    est.add_argument("--C", type=parse_C, help="PY tuning constant or 'auto'")
    est.add_argument("--gamma", type=float, help="KN significance level")
    est.add_argument("--sigma2-mode", type=Sigma2Mode, choices=list(Sigma2Mode))
    est.add_argument("--noise-law", type=NoiseLaw, choices=list(NoiseLaw))
    est.add_argument("--rotate-basis", action="store_true", default=None)
    est.add_argument(
        "--single-gap",
        dest="two_gap_rule",
        action="store_false",
        default=None,
        help="PY stops at the first small gap",
    )
    est.add_argument("--s-max", type=int, help="PY bound on the number of factors")

    run = parser.add_argument_group("run")
    run.add_argument("--reps", type=int, help="Replications per grid point")
    run.add_argument("--seed", dest="master_seed", type=int, help="Master seed")
    run.add_argument("--calibration-reps", type=int, help="Replications for C = auto")
    run.add_argument("--workers", type=int, default=None, help="Thread workers")
    run.add_argument("--output", type=Path, help="Write the CSV report here instead of stdout")
    run.add_argument(
        "--no-timing", action="store_true", help="Leave the seconds column empty (reproducible)"
    )


CONFIG_FIELDS = [
    "preset",
    "name",
    "strengths",
    "sigma2",
    "alphas",
    "estimators",
    "C",
    "gamma",
    "sigma2_mode",
    "noise_law",
    "rotate_basis",
    "two_gap_rule",
    "s_max",
    "reps",
    "master_seed",
    "calibration_reps",
]


def build_config(args: argparse.Namespace) -> ExperimentConfig:
    """JSON file, then preset, then command-line overrides."""
    data: dict[str, Any] = {}
    if args.config is not None:
        try:
            data = json.loads(args.config.read_text(encoding="utf-8"))
        except OSError as e:
            raise UsageError(f"Cannot read config {args.config}: {e}")
        except json.JSONDecodeError as e:
            raise UsageError(f"Config {args.config} is not valid JSON: {e}")
    for field in CONFIG_FIELDS:
        value = getattr(args, field)
        if value is not None:
            data[field] = value
    if args.grid is not None:
        data["grid"] = args.grid
    elif args.n_grid is not None:
        if args.c is None:
            raise UsageError("--n-grid needs --c")
        data["grid"] = {"c": args.c, "n": args.n_grid}
    return ExperimentConfig.model_validate(data)


def write_report(args: argparse.Namespace, report: Any) -> None:
    text = report.to_csv(args.output, include_timing=not args.no_timing)
    if args.output is None:
        print(text, end="")
    else:
        logger.info(f"Wrote {len(report.rows)} rows to {args.output}")


def cmd_estimate(args: argparse.Namespace) -> None:
    overrides = {
        "C": args.C,
        "gamma": args.gamma,
        "sigma2": args.sigma2,
        "s_max": args.s_max,
        "two_gap_rule": args.two_gap_rule,
    }
    result = estimate_file(args.path, args.estimator, overrides=overrides)
    print(result.model_dump_json(indent=2) if args.json else result.pretty_repr())


def cmd_simulate(args: argparse.Namespace) -> None:
    write_report(args, run_experiment(build_config(args), args.workers))


def cmd_sweep(args: argparse.Namespace) -> None:
    write_report(args, sweep_alpha(build_config(args), args.workers))


def cmd_calibrate(args: argparse.Namespace) -> None:
    calibration = calibrate_C(args.p, args.n, args.reps, args.seed, args.workers)
    if args.json:
        print(json.dumps(calibration._asdict()))
    else:
        print(f"s_hat: {calibration.s_hat:.6f}")
        print(f"C_tilde: {calibration.C_tilde:.6f}")


def cmd_twq(args: argparse.Namespace) -> None:
    if args.gamma is None and args.cdf is None and args.write_table is None:
        raise UsageError("twq needs one of --gamma, --cdf, --write-table")
    if args.write_table is not None:
        table = TW1Table.build(nodes=settings.TW_QUADRATURE_NODES)
        table.write(
            args.write_table,
            provenance=f"Fredholm determinant, {settings.TW_QUADRATURE_NODES} nodes",
        )
        logger.info(f"Wrote {table.s.size} knots to {args.write_table}")
    if args.cdf is not None:
        print(f"{tw1_cdf(args.cdf):.6f}")
    if args.gamma is not None:
        print(f"{tw1_quantile(args.gamma):.6f}")


def cmd_probe(args: argparse.Namespace) -> None:
    report = rate_scaling_probe(
        args.strengths,
        args.c,
        args.n_grid,
        args.reps,
        sigma2=args.sigma2,
        master_seed=args.seed,
        workers=args.workers,
    )
    if args.json:
        print(report.model_dump_json(indent=2))
        return
    for point in report.points:
        print(" ".join(f"{k}={v:.6g}" for k, v in point.model_dump(exclude_none=True).items()))
    print(f"noise_slope={report.noise_slope:.4f}")
    if report.equal_slope is not None:
        print(f"equal_slope={report.equal_slope:.4f}")
    if report.distinct_limit is not None:
        print(f"distinct_limit={report.distinct_limit:.6g}")


def build_parser() -> ArgumentParser:
    parser = ArgumentParser(
        prog=PROG,
        description="Estimate the number of factors in high-dimensional sample covariances.",
        epilog=preset_help(),
        formatter_class=argparse.RawDescriptionHelpFormatter,
    )
    parser.add_argument("--log-level", help="Override LOG_LEVEL")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=ArgumentParser)

    estimators_help = "; ".join(f"{e.key}: {e.description}" for e in get_all_estimator_info())
    p = sub.add_parser("estimate", help="Estimate the number of factors of a CSV data matrix")
    p.add_argument("path", type=Path, help="CSV with one observation per row")
    p.add_argument(
        "--estimator",
        type=EstimatorName,
        choices=list(EstimatorName),
        default=EstimatorName.PY,
        help=estimators_help,
    )
    p.add_argument("--C", type=float, help="PY tuning constant; calibrated at (p, n) if omitted")
    p.add_argument("--gamma", type=float, help="KN significance level")
    p.add_argument("--sigma2", type=float, help="Known noise level; estimated if omitted")
    p.add_argument("--s-max", type=int)
    p.add_argument("--single-gap", dest="two_gap_rule", action="store_false")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_estimate)

    for name, func, text in [
        ("simulate", cmd_simulate, "Monte Carlo rates on a preset or JSON config"),
        ("sweep", cmd_sweep, "Monte Carlo rates along a factor-strength sweep"),
    ]:
        p = sub.add_parser(
            name,
            help=text,
            epilog=preset_help(),
            formatter_class=argparse.RawDescriptionHelpFormatter,
        )
        add_experiment_args(p)
        p.set_defaults(func=func)

    p = sub.add_parser("calibrate", help="Calibrate the PY constant C at (p, n)")
    p.add_argument("--p", type=int, required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--reps", type=int, default=settings.CALIBRATION_REPS)
    p.add_argument("--seed", type=int)
    p.add_argument("--workers", type=int)
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_calibrate)

    p = sub.add_parser("twq", help="Tracy-Widom order 1 quantiles and distribution function")
    p.add_argument("--gamma", type=float, help="Upper tail probability; prints s(gamma)")
    p.add_argument("--cdf", type=float, metavar="S", help="Prints F1(S)")
    p.add_argument("--write-table", type=Path, metavar="PATH", help="Write the computed table")
    p.set_defaults(func=cmd_twq)

    p = sub.add_parser("probe", help="Log-log slopes of median eigenvalue gaps against n")
    p.add_argument("--strengths", type=_comma_list(float), default=[])
    p.add_argument("--c", type=float, required=True)
    p.add_argument("--n-grid", type=_comma_list(int), required=True)
    p.add_argument("--reps", type=int, default=200)
    p.add_argument("--sigma2", type=float, default=1.0)
    p.add_argument("--seed", type=int)
    p.add_argument("--workers", type=int)
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_probe)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    try:
        args = build_parser().parse_args(argv)
        if args.log_level:
            configure_logging(args.log_level.upper())
        args.func(args)
    except ValidationError as e:
        logger.error(f"Invalid input: {e}")
        return UsageError.exit_code
    except FactorCountError as e:
        logger.error(str(e))
        return e.exit_code
    except np.linalg.LinAlgError as e:
        logger.error(f"Linear algebra failure: {e}")
        return NumericalError.exit_code
    return 0
