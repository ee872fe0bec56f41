"""CLI: growth tables, estimates, equation solutions and theorem scenarios.

Usage:
    punctured-growth analyze --function catalog:gaussian --format csv,svg
    punctured-growth estimate --function catalog:rational_d3 --functional tau-log
    punctured-growth ode --equation catalog:thm6
    punctured-growth verify --scenario all
    punctured-growth catalog --out scenarios/

Exit codes: 0 success, 2 usage or schema errors, 3 measurement errors,
4 a scenario reported something other than its designed outcome. Every
failure also writes ``error.json`` into the output directory.
"""

from __future__ import annotations

import argparse
import logging
import sys
from pathlib import Path

from growth_estimators import Flavor, Source
from nevanlinna_core import QuadratureConfig
from observability import setup_tracing
from punctured_functions import GrowthLabError

from .colored_logger import get_colored_logger
from .commands import COMMANDS, FUNCTIONALS, RunConfig, parse_formats
from .errors import UsageError, exit_code_for
from .io import write_error_record
from .settings import get_settings, load_env_files

DEFAULT_U_MIN = 1.5
DEFAULT_U_MAX = 2.8
DEFAULT_POINTS = 24


class _Parser(argparse.ArgumentParser):
    """Turns argparse failures into UsageError so they get an error record."""

    def error(self, message: str) -> None:  # type: ignore[override]
        raise UsageError(message)


def _common(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--out", type=Path, default=None, help="Output directory (default: settings)")
    parser.add_argument(
        "--format",
        default="csv,structured",
        help="Comma list of csv, structured, svg (default: csv,structured)",
    )
    parser.add_argument("--quad-points", type=int, default=None, help="Starting trapezoid size, a power of two")
    parser.add_argument("--workers", type=int, default=None, help="Threads for growth-table rows")
    parser.add_argument("--seed", type=int, default=0, help="Seed for randomized sample points (default: 0)")
    parser.add_argument("--trace", action="store_true", help="Print tracing spans to the console")


def _grid(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--u-min", type=float, default=DEFAULT_U_MIN, help="Smallest u = log log(1/r)")
    parser.add_argument("--u-max", type=float, default=DEFAULT_U_MAX, help="Largest u")
    parser.add_argument("--points", type=int, default=DEFAULT_POINTS, help="Grid points")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(
        prog="punctured-growth",
        description="Nevanlinna growth of functions near a punctured point.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    analyze = sub.add_parser("analyze", help="Sample a function's growth table")
    analyze.add_argument("--function", required=True, help="PATH or catalog:NAME")
    analyze.add_argument("--zeros", action="store_true", help="Also count zeros (N_zeros column)")
    analyze.add_argument("--lemmas", action="store_true", help="Run the pointwise lemma checks")
    _grid(analyze)
    _common(analyze)

    estimate = sub.add_parser("estimate", help="Estimate an order, type or delta")
    estimate.add_argument("--function", required=True, help="PATH or catalog:NAME")
    estimate.add_argument("--functional", choices=FUNCTIONALS, default="sigma-log")
    estimate.add_argument("--order-p", type=int, default=1)
    estimate.add_argument("--order-q", type=int, default=2)
    estimate.add_argument("--flavor", choices=[f.value for f in Flavor], default=Flavor.UPPER.value)
    estimate.add_argument("--source", choices=[s.value for s in Source], default=Source.T.value)
    estimate.add_argument("--type-order", type=float, default=None, help="Order used by --functional type")
    _grid(estimate)
    _common(estimate)

    ode = sub.add_parser("ode", help="Solve or manufacture an equation's solution")
    ode.add_argument("--equation", required=True, help="PATH or catalog:SCENARIO")
    _grid(ode)
    _common(ode)

    verify = sub.add_parser("verify", help="Run theorem scenarios")
    verify.add_argument("--scenario", default="all", help="ID, comma list, PATH.json or all")
    verify.add_argument("--parallel", type=int, default=1, help="Scenarios run at once")
    _common(verify)

    catalog = sub.add_parser("catalog", help="List catalog functions and scenarios")
    _common(catalog)
    return parser


def main(argv: list[str] | None = None) -> int:
    load_env_files()
    settings = get_settings()
    logging.basicConfig(level=settings.log_level, format="%(message)s")
    log = get_colored_logger("punctured-growth")

    out_dir = settings.output_dir
    try:
        args = build_parser().parse_args(argv)
        out_dir = args.out or settings.output_dir
        if args.trace or settings.trace:
            setup_tracing(console=True)
        try:
            cfg = QuadratureConfig(base_points=args.quad_points or settings.base_points)
        except ValueError as exc:
            raise UsageError(str(exc)) from exc
        run = RunConfig(
            out_dir=out_dir,
            formats=parse_formats(args.format),
            cfg=cfg,
            workers=max(1, args.workers or settings.workers),
            seed=args.seed,
        )
        return COMMANDS[args.command](args, run, log)
    except GrowthLabError as exc:
        code = exit_code_for(exc)
        print(f"error: {exc}", file=sys.stderr)
        path = write_error_record(out_dir, exc, code)
        if path is not None:
            log.file_saved("error_record", str(path))
        return code


if __name__ == "__main__":
    raise SystemExit(main())
