"""The five subcommands. Each returns an exit code and writes into ``out_dir``."""

from __future__ import annotations

import argparse
import json
import logging
import math
from dataclasses import dataclass
from pathlib import Path
from typing import Any

import numpy as np
import pandas as pd

from growth_estimators import (
    Flavor,
    GrowthTable,
    OrderEstimate,
    RadiusGrid,
    Source,
    estimate_delta,
    estimate_order,
    estimate_type,
    sample_growth,
)
from nevanlinna_core import QuadratureConfig
from nevanlinna_core.lemma_checks import (
    check_inversion_identity,
    check_log_derivative_bound,
    check_log_derivative_proximity,
    check_reciprocal_boundedness,
    check_wiman_valiron,
)
from punctured_functions import (
    GrowthLabError,
    PuncturedFunction,
    SchemaError,
    catalog_document,
    catalog_names,
    load_catalog_function,
    parse_function_spec,
)
from series_lab import OdeSpec, ode_from_spec, solve_series, taylor_series
from theorem_verifier import (
    BUILTIN_IDS,
    builtin_document,
    render_verdict,
    run_scenarios,
    select_scenarios,
    summarize,
    summary_frame,
)

from .colored_logger import ColoredLogger
from .errors import EXIT_OK, UnexpectedVerdict, UsageError
from .io import SCHEMA_VERSION, write_json_atomic, write_text_atomic
from .svg import line_chart

logger = logging.getLogger(__name__)

CATALOG_PREFIX = "catalog:"
FORMATS = ("csv", "structured", "svg")

# name -> (p, q, flavor, source)
ORDER_FUNCTIONALS: dict[str, tuple[int, int, Flavor, Source]] = {
    "sigma-log": (1, 2, Flavor.UPPER, Source.T),
    "mu-log": (1, 2, Flavor.LOWER, Source.T),
    "sigma-22": (2, 2, Flavor.UPPER, Source.T),
    "mu-22": (2, 2, Flavor.LOWER, Source.T),
    "lambda-log": (1, 2, Flavor.UPPER, Source.NZ),
    "lambda-22": (2, 2, Flavor.UPPER, Source.NZ),
}
TYPE_FUNCTIONALS = {"tau-log": Flavor.UPPER, "lower-tau-log": Flavor.LOWER}
FUNCTIONALS = (*ORDER_FUNCTIONALS, *TYPE_FUNCTIONALS, "order", "type", "delta")


@dataclass(frozen=True)
class RunConfig:
    """Resolved options shared by every command."""

    out_dir: Path
    formats: frozenset[str]
    cfg: QuadratureConfig
    workers: int
    seed: int = 0


# ── Inputs ───────────────────────────────────────────────────────────────


def parse_formats(value: str) -> frozenset[str]:
    chosen = frozenset(part.strip() for part in value.split(",") if part.strip())
    unknown = sorted(chosen - set(FORMATS))
    if unknown or not chosen:
        message = f"--format takes a comma list of {list(FORMATS)}, got {value!r}"
        raise UsageError(message)
    return chosen


def load_function(source: str) -> PuncturedFunction:
    """``catalog:NAME`` or a path to a function document."""
    if source.startswith(CATALOG_PREFIX):
        return load_catalog_function(source[len(CATALOG_PREFIX) :])
    path = Path(source)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as exc:
        message = f"cannot read function spec {path}: {exc}"
        raise SchemaError(message) from exc
    return parse_function_spec(text)


def load_equation(source: str) -> OdeSpec:
    """``catalog:SCENARIO`` (its equation) or a path to an equation document."""
    if source.startswith(CATALOG_PREFIX):
        return ode_from_spec(builtin_document(source[len(CATALOG_PREFIX) :])["equation"])
    path = Path(source)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as exc:
        message = f"cannot read equation {path}: {exc}"
        raise SchemaError(message) from exc
    return ode_from_spec(text)


def grid_from_args(args: argparse.Namespace) -> RadiusGrid:
    return RadiusGrid(args.u_min, args.u_max, args.points)


# ── Outputs ──────────────────────────────────────────────────────────────


def _header(command: str, run: RunConfig) -> dict[str, Any]:
    return {"schema_version": SCHEMA_VERSION, "command": command, "seed": run.seed}


def _write_table(table: GrowthTable, stem: str, run: RunConfig, log: ColoredLogger) -> None:
    if "csv" in run.formats:
        path = write_text_atomic(run.out_dir / f"{stem}.csv", table.to_csv())
        log.file_saved("growth_table", str(path))
    if "svg" in run.formats:
        for column, label in (("T", "T(r)"), ("logM", "log M(r)")):
            chart = line_chart(
                table.u.tolist(),
                table.column(column).tolist(),
                title=f"{label} of {table.name}",
                x_label="u = log log(1/r)",
                y_label=label,
            )
            path = write_text_atomic(run.out_dir / f"{stem}_{column}.svg", chart)
            log.file_saved("chart", str(path))


def _finite(value: float) -> float | None:
    return value if math.isfinite(value) else None


# ── analyze ──────────────────────────────────────────────────────────────


def _lemma_report(f: PuncturedFunction, grid: RadiusGrid, run: RunConfig) -> dict[str, Any]:
    """Run the pointwise lemma checks on the grid radii; failures are recorded, not raised."""
    radii = grid.radii.tolist()
    offset = float(np.random.default_rng(run.seed).uniform(0.0, 2.0 * math.pi))
    checks = {
        "wiman_valiron": lambda: check_wiman_valiron(f, radii),
        "log_derivative_bound": lambda: check_log_derivative_bound(f, radii, offset=offset, cfg=run.cfg),
        "log_derivative_proximity": lambda: check_log_derivative_proximity(f, radii, cfg=run.cfg),
        "reciprocal_boundedness": lambda: check_reciprocal_boundedness(f, radii, cfg=run.cfg),
        "inversion_identity": lambda: check_inversion_identity(f, [1.0 / r for r in radii[:3]], cfg=run.cfg),
    }
    report: dict[str, Any] = {}
    for name, check in checks.items():
        try:
            result = check()
        except (GrowthLabError, ValueError) as exc:
            report[name] = {"ok": None, "error": f"{type(exc).__name__}: {exc}"}
            continue
        report[name] = {"ok": bool(result.ok)}
    return report


def cmd_analyze(args: argparse.Namespace, run: RunConfig, log: ColoredLogger) -> int:
    f = load_function(args.function)
    log.function_loaded(f.name, f.kind.value)
    grid = grid_from_args(args)
    table = sample_growth(f, grid, run.cfg, zeros=args.zeros, workers=run.workers)
    log.table_sampled(f.name, grid.points, table.failed_rows)
    _write_table(table, "growth", run, log)
    if "structured" in run.formats:
        payload = {
            **_header("analyze", run),
            "function": f.name,
            "kind": f.kind.value,
            "grid": grid.to_dict(),
            "flag_counts": table.flag_counts(),
        }
        if args.lemmas:
            payload["lemmas"] = _lemma_report(f, grid, run)
        path = write_json_atomic(run.out_dir / "analysis.json", payload)
        log.file_saved("analysis", str(path))
    return EXIT_OK


# ── estimate ─────────────────────────────────────────────────────────────


def _estimate(args: argparse.Namespace, table: GrowthTable) -> tuple[OrderEstimate, dict[str, Any]]:
    functional = args.functional
    if functional in ORDER_FUNCTIONALS:
        p, q, flavor, source = ORDER_FUNCTIONALS[functional]
        return estimate_order(table, p, q, flavor, source), {"p": p, "q": q}
    if functional in TYPE_FUNCTIONALS:
        flavor = TYPE_FUNCTIONALS[functional]
        order = estimate_order(table, 1, 2, flavor, Source.T).value
        return estimate_type(table, order, flavor, Source.T), {"order": order}
    if functional == "order":
        flavor, source = Flavor(args.flavor), Source(args.source)
        return estimate_order(table, args.order_p, args.order_q, flavor, source), {
            "p": args.order_p,
            "q": args.order_q,
        }
    if functional == "type":
        if args.type_order is None:
            message = "--functional type needs --type-order"
            raise UsageError(message)
        source = Source(args.source)
        return estimate_type(table, args.type_order, Flavor(args.flavor), source), {"order": args.type_order}
    return estimate_delta(table), {}


def cmd_estimate(args: argparse.Namespace, run: RunConfig, log: ColoredLogger) -> int:
    f = load_function(args.function)
    log.function_loaded(f.name, f.kind.value)
    grid = grid_from_args(args)
    needs_zeros = args.functional.startswith("lambda") or (
        args.functional == "order" and args.source == Source.NZ.value
    )
    table = sample_growth(f, grid, run.cfg, zeros=needs_zeros, workers=run.workers)
    estimate, parameters = _estimate(args, table)
    log.measurement(f"{args.functional}({f.name})", estimate.value, estimate.band)
    _write_table(table, "growth", run, log)
    if "structured" in run.formats:
        payload = {
            **_header("estimate", run),
            "function": f.name,
            "functional": args.functional,
            "parameters": parameters,
            "grid": grid.to_dict(),
            "estimate": estimate.to_dict(),
        }
        path = write_json_atomic(run.out_dir / "estimate.json", payload)
        log.file_saved("estimate", str(path))
    print(json.dumps({"functional": args.functional, "value": estimate.value, "band": list(estimate.band)}))
    return EXIT_OK


# ── ode ──────────────────────────────────────────────────────────────────


def _coefficient_csv(f: PuncturedFunction, terms: int) -> str:
    series = f.series if f.series is not None else taylor_series(f, terms)
    frame = pd.DataFrame(
        {"n": np.arange(series.log_mag.size), "log_abs": series.log_mag, "arg": series.arg}
    )
    body = frame.to_csv(index=False, float_format="%.17g", lineterminator="\n")
    return f"# schema_version={SCHEMA_VERSION}\n{body}"


def cmd_ode(args: argparse.Namespace, run: RunConfig, log: ColoredLogger) -> int:
    ode = load_equation(args.equation)
    if ode.solution is not None:
        solution, solved_by = ode.solution, "manufactured"
    else:
        solution, solved_by = solve_series(ode), "series"
    log.function_loaded(solution.name, f"{solved_by} solution of {ode.name}")
    if "csv" in run.formats:
        path = write_text_atomic(run.out_dir / "solution_coefficients.csv", _coefficient_csv(solution, ode.terms))
        log.file_saved("coefficients", str(path))
    grid = grid_from_args(args)
    table = sample_growth(solution, grid, run.cfg, workers=run.workers)
    _write_table(table, "solution_growth", run, log)
    if "structured" in run.formats:
        payload = {
            **_header("ode", run),
            "equation": ode.name,
            "k": ode.k,
            "s": ode.s,
            "terms": ode.terms,
            "manufactured": None if ode.manufactured is None else f"A{ode.manufactured}",
            "solved_by": solved_by,
            "residual_radius": _finite(solution.series.residual_radius) if solution.series is not None else None,
            "grid": grid.to_dict(),
            "flag_counts": table.flag_counts(),
        }
        path = write_json_atomic(run.out_dir / "ode.json", payload)
        log.file_saved("ode", str(path))
    return EXIT_OK


# ── verify ───────────────────────────────────────────────────────────────


def cmd_verify(args: argparse.Namespace, run: RunConfig, log: ColoredLogger) -> int:
    scenarios = select_scenarios(args.scenario)
    for scenario in scenarios:
        log.scenario_start(scenario.id, scenario.theorem.value)
    verdicts = run_scenarios(scenarios, run.cfg, workers=run.workers, parallel=args.parallel)
    for verdict in verdicts:
        log.verdict(verdict)
        logger.debug("%s", render_verdict(verdict))
        if "structured" in run.formats:
            path = write_text_atomic(
                run.out_dir / "verdicts" / f"{verdict.scenario_id}.json",
                verdict.model_dump_json(indent=2) + "\n",
            )
            log.file_saved("verdict", str(path))

    summary = summarize(verdicts)
    log.summary_table(summary)
    print(summary)
    write_text_atomic(run.out_dir / "summary.txt", summary + "\n")
    if "csv" in run.formats:
        frame = summary_frame(verdicts)
        write_text_atomic(run.out_dir / "summary.csv", frame.to_csv(index=False, lineterminator="\n"))
    if "structured" in run.formats:
        payload = {
            **_header("verify", run),
            "scenarios": summary_frame(verdicts).to_dict(orient="records"),
        }
        write_json_atomic(run.out_dir / "verify.json", payload)

    unexpected = [v for v in verdicts if not v.as_expected]
    if unexpected:
        first = unexpected[0]
        failure = first.first_failure()
        reason = (
            f"{failure.role.value} '{failure.name}' ({failure.predicate}) failed"
            if failure is not None
            else f"reported {first.outcome.value}, expected {first.expected_outcome.value}"
        )
        message = f"{len(unexpected)} unexpected verdict(s); {first.scenario_id}: {reason}"
        raise UnexpectedVerdict(message)
    return EXIT_OK


# ── catalog ──────────────────────────────────────────────────────────────


def cmd_catalog(args: argparse.Namespace, run: RunConfig, log: ColoredLogger) -> int:
    print("functions:")
    for name in catalog_names():
        print(f"  catalog:{name}")
    print("scenarios:")
    for sid in BUILTIN_IDS:
        document = builtin_document(sid)
        print(f"  {sid:<12} {document['theorem']:<4} {document.get('description', '')}")
    if args.out is not None:
        for sid in BUILTIN_IDS:
            path = write_json_atomic(run.out_dir / "scenarios" / f"{sid}.json", builtin_document(sid))
            log.file_saved("scenario", str(path))
        for name in catalog_names():
            write_json_atomic(run.out_dir / "functions" / f"{name}.json", catalog_document(name))
    return EXIT_OK


COMMANDS = {
    "analyze": cmd_analyze,
    "estimate": cmd_estimate,
    "ode": cmd_ode,
    "verify": cmd_verify,
    "catalog": cmd_catalog,
}
