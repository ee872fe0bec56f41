"""Human-readable verdict reports and replay of the recorded measurements."""

from __future__ import annotations

import io
from collections.abc import Sequence

import pandas as pd

from growth_estimators import (
    Flavor,
    GrowthTable,
    Source,
    estimate_delta,
    estimate_order,
    estimate_proximity_ratio,
    estimate_type,
)
from punctured_functions import SchemaError

from .models import Check, CheckStatus, Verdict

_STATUS_MARK = {
    CheckStatus.PASS: "ok",
    CheckStatus.MARGINAL: "ok~",
    CheckStatus.FAIL: "FAIL",
    CheckStatus.NOT_EVALUATED: "-",
}


def summary_frame(verdicts: Sequence[Verdict]) -> pd.DataFrame:
    rows = []
    for v in verdicts:
        failure = v.first_failure()
        rows.append(
            {
                "scenario": v.scenario_id,
                "theorem": v.theorem.value,
                "outcome": v.outcome.value,
                "expected": v.expected_outcome.value,
                "as_expected": "yes" if v.as_expected else "NO",
                "marginal": ",".join(v.marginal) or "-",
                "first_failure": failure.name if failure else "-",
            }
        )
    return pd.DataFrame(rows, columns=["scenario", "theorem", "outcome", "expected", "as_expected", "marginal", "first_failure"])


def summarize(verdicts: Sequence[Verdict]) -> str:
    """Summary table of a verification run, one line per scenario."""
    if not verdicts:
        return "no scenarios run"
    frame = summary_frame(verdicts)
    unexpected = sum(not v.as_expected for v in verdicts)
    footer = f"{len(verdicts)} scenarios, {unexpected} unexpected"
    return f"{frame.to_string(index=False)}\n{footer}"


def _check_line(check: Check) -> str:
    mark = _STATUS_MARK[check.status]
    if check.margin is None:
        detail = check.note
    else:
        detail = f"{check.lhs:.4f} {check.relation.value} {check.rhs:.4f}  margin {check.margin:+.4f}"
        if check.note:
            detail = f"{detail}  ({check.note})"
    return f"  [{mark:>4}] {check.name}: {check.predicate}\n         {detail}"


def render_verdict(verdict: Verdict) -> str:
    lines = [f"{verdict.scenario_id} ({verdict.theorem.value}): {verdict.outcome.value}"]
    if not verdict.as_expected:
        lines.append(f"  expected {verdict.expected_outcome.value}")
    lines.append("measured:")
    for name, value in verdict.measured.items():
        low, high = value.band
        lines.append(f"  {name:<34} {value.value:10.4f}  [{low:.4f}, {high:.4f}]")
    if verdict.hypotheses:
        lines.append("hypotheses:")
        lines.extend(_check_line(c) for c in verdict.hypotheses)
    lines.append("conclusions:")
    lines.extend(_check_line(c) for c in verdict.conclusions)
    lines.extend(f"note: {note}" for note in verdict.notes)
    return "\n".join(lines)


def verdict_tables(verdict: Verdict) -> dict[str, GrowthTable]:
    """Parse the evidence tables carried by a verdict."""
    return {
        key: GrowthTable.from_csv(io.StringIO(text), name=key, distinct=key.endswith("-distinct"))
        for key, text in verdict.tables.items()
    }


def replay_measurements(verdict: Verdict) -> dict[str, float]:
    """Re-run every recorded estimator call on the verdict's own tables.

    Derived quantities (sums, maxima) have no recipe and are skipped.

    Raises:
        SchemaError: a recipe names a table the verdict does not carry.
    """
    tables = verdict_tables(verdict)

    def table(key: str) -> GrowthTable:
        if key not in tables:
            message = f"verdict {verdict.scenario_id} has no table {key!r}"
            raise SchemaError(message)
        return tables[key]

    replayed: dict[str, float] = {}
    for name, measured in verdict.measured.items():
        recipe = measured.recipe
        if recipe is None:
            continue
        functional = recipe["functional"]
        if functional == "order":
            estimate = estimate_order(
                table(recipe["table"]), recipe["p"], recipe["q"], Flavor(recipe["flavor"]), Source(recipe["source"])
            )
        elif functional == "type":
            estimate = estimate_type(
                table(recipe["table"]), recipe["order"], Flavor(recipe["flavor"]), Source(recipe["source"])
            )
        elif functional == "delta":
            estimate = estimate_delta(table(recipe["table"]))
        elif functional == "ratio":
            estimate = estimate_proximity_ratio(
                [table(key) for key in recipe["numerators"]], table(recipe["denominator"])
            )
        else:
            message = f"unknown recipe functional {functional!r} for {name}"
            raise SchemaError(message)
        replayed[name] = estimate.value
    return replayed
