"""Theorems as measurable predicates over scenarios.

Public surface:
    - :func:`builtin_scenarios`, :func:`select_scenarios`, :func:`load_scenario`
    - :func:`run_scenario`, :func:`run_scenarios`
    - :func:`summarize`, :func:`render_verdict`, :func:`replay_measurements`
    - models :class:`Scenario`, :class:`Verdict`, :class:`Check`
"""

from .errors import MeasurementFailure, SolutionUnavailable
from .models import (
    SCHEMA_VERSION,
    Alternative,
    Check,
    CheckRole,
    CheckStatus,
    GridSpec,
    MeasuredValue,
    Outcome,
    Relation,
    Scenario,
    TheoremId,
    Tolerances,
    Verdict,
)
from .oscillation import DISTINCT_BUDGET, OscillationResult, check_oscillation
from .report import render_verdict, replay_measurements, summarize, summary_frame, verdict_tables
from .runner import CONCLUSIONS, run_scenario, run_scenarios
from .scenarios import (
    BUILTIN_IDS,
    builtin_document,
    builtin_scenario,
    builtin_scenarios,
    load_scenario,
    select_scenarios,
)

__all__ = [
    "BUILTIN_IDS",
    "CONCLUSIONS",
    "DISTINCT_BUDGET",
    "SCHEMA_VERSION",
    "Alternative",
    "Check",
    "CheckRole",
    "CheckStatus",
    "GridSpec",
    "MeasuredValue",
    "MeasurementFailure",
    "OscillationResult",
    "Outcome",
    "Relation",
    "Scenario",
    "SolutionUnavailable",
    "TheoremId",
    "Tolerances",
    "Verdict",
    "builtin_document",
    "builtin_scenario",
    "builtin_scenarios",
    "check_oscillation",
    "load_scenario",
    "render_verdict",
    "replay_measurements",
    "run_scenario",
    "run_scenarios",
    "select_scenarios",
    "summarize",
    "summary_frame",
    "verdict_tables",
]
