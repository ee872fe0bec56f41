"""Tests for theorem_verifier: scenario documents, checks, verdicts and reports."""

from __future__ import annotations

import json
from unittest.mock import patch

import numpy as np
import pytest

from growth_estimators import Flavor, GrowthTable, RadiusGrid, estimate_order
from nevanlinna_core import DEFAULT_QUADRATURE
from punctured_functions import SchemaError
from theorem_verifier import (
    BUILTIN_IDS,
    CONCLUSIONS,
    Check,
    CheckRole,
    CheckStatus,
    MeasuredValue,
    Outcome,
    Relation,
    Scenario,
    TheoremId,
    Verdict,
    builtin_document,
    builtin_scenario,
    builtin_scenarios,
    load_scenario,
    render_verdict,
    replay_measurements,
    run_scenario,
    run_scenarios,
    select_scenarios,
    summarize,
    summary_frame,
)
from theorem_verifier.runner import WITNESS_NOTE, _Session


def _session(scenario_id: str = "control_t1") -> _Session:
    return _Session(builtin_scenario(scenario_id), DEFAULT_QUADRATURE, 1, 256)


def _check(name: str, status: CheckStatus, role: CheckRole = CheckRole.HYPOTHESIS) -> Check:
    return Check(name=name, role=role, predicate=name, relation=Relation.LE, status=status)


def _verdict(scenario_id: str, outcome: Outcome, expected: Outcome = Outcome.PASS, **fields) -> Verdict:
    return Verdict(
        scenario_id=scenario_id,
        theorem=TheoremId.T1,
        outcome=outcome,
        expected_outcome=expected,
        **fields,
    )


# ── Scenario documents ───────────────────────────────────────────────────


def test_builtin_catalog_has_every_scenario():
    scenarios = builtin_scenarios()
    assert [s.id for s in scenarios] == list(BUILTIN_IDS)
    assert len(scenarios) == 12
    assert {s.theorem for s in scenarios} == set(TheoremId)


def test_builtin_expected_conclusions_are_known():
    for scenario in builtin_scenarios():
        assert set(scenario.expected) <= set(CONCLUSIONS[scenario.theorem]), scenario.id


def test_controls_expect_hypothesis_not_met():
    controls = [s for s in builtin_scenarios() if s.id.startswith("control")]
    assert {s.expected_outcome for s in controls} == {Outcome.HYPOTHESIS_NOT_MET}


def test_unknown_builtin_is_schema_error():
    with pytest.raises(SchemaError):
        builtin_document("thm99")


def test_select_scenarios_accepts_ids_lists_and_paths(tmp_path):
    path = tmp_path / "mine.json"
    document = builtin_document("control_t1") | {"id": "mine"}
    path.write_text(json.dumps(document), encoding="utf-8")

    assert len(select_scenarios("all")) == 12
    assert [s.id for s in select_scenarios("thm1, lemma6")] == ["thm1", "lemma6"]
    assert [s.id for s in select_scenarios([str(path)])] == ["mine"]


def test_load_scenario_reports_schema_errors(tmp_path):
    path = tmp_path / "bad.json"
    path.write_text(json.dumps({"id": "bad", "theorem": "T9"}), encoding="utf-8")
    with pytest.raises(SchemaError):
        load_scenario(path)
    with pytest.raises(SchemaError):
        load_scenario(tmp_path / "missing.json")


def test_oscillation_scenarios_need_phi():
    document = builtin_document("lemma16")
    document.pop("phi")
    with pytest.raises(ValueError):
        Scenario.model_validate(document)


# ── Checks ───────────────────────────────────────────────────────────────


@pytest.mark.parametrize(
    ("rhs", "status"),
    [(1.1, CheckStatus.PASS), (1.14, CheckStatus.MARGINAL), (1.2, CheckStatus.FAIL)],
)
def test_equality_uses_two_sided_tolerance(rhs, status):
    check = _session().compare("eq", CheckRole.CONCLUSION, "a == b", Relation.EQ, 1.0, rhs)
    assert check.status is status


def test_strict_hypothesis_needs_margin():
    session = _session()
    clear = session.compare("h", CheckRole.HYPOTHESIS, "a < b", Relation.LT, 1.0, 1.1)
    close = session.compare("h", CheckRole.HYPOTHESIS, "a < b", Relation.LT, 1.0, 1.04)
    assert clear.status is CheckStatus.PASS
    assert clear.margin == pytest.approx(0.05)
    assert close.status is CheckStatus.FAIL


def test_inequality_conclusion_gets_favorable_slack():
    check = _session().compare("c", CheckRole.CONCLUSION, "a <= b", Relation.LE, 1.1, 1.0)
    assert check.margin == pytest.approx(0.05)
    assert check.status.ok


def test_not_evaluated_is_not_ok():
    assert not CheckStatus.NOT_EVALUATED.ok
    assert CheckStatus.MARGINAL.ok


# ── Running (mocked measurements) ────────────────────────────────────────


def test_unknown_conclusion_is_rejected_before_measuring():
    document = builtin_document("control_t1") | {"expected": ["mu22_sideways"]}
    with pytest.raises(SchemaError):
        run_scenario(Scenario.model_validate(document))


def test_dominant_index_must_be_zero_for_first_theorems():
    document = builtin_document("control_t1")
    document["equation"]["s"] = 1
    with pytest.raises(SchemaError):
        run_scenario(Scenario.model_validate(document))


def test_failed_hypothesis_skips_conclusions():
    failing = [_check("dominance", CheckStatus.PASS), _check("tau_sum", CheckStatus.FAIL)]
    with patch("theorem_verifier.runner._hypotheses", return_value=failing):
        verdict = run_scenario(builtin_scenario("control_t1"))
    assert verdict.outcome is Outcome.HYPOTHESIS_NOT_MET
    assert verdict.as_expected
    assert all(c.status is CheckStatus.NOT_EVALUATED for c in verdict.conclusions)
    assert verdict.notes[0] == WITNESS_NOTE
    assert "tau_sum" in verdict.notes[-1]


def test_failed_conclusion_fails_the_scenario():
    passing = [_check("dominance", CheckStatus.PASS)]
    failed = _check("mu22_lower", CheckStatus.FAIL, CheckRole.CONCLUSION)
    with patch("theorem_verifier.runner._hypotheses", return_value=passing), \
         patch("theorem_verifier.runner._conditional_holds", return_value=True), \
         patch("theorem_verifier.runner._conclusion", return_value=failed):
        verdict = run_scenario(builtin_scenario("control_t1"))
    assert verdict.outcome is Outcome.FAIL
    assert not verdict.as_expected
    assert verdict.first_failure().name == "mu22_lower"


def test_conditional_conclusions_wait_for_order_above_one():
    """mu22_equals_mu_log is only claimed when mu_log(A0) > 1."""
    document = builtin_document("control_t1") | {"expected": ["mu22_lower", "mu22_equals_mu_log"]}
    evaluated = _check("mu22_lower", CheckStatus.PASS, CheckRole.CONCLUSION)
    with patch("theorem_verifier.runner._hypotheses", return_value=[_check("dominance", CheckStatus.PASS)]), \
         patch("theorem_verifier.runner._conditional_holds", return_value=False), \
         patch("theorem_verifier.runner._conclusion", return_value=evaluated) as conclusion:
        verdict = run_scenario(Scenario.model_validate(document))
    assert verdict.outcome is Outcome.PASS
    assert conclusion.call_count == 1
    assert verdict.conclusions[1].status is CheckStatus.NOT_EVALUATED


def test_run_scenarios_keeps_input_order(mocker):
    scenarios = [builtin_scenario("control_t1"), builtin_scenario("control_t6")]

    def fake(scenario, *args, **kwargs):
        return _verdict(scenario.id, Outcome.HYPOTHESIS_NOT_MET)

    runner = mocker.patch("theorem_verifier.runner.run_scenario", side_effect=fake)
    verdicts = run_scenarios(scenarios, parallel=2)
    assert [v.scenario_id for v in verdicts] == ["control_t1", "control_t6"]
    assert runner.call_count == 2


# ── Reports ──────────────────────────────────────────────────────────────


def test_summary_counts_unexpected_outcomes():
    verdicts = [
        _verdict("a", Outcome.PASS),
        _verdict("b", Outcome.FAIL, conclusions=[_check("mu22_upper", CheckStatus.FAIL, CheckRole.CONCLUSION)]),
    ]
    frame = summary_frame(verdicts)
    assert list(frame["as_expected"]) == ["yes", "NO"]
    assert list(frame["first_failure"]) == ["-", "mu22_upper"]
    assert summarize(verdicts).endswith("2 scenarios, 1 unexpected")
    assert summarize([]) == "no scenarios run"


def test_render_verdict_lists_checks_and_notes():
    check = Check(
        name="dominance", role=CheckRole.HYPOTHESIS, predicate="a <= b", relation=Relation.LE,
        lhs=1.0, rhs=1.0, margin=0.15, status=CheckStatus.PASS,
    )
    text = render_verdict(_verdict("a", Outcome.FAIL, hypotheses=[check], notes=["n1"]))
    assert text.startswith("a (T1): fail")
    assert "expected pass" in text
    assert "[  ok] dominance" in text
    assert "note: n1" in text


def test_replay_reproduces_recorded_estimates():
    grid = RadiusGrid(1.5, 2.8, 16)
    t = 3.0 * np.exp(grid.u)
    table = GrowthTable.from_columns(grid, {"m": t, "N": np.zeros_like(t), "T": t}, name="A0")
    estimate = estimate_order(table, 1, 2, Flavor.LOWER)
    recipe = {"functional": "order", "table": "A0", "p": 1, "q": 2, "flavor": "lower", "source": "T"}
    verdict = _verdict(
        "a",
        Outcome.PASS,
        measured={
            "mu_log(A0)": MeasuredValue(name="mu_log(A0)", value=estimate.value, band=estimate.band, recipe=recipe),
            "alpha": MeasuredValue(name="alpha", value=1.0, band=(1.0, 1.0)),
        },
        tables={"A0": table.to_csv()},
    )
    assert replay_measurements(verdict) == {"mu_log(A0)": estimate.value}

    orphan = verdict.model_copy(update={"tables": {}})
    with pytest.raises(SchemaError):
        replay_measurements(orphan)


# ── End to end ───────────────────────────────────────────────────────────


@pytest.mark.slow
@pytest.mark.integration
@pytest.mark.parametrize("scenario_id", ["control_t1", "control_t6"])
def test_controls_fail_the_type_hypothesis(scenario_id):
    verdict = run_scenario(builtin_scenario(scenario_id))
    assert verdict.outcome is Outcome.HYPOTHESIS_NOT_MET
    assert verdict.first_failure().name == "tau_sum"
    assert replay_measurements(verdict) == {
        name: value.value for name, value in verdict.measured.items() if value.recipe is not None
    }


@pytest.mark.slow
@pytest.mark.integration
def test_control_types_match_coefficient_degrees():
    verdict = run_scenario(builtin_scenario("control_t1"))
    assert verdict.measured["tau_log(A1)"].value == pytest.approx(3.0, abs=0.05)
    assert verdict.measured["lower_tau_log(A0)"].value == pytest.approx(2.0, abs=0.05)


SATISFYING_IDS = [sid for sid in BUILTIN_IDS if not sid.startswith("control")]


@pytest.mark.slow
@pytest.mark.integration
@pytest.mark.parametrize("scenario_id", SATISFYING_IDS)
def test_satisfying_scenarios_pass(scenario_id):
    verdict = run_scenario(builtin_scenario(scenario_id))
    assert verdict.outcome is Outcome.PASS, verdict.first_failure() or verdict.notes
    assert verdict.as_expected


@pytest.mark.slow
@pytest.mark.integration
@pytest.mark.parametrize("scenario_id", ["thm1", "control_t1"])
def test_outcome_survives_doubled_base_points(scenario_id):
    scenario = builtin_scenario(scenario_id)
    coarse = run_scenario(scenario)
    fine = run_scenario(scenario, DEFAULT_QUADRATURE.refined())
    assert fine.outcome is coarse.outcome
    assert [c.status for c in fine.conclusions] == [c.status for c in coarse.conclusions]


@pytest.mark.slow
@pytest.mark.integration
def test_repeated_runs_give_identical_verdict_json():
    scenario = builtin_scenario("thm3")
    first = run_scenario(scenario).model_dump_json()
    assert run_scenario(scenario).model_dump_json() == first
