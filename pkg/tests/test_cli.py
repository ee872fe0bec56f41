"""Tests for growth_cli: settings, file output, charts and the commands."""

from __future__ import annotations

import json
import math
from pathlib import Path

import pytest

from growth_cli import EXIT_MEASUREMENT, EXIT_OK, EXIT_USAGE, EXIT_VERIFICATION, UnexpectedVerdict, UsageError
from growth_cli.__main__ import main
from growth_cli.commands import parse_formats
from growth_cli.errors import exit_code_for
from growth_cli.io import ERROR_FILE, error_record, write_error_record, write_json_atomic
from growth_cli.settings import Settings, get_settings, load_env_files, reset_settings_cache
from growth_cli.svg import line_chart
from growth_estimators import GridError, InsufficientData
from punctured_functions import ExpressionSyntaxError


@pytest.fixture
def workdir(tmp_path, monkeypatch):
    """Run commands from an empty directory so no stray .env is read."""
    monkeypatch.chdir(tmp_path)
    return tmp_path


# ── Settings ─────────────────────────────────────────────────────────────


def test_settings_defaults():
    assert get_settings() == Settings()


def test_settings_from_environment(monkeypatch):
    monkeypatch.setenv("PUNCTURED_GROWTH_OUTPUT_DIR", "/tmp/growth")
    monkeypatch.setenv("PUNCTURED_GROWTH_LOG_LEVEL", "debug")
    monkeypatch.setenv("PUNCTURED_GROWTH_BASE_POINTS", "2048")
    monkeypatch.setenv("PUNCTURED_GROWTH_WORKERS", "0")
    monkeypatch.setenv("PUNCTURED_GROWTH_TRACE", "yes")
    reset_settings_cache()

    settings = get_settings()
    assert settings.output_dir == Path("/tmp/growth")
    assert settings.log_level == "DEBUG"
    assert settings.base_points == 2048
    assert settings.workers == 1
    assert settings.trace is True


@pytest.mark.parametrize("value", ["false", "0", "off", ""])
def test_falsey_flags_stay_off(monkeypatch, value):
    monkeypatch.setenv("PUNCTURED_GROWTH_NO_COLOR", value)
    reset_settings_cache()
    assert get_settings().no_color is False


def test_bad_integer_falls_back_to_default(monkeypatch):
    monkeypatch.setenv("PUNCTURED_GROWTH_BASE_POINTS", "many")
    reset_settings_cache()
    assert get_settings().base_points == 1024


def test_settings_are_cached_until_reset(monkeypatch):
    first = get_settings()
    monkeypatch.setenv("PUNCTURED_GROWTH_WORKERS", "3")
    assert get_settings() is first
    reset_settings_cache()
    assert get_settings().workers == 3


def test_env_dev_overrides_only_with_values(tmp_path, monkeypatch):
    (tmp_path / ".env").write_text("PUNCTURED_GROWTH_WORKERS=2\nPUNCTURED_GROWTH_LOG_LEVEL=WARNING\n")
    (tmp_path / ".env.dev").write_text("PUNCTURED_GROWTH_WORKERS=5\nPUNCTURED_GROWTH_LOG_LEVEL=\n")
    monkeypatch.delenv("PUNCTURED_GROWTH_WORKERS", raising=False)
    monkeypatch.delenv("PUNCTURED_GROWTH_LOG_LEVEL", raising=False)

    load_env_files(tmp_path)
    reset_settings_cache()
    settings = get_settings()
    assert settings.workers == 5
    assert settings.log_level == "WARNING"


# ── Output files and exit codes ──────────────────────────────────────────


def test_write_json_atomic_leaves_no_temporaries(tmp_path):
    path = write_json_atomic(tmp_path / "nested" / "out.json", {"a": 1})
    assert json.loads(path.read_text()) == {"a": 1}
    assert [p.name for p in path.parent.iterdir()] == ["out.json"]


def test_error_record_names_the_error(tmp_path):
    error = GridError("u_max too large")
    assert error_record(error, EXIT_USAGE) == {
        "schema_version": 1,
        "error": "GridError",
        "message": "u_max too large",
        "exit_code": 2,
    }
    path = write_error_record(tmp_path, error, EXIT_USAGE)
    assert path == tmp_path / ERROR_FILE


def test_error_record_tolerates_unwritable_directory(tmp_path):
    blocker = tmp_path / "file"
    blocker.write_text("")
    assert write_error_record(blocker / "sub", UsageError("x"), EXIT_USAGE) is None


@pytest.mark.parametrize(
    ("error", "code"),
    [
        (UsageError("bad flag"), EXIT_USAGE),
        (ExpressionSyntaxError("w +"), EXIT_USAGE),
        (GridError("points"), EXIT_USAGE),
        (InsufficientData("rows"), EXIT_MEASUREMENT),
        (UnexpectedVerdict("thm1"), EXIT_VERIFICATION),
    ],
)
def test_exit_codes(error, code):
    assert exit_code_for(error) == code


def test_parse_formats():
    assert parse_formats("csv, svg") == frozenset({"csv", "svg"})
    with pytest.raises(UsageError):
        parse_formats("pdf")
    with pytest.raises(UsageError):
        parse_formats(",")


# ── Charts ───────────────────────────────────────────────────────────────


def test_line_chart_breaks_at_missing_values():
    svg = line_chart([0.0, 1.0, 2.0, 3.0, 4.0], [1.0, 2.0, math.nan, 3.0, 4.0], title="T & M", x_label="u", y_label="T")
    assert svg.startswith("<svg")
    assert svg.count("<polyline") == 2
    assert "T &amp; M" in svg


def test_line_chart_without_data():
    svg = line_chart([1.0], [math.nan], title="empty", x_label="u", y_label="T")
    assert "no finite data" in svg
    assert "<polyline" not in svg


# ── Commands ─────────────────────────────────────────────────────────────


def test_catalog_exports_documents(workdir, capsys):
    out = workdir / "catalog"
    assert main(["catalog", "--out", str(out)]) == EXIT_OK
    printed = capsys.readouterr().out
    assert "catalog:gaussian" in printed
    assert "control_t6" in printed
    assert (out / "scenarios" / "thm1.json").exists()
    assert json.loads((out / "functions" / "shifted_pole.json").read_text())["ledger"]["poles"]


def test_bad_flag_writes_error_record(workdir):
    out = workdir / "run"
    code = main(["estimate", "--function", "catalog:rational_d3", "--format", "pdf", "--out", str(out)])
    assert code == EXIT_USAGE
    record = json.loads((out / ERROR_FILE).read_text())
    assert record["error"] == "UsageError"
    assert record["exit_code"] == EXIT_USAGE


def test_quad_points_must_be_power_of_two(workdir):
    out = workdir / "run"
    assert main(["catalog", "--quad-points", "100", "--out", str(out)]) == EXIT_USAGE


def test_unknown_function_is_usage_error(workdir):
    out = workdir / "run"
    assert main(["analyze", "--function", "catalog:nope", "--out", str(out)]) == EXIT_USAGE
    assert json.loads((out / ERROR_FILE).read_text())["error"] == "SchemaError"


def test_grid_too_wide_is_usage_error(workdir):
    out = workdir / "run"
    code = main(["analyze", "--function", "catalog:identity", "--u-max", "9", "--out", str(out)])
    assert code == EXIT_USAGE


def test_estimate_type_of_rational(workdir, capsys):
    out = workdir / "run"
    code = main(
        ["estimate", "--function", "catalog:rational_d3", "--functional", "tau-log", "--out", str(out)]
    )
    assert code == EXIT_OK
    printed = json.loads(capsys.readouterr().out.strip().splitlines()[-1])
    assert printed["value"] == pytest.approx(3.0, rel=1e-6)

    payload = json.loads((out / "estimate.json").read_text())
    assert payload["command"] == "estimate"
    assert payload["parameters"]["order"] == pytest.approx(1.0, abs=1e-6)
    assert (out / "growth.csv").read_text().startswith("# schema_version=1")


def test_analyze_writes_charts(workdir):
    out = workdir / "run"
    code = main(
        ["analyze", "--function", "catalog:rational_d3", "--points", "16", "--format", "svg,structured", "--out", str(out)]
    )
    assert code == EXIT_OK
    assert (out / "growth_T.svg").exists()
    assert (out / "growth_logM.svg").exists()
    assert not (out / "growth.csv").exists()
    assert json.loads((out / "analysis.json").read_text())["kind"] == "analytic"


def test_ode_solves_equation_document(workdir):
    """f' = w^2 f in z is g' = g in omega: the series solution is exp."""
    equation = workdir / "exp.json"
    equation.write_text(
        json.dumps(
            {
                "name": "exp_first_order",
                "k": 1,
                "terms": 60,
                "coefficients": {"A0": {"closed_form": "-w^2"}},
                "initial": [1.0],
            }
        )
    )
    out = workdir / "run"
    code = main(
        ["ode", "--equation", str(equation), "--u-min", "0.1", "--u-max", "0.5", "--points", "16", "--out", str(out)]
    )
    assert code == EXIT_OK
    payload = json.loads((out / "ode.json").read_text())
    assert payload["solved_by"] == "series"
    assert payload["manufactured"] is None
    coefficients = (out / "solution_coefficients.csv").read_text().splitlines()
    assert coefficients[0] == "# schema_version=1"
    assert coefficients[1] == "n,log_abs,arg"
    assert (out / "solution_growth.csv").exists()


@pytest.mark.slow
@pytest.mark.integration
def test_verify_control_scenario(workdir, capsys):
    out = workdir / "run"
    assert main(["verify", "--scenario", "control_t1", "--out", str(out)]) == EXIT_OK
    assert "1 scenarios, 0 unexpected" in capsys.readouterr().out
    verdict = json.loads((out / "verdicts" / "control_t1.json").read_text())
    assert verdict["outcome"] == "hypothesis-not-met"
    assert (out / "summary.csv").exists()


@pytest.mark.slow
@pytest.mark.integration
def test_verify_all_scenarios(workdir, capsys):
    out = workdir / "run"
    assert main(["verify", "--scenario", "all", "--parallel", "4", "--out", str(out)]) == EXIT_OK
    assert "12 scenarios, 0 unexpected" in capsys.readouterr().out
    assert not (out / ERROR_FILE).exists()
    assert len(list((out / "verdicts").glob("*.json"))) == 12
