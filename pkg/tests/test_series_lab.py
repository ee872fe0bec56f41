"""Tests for series_lab: equation documents, the recurrence solver and shifts."""

from __future__ import annotations

import logging
import math

import pytest

from punctured_functions import SchemaError, eval_log, parse_function_spec
from series_lab import (
    RecurrenceBreakdown,
    expand_operator,
    forcing_of,
    manufacture_coefficient,
    ode_from_spec,
    shift_solution,
    solve_series,
    taylor_series,
)
from series_lab.manufacture import _with_series
from series_lab.recurrence import log_rising

TERMS = 40


def _exp_equation(**overrides):
    """g = exp(omega) solves f'' + omega f' + A0 f = 0 with A0 = -(3 w^3 + w^4)."""
    document = {
        "name": "exp_eq",
        "k": 2,
        "terms": TERMS,
        "coefficients": {"A1": {"closed_form": "w"}, "A0": {"manufacture": True}},
        "solution": {"closed_form": "exp(w)"},
    }
    document.update(overrides)
    return document


def _coefficient(f, n: int) -> complex:
    return taylor_series(f, TERMS).coefficient(n).to_complex()


# ── Operator expansion ───────────────────────────────────────────────────


def test_expand_operator_second_order():
    """(w^2 D)^2 = 2 w^3 D + w^4 D^2."""
    expansion = expand_operator(2)
    assert expansion.rows == (2, 1)
    assert expansion.monomial_factor(5) == 5 * 6


def test_expand_operator_matches_rising_factorial():
    expansion = expand_operator(4)
    for n in range(1, 8):
        assert math.log(expansion.monomial_factor(n)) == pytest.approx(
            float(log_rising([n], 4)[0])
        )


def test_expand_operator_rejects_order_zero():
    with pytest.raises(ValueError):
        expand_operator(0)


# ── Documents ────────────────────────────────────────────────────────────


def test_manufactured_coefficient_makes_solution_exact():
    ode = ode_from_spec(_exp_equation())
    assert ode.manufactured == 0
    a0 = ode.coefficients[0]
    assert eval_log(a0, omega=1.0).to_complex() == pytest.approx(-4.0)
    assert eval_log(a0, omega=2.0).to_complex() == pytest.approx(-(3 * 8 + 16))


def test_initial_values_come_from_solution():
    ode = ode_from_spec(_exp_equation())
    assert [v.to_complex() for v in ode.initial] == pytest.approx([1.0, 1.0])


@pytest.mark.parametrize(
    "overrides",
    [
        {"coefficients": {"A1": {"closed_form": "w"}}},
        {"coefficients": {"A1": {"manufacture": True}, "A0": {"manufacture": True}}},
        {"solution": None},
        {"coefficients": {"A1": {"closed_form": "w"}, "A0": {"manufacture": True, "closed_form": "w"}}},
        {"s": 5},
        {"terms": 6},
    ],
)
def test_invalid_equation_documents(overrides):
    document = {key: value for key, value in _exp_equation(**overrides).items() if value is not None}
    with pytest.raises(SchemaError):
        ode_from_spec(document)


def test_homogeneous_equation_needs_nonzero_initial_data():
    with pytest.raises(SchemaError):
        ode_from_spec(
            {
                "k": 1,
                "terms": TERMS,
                "coefficients": {"A0": {"closed_form": "w"}},
                "initial": [0.0],
            }
        )


def test_coefficient_without_expansion_is_logged_at_debug(caplog):
    """1/w has no Taylor series at omega = 0; that is expected, not news."""
    coefficient = parse_function_spec({"name": "inverse", "closed_form": "1/w"})
    with caplog.at_level(logging.DEBUG, logger="series_lab.manufacture"):
        assert _with_series(coefficient, TERMS) is coefficient
    assert [r.levelno for r in caplog.records] == [logging.DEBUG]
    assert "keeps its closed form" in caplog.records[0].getMessage()


def test_manufacture_needs_every_other_slot():
    f = parse_function_spec({"name": "f", "closed_form": "exp(w)"})
    with pytest.raises(SchemaError):
        manufacture_coefficient(f, {}, 0, 2)


# ── Recurrence solver ────────────────────────────────────────────────────


def test_first_order_equation_gives_exponential():
    """f' = w^2 f in z is g' = g in omega: b_n = 1/n!."""
    ode = ode_from_spec(
        {
            "k": 1,
            "terms": TERMS,
            "coefficients": {"A0": {"closed_form": "-w^2"}},
            "initial": [1.0],
        }
    )
    solution = solve_series(ode)
    for n in range(20):
        assert solution.series.coefficient(n).log_mag == pytest.approx(-math.lgamma(n + 1), abs=1e-8)


def test_manufactured_equation_recovers_its_solution():
    solution = solve_series(ode_from_spec(_exp_equation()))
    for n in range(20):
        assert _coefficient(solution, n) == pytest.approx(1.0 / math.factorial(n), rel=1e-8)


def test_contradicting_seed_is_a_breakdown():
    """f' - 3 w f = 0 forces b_0 = 0, which contradicts g(0) = 1."""
    ode = ode_from_spec(
        {
            "k": 1,
            "terms": TERMS,
            "coefficients": {"A0": {"closed_form": "-3*w"}},
            "initial": [1.0],
        }
    )
    with pytest.raises(RecurrenceBreakdown) as info:
        solve_series(ode)
    assert info.value.index == 0


def test_short_coefficient_series_is_rejected():
    """A 20-term leaf cannot feed a 40-term solution."""
    ode = ode_from_spec(
        {
            "name": "short_leaf",
            "k": 2,
            "terms": TERMS,
            "coefficients": {
                "A1": {
                    "closed_form": "w*@H",
                    "leaves": {"H": {"generator": "gaussian", "sigma_sq": 4.0, "terms": TERMS // 2}},
                },
                "A0": {"closed_form": "w^4"},
            },
            "initial": [1.0, 0.0],
        }
    )
    with pytest.raises(SchemaError, match="20-term series"):
        solve_series(ode)


def test_long_enough_coefficient_series_is_accepted():
    ode = ode_from_spec(
        {
            "name": "full_leaf",
            "k": 2,
            "terms": TERMS,
            "coefficients": {
                "A1": {
                    "closed_form": "w*@H",
                    "leaves": {"H": {"generator": "gaussian", "sigma_sq": 4.0, "terms": TERMS}},
                },
                "A0": {"closed_form": "w^4"},
            },
            "initial": [1.0, 0.0],
        }
    )
    assert solve_series(ode).series.terms == TERMS


# ── Forcing and phi-shifts ───────────────────────────────────────────────


def test_forcing_of_solution_vanishes():
    ode = ode_from_spec(_exp_equation())
    residual = forcing_of(ode, ode.solution)
    assert abs(eval_log(residual, omega=0.7).to_complex()) < 1e-10


def test_shift_solution_solves_for_the_difference():
    """g = exp(w) - w keeps every coefficient but b_1."""
    ode = ode_from_spec(_exp_equation())
    phi = parse_function_spec({"name": "phi", "closed_form": "w"})
    shifted, g = shift_solution(ode, ode.solution, phi)
    assert g.name == "exp_eq_f-phi"
    assert [v.to_complex() for v in shifted.initial] == pytest.approx([1.0, 0.0])

    solved = solve_series(shifted)
    assert abs(_coefficient(solved, 1)) < 1e-12
    for n in (0, 2, 3, 10):
        assert _coefficient(solved, n) == pytest.approx(1.0 / math.factorial(n), rel=1e-8)
