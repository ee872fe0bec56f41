"""Tests for punctured_functions: documents, evaluation and algebra."""

from __future__ import annotations

import math

import numpy as np
import pytest

from punctured_functions import (
    ConsistencyError,
    Domain,
    EvaluationAtSingularity,
    ExpressionSyntaxError,
    FunctionKind,
    LedgerError,
    LogComplex,
    PowerSeries,
    SchemaError,
    catalog_document,
    catalog_names,
    differentiate,
    eval_log,
    invert_to_plane,
    load_catalog_function,
    parse_expression,
    parse_function_spec,
    reciprocal,
    subtract,
)
from punctured_functions.log_complex import log_add_arrays


def _value(f, omega: complex) -> complex:
    return eval_log(f, omega=omega).to_complex()


# ── Log-domain arithmetic ────────────────────────────────────────────────


def test_log_complex_from_negative_real():
    """-8 is stored as (log 8, pi)."""
    value = LogComplex.from_complex(-8)
    assert value.log_mag == pytest.approx(math.log(8.0))
    assert value.arg == pytest.approx(math.pi)


def test_log_complex_cancellation_is_exact_zero():
    """x - x collapses to the encoded zero rather than a tiny residue."""
    one = LogComplex.one()
    assert (one - one).is_zero


def test_log_complex_far_apart_operands():
    """A sum across a huge magnitude gap keeps the dominant operand."""
    big = LogComplex(1.0e5, 0.3)
    assert big + LogComplex.one() == big


def test_log_complex_rejects_nan():
    with pytest.raises(ValueError):
        LogComplex(float("nan"))


@pytest.mark.filterwarnings("error::RuntimeWarning")
def test_log_add_arrays_of_zeros_and_infinities_is_quiet():
    inf = math.inf
    out_l, out_t = log_add_arrays(
        np.array([-inf, inf, 0.0]), np.zeros(3), np.array([-inf, inf, -inf]), np.zeros(3)
    )
    assert out_l[0] == -inf
    assert out_l[1] == inf
    assert out_l[2] == 0.0
    assert np.all(np.isfinite(out_t))


def test_power_series_max_term_prefers_larger_index_on_ties():
    """1 + omega at |omega| = 1 has two equal terms; the central index is 1."""
    series = PowerSeries.from_complex([1.0, 1.0], exact=True)
    index, log_term = series.max_term(0.0)
    assert index == 1
    assert log_term == pytest.approx(0.0)


# ── Expression parsing ───────────────────────────────────────────────────


@pytest.mark.parametrize("text", ["w +", "foo(w)", "w^1.5", "(w", ""])
def test_parse_expression_rejects_malformed(text):
    with pytest.raises(ExpressionSyntaxError):
        parse_expression(text)


def test_unknown_series_leaf_is_schema_error():
    """ExpressionSyntaxError is a SchemaError, so documents fail uniformly."""
    with pytest.raises(SchemaError):
        parse_function_spec({"name": "bad", "closed_form": "exp(@G)"})


# ── Evaluation ───────────────────────────────────────────────────────────


def test_eval_log_at_omega(polynomial_factory):
    f = polynomial_factory("w^2 + 1")
    assert eval_log(f, omega=2.0).log_mag == pytest.approx(math.log(5.0))


def test_eval_log_maps_z_to_omega(rational_d3):
    """z = 0.5 with z0 = 0 is omega = -2, so g = -8."""
    value = eval_log(rational_d3, 0.5)
    assert value.log_mag == pytest.approx(math.log(8.0))
    assert abs(value.arg) == pytest.approx(math.pi)


def test_eval_log_at_singular_point_raises(rational_d3):
    with pytest.raises(EvaluationAtSingularity):
        eval_log(rational_d3, 0.0)


def test_eval_log_needs_exactly_one_point(rational_d3):
    with pytest.raises(ValueError):
        eval_log(rational_d3)
    with pytest.raises(ValueError):
        eval_log(rational_d3, 0.5, omega=2.0)


def test_plane_view_reads_omega_directly(rational_d3):
    plane = invert_to_plane(rational_d3)
    assert plane.domain is Domain.PLANE
    assert eval_log(plane, 2.0).log_mag == pytest.approx(math.log(8.0))


def test_invert_to_plane_twice_is_identity(rational_d3):
    back = invert_to_plane(invert_to_plane(rational_d3))
    assert back.domain is Domain.PUNCTURED
    assert back.name == rational_d3.name


def test_circle_points_walk_clockwise_in_omega(rational_d3):
    """|z - z0| = r is |omega| = 1/r; phi = pi/2 lands at omega = -i/r."""
    points = rational_d3.circle_points(0.25, [0.0, math.pi / 2])
    assert points[0] == pytest.approx(4.0)
    assert points[1] == pytest.approx(-4.0j)


def test_omega_modulus_rejects_non_positive_radius(rational_d3):
    with pytest.raises(ValueError):
        rational_d3.omega_modulus(0.0)


# ── Construction checks ──────────────────────────────────────────────────


def test_document_without_representation_is_schema_error():
    with pytest.raises(SchemaError):
        parse_function_spec({"name": "empty"})


def test_document_with_unknown_key_is_schema_error():
    with pytest.raises(SchemaError):
        parse_function_spec({"name": "f", "closed_form": "w", "colour": "red"})


def test_blank_closed_form_is_schema_error():
    with pytest.raises(SchemaError):
        parse_function_spec({"name": "f", "closed_form": "   "})


def test_closed_form_and_series_must_agree():
    with pytest.raises(ConsistencyError):
        parse_function_spec(
            {
                "name": "mismatch",
                "closed_form": "w^2",
                "series": {"generator": "polynomial", "coefficients": [0, 0, 2]},
            }
        )


def test_closed_form_and_series_agreeing_is_accepted():
    f = parse_function_spec(
        {
            "name": "match",
            "closed_form": "w^2 + 1",
            "series": {"generator": "polynomial", "coefficients": [1, 0, 1]},
        }
    )
    assert f.closed_form is not None and f.series is not None


def test_analytic_function_cannot_declare_poles():
    with pytest.raises(LedgerError):
        parse_function_spec(
            {
                "name": "liar",
                "kind": "analytic",
                "closed_form": "w",
                "ledger": {"poles": [{"re": 2.0}]},
            }
        )


def test_ledger_multiplicity_is_checked_by_argument_principle():
    """(omega - 3)^2 has a double zero; declaring it simple is rejected."""
    with pytest.raises(LedgerError):
        parse_function_spec(
            {
                "name": "double",
                "closed_form": "(w-3)^2",
                "ledger": {"zeros": [{"re": 3.0, "mult": 1}]},
            }
        )


def test_kind_is_inferred_from_division(polynomial_factory, shifted_pole):
    assert polynomial_factory("w^2").kind is FunctionKind.ANALYTIC
    assert shifted_pole.kind is FunctionKind.MEROMORPHIC


def test_roots_generator_declares_complete_zero_ledger():
    f = parse_function_spec(
        {"name": "roots", "series": {"generator": "roots", "roots": [2.0, 3.0]}}
    )
    ledger = f.effective_ledger
    assert ledger.zero_complete and ledger.pole_complete
    assert sorted(e.location.real for e in ledger.zeros) == [2.0, 3.0]


def test_unknown_generator_is_schema_error():
    with pytest.raises(SchemaError):
        parse_function_spec({"name": "f", "series": {"generator": "bessel"}})


# ── Algebra ──────────────────────────────────────────────────────────────


def test_differentiate_in_omega(rational_d3):
    derivative = differentiate(rational_d3, 1, wrt="omega")
    assert _value(derivative, 2.0) == pytest.approx(12.0)


def test_differentiate_in_z_is_omega_squared_d_omega(rational_d3):
    """d/dz omega^3 = omega^2 * 3 omega^2 = 3 omega^4."""
    derivative = differentiate(rational_d3, 1)
    assert _value(derivative, 2.0) == pytest.approx(48.0)
    assert derivative.name == "rational_d3'"


def test_differentiate_zero_times_is_identity(rational_d3):
    assert differentiate(rational_d3, 0) is rational_d3


def test_differentiate_rejects_bad_arguments(rational_d3):
    with pytest.raises(ValueError):
        differentiate(rational_d3, -1)
    with pytest.raises(ValueError):
        differentiate(rational_d3, 1, wrt="t")


def test_differentiate_series_matches_closed_form(exp_function):
    """exp has both representations; each derivative rule gives exp."""
    derivative = differentiate(exp_function, 1, wrt="omega")
    assert _value(derivative, 0.5) == pytest.approx(math.exp(0.5))


def test_reciprocal_swaps_ledger(shifted_pole):
    inverse = reciprocal(shifted_pole)
    assert inverse.kind is FunctionKind.ANALYTIC
    assert [e.location for e in inverse.effective_ledger.zeros] == [2.0]
    assert _value(inverse, 5.0) == pytest.approx(3.0)
    assert inverse.name == "1/shifted_pole"


def test_subtract_values_and_name(polynomial_factory):
    f = polynomial_factory("w^2", name="f")
    g = polynomial_factory("w", name="g")
    difference = subtract(f, g)
    assert difference.name == "f-g"
    assert difference.is_analytic
    assert _value(difference, 3.0) == pytest.approx(6.0)


def test_subtract_keeps_poles_of_either_side(shifted_pole, polynomial_factory):
    difference = subtract(polynomial_factory("w"), shifted_pole)
    assert difference.kind is FunctionKind.MEROMORPHIC
    assert [p.location for p in difference.effective_ledger.poles] == [2.0]


def test_subtract_needs_same_sphere(rational_d3):
    with pytest.raises(SchemaError):
        subtract(rational_d3, invert_to_plane(rational_d3))


# ── Catalog ──────────────────────────────────────────────────────────────


def test_catalog_lists_known_functions():
    names = catalog_names()
    assert names == sorted(names)
    for expected in ("gaussian", "exp_gaussian", "shifted_pole", "zero_ladder"):
        assert expected in names


def test_catalog_document_is_a_copy():
    document = catalog_document("shifted_pole")
    document["ledger"]["poles"].clear()
    assert catalog_document("shifted_pole")["ledger"]["poles"]


def test_unknown_catalog_name_is_schema_error():
    with pytest.raises(SchemaError):
        load_catalog_function("no_such_function")


@pytest.mark.parametrize(
    "name", ["constant", "identity", "rational_mixed", "gaussian", "lacunary"]
)
def test_catalog_functions_load(name):
    f = load_catalog_function(name)
    assert f.name == name
