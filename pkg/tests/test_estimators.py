"""Tests for growth_estimators: grids, growth tables and the estimators."""

from __future__ import annotations

import io
import math

import numpy as np
import pytest

from growth_estimators import (
    Flavor,
    GridError,
    GrowthTable,
    InsufficientData,
    OrderOutOfRange,
    RadiusGrid,
    Source,
    estimate_delta,
    estimate_order,
    estimate_proximity_ratio,
    estimate_type,
    iterated_log_plus,
    radius_axis,
    sample_growth,
)
from growth_estimators.estimators import NEGATIVE_GROWTH, ORDER_CLAMPED
from punctured_functions import SchemaError, parse_function_spec

GRID = RadiusGrid(1.5, 2.8, 16)


def _table(m, n=None, *, grid=GRID, flags=None, name="synthetic", **extra):
    """Growth table from closed-form columns of u."""
    u = grid.u
    m_values = np.asarray(m(u), dtype=np.float64)
    n_values = np.zeros_like(m_values) if n is None else np.asarray(n(u), dtype=np.float64)
    columns = {"m": m_values, "N": n_values, "T": m_values + n_values}
    columns.update({key: np.asarray(fn(u), dtype=np.float64) for key, fn in extra.items()})
    return GrowthTable.from_columns(grid, columns, flags, name=name)


def _rational(u):
    """T(r) = 3 log(1/r), the characteristic of omega^3."""
    return 3.0 * np.exp(u)


# ── Grid ─────────────────────────────────────────────────────────────────


@pytest.mark.parametrize(
    "args",
    [(2.0, 1.0, 16), (0.0, 2.0, 16), (1.5, 2.8, 8), (1.5, 7.0, 16)],
)
def test_radius_grid_rejects_bad_parameters(args):
    with pytest.raises(GridError):
        RadiusGrid(*args)


def test_radius_grid_is_doubly_exponential():
    assert GRID.radii == pytest.approx(np.exp(-np.exp(GRID.u)))
    assert GRID.radii[0] > GRID.radii[-1]
    assert GRID.to_dict() == {"u_min": 1.5, "u_max": 2.8, "points": 16}


def test_grid_must_stay_inside_truncated_series():
    """A 40-term Gaussian is reliable to |omega| ~ e^9, short of exp(exp(2.8)) ~ e^16."""
    truncated = parse_function_spec(
        {"name": "short", "series": {"generator": "gaussian", "sigma_sq": 4.0, "terms": 40}}
    )
    with pytest.raises(GridError, match="40-term series"):
        GRID.require_reach(truncated)
    exact = parse_function_spec(
        {"name": "cubic", "series": {"generator": "polynomial", "coefficients": [0, 0, 0, 1]}}
    )
    GRID.require_reach(exact)


def test_iterated_log_plus_and_radius_axis():
    assert iterated_log_plus(np.array([math.e**math.e, 0.5]), 2) == pytest.approx([1.0, 0.0])
    assert radius_axis(np.array([1.0]), 1) == pytest.approx([math.e])
    assert radius_axis(np.array([1.0]), 2) == pytest.approx([1.0])
    with pytest.raises(ValueError):
        radius_axis(np.array([1.0]), 0)


# ── Tables ───────────────────────────────────────────────────────────────


def test_table_enforces_t_equals_m_plus_n():
    u = GRID.u
    with pytest.raises(SchemaError):
        GrowthTable.from_columns(GRID, {"m": u, "N": u, "T": u})


def test_table_csv_round_trip_is_exact():
    table = _table(_rational, logM=_rational)
    text = table.to_csv()
    assert text.startswith("# schema_version=1\n")
    again = GrowthTable.from_csv(io.StringIO(text), name=table.name)
    assert again.grid == table.grid
    assert np.array_equal(again.column("T"), table.column("T"))
    assert np.isnan(again.column("V")).all()


def test_table_csv_rejects_unknown_schema():
    text = _table(_rational).to_csv().replace("schema_version=1", "schema_version=9")
    with pytest.raises(SchemaError):
        GrowthTable.from_csv(io.StringIO(text))


def test_flag_counts_and_failed_rows():
    flags = [""] * 14 + ["PoleOnCircle", "PoleOnCircle;QuadratureNoConvergence"]
    table = _table(_rational, flags=flags)
    assert table.failed_rows == 2
    assert table.flag_counts() == {"PoleOnCircle": 2, "QuadratureNoConvergence": 1}


# ── Orders ───────────────────────────────────────────────────────────────


@pytest.mark.parametrize("flavor", [Flavor.UPPER, Flavor.LOWER])
def test_logarithmic_order_of_rational_characteristic(flavor):
    """log T = log 3 + u: the [1, 2]-order is exactly 1."""
    estimate = estimate_order(_table(_rational), 1, 2, flavor)
    assert estimate.value == pytest.approx(1.0, abs=1e-9)
    assert estimate.band[0] <= estimate.value <= estimate.band[1]
    assert estimate.flags == ()


def test_order_from_maximum_modulus_uses_one_more_log():
    """log M = (log 1/r)^2 gives log log M = 2u."""
    table = _table(_rational, logM=lambda u: np.exp(2.0 * u))
    assert estimate_order(table, 1, 2, source=Source.M).value == pytest.approx(2.0, abs=1e-9)


def test_counting_sources_subtract_one():
    """N(r, 1/f) = (log 1/r)^2 has logarithmic exponent of convergence 1."""
    table = _table(_rational, N_zeros=lambda u: np.exp(2.0 * u))
    assert estimate_order(table, 1, 2, source=Source.NZ).value == pytest.approx(1.0, abs=1e-9)


def test_non_positive_column_is_order_zero():
    estimate = estimate_order(_table(np.zeros_like), 1, 2)
    assert estimate.value == 0.0
    assert NEGATIVE_GROWTH in estimate.flags


def test_order_needs_twelve_usable_rows():
    flags = ["PoleOnCircle"] * 5 + [""] * 11
    with pytest.raises(InsufficientData):
        estimate_order(_table(_rational, flags=flags), 1, 2)


def test_order_rejects_depth_zero():
    with pytest.raises(ValueError):
        estimate_order(_table(_rational), 0, 2)


def test_order_estimate_serializes():
    data = estimate_order(_table(_rational), 1, 2).to_dict()
    assert data["flavor"] == "upper"
    assert data["source"] == "T"
    assert data["functional"] == "order"


# ── Types, delta and ratios ──────────────────────────────────────────────


def test_logarithmic_type_of_rational_is_degree():
    assert estimate_type(_table(_rational), 1.0).value == pytest.approx(3.0, rel=1e-9)


def test_type_is_tail_extreme_of_ratio():
    """T = 3 log(1/r) + 1: the ratio 3 + e^-u falls towards 3 while both envelopes have slope 3."""
    table = _table(lambda u: 3.0 * np.exp(u) + 1.0)
    u = GRID.u
    tail = u[-math.ceil(0.4 * u.size) :]

    upper = estimate_type(table, 1.0, Flavor.UPPER)
    assert upper.value == pytest.approx(3.0 + math.exp(-tail[0]), rel=1e-12)
    assert upper.method == "ratio"
    assert upper.slope_upper == pytest.approx(3.0, rel=1e-9)
    assert upper.slope_lower == pytest.approx(3.0, rel=1e-9)

    lower = estimate_type(table, 1.0, Flavor.LOWER)
    assert lower.value == pytest.approx(3.0 + math.exp(-u[-1]), rel=1e-12)
    assert lower.value < upper.value


def test_type_band_spans_last_two_windows():
    table = _table(lambda u: 3.0 * np.exp(u) + 1.0)
    estimate = estimate_type(table, 1.0)
    narrow = estimate.sensitivity[0.3]
    assert estimate.band == pytest.approx((narrow, estimate.value))
    assert estimate.sensitivity[0.5] > estimate.band[1]
    assert estimate.to_dict()["slope_upper"] == pytest.approx(3.0, rel=1e-9)


def test_type_clamps_order_just_below_one():
    estimate = estimate_type(_table(_rational), 0.95)
    assert ORDER_CLAMPED in estimate.flags
    assert estimate.value == pytest.approx(3.0, rel=1e-9)


def test_type_refuses_small_orders():
    with pytest.raises(OrderOutOfRange):
        estimate_type(_table(_rational), 0.5)


def test_type_reads_only_t_or_m():
    with pytest.raises(ValueError):
        estimate_type(_table(_rational), 1.0, source=Source.V)


def _half(u):
    return 1.5 * np.exp(u)


def test_delta_is_proximity_share():
    assert estimate_delta(_table(_half, _half)).value == pytest.approx(0.5)


def test_proximity_ratio_sums_numerators():
    top = _table(np.exp, name="A1")
    other = _table(np.exp, name="A2")
    bottom = _table(lambda u: 2.0 * np.exp(u), name="A0")
    assert estimate_proximity_ratio([top, other], bottom).value == pytest.approx(1.0)


def test_proximity_ratio_needs_one_grid():
    other_grid = RadiusGrid(1.5, 2.8, 20)
    with pytest.raises(GridError):
        estimate_proximity_ratio([_table(np.exp, grid=other_grid)], _table(np.exp))


# ── Sampling ─────────────────────────────────────────────────────────────


def test_sample_growth_of_monomial(rational_d3, small_grid):
    table = sample_growth(rational_d3, small_grid)
    expected = 3.0 * np.exp(small_grid.u)
    assert table.failed_rows == 0
    assert table.column("T") == pytest.approx(expected, rel=1e-9)
    assert table.column("logM") == pytest.approx(expected, rel=1e-9)
    assert np.all(table.column("N") == 0.0)
    assert not table.has_column("V")


def test_sample_growth_counts_ledger_poles(shifted_pole, small_grid):
    table = sample_growth(shifted_pole, small_grid)
    rho = 1.0 / small_grid.radii
    assert table.column("N") == pytest.approx(np.log(rho / 2.0))
    assert not table.has_column("logM")


def test_sample_growth_workers_keep_grid_order(rational_d3, small_grid):
    serial = sample_growth(rational_d3, small_grid)
    threaded = sample_growth(rational_d3, small_grid, workers=4)
    assert np.array_equal(serial.column("T"), threaded.column("T"))
