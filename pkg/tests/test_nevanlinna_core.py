"""Tests for nevanlinna_core: circle quadrature, counting and lemma checks.

Closed forms with known characteristics (Jensen's formula) and mpmath
quadratures serve as reference values.
"""

from __future__ import annotations

import cmath
import math

import mpmath
import numpy as np
import pytest

from growth_estimators import RadiusGrid
from nevanlinna_core import (
    CircleSample,
    IncompleteLedger,
    MeromorphicMaxModulus,
    PoleOnCircle,
    QuadratureConfig,
    central_index,
    central_index_at,
    characteristic,
    check_inversion_identity,
    check_reciprocal_boundedness,
    counting,
    max_modulus,
    proximity,
    zero_counting_profile,
)
from nevanlinna_core.functionals import _near_angles, _positive_part_mean, _window_runs
from nevanlinna_core.zeros import _Cell, count_zeros_annulus, distinct_zero_count, zeros_inside
from punctured_functions import SchemaError, invert_to_plane, parse_function_spec

# Double zero at 1 + 2i, simple zero at -7 + 5i (omega-plane).
CUBIC = "(w-1-2i)^2*(w+7-5i)"


@pytest.fixture
def cubic(polynomial_factory):
    return polynomial_factory(CUBIC, name="cubic")


def _mp_circle_mean(integrand, lo: float, hi: float) -> float:
    return float(mpmath.quad(integrand, [lo, hi]) / (2 * mpmath.pi))


# ── Configuration ────────────────────────────────────────────────────────


@pytest.mark.parametrize("points", [32, 1000])
def test_quadrature_config_needs_power_of_two(points):
    with pytest.raises(ValueError):
        QuadratureConfig(base_points=points)


def test_quadrature_config_refined_doubles_points():
    cfg = QuadratureConfig(base_points=256).refined()
    assert cfg.base_points == 512
    assert cfg.max_points >= cfg.base_points


def test_circle_sample_of_monomial(rational_d3):
    """|omega^3| = 8 on |omega| = 2; arg walks clockwise from 0."""
    sample = CircleSample.take(rational_d3, 0.5, 64)
    assert len(sample) == 64
    assert sample.step == pytest.approx(2 * math.pi / 64)
    assert sample.log_mag == pytest.approx(np.full(64, math.log(8.0)))
    assert sample.arg[0] == pytest.approx(0.0)
    assert sample.arg[1] == pytest.approx(-3 * sample.step)


def test_circle_sample_refuses_pole_on_circle(shifted_pole):
    with pytest.raises(PoleOnCircle):
        CircleSample.take(shifted_pole, 0.5, 64)


# ── Proximity and characteristic ─────────────────────────────────────────


def test_characteristic_of_monomial_is_degree_times_log(rational_d3):
    """|omega^3| is constant on the circle: T(r) = 3 log(1/r)."""
    assert characteristic(rational_d3, 0.01) == pytest.approx(3 * math.log(100.0), rel=1e-9)


def test_characteristic_of_polynomial_follows_jensen(cubic):
    """All zeros inside |omega| = 20 and |g| > 1 there: T = 3 log 20."""
    assert characteristic(cubic, 0.05) == pytest.approx(3 * math.log(20.0), rel=1e-6)


def test_proximity_matches_mpmath_across_kinks(polynomial_factory):
    """log+|omega - 2.5| on |omega| = 2 switches sign at +-acos(0.925)."""
    f = polynomial_factory("w - 2.5")
    rho = 2.0
    kink = math.acos(0.925)

    def integrand(theta):
        return mpmath.log(abs(rho * mpmath.expj(theta) - 2.5))

    expected = _mp_circle_mean(integrand, kink, 2 * math.pi - kink)
    assert proximity(f, 1.0 / rho) == pytest.approx(expected, rel=1e-5)


def test_meromorphic_characteristic_matches_mpmath(shifted_pole):
    """1/(omega - 2) with the pole just inside the circle |omega| = 1/0.45."""
    r = 0.45
    rho = 1.0 / r
    kink = math.acos((rho * rho + 3.0) / (4.0 * rho))

    def integrand(theta):
        return -mpmath.log(abs(rho * mpmath.expj(theta) - 2.0))

    m_expected = _mp_circle_mean(integrand, -kink, kink)
    assert proximity(shifted_pole, r) == pytest.approx(m_expected, rel=1e-5)
    assert counting(shifted_pole, r) == pytest.approx(math.log(rho / 2.0))
    assert characteristic(shifted_pole, r) == pytest.approx(
        m_expected + math.log(rho / 2.0), rel=1e-5
    )


def test_window_runs_merge_and_wrap():
    mask = np.array([True, False, False, True, True])
    assert _window_runs(mask) == [(3, 3)]
    assert _window_runs(np.zeros(4, dtype=bool)) == []
    assert _window_runs(np.ones(4, dtype=bool)) == [(0, 4)]


def test_adjacent_pole_windows_are_integrated_once():
    """Poles 0.025 rad apart just outside |omega| = 2: at 512 points their windows overlap."""
    a = 2.2
    b = 2.2 * cmath.exp(0.025j)
    f = parse_function_spec(
        {
            "name": "pole_pair",
            "closed_form": f"1/((w-{a!r})*(w-{b.real!r}-{b.imag!r}i))",
            "ledger": {
                "poles": [{"re": a, "im": 0.0, "mult": 1}, {"re": b.real, "im": b.imag, "mult": 1}],
                "zero_complete": True,
                "pole_complete": True,
            },
        }
    )
    r = 0.5

    def integrand(theta):
        w = 2 * mpmath.expj(theta)
        return max(mpmath.mpf(0), -mpmath.log(abs(w - a)) - mpmath.log(abs(w - b)))

    expected = float(mpmath.quad(integrand, [-math.pi, -0.6, -0.3, 0.0, 0.3, 0.6, math.pi]) / (2 * mpmath.pi))
    near = _near_angles(f, r)
    assert len(near) == 2
    assert _positive_part_mean(f, r, 512, QuadratureConfig(), near) == pytest.approx(expected, rel=5e-3)
    assert proximity(f, r) == pytest.approx(expected, rel=1e-5)


def test_proximity_extrapolates_many_sign_changes():
    """log|f| = cos(40 theta) on |omega| = 2, so m = 1/pi; 80 sign changes."""
    f = parse_function_spec({"name": "many_kinks", "closed_form": f"exp(w^40/{2.0**40!r})"})
    cfg = QuadratureConfig(base_points=64, max_points=16384)
    assert proximity(f, 0.5, cfg) == pytest.approx(1.0 / math.pi, rel=1e-5)


def test_pole_on_circle_is_rejected(shifted_pole):
    with pytest.raises(PoleOnCircle):
        proximity(shifted_pole, 0.5)


def test_counting_of_analytic_function_is_zero(rational_d3):
    assert counting(rational_d3, 0.01) == 0.0


def test_counting_needs_ledger_or_divisor():
    f = parse_function_spec({"name": "bare", "closed_form": "1/(w-2)"})
    with pytest.raises(IncompleteLedger):
        counting(f, 0.01)


def test_distinct_counting_ignores_multiplicity():
    f = parse_function_spec(
        {
            "name": "double_pole",
            "closed_form": "1/(w-2)^2",
            "ledger": {"poles": [{"re": 2.0, "mult": 2}], "zero_complete": True, "pole_complete": True},
        }
    )
    assert counting(f, 0.01) == pytest.approx(2 * math.log(50.0))
    assert counting(f, 0.01, distinct=True) == pytest.approx(math.log(50.0))


def test_plane_view_shares_characteristic(rational_d3):
    plane = invert_to_plane(rational_d3)
    assert characteristic(plane, 100.0) == pytest.approx(characteristic(rational_d3, 0.01))


# ── Maximum modulus and central index ────────────────────────────────────


def test_max_modulus_of_linear_polynomial(polynomial_factory):
    """max |omega + 1| on |omega| = 2 is 3."""
    f = polynomial_factory("w + 1")
    assert max_modulus(f, 0.5) == pytest.approx(math.log(3.0), abs=1e-9)


def test_max_modulus_refuses_meromorphic(shifted_pole):
    with pytest.raises(MeromorphicMaxModulus):
        max_modulus(shifted_pole, 0.01)


def test_central_index_picks_dominant_term():
    f = parse_function_spec(
        {"name": "p", "series": {"generator": "polynomial", "coefficients": [1, 0, 0, 1]}}
    )
    assert central_index(f, 2.0)[0] == 3
    assert central_index(f, 0.5)[0] == 0
    assert central_index_at(f, 0.5)[0] == 3


def test_central_index_needs_series(rational_d3):
    with pytest.raises(SchemaError):
        central_index(rational_d3, 2.0)


# ── Zero counts ──────────────────────────────────────────────────────────


def test_zeros_inside_counts_multiplicity(cubic):
    assert zeros_inside(cubic, 5.0) == 2
    assert zeros_inside(cubic, 20.0) == 3


def test_count_zeros_annulus_uses_z_radii(cubic):
    """0.2 < |z| < 0.5 is 2 < |omega| < 5: only the double zero."""
    assert count_zeros_annulus(cubic, 0.2, 0.5) == 2
    assert count_zeros_annulus(cubic, 0.05, 0.5) == 3


def test_count_zeros_annulus_rejects_reversed_radii(cubic):
    with pytest.raises(ValueError):
        count_zeros_annulus(cubic, 0.5, 0.2)


def test_zero_profile_counting_function(cubic):
    """N(r, 1/g) = 2 log(20/|1+2i|) + log(20/|-7+5i|) at r = 0.05."""
    profile = zero_counting_profile(cubic, [0.05])
    expected = 2 * math.log(20.0 / math.sqrt(5.0)) + math.log(20.0 / math.sqrt(74.0))
    assert profile.cumulative(0.05) == 3
    assert profile.counting(0.05) == pytest.approx(expected, abs=1e-2)


def test_zero_profile_distinct_counts(cubic):
    profile = zero_counting_profile(cubic, [0.05], distinct=True)
    assert profile.cumulative(0.05, distinct=True) == 2


def test_double_zero_on_radial_cut_counts_once(cubic):
    """The first radial cut of 2 <= |omega| < 2.5 is sqrt(5) = |1 + 2i|."""
    assert math.sqrt(2.0 * 2.5) == pytest.approx(abs(1 + 2j))
    assert distinct_zero_count(cubic, 2.0, 2.5, 2) == 1


def test_cut_strips_straddle_new_edges():
    turn = _Cell(1.0, 2.0, 0.0, 2.0 * math.pi)
    strips = turn.cut_strips(0.5, 1e-3)
    assert len(strips) == 2
    assert strips[1].psi_lo < 0.0 < strips[1].psi_hi
    narrow = _Cell(2.0, 2.5, 1.0, 1.2)
    (strip,) = narrow.cut_strips(0.5, 1e-3)
    assert strip.rho_lo < math.sqrt(5.0) < strip.rho_hi


# ── Lemma checks ─────────────────────────────────────────────────────────


def test_reciprocal_boundedness_for_rational(shifted_pole):
    """T(r, omega - 2) - T(r, 1/(omega - 2)) is the constant log 2."""
    radii = RadiusGrid(1.5, 2.8, 16).radii
    check = check_reciprocal_boundedness(shifted_pole, radii)
    assert check.ok
    assert check.deviations[0] == pytest.approx(math.log(2.0), abs=1e-6)


def test_inversion_identity_holds(rational_d3):
    check = check_inversion_identity(rational_d3, [10.0, 100.0, 1000.0])
    assert check.ok
    assert check.max_error < 1e-9


def test_lemma_checks_refuse_plane_functions(rational_d3):
    with pytest.raises(ValueError):
        check_reciprocal_boundedness(invert_to_plane(rational_d3), [0.01, 0.001])
