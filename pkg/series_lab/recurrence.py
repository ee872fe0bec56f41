"""Power-series solutions of the transported equation.

With ``g(omega) = sum b_n omega^n`` and ``(omega^2 D)^j omega^n =
n(n+1)...(n+j-1) omega^(n+j)``, the equation
``sum_j A_j(omega) (omega^2 D)^j g = F`` matches powers of omega:

    sum_{j, m} a_{j,m} rising(P - j - m, j) b_{P-j-m} = F_P     (P >= 0)

where ``a_{j,m}`` are the Taylor coefficients of ``A_j`` (``A_k = 1``). The
smallest shift ``s = j + m`` with a nonzero coefficient determines ``b_n`` at
power ``P = n + s``; every other shift only involves earlier coefficients.
"""

from __future__ import annotations

import cmath
import logging
import math
from dataclasses import dataclass

import numpy as np
from scipy.special import gammaln

from punctured_functions import FunctionKind, PowerSeries, PuncturedFunction, SchemaError
from punctured_functions.log_complex import FloatArray, log_add_arrays, log_sum

from .errors import RecurrenceBreakdown, ResidualTooLarge
from .ode import OdeSpec
from .taylor import taylor_series

logger = logging.getLogger(__name__)

LEADING_TOL = 1e-12
SEED_RTOL = 1e-8
RESIDUAL_LOG_TOL = math.log(1e-8)


def log_rising(n: np.ndarray, j: int) -> FloatArray:
    """``log(n (n+1) ... (n+j-1))`` elementwise; ``-inf`` where it vanishes."""
    values = np.asarray(n, dtype=np.float64)
    if j == 0:
        return np.zeros_like(values)
    with np.errstate(divide="ignore", invalid="ignore"):
        out = gammaln(values + j) - gammaln(values)
    return np.where(values > 0, out, -np.inf)


@dataclass(frozen=True)
class _Coefficients:
    """Padded log arrays of the k + 1 equation coefficients (A_k = 1)."""

    log_mag: FloatArray  # shape (k + 1, terms)
    arg: FloatArray

    @property
    def order(self) -> int:
        return self.log_mag.shape[0] - 1

    def lowest_shift(self) -> int:
        shifts = [
            j + int(np.flatnonzero(np.isfinite(self.log_mag[j]))[0])
            for j in range(self.order + 1)
            if np.any(np.isfinite(self.log_mag[j]))
        ]
        return min(shifts)


def _agrees(value_l: float, value_t: float, seed_l: float, seed_t: float) -> bool:
    if not (math.isfinite(value_l) and math.isfinite(seed_l)):
        return math.isinf(value_l) and math.isinf(seed_l)
    if abs(value_l - seed_l) > 1.0:
        return False
    return abs(cmath.exp(complex(value_l - seed_l, value_t - seed_t)) - 1.0) <= SEED_RTOL


def _coefficient_arrays(ode: OdeSpec, terms: int) -> _Coefficients:
    log_mag = np.full((ode.k + 1, terms), -np.inf)
    arg = np.zeros((ode.k + 1, terms))
    for j, coefficient in enumerate(ode.coefficients):
        series = taylor_series(coefficient, terms)
        count = min(terms, series.terms)
        log_mag[j, :count] = series.log_mag[:count]
        arg[j, :count] = series.arg[:count]
    log_mag[ode.k, 0] = 0.0
    return _Coefficients(log_mag, arg)


def _check_inputs(ode: OdeSpec) -> None:
    """Every non-polynomial input series must cover the solution's ``terms``.

    Raises:
        ResidualTooLarge: an input series is reliable only inside ``|omega| < 1``.
        SchemaError: an input series is shorter than the requested truncation.
    """
    inputs = [*ode.coefficients, *([ode.forcing] if ode.forcing is not None else [])]
    for function in inputs:
        pieces = [function.series] if function.series is not None else [
            leaf.series for leaf in function.tree.leaves()
        ]
        for series in pieces:
            if series.exact:
                continue
            if series.residual_radius < 1.0:
                message = (
                    f"coefficient '{function.name}' is reliable only up to "
                    f"|omega| = {series.residual_radius:.3g} < 1"
                )
                raise ResidualTooLarge(message)
            if series.terms < ode.terms:
                message = (
                    f"'{function.name}' carries a {series.terms}-term series but equation "
                    f"'{ode.name}' solves for {ode.terms} terms; generate it with at least "
                    f"{ode.terms} terms"
                )
                raise SchemaError(message)


def _power_terms(
    coeffs: _Coefficients, b_l: FloatArray, b_t: FloatArray, power: int, shifts: range
) -> tuple[FloatArray, FloatArray]:
    """All terms ``a_{j,m} rising(idx, j) b_idx`` at ``power`` with ``j + m`` in shifts."""
    parts_l = []
    parts_t = []
    for j in range(coeffs.order + 1):
        m_lo = max(0, shifts.start - j)
        m_hi = min(power - j, shifts.stop - 1 - j, coeffs.log_mag.shape[1] - 1)
        if m_hi < m_lo:
            continue
        m = np.arange(m_lo, m_hi + 1)
        idx = power - j - m
        parts_l.append(coeffs.log_mag[j, m] + log_rising(idx, j) + b_l[idx])
        parts_t.append(coeffs.arg[j, m] + b_t[idx])
    if not parts_l:
        return np.array([-np.inf]), np.array([0.0])
    return np.concatenate(parts_l), np.concatenate(parts_t)


def solve_series(ode: OdeSpec) -> PuncturedFunction:
    """Solve ``sum_j A_j (omega^2 D)^j g = F`` for the Taylor coefficients of g.

    Seeds ``b_n = initial[n] / n!`` (n < k) fill the indices the recurrence
    leaves free; a seed the recurrence determines differently is a breakdown.

    Raises:
        RecurrenceBreakdown: the leading factor vanishes at an index that has
            no seed, or contradicts a seed (``index`` attribute).
        ResidualTooLarge: the substituted truncation misses the equation.
        SchemaError: an input series is shorter than ``ode.terms``.
    """
    _check_inputs(ode)
    terms = ode.terms
    coeffs = _coefficient_arrays(ode, terms)
    forcing_l = np.full(terms + coeffs.order + 1, -np.inf)
    forcing_t = np.zeros_like(forcing_l)
    if ode.forcing is not None:
        forcing = taylor_series(ode.forcing, terms)
        count = min(forcing.terms, forcing_l.size)
        forcing_l[:count] = forcing.log_mag[:count]
        forcing_t[:count] = forcing.arg[:count]

    s_min = coeffs.lowest_shift()
    leading = [
        (j, s_min - j)
        for j in range(coeffs.order + 1)
        if 0 <= s_min - j < terms and np.isfinite(coeffs.log_mag[j, s_min - j])
    ]
    seeds = [ode.initial[n] for n in range(ode.k)]
    b_l = np.full(terms, -np.inf)
    b_t = np.zeros(terms)

    for n in range(terms):
        lead_parts = [
            (coeffs.log_mag[j, m] + float(log_rising(np.array([n]), j)[0]), coeffs.arg[j, m])
            for j, m in leading
        ]
        lead_l, lead_t = log_sum(
            np.array([p[0] for p in lead_parts]), np.array([p[1] for p in lead_parts])
        )
        lead_scale = max(p[0] for p in lead_parts)
        power = n + s_min
        determined = np.isfinite(lead_l) and lead_l > lead_scale + math.log(LEADING_TOL)
        if determined:
            rest_l, rest_t = log_sum(*_power_terms(coeffs, b_l, b_t, power, range(s_min + 1, power + 1)))
            num_l, num_t = log_add_arrays(forcing_l[power], forcing_t[power], rest_l, rest_t + math.pi)
            value_l = float(num_l) - float(lead_l)
            value_t = float(num_t) - float(lead_t)
            if n < ode.k and not _agrees(value_l, value_t, seeds[n].log_mag - math.lgamma(n + 1), seeds[n].arg):
                message = (
                    f"equation '{ode.name}' forces b_{n} differently from its seed; "
                    "no solution analytic at omega = 0 with this initial data"
                )
                raise RecurrenceBreakdown(message, n)
            b_l[n], b_t[n] = value_l, value_t
        elif n < ode.k:
            b_l[n] = seeds[n].log_mag - math.lgamma(n + 1)
            b_t[n] = seeds[n].arg
        else:
            message = f"leading factor of '{ode.name}' vanishes at index {n}"
            raise RecurrenceBreakdown(message, n)

    series = PowerSeries(b_l, b_t)
    _check_residual(ode, coeffs, series, forcing_l, forcing_t, s_min)
    logger.debug("solved '%s': %d terms, residual radius %.6g", ode.name, terms, series.residual_radius)
    return PuncturedFunction(
        z0=ode.z0,
        series=series,
        kind=FunctionKind.ANALYTIC,
        name=f"{ode.name}_solution",
    )


def _check_residual(
    ode: OdeSpec,
    coeffs: _Coefficients,
    series: PowerSeries,
    forcing_l: FloatArray,
    forcing_t: FloatArray,
    s_min: int,
) -> None:
    """Every residual coefficient up to ``N - 2k`` must be negligible.

    Negligible means below 1e-8 times the larger of the largest solution
    coefficient and the largest term entering that coefficient.
    """
    b_l = np.asarray(series.log_mag)
    b_t = np.asarray(series.arg)
    finite = b_l[np.isfinite(b_l)]
    b_scale = float(np.max(finite)) if finite.size else -math.inf
    last = series.terms - 1 - 2 * ode.k
    for power in range(0, last + 1):
        parts_l, parts_t = _power_terms(coeffs, b_l, b_t, power, range(s_min, power + 1))
        parts_l = np.append(parts_l, forcing_l[power])
        parts_t = np.append(parts_t, forcing_t[power] + math.pi)
        residual_l, _ = log_sum(parts_l, parts_t)
        scale = max(b_scale, float(np.max(parts_l)))
        if np.isfinite(residual_l) and residual_l > scale + RESIDUAL_LOG_TOL:
            message = (
                f"residual of '{ode.name}' at omega^{power} is "
                f"{math.exp(residual_l - scale):.3g} of its scale"
            )
            raise ResidualTooLarge(message)
