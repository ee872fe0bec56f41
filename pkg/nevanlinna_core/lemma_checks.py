"""Sampled checks of the classical growth lemmas near z0.

Each check evaluates its inequality on a finite set of radii and returns a
small result object with the raw numbers and an ``ok`` flag. Exceptional sets
of finite logarithmic measure are not modeled: bounds are asserted on
quantiles or on head/tail comparisons instead.
"""

from __future__ import annotations

import logging
import math
from collections.abc import Sequence
from dataclasses import dataclass

import numpy as np

from punctured_functions import (
    Domain,
    FunctionKind,
    PuncturedFunction,
    differentiate,
    invert_to_plane,
    reciprocal,
)
from punctured_functions.expression import div

from .central_index import central_index
from .config import DEFAULT_QUADRATURE, QuadratureConfig
from .functionals import characteristic, max_modulus_point, proximity

logger = logging.getLogger(__name__)

WIMAN_VALIRON_TOL = 0.05
WIMAN_VALIRON_SMALLEST = 10
BOUND_LAMBDA = 2.0
BOUND_PASS_RATE = 0.95
BOUND_ANGLES = 16
CALIBRATION_FRACTION = 0.25
PROXIMITY_RATIO_FACTOR = 10.0
RECIPROCAL_SLOPE_TOL = 0.05
INVERSION_TOL = 1e-6


def _require_punctured(f: PuncturedFunction, what: str) -> None:
    if f.domain is not Domain.PUNCTURED:
        message = f"{what} is stated near z0; got the plane view '{f.name}'"
        raise ValueError(message)


def _log_derivative(f: PuncturedFunction, k: int) -> PuncturedFunction:
    """``f^(k) / f`` as a closed-form quotient (poles left undeclared)."""
    fk = differentiate(f, k)
    return PuncturedFunction(
        z0=f.z0,
        closed_form=div(fk.tree, f.tree),
        kind=FunctionKind.MEROMORPHIC,
        name=f"{f.name}^({k})/{f.name}",
        domain=f.domain,
    )


def _u(radii: np.ndarray) -> np.ndarray:
    return np.log(np.log(1.0 / radii))


# ── Central index and the logarithmic derivative ─────────────────────────


@dataclass(frozen=True)
class WimanValironCheck:
    radii: list[float]
    errors: dict[int, list[float]]
    medians: dict[int, float]
    ok: bool


def check_wiman_valiron(
    f: PuncturedFunction,
    radii: Sequence[float],
    orders: Sequence[int] = (1, 2),
    *,
    tol: float = WIMAN_VALIRON_TOL,
) -> WimanValironCheck:
    """Compare ``f^(j)(z_r)/f(z_r)`` with ``(V(r)/(z0 - z_r))^j`` at max points.

    ``z_r`` attains the maximum modulus on ``|z - z0| = r`` and
    ``1/(z0 - z_r)`` is the omega value there. Passes when the median relative
    error over the ten smallest radii is below ``tol`` for every order.
    """
    _require_punctured(f, "the Wiman-Valiron comparison")
    ordered = sorted(float(r) for r in radii)
    derivatives = {j: differentiate(f, j) for j in orders}
    errors: dict[int, list[float]] = {j: [] for j in orders}
    for r in ordered:
        log_f, phi = max_modulus_point(f, r)
        omega = f.circle_points(r, np.array([phi]))
        _, arg_f = f.evaluate_omega(omega)
        index, _ = central_index(f, abs(complex(omega[0])))
        log_v = math.log(index) if index > 0 else -math.inf
        for j, fj in derivatives.items():
            log_fj, arg_fj = fj.evaluate_omega(omega)
            # ratio / target, in log form
            log_q = float(log_fj[0]) - log_f - j * (log_v + math.log(abs(complex(omega[0]))))
            arg_q = float(arg_fj[0]) - float(arg_f[0]) - j * float(np.angle(omega[0]))
            errors[j].append(abs(complex(math.exp(log_q) * np.exp(1j * arg_q)) - 1.0))
    medians = {j: float(np.median(errs[:WIMAN_VALIRON_SMALLEST])) for j, errs in errors.items()}
    ok = all(value < tol for value in medians.values())
    logger.debug("Wiman-Valiron medians for '%s': %s", f.name, medians)
    return WimanValironCheck(radii=ordered, errors=errors, medians=medians, ok=ok)


@dataclass(frozen=True)
class LogDerivativeBoundCheck:
    log_constant: float
    pass_rate: float
    evaluated: int
    skipped: int
    ok: bool


def check_log_derivative_bound(
    f: PuncturedFunction,
    radii: Sequence[float],
    j: int = 1,
    *,
    lam: float = BOUND_LAMBDA,
    angles: int = BOUND_ANGLES,
    offset: float = 0.0,
    cfg: QuadratureConfig = DEFAULT_QUADRATURE,
) -> LogDerivativeBoundCheck:
    """``|f^(j)/f| <= C [(1/r^2) T(lam r) log T(lam r)]^j`` on sampled points.

    Radii are walked from the largest down; the first quarter calibrates
    ``log C`` (the largest excess seen there) and the rest must satisfy the
    bound at 95% of the ``(r, phi)`` pairs. Radii where ``T(lam r) <= 1`` make
    the right side meaningless and are skipped. ``offset`` rotates the
    sampled angles.
    """
    _require_punctured(f, "the logarithmic-derivative bound")
    ordered = sorted((float(r) for r in radii), reverse=True)
    quotient = _log_derivative(f, j)
    phi = offset + 2.0 * math.pi * np.arange(angles) / angles
    excess_rows = []
    skipped = 0
    for r in ordered:
        t = characteristic(f, lam * r, cfg)
        if t <= 1.0:
            skipped += 1
            continue
        log_rhs = j * (-2.0 * math.log(r) + math.log(t) + math.log(math.log(t)))
        log_lhs, _ = quotient.evaluate_omega(quotient.circle_points(r, phi))
        excess_rows.append(log_lhs - log_rhs)
    if len(excess_rows) < 4:
        return LogDerivativeBoundCheck(math.nan, 0.0, 0, skipped, False)
    head = max(1, int(round(CALIBRATION_FRACTION * len(excess_rows))))
    log_constant = float(np.max(np.concatenate(excess_rows[:head])))
    rest = np.concatenate(excess_rows[head:])
    valid = ~np.isnan(rest)
    rate = float(np.mean(rest[valid] <= log_constant + 1e-9)) if np.any(valid) else 0.0
    return LogDerivativeBoundCheck(
        log_constant=log_constant,
        pass_rate=rate,
        evaluated=int(rest.size),
        skipped=skipped,
        ok=rate >= BOUND_PASS_RATE,
    )


@dataclass(frozen=True)
class ProximityRatioCheck:
    ratios: list[float]
    head_median: float
    tail_max: float
    ok: bool


def check_log_derivative_proximity(
    f: PuncturedFunction,
    radii: Sequence[float],
    k: int = 1,
    *,
    cfg: QuadratureConfig = DEFAULT_QUADRATURE,
) -> ProximityRatioCheck:
    """``m(r, f^(k)/f) / (log T(r, f) + log(1/r))`` stays bounded.

    Bounded means the maximum over the smaller half of the radii is at most
    ten times the median over the larger half.
    """
    _require_punctured(f, "the logarithmic-derivative proximity bound")
    ordered = sorted((float(r) for r in radii), reverse=True)
    quotient = _log_derivative(f, k)
    ratios = []
    for r in ordered:
        t = characteristic(f, r, cfg)
        scale = (math.log(t) if t > 0 else -math.inf) + math.log(1.0 / r)
        if scale <= 0:
            continue
        ratios.append(proximity(quotient, r, cfg) / scale)
    if len(ratios) < 4:
        return ProximityRatioCheck(ratios, math.nan, math.nan, False)
    half = len(ratios) // 2
    head_median = float(np.median(ratios[:half]))
    tail_max = float(np.max(ratios[half:]))
    ok = tail_max <= PROXIMITY_RATIO_FACTOR * max(head_median, 1e-12)
    return ProximityRatioCheck(ratios, head_median, tail_max, ok)


# ── Reciprocal and inversion identities ──────────────────────────────────


@dataclass(frozen=True)
class ReciprocalCheck:
    deviations: list[float]
    slope: float
    ok: bool


def check_reciprocal_boundedness(
    f: PuncturedFunction,
    radii: Sequence[float],
    *,
    cfg: QuadratureConfig = DEFAULT_QUADRATURE,
    tol: float = RECIPROCAL_SLOPE_TOL,
) -> ReciprocalCheck:
    """``|T(r, 1/f) - T(r, f)|`` does not grow with ``u = log log(1/r)``.

    Passes when the least-squares slope of the deviation against u is within
    ``tol`` of zero.
    """
    _require_punctured(f, "reciprocal boundedness")
    r = np.array(sorted(float(x) for x in radii))
    inverse = reciprocal(f)
    deviations = [abs(characteristic(inverse, x, cfg) - characteristic(f, x, cfg)) for x in r]
    slope = float(np.polyfit(_u(r), np.array(deviations), 1)[0])
    return ReciprocalCheck(deviations, slope, abs(slope) <= tol)


@dataclass(frozen=True)
class InversionCheck:
    punctured: list[float]
    plane: list[float]
    max_error: float
    ok: bool


def check_inversion_identity(
    f: PuncturedFunction,
    plane_radii: Sequence[float],
    *,
    cfg: QuadratureConfig = DEFAULT_QUADRATURE,
    tol: float = INVERSION_TOL,
) -> InversionCheck:
    """``T(R, g) = T(1/R, f)`` with ``g = invert_to_plane(f)``.

    The error is measured as ``|difference| / (1 + T)``.
    """
    _require_punctured(f, "the inversion identity")
    g = invert_to_plane(f)
    punctured = [characteristic(f, 1.0 / R, cfg) for R in plane_radii]
    plane = [characteristic(g, float(R), cfg) for R in plane_radii]
    errors = [abs(a - b) / (1.0 + abs(a)) for a, b in zip(punctured, plane, strict=True)]
    worst = max(errors) if errors else 0.0
    return InversionCheck(punctured, plane, worst, worst <= tol)
