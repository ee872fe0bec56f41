"""Proximity, counting, characteristic and maximum-modulus functionals.

All radii are in the function's own domain: ``|z - z0| = r`` for punctured
functions, ``|omega| = R`` for their plane view.
"""

from __future__ import annotations

import logging
import math

import numpy as np
from scipy.optimize import minimize_scalar

from punctured_functions import Domain, PuncturedFunction

from .config import DEFAULT_QUADRATURE, CircleSample, QuadratureConfig, circle_values
from .errors import (
    IncompleteLedger,
    MeromorphicMaxModulus,
    PoleOnCircle,
    QuadratureNoConvergence,
)
from .zeros import zero_counting_profile

logger = logging.getLogger(__name__)

POLE_CLEARANCE = 1e-12
NEAR_FRACTION = 1.0 / 8.0
WINDOW_INTERVALS = 2
WINDOW_REFINE = 64
SCAN_POINTS = 4096
REFINE_CANDIDATES = 8


# ── Proximity ────────────────────────────────────────────────────────────


def _sample(f: PuncturedFunction, radius: float, phi: np.ndarray) -> np.ndarray:
    return circle_values(f, radius, phi)[0]


def _guard_poles(f: PuncturedFunction, radius: float) -> None:
    rho = f.omega_modulus(radius)
    for pole in f.effective_ledger.poles:
        if abs(abs(pole.location) - rho) <= POLE_CLEARANCE * rho:
            message = (
                f"pole of '{f.name}' at omega={pole.location} lies on the circle "
                f"r={radius:.17g}; perturb the radius"
            )
            raise PoleOnCircle(message)


def _near_angles(f: PuncturedFunction, radius: float) -> list[float]:
    """Angles of ledger points within ``radius / 8`` of the circle."""
    ledger = f.effective_ledger
    angles = []
    for entry in (*ledger.zeros, *ledger.poles):
        modulus = abs(entry.location)
        if modulus == 0:
            continue
        own = 1.0 / modulus if f.domain is Domain.PUNCTURED else modulus
        if abs(own - radius) < NEAR_FRACTION * radius:
            angles.append(f.circle_angle(entry.location))
    return angles


def _window_runs(in_window: np.ndarray) -> list[tuple[int, int]]:
    """Maximal circular runs ``(first interval, length)`` of flagged intervals.

    Overlapping windows around nearby ledger points become one run, so every
    arc is integrated once.
    """
    n = in_window.size
    if in_window.all():
        return [(0, n)]
    if not in_window.any():
        return []
    clear = int(np.argmin(in_window))
    rolled = np.roll(in_window, -clear).astype(np.int8)
    edges = np.diff(np.concatenate(([0], rolled, [0])))
    starts = np.flatnonzero(edges == 1)
    stops = np.flatnonzero(edges == -1)
    return [((int(s) + clear) % n, int(e - s)) for s, e in zip(starts, stops, strict=True)]


def _positive_part_mean(
    f: PuncturedFunction,
    radius: float,
    n: int,
    cfg: QuadratureConfig,
    near: list[float],
) -> float:
    sample = CircleSample.take(f, radius, n)
    step = sample.step
    phi = sample.phi
    log_mag = sample.log_mag
    height = np.maximum(log_mag, 0.0)
    contrib = 0.5 * (height + np.roll(height, -1)) * step

    in_window = np.zeros(n, dtype=bool)
    for k0 in {int(round(a / step)) % n for a in near}:
        in_window[(k0 + np.arange(-WINDOW_INTERVALS, WINDOW_INTERVALS)) % n] = True

    positive = log_mag > 0.0
    kinks = np.flatnonzero((positive != np.roll(positive, -1)) & ~in_window)
    if kinks.size:
        lo = phi[kinks].copy()
        hi = lo + step
        lo_positive = positive[kinks]
        for _ in range(cfg.kink_refine_depth):
            mid = 0.5 * (lo + hi)
            same = (_sample(f, radius, mid) > 0.0) == lo_positive
            lo = np.where(same, mid, lo)
            hi = np.where(same, hi, mid)
        cross = 0.5 * (lo + hi)
        left = phi[kinks]
        contrib[kinks] = np.where(
            lo_positive,
            0.5 * height[kinks] * (cross - left),
            0.5 * height[(kinks + 1) % n] * (left + step - cross),
        )

    parts = [float(x) for x in contrib[~in_window]]
    for first, length in _window_runs(in_window):
        fine = phi[first] + step * np.arange(length * WINDOW_REFINE + 1) / WINDOW_REFINE
        fine_height = np.maximum(_sample(f, radius, fine), 0.0)
        parts.append(float(np.trapezoid(fine_height, fine)))
    return math.fsum(parts) / (2.0 * math.pi)


def proximity(
    f: PuncturedFunction, r: float, cfg: QuadratureConfig = DEFAULT_QUADRATURE
) -> float:
    """Proximity function ``m(r, f)``: circle mean of ``log+ |f|``.

    The trapezoid grid doubles until two successive levels agree to
    ``rel_tol * (1 + m)``, or until two successive Richardson extrapolations
    (which cancel the ``h^2`` error between sign changes) do. Sign changes of
    ``log |f|`` are located by bisection and integrated exactly as triangles;
    ledger points near the circle get a locally refined window.

    Raises:
        PoleOnCircle: a pole within 1e-12 relative distance of the circle.
        QuadratureNoConvergence: the doubling budget is exhausted.
    """
    _guard_poles(f, r)
    near = _near_angles(f, r)
    n = cfg.base_points
    previous = _positive_part_mean(f, r, n // 2, cfg, near)
    extrapolated: float | None = None
    while True:
        current = _positive_part_mean(f, r, n, cfg, near)
        tolerance = cfg.rel_tol * (1.0 + abs(current))
        if abs(current - previous) <= tolerance:
            return max(current, 0.0)
        estimate = current + (current - previous) / 3.0
        if extrapolated is not None and abs(estimate - extrapolated) <= tolerance:
            logger.debug("proximity r=%.6g: extrapolated at %d points", r, n)
            return max(estimate, 0.0)
        if 2 * n > cfg.max_points:
            message = (
                f"proximity of '{f.name}' at r={r:.6g} did not converge with "
                f"{n} points ({previous!r} vs {current!r})"
            )
            raise QuadratureNoConvergence(message)
        logger.debug("proximity r=%.6g: doubling to %d points", r, 2 * n)
        previous = current
        extrapolated = estimate
        n *= 2


# ── Counting ─────────────────────────────────────────────────────────────


def ledger_counting(f: PuncturedFunction, r: float, *, distinct: bool = False) -> float:
    """``N(r, f)`` from the pole ledger by partial summation.

    ``sum m_p log(rho / |omega_p|)`` over poles with ``|omega_p| <= rho``
    plus ``m_inf log rho`` for a pole at ``omega = 0``, where ``rho`` is the
    omega-modulus of the circle.
    """
    rho = f.omega_modulus(r)
    terms = []
    for pole in f.effective_ledger.poles:
        weight = 1 if distinct else pole.multiplicity
        modulus = abs(pole.location)
        if modulus == 0:
            terms.append(weight * math.log(rho))
        elif modulus <= rho:
            terms.append(weight * math.log(rho / modulus))
    return math.fsum(terms)


def counting(
    f: PuncturedFunction,
    r: float,
    distinct: bool = False,
    cfg: QuadratureConfig = DEFAULT_QUADRATURE,
) -> float:
    """Counting function ``N(r, f)`` (``N-bar`` when ``distinct``).

    Analytic functions give 0. A complete pole ledger is summed directly;
    otherwise the zeros of ``f.pole_divisor`` are counted on nested annuli.

    Raises:
        IncompleteLedger: no complete ledger and no pole divisor.
    """
    if f.is_analytic:
        return 0.0
    if f.effective_ledger.pole_complete:
        return ledger_counting(f, r, distinct=distinct)
    if f.pole_divisor is None:
        message = f"'{f.name}' has an incomplete pole ledger and no pole divisor"
        raise IncompleteLedger(message)
    profile = zero_counting_profile(f.pole_divisor, [r], cfg, distinct=distinct)
    return profile.counting(r, distinct=distinct)


def characteristic(
    f: PuncturedFunction, r: float, cfg: QuadratureConfig = DEFAULT_QUADRATURE
) -> float:
    """Nevanlinna characteristic ``T(r, f) = m(r, f) + N(r, f)``."""
    return proximity(f, r, cfg) + counting(f, r, cfg=cfg)


# ── Maximum modulus ──────────────────────────────────────────────────────


def max_modulus_point(f: PuncturedFunction, r: float) -> tuple[float, float]:
    """``(log M(r, f), phi)`` with phi the angle where the maximum is attained.

    A 4096-angle scan is followed by golden-section refinement around the
    eight best samples.

    Raises:
        MeromorphicMaxModulus: ``f`` may have poles.
    """
    if not f.is_analytic:
        message = f"maximum modulus of meromorphic '{f.name}' is infinite"
        raise MeromorphicMaxModulus(message)
    scan = CircleSample.take(f, r, SCAN_POINTS)
    step = scan.step
    phi = scan.phi
    log_mag = scan.log_mag
    candidates = np.argsort(-log_mag, kind="stable")[:REFINE_CANDIDATES]
    best_value = float(log_mag[candidates[0]])
    best_phi = float(phi[candidates[0]])

    def objective(x: float) -> float:
        return -float(_sample(f, r, np.array([x]))[0])

    for k in candidates:
        centre = float(phi[k])
        try:
            result = minimize_scalar(
                objective,
                bracket=(centre - step, centre, centre + step),
                method="golden",
                tol=1e-12,
            )
        except ValueError:
            result = minimize_scalar(
                objective,
                bounds=(centre - step, centre + step),
                method="bounded",
                options={"xatol": 1e-12},
            )
        value = -float(result.fun)
        if value > best_value:
            best_value = value
            best_phi = float(result.x) % (2.0 * math.pi)
    return best_value, best_phi


def max_modulus(f: PuncturedFunction, r: float) -> float:
    """``log M(r, f)``, the log of the maximum modulus on the circle."""
    return max_modulus_point(f, r)[0]
