"""Argument-principle winding numbers on omega-plane contours.

The winding number of g around ``|omega - c| = rho`` (counter-clockwise) equals
zeros minus poles inside. The argument increment is summed from wrapped phase
steps; the sample count doubles until no step exceeds pi/4.
"""

from __future__ import annotations

import logging
import math

import numpy as np

from .errors import GrowthLabError
from .log_complex import wrap_angles

logger = logging.getLogger(__name__)

START_POINTS = 256
MAX_POINTS = 2**20
MAX_STEP = math.pi / 4
INTEGER_TOL = 1e-3


class ZeroOnContour(GrowthLabError):
    """A zero (or pole) lies on the integration contour."""


class NonIntegerWinding(GrowthLabError):
    """The argument increment did not settle on an integer."""


def _phases(function, omega: np.ndarray) -> np.ndarray:
    log_mag, arg = function.evaluate_omega(omega)
    if not np.all(np.isfinite(log_mag)):
        message = "zero or pole on the contour"
        raise ZeroOnContour(message)
    return arg


def winding_increment(function, path) -> float:
    """Total argument change of ``function`` along a closed or open path.

    ``path(n)`` must return ``n + 1`` omega points (first to last, inclusive).
    The sampling doubles until every wrapped phase step is at most pi/4.

    Raises:
        ZeroOnContour: the function vanishes or blows up on the path.
        NonIntegerWinding: resolution budget exhausted.
    """
    n = START_POINTS
    while n <= MAX_POINTS:
        steps = wrap_angles(np.diff(_phases(function, path(n))))
        if float(np.max(np.abs(steps))) <= MAX_STEP:
            return math.fsum(steps.tolist())
        n *= 2
    message = f"argument increment unresolved with {MAX_POINTS} points"
    raise NonIntegerWinding(message)


def winding_number(function, center: complex, radius: float) -> int:
    """Zeros minus poles of ``function`` inside ``|omega - center| < radius``.

    Args:
        function: anything with ``evaluate_omega`` (a PuncturedFunction).
        center: circle center in the omega-plane.
        radius: circle radius, > 0.

    Returns:
        The winding number, an integer.

    Raises:
        ZeroOnContour: a zero or pole on the circle.
        NonIntegerWinding: the raw value is not within 1e-3 of an integer.
    """
    if radius <= 0:
        message = f"winding radius must be positive, got {radius}"
        raise ValueError(message)

    def circle(n: int) -> np.ndarray:
        psi = 2.0 * np.pi * np.arange(n + 1) / n
        return center + radius * np.exp(1j * psi)

    raw = winding_increment(function, circle) / (2.0 * math.pi)
    nearest = round(raw)
    if abs(raw - nearest) > INTEGER_TOL:
        message = f"winding {raw:.6f} around |w-{center}|={radius:.6g} is not an integer"
        raise NonIntegerWinding(message)
    logger.debug("winding around |w-%s|=%.6g: %d", center, radius, nearest)
    return int(nearest)
