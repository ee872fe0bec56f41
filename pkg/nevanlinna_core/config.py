"""Quadrature configuration and circle samples."""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from punctured_functions import PuncturedFunction
from punctured_functions.log_complex import FloatArray

from .errors import PoleOnCircle, QuadratureNoConvergence


@dataclass(frozen=True)
class QuadratureConfig:
    """Knobs for circle quadrature and argument-principle counting.

    Attributes:
        base_points: starting trapezoid size, a power of two >= 64.
        kink_refine_depth: bisection steps locating sign changes of log|f|.
        rel_tol: target relative error of the proximity function.
        max_points: doubling stops here (QuadratureNoConvergence beyond).
        annuli_per_decade: nested annuli per unit of log(1/r) for counts.
    """

    base_points: int = 1024
    kink_refine_depth: int = 20
    rel_tol: float = 1e-6
    max_points: int = 1 << 17
    annuli_per_decade: int = 24

    def __post_init__(self) -> None:
        if self.base_points < 64 or self.base_points & (self.base_points - 1):
            message = f"base_points must be a power of two >= 64, got {self.base_points}"
            raise ValueError(message)
        if not self.rel_tol > 0:
            message = f"rel_tol must be positive, got {self.rel_tol}"
            raise ValueError(message)
        if self.kink_refine_depth < 1:
            message = "kink_refine_depth must be >= 1"
            raise ValueError(message)
        if self.max_points < self.base_points:
            message = "max_points must be >= base_points"
            raise ValueError(message)
        if self.annuli_per_decade < 1:
            message = "annuli_per_decade must be >= 1"
            raise ValueError(message)

    def refined(self, factor: int = 2) -> QuadratureConfig:
        """Same config with ``base_points`` multiplied by ``factor``."""
        points = self.base_points * factor
        return QuadratureConfig(
            base_points=points,
            kink_refine_depth=self.kink_refine_depth,
            rel_tol=self.rel_tol,
            max_points=max(self.max_points, points),
            annuli_per_decade=self.annuli_per_decade,
        )


DEFAULT_QUADRATURE = QuadratureConfig()


def circle_values(
    f: PuncturedFunction, radius: float, phi: FloatArray
) -> tuple[FloatArray, FloatArray]:
    """``(log |f|, arg f)`` at ``z = z0 - r e^{i phi}``.

    Raises:
        QuadratureNoConvergence: f is undefined somewhere on the circle.
        PoleOnCircle: f is infinite at a sample.
    """
    log_mag, arg = f.evaluate_omega(f.circle_points(radius, phi))
    if np.any(np.isnan(log_mag)):
        message = f"'{f.name}' is undefined somewhere on the circle r={radius:.6g}"
        raise QuadratureNoConvergence(message)
    if np.any(log_mag == np.inf):
        message = f"'{f.name}' has a pole on the circle r={radius:.6g}"
        raise PoleOnCircle(message)
    return log_mag, arg


@dataclass(frozen=True, eq=False)
class CircleSample:
    """Values of f on ``z = z0 - r e^{i phi}`` at a uniform phi grid on [0, 2pi)."""

    radius: float
    phi: FloatArray
    log_mag: FloatArray
    arg: FloatArray = field(repr=False)

    @classmethod
    def take(cls, f: PuncturedFunction, radius: float, points: int) -> CircleSample:
        phi = 2.0 * math.pi * np.arange(points) / points
        return cls(radius, phi, *circle_values(f, radius, phi))

    def __len__(self) -> int:
        return int(self.phi.size)

    @property
    def step(self) -> float:
        return 2.0 * math.pi / len(self)
