"""Doubly exponential radius grids ``r_k = exp(-exp(u_k))``."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from punctured_functions import Domain, PuncturedFunction
from punctured_functions.log_complex import FloatArray

from .errors import GridError

MIN_POINTS = 16
# exp(-exp(u)) underflows to 0.0 beyond this
MAX_U = math.log(700.0)


@dataclass(frozen=True)
class RadiusGrid:
    """Radii shrinking to z0, uniform in ``u = log log(1/r)``.

    Attributes:
        u_min: first grid value, > 0.
        u_max: last grid value.
        points: number of radii (>= 16).
    """

    u_min: float
    u_max: float
    points: int = 24

    def __post_init__(self) -> None:
        if not 0 < self.u_min < self.u_max:
            message = f"grid needs 0 < u_min < u_max, got u_min={self.u_min}, u_max={self.u_max}"
            raise GridError(message)
        if self.u_max > MAX_U:
            message = f"u_max={self.u_max} makes the radii underflow (limit {MAX_U:.4f})"
            raise GridError(message)
        if self.points < MIN_POINTS:
            message = f"grid needs at least {MIN_POINTS} points, got {self.points}"
            raise GridError(message)

    @property
    def u(self) -> FloatArray:
        return np.linspace(self.u_min, self.u_max, self.points)

    @property
    def log_inverse_radii(self) -> FloatArray:
        """``log(1/r_k) = exp(u_k)``."""
        return np.exp(self.u)

    @property
    def radii(self) -> FloatArray:
        return np.exp(-self.log_inverse_radii)

    def circle_radius(self, f: PuncturedFunction, index: int) -> float:
        """Radius to pass to f's functionals for grid row ``index``.

        A plane-domain function is sampled on ``|omega| = 1/r_k``, the circle
        that corresponds to ``|z - z0| = r_k``.
        """
        r = float(self.radii[index])
        return r if f.domain is Domain.PUNCTURED else 1.0 / r

    def require_reach(self, f: PuncturedFunction) -> None:
        """Check that a truncated series of f covers the grid's outermost omega circle.

        Raises:
            GridError: ``|omega| = exp(exp(u_max))`` lies past the residual radius.
        """
        series = f.series
        if series is None or series.exact:
            return
        reach = math.exp(math.exp(self.u_max))
        if reach > series.residual_radius:
            message = (
                f"'{f.name}' is a {series.terms}-term series reliable up to |omega| = "
                f"{series.residual_radius:.6g}, but u_max={self.u_max} reaches |omega| = {reach:.6g}"
            )
            raise GridError(message)

    def with_points(self, points: int) -> RadiusGrid:
        return RadiusGrid(self.u_min, self.u_max, points)

    def to_dict(self) -> dict[str, float | int]:
        return {"u_min": self.u_min, "u_max": self.u_max, "points": self.points}
