"""Central index of the omega-plane series (Wiman-Valiron)."""

from __future__ import annotations

import math

from punctured_functions import PuncturedFunction, SchemaError, SeriesOutOfRange


def central_index(g: PuncturedFunction, R: float) -> tuple[int, float]:
    """Return ``(index, log_max_term)`` of g's series on ``|omega| = R``.

    The index is the largest n maximizing ``log|a_n| + n log R``.

    Raises:
        SchemaError: g carries no series.
        SeriesOutOfRange: R exceeds the series' residual radius.
    """
    if g.series is None:
        message = f"central index of '{g.name}' needs a series"
        raise SchemaError(message)
    if not R > 0:
        message = f"radius must be positive, got {R}"
        raise ValueError(message)
    if R > g.series.residual_radius * (1 + 1e-12):
        message = (
            f"R={R:.6g} exceeds the residual radius {g.series.residual_radius:.6g} "
            f"of '{g.name}'"
        )
        raise SeriesOutOfRange(message)
    return g.series.max_term(math.log(R))


def central_index_at(f: PuncturedFunction, r: float) -> tuple[int, float]:
    """``V(r, f)``: the central index on the circle of radius r in f's domain."""
    return central_index(f, f.omega_modulus(r))
