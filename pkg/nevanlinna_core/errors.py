"""Errors raised by the Nevanlinna functionals."""

from __future__ import annotations

from punctured_functions.argument import NonIntegerWinding, ZeroOnContour
from punctured_functions.errors import GrowthLabError


class PoleOnCircle(GrowthLabError):
    """A pole sits on the sampling circle; perturb the radius."""


class QuadratureNoConvergence(GrowthLabError):
    """Proximity quadrature failed to reach the requested tolerance."""


class IncompleteLedger(GrowthLabError):
    """Pole counts are needed but neither a complete ledger nor a divisor exists."""


class MeromorphicMaxModulus(GrowthLabError):
    """Maximum modulus requested for a function with poles."""


class UnresolvedDistinctCount(GrowthLabError):
    """Distinct zeros could not be separated by sector subdivision."""


__all__ = [
    "IncompleteLedger",
    "MeromorphicMaxModulus",
    "NonIntegerWinding",
    "PoleOnCircle",
    "QuadratureNoConvergence",
    "UnresolvedDistinctCount",
    "ZeroOnContour",
]
