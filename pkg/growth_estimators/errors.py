"""Errors raised while sampling growth tables and estimating exponents."""

from __future__ import annotations

from punctured_functions.errors import GrowthLabError


class GridError(GrowthLabError, ValueError):
    """A radius grid is malformed or reaches past a truncated series."""


class TooManyFailures(GrowthLabError):
    """More than a quarter of the sampled rows failed."""


class InsufficientData(GrowthLabError):
    """Fewer usable rows than an estimator needs."""


class OrderOutOfRange(GrowthLabError):
    """A type was requested at an order where it is not defined."""
