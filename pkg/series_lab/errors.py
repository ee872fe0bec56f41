"""Errors raised while building and solving transported equations."""

from __future__ import annotations

from punctured_functions.errors import GrowthLabError


class RecurrenceBreakdown(GrowthLabError):
    """The leading factor of the coefficient recurrence vanished.

    ``index`` is the series index that could not be determined.
    """

    def __init__(self, message: str, index: int) -> None:
        super().__init__(message)
        self.index = index


class ResidualTooLarge(GrowthLabError):
    """Substituting the computed series back leaves a large residual."""
