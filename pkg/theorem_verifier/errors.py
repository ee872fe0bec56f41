"""Errors raised while running theorem scenarios."""

from __future__ import annotations

from punctured_functions.errors import GrowthLabError


class SolutionUnavailable(GrowthLabError):
    """The scenario's solution could be neither solved for nor manufactured."""


class MeasurementFailure(GrowthLabError):
    """An estimator failed; ``quantity`` names what was being measured."""

    def __init__(self, message: str, quantity: str) -> None:
        super().__init__(message)
        self.quantity = quantity
