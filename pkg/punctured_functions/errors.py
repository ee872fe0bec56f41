"""Exception hierarchy shared by every package of the toolkit.

``GrowthLabError`` is the common root so callers (the CLI in particular) can
separate domain failures from programming errors with a single ``except``.
"""

from __future__ import annotations


class GrowthLabError(Exception):
    """Base class for all domain errors."""


class SchemaError(GrowthLabError):
    """A function, equation or scenario document is malformed."""


class ExpressionSyntaxError(SchemaError):
    """A closed-form expression string could not be parsed."""

    def __init__(self, message: str, position: int | None = None) -> None:
        super().__init__(message)
        self.position = position


class ConsistencyError(GrowthLabError):
    """Closed form and series disagree at the construction test points."""


class LedgerError(GrowthLabError):
    """A zero/pole ledger is invalid or contradicts the argument principle."""


class EvaluationAtSingularity(GrowthLabError):
    """Evaluation requested at z = z0."""


class SeriesOutOfRange(GrowthLabError):
    """Series evaluation requested beyond its residual radius."""


class UnsupportedNode(GrowthLabError):
    """An expression node has no derivative rule."""


class DivisorDegenerate(GrowthLabError):
    """Division by a series or function that vanishes identically or at 0."""
