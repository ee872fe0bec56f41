"""Scenario and verdict models."""

from __future__ import annotations

from enum import Enum
from typing import Any

from pydantic import BaseModel, ConfigDict, Field, PositiveFloat, model_validator

from growth_estimators import RadiusGrid

SCHEMA_VERSION = 1


class TheoremId(str, Enum):
    T1 = "T1"
    T2 = "T2"
    T3 = "T3"
    T4 = "T4"
    T5 = "T5"
    T6 = "T6"
    T7 = "T7"
    L5 = "L5"
    L6 = "L6"
    L16 = "L16"


class Outcome(str, Enum):
    PASS = "pass"
    FAIL = "fail"
    HYPOTHESIS_NOT_MET = "hypothesis-not-met"


class CheckStatus(str, Enum):
    PASS = "pass"
    MARGINAL = "marginal"
    FAIL = "fail"
    NOT_EVALUATED = "not-evaluated"

    @property
    def ok(self) -> bool:
        return self in (CheckStatus.PASS, CheckStatus.MARGINAL)


class Relation(str, Enum):
    LE = "<="
    LT = "<"
    EQ = "=="


class CheckRole(str, Enum):
    HYPOTHESIS = "hypothesis"
    CONCLUSION = "conclusion"


class Alternative(str, Enum):
    """Replacement hypotheses accepted by T6 and T7 scenarios."""

    M_RATIO = "m-ratio"
    LAMBDA_GAP = "lambda-gap"


class GridSpec(BaseModel):
    model_config = ConfigDict(extra="forbid", frozen=True)

    u_min: float
    u_max: float
    points: int = 24

    def to_grid(self) -> RadiusGrid:
        return RadiusGrid(self.u_min, self.u_max, self.points)


class Tolerances(BaseModel):
    """Slack applied when comparing estimates.

    Attributes:
        equality: two-sided tolerance of equality conclusions; also the
            favorable-side slack of non-strict inequalities.
        strict_margin: positive margin a strict hypothesis must clear.
        marginal: passes closer than this are reported as marginal.
        oscillation: tolerance of the exponent-of-convergence equalities.
        same_order: orders closer than this count as equal when selecting
            the coefficients of a type sum.
    """

    model_config = ConfigDict(extra="forbid", frozen=True)

    equality: PositiveFloat = 0.15
    strict_margin: PositiveFloat = 0.05
    marginal: PositiveFloat = 0.02
    oscillation: PositiveFloat = 0.2
    same_order: PositiveFloat = 0.15


class Scenario(BaseModel):
    """A theorem-verification configuration.

    ``equation`` is an equation document (see :mod:`series_lab.ode`); ``phi``
    a function document. ``expected`` names the conclusion checks to
    evaluate; ``expected_outcome`` is what a correct run reports.
    """

    model_config = ConfigDict(extra="forbid")

    id: str
    theorem: TheoremId
    description: str = ""
    equation: dict[str, Any]
    phi: dict[str, Any] | None = None
    grid: GridSpec
    solution_grid: GridSpec | None = None
    oscillation_grid: GridSpec | None = None
    tolerances: Tolerances = Field(default_factory=Tolerances)
    alternative: Alternative | None = None
    expected: list[str] = Field(min_length=1)
    expected_outcome: Outcome = Outcome.PASS

    @model_validator(mode="after")
    def _phi_where_needed(self) -> Scenario:
        needs_phi = self.theorem is TheoremId.L16 or any(n.startswith("oscillation") for n in self.expected)
        if needs_phi and self.phi is None:
            message = f"scenario '{self.id}' ({self.theorem.value}) needs 'phi'"
            raise ValueError(message)
        return self

    @property
    def solution_grid_spec(self) -> GridSpec:
        return self.solution_grid or self.grid

    @property
    def oscillation_grid_spec(self) -> GridSpec:
        return self.oscillation_grid or self.solution_grid_spec


class Check(BaseModel):
    """One evaluated predicate ``lhs relation rhs`` with its signed margin."""

    name: str
    role: CheckRole
    predicate: str
    relation: Relation
    lhs: float | None = None
    rhs: float | None = None
    margin: float | None = None
    status: CheckStatus
    note: str = ""


class MeasuredValue(BaseModel):
    """A measured quantity and how to reproduce it from the evidence tables.

    ``recipe`` holds the estimator call (functional, p, q, flavor, source,
    tables); derived quantities (sums, maxima) have none.
    """

    name: str
    value: float
    band: tuple[float, float]
    recipe: dict[str, Any] | None = None
    estimate: dict[str, Any] | None = None


class Verdict(BaseModel):
    """Measured evidence and checks of one scenario run."""

    schema_version: int = SCHEMA_VERSION
    scenario_id: str
    theorem: TheoremId
    outcome: Outcome
    expected_outcome: Outcome
    measured: dict[str, MeasuredValue] = Field(default_factory=dict)
    hypotheses: list[Check] = Field(default_factory=list)
    conclusions: list[Check] = Field(default_factory=list)
    tables: dict[str, str] = Field(default_factory=dict)
    notes: list[str] = Field(default_factory=list)

    @property
    def as_expected(self) -> bool:
        return self.outcome is self.expected_outcome

    @property
    def marginal(self) -> list[str]:
        return [c.name for c in (*self.hypotheses, *self.conclusions) if c.status is CheckStatus.MARGINAL]

    def first_failure(self) -> Check | None:
        """First failing check, hypotheses before conclusions."""
        for check in (*self.hypotheses, *self.conclusions):
            if check.status is CheckStatus.FAIL:
                return check
        return None
