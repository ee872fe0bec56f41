"""Run a scenario: measure every quantity its theorem mentions and check it.

Hypotheses are measured on the coefficients first; a scenario whose
hypotheses fail reports ``hypothesis-not-met`` without ever solving the
equation. Every measured number records the estimator call and the table it
came from, and the tables travel with the verdict as CSV text.
"""

from __future__ import annotations

import logging
from collections.abc import Callable, Iterator, Sequence
from concurrent.futures import ThreadPoolExecutor, as_completed
from contextlib import contextmanager
from typing import Any

from growth_estimators import (
    Flavor,
    GridError,
    GrowthTable,
    OrderEstimate,
    RadiusGrid,
    Source,
    estimate_delta,
    estimate_order,
    estimate_proximity_ratio,
    estimate_type,
    sample_growth,
)
from growth_estimators.estimators import TYPE_CLAMP_FLOOR
from nevanlinna_core import DEFAULT_QUADRATURE, QuadratureConfig
from observability import add_span_attributes, get_tracer
from punctured_functions import (
    GrowthLabError,
    PuncturedFunction,
    SchemaError,
    parse_function_spec,
)
from series_lab import (
    OdeSpec,
    RecurrenceBreakdown,
    ResidualTooLarge,
    ode_from_spec,
    shift_solution,
    solve_series,
)

from .errors import MeasurementFailure, SolutionUnavailable
from .models import (
    Alternative,
    Check,
    CheckRole,
    CheckStatus,
    MeasuredValue,
    Outcome,
    Relation,
    Scenario,
    TheoremId,
    Verdict,
)
from .oscillation import DISTINCT_BUDGET, OscillationResult, check_oscillation

logger = logging.getLogger(__name__)

WITNESS_NOTE = (
    "the solution is a single witness: a pass supports the theorem's claim for "
    "this equation, it does not prove it"
)

DOMINANT_ZERO = {TheoremId.T1, TheoremId.T2, TheoremId.T3, TheoremId.T4, TheoremId.T5}

CONCLUSIONS: dict[TheoremId, tuple[str, ...]] = {
    TheoremId.T1: (
        "mu22_lower",
        "mu22_upper",
        "mu22_equals_mu_log",
        "sigma22_equals_sigma_log",
        "oscillation",
        "oscillation_distinct",
    ),
    TheoremId.T3: ("mu22_lower", "mu22_at_least_mu_log"),
    TheoremId.T5: ("mu_log_above_one", "mu22_at_least_mu_log"),
    TheoremId.T6: (
        "mu22_below_mu_log",
        "mu_log_below_mu_log_f",
        "mu_log_minus_one_below_mu_log_f",
    ),
    TheoremId.T7: ("mu_log_minus_one_below_mu_log_f", "mu_log_below_mu_log_f"),
    TheoremId.L5: ("mu22_below_alpha",),
    TheoremId.L6: ("sigma22_below_beta",),
    TheoremId.L16: ("oscillation", "oscillation_distinct"),
}
CONCLUSIONS[TheoremId.T2] = CONCLUSIONS[TheoremId.T1]
CONCLUSIONS[TheoremId.T4] = CONCLUSIONS[TheoremId.T3]

# conclusions the theorems state only when mu_log(A_s) > 1
CONDITIONAL = {
    "mu22_equals_mu_log",
    "sigma22_equals_sigma_log",
    "oscillation",
    "oscillation_distinct",
    "mu22_at_least_mu_log",
    "mu22_below_mu_log",
    "mu_log_below_mu_log_f",
}


def _status(margin: float, marginal: float) -> CheckStatus:
    if margin < 0:
        return CheckStatus.FAIL
    if margin < marginal:
        return CheckStatus.MARGINAL
    return CheckStatus.PASS


class _Session:
    """Measurements and checks of one scenario run."""

    def __init__(
        self,
        scenario: Scenario,
        cfg: QuadratureConfig,
        workers: int,
        distinct_budget: int,
    ) -> None:
        self.scenario = scenario
        self.cfg = cfg
        self.workers = workers
        self.distinct_budget = distinct_budget
        self.tol = scenario.tolerances
        self.tables: dict[str, GrowthTable] = {}
        self.measured: dict[str, MeasuredValue] = {}
        self.notes: list[str] = []
        self.grid = scenario.grid.to_grid()
        self.solution_grid = scenario.solution_grid_spec.to_grid()
        self.oscillation_grid = scenario.oscillation_grid_spec.to_grid()
        self.ode = self._equation()
        self.s = self._dominant()
        self.others = [j for j in range(self.ode.k) if j != self.s]
        self._solution: PuncturedFunction | None = None
        self._phi: PuncturedFunction | None = None
        self.shifted: PuncturedFunction | None = None
        self.oscillation: OscillationResult | None = None

    # ── Inputs ───────────────────────────────────────────────────────────

    def _equation(self) -> OdeSpec:
        try:
            return ode_from_spec(self.scenario.equation)
        except SchemaError:
            raise
        except GrowthLabError as exc:
            message = f"scenario '{self.scenario.id}': equation could not be built: {exc}"
            raise SolutionUnavailable(message) from exc

    def _dominant(self) -> int:
        theorem = self.scenario.theorem
        if theorem in DOMINANT_ZERO:
            if self.ode.s not in (None, 0):
                message = f"{theorem.value} takes A0 as dominant coefficient, equation names s={self.ode.s}"
                raise SchemaError(message)
            return 0
        if theorem in (TheoremId.T6, TheoremId.T7) and self.ode.s is None:
            message = f"{theorem.value} scenario '{self.scenario.id}' must name the dominant index s"
            raise SchemaError(message)
        return self.ode.s if self.ode.s is not None else 0

    def coefficient(self, j: int) -> PuncturedFunction:
        return self.ode.coefficients[j]

    def phi(self) -> PuncturedFunction | None:
        if self.scenario.phi is None:
            return None
        if self._phi is None:
            # phi lives on the equation's punctured sphere
            document = {"name": "phi", **self.scenario.phi, "z0": [self.ode.z0.real, self.ode.z0.imag]}
            self._phi = parse_function_spec(document)
        return self._phi

    def solution(self) -> PuncturedFunction:
        if self._solution is not None:
            return self._solution
        if self.ode.solution is not None:
            self._solution = self.ode.solution
            return self._solution
        try:
            solved = solve_series(self.ode)
        except (RecurrenceBreakdown, ResidualTooLarge) as exc:
            message = f"scenario '{self.scenario.id}': no series solution: {exc}"
            raise SolutionUnavailable(message) from exc
        self.solution_grid.require_reach(solved)
        self._solution = solved
        return self._solution

    # ── Measuring ────────────────────────────────────────────────────────

    @contextmanager
    def measuring(self, quantity: str) -> Iterator[None]:
        try:
            yield
        except (MeasurementFailure, SolutionUnavailable, GridError):
            raise
        except GrowthLabError as exc:
            message = f"measuring {quantity}: {type(exc).__name__}: {exc}"
            raise MeasurementFailure(message, quantity) from exc

    def table(self, key: str, f: PuncturedFunction, grid: RadiusGrid) -> GrowthTable:
        if key not in self.tables:
            with self.measuring(f"growth table {key}"):
                self.tables[key] = sample_growth(f, grid, self.cfg, workers=self.workers)
        return self.tables[key]

    def record(self, name: str, estimate: OrderEstimate, recipe: dict[str, Any]) -> float:
        self.measured[name] = MeasuredValue(
            name=name,
            value=estimate.value,
            band=estimate.band,
            recipe=recipe,
            estimate=estimate.to_dict(),
        )
        if estimate.flags:
            self.notes.append(f"{name}: {', '.join(estimate.flags)}")
        logger.debug("%s = %.4f [%.4f, %.4f]", name, estimate.value, *estimate.band)
        return estimate.value

    def derived(self, name: str, value: float, band: tuple[float, float] | None = None) -> float:
        self.measured[name] = MeasuredValue(name=name, value=value, band=band or (value, value))
        return value

    def order(
        self,
        name: str,
        key: str,
        f: PuncturedFunction,
        grid: RadiusGrid,
        p: int,
        q: int,
        flavor: Flavor,
        source: Source = Source.T,
    ) -> float:
        if name in self.measured:
            return self.measured[name].value
        with self.measuring(name):
            estimate = estimate_order(self.table(key, f, grid), p, q, flavor, source)
        recipe = {
            "functional": "order", "table": key, "p": p, "q": q,
            "flavor": flavor.value, "source": source.value,
        }
        return self.record(name, estimate, recipe)

    def mu_log(self, j: int) -> float:
        return self.order(f"mu_log(A{j})", f"A{j}", self.coefficient(j), self.grid, 1, 2, Flavor.LOWER)

    def sigma_log(self, j: int) -> float:
        return self.order(f"sigma_log(A{j})", f"A{j}", self.coefficient(j), self.grid, 1, 2, Flavor.UPPER)

    def sigma22_coefficient(self, j: int) -> float:
        return self.order(f"sigma22(A{j})", f"A{j}", self.coefficient(j), self.grid, 2, 2, Flavor.UPPER)

    def type_(self, name: str, j: int, order: float, flavor: Flavor) -> float:
        if name in self.measured:
            return self.measured[name].value
        key = f"A{j}"
        with self.measuring(name):
            estimate = estimate_type(self.table(key, self.coefficient(j), self.grid), order, flavor, Source.T)
        recipe = {"functional": "type", "table": key, "order": order, "flavor": flavor.value, "source": "T"}
        return self.record(name, estimate, recipe)

    def delta(self, j: int) -> float:
        name = f"delta(A{j})"
        key = f"A{j}"
        with self.measuring(name):
            estimate = estimate_delta(self.table(key, self.coefficient(j), self.grid))
        return self.record(name, estimate, {"functional": "delta", "table": key})

    def m_ratio(self) -> float:
        name = "m_ratio"
        keys = [f"A{j}" for j in self.others]
        with self.measuring(name):
            numerators = [self.table(f"A{j}", self.coefficient(j), self.grid) for j in self.others]
            denominator = self.table(f"A{self.s}", self.coefficient(self.s), self.grid)
            estimate = estimate_proximity_ratio(numerators, denominator)
        recipe = {"functional": "ratio", "numerators": keys, "denominator": f"A{self.s}"}
        return self.record(name, estimate, recipe)

    def lambda_log_reciprocal(self, j: int) -> float:
        # zeros of 1/A_j are the poles of A_j
        return self.order(
            f"lambda_log(1/A{j})", f"A{j}", self.coefficient(j), self.grid, 1, 2, Flavor.UPPER, Source.N
        )

    def mu22_f(self) -> float:
        return self.order("mu22(f)", "f", self.solution(), self.solution_grid, 2, 2, Flavor.LOWER)

    def sigma22_f(self) -> float:
        return self.order("sigma22(f)", "f", self.solution(), self.solution_grid, 2, 2, Flavor.UPPER)

    def mu_log_f(self) -> float:
        return self.order("mu_log(f)", "f", self.solution(), self.solution_grid, 1, 2, Flavor.LOWER)

    # ── Checks ───────────────────────────────────────────────────────────

    def compare(
        self,
        name: str,
        role: CheckRole,
        predicate: str,
        relation: Relation,
        lhs: float,
        rhs: float,
        *,
        tol: float | None = None,
    ) -> Check:
        """Evaluate ``lhs relation rhs``; a positive margin means the check holds.

        Strict hypotheses must clear ``strict_margin``; everything else gets
        its tolerance on the favorable side.
        """
        slack = self.tol.equality if tol is None else tol
        if relation is Relation.EQ:
            margin = slack - abs(lhs - rhs)
        elif relation is Relation.LT and role is CheckRole.HYPOTHESIS:
            margin = rhs - lhs - self.tol.strict_margin
        else:
            margin = rhs + slack - lhs
        return Check(
            name=name,
            role=role,
            predicate=predicate,
            relation=relation,
            lhs=lhs,
            rhs=rhs,
            margin=margin,
            status=_status(margin, self.tol.marginal),
        )

    def skipped(self, name: str, role: CheckRole, predicate: str, relation: Relation, note: str) -> Check:
        return Check(
            name=name, role=role, predicate=predicate, relation=relation,
            status=CheckStatus.NOT_EVALUATED, note=note,
        )


# ── Hypotheses ───────────────────────────────────────────────────────────


def _dominance(session: _Session) -> Check:
    s = session.s
    lhs = max(session.sigma_log(j) for j in session.others)
    session.derived(f"max sigma_log(A_j), j != {s}", lhs)
    return session.compare(
        "dominance",
        CheckRole.HYPOTHESIS,
        f"max sigma_log(A_j), j != {s} <= mu_log(A{s})",
        Relation.LE,
        lhs,
        session.mu_log(s),
    )


def _type_sum(session: _Session, *, with_delta: bool, needs_order_one: bool) -> Check:
    s = session.s
    mu = session.mu_log(s)
    tol = session.tol
    factor = "delta * " if with_delta else ""
    predicate = f"sum tau_log(A_j) over sigma_log(A_j) = mu_log(A{s}) < {factor}lower_tau_log(A{s})"
    same_order = [
        j
        for j in session.others
        if abs(session.sigma_log(j) - mu) <= tol.same_order and session.sigma_log(j) >= TYPE_CLAMP_FLOOR
    ]
    if needs_order_one and mu < TYPE_CLAMP_FLOOR:
        same_order = []
    if not same_order:
        session.derived("tau_sum", 0.0)
        return Check(
            name="tau_sum",
            role=CheckRole.HYPOTHESIS,
            predicate=predicate,
            relation=Relation.LT,
            lhs=0.0,
            status=CheckStatus.PASS,
            note=f"no coefficient shares the order of A{s}; the sum is empty",
        )
    total = 0.0
    for j in same_order:
        total += session.type_(f"tau_log(A{j})", j, session.sigma_log(j), Flavor.UPPER)
    session.derived("tau_sum", total)
    bound = session.type_(f"lower_tau_log(A{s})", s, mu, Flavor.LOWER)
    if with_delta:
        bound *= session.measured[f"delta(A{s})"].value
        session.derived(f"delta * lower_tau_log(A{s})", bound)
    return session.compare("tau_sum", CheckRole.HYPOTHESIS, predicate, Relation.LT, total, bound)


def _m_ratio(session: _Session) -> Check:
    s = session.s
    return session.compare(
        "m_ratio",
        CheckRole.HYPOTHESIS,
        f"limsup sum m(A_j), j != {s} / m(A{s}) < 1",
        Relation.LT,
        session.m_ratio(),
        1.0,
    )


def _delta(session: _Session) -> Check:
    s = session.s
    return session.compare(
        "delta", CheckRole.HYPOTHESIS, f"liminf m(A{s}) / T(A{s}) > 0", Relation.LT, 0.0, session.delta(s)
    )


def _lambda_gap(session: _Session) -> Check:
    s = session.s
    lhs = session.lambda_log_reciprocal(s) + 1.0
    return session.compare(
        "lambda_gap",
        CheckRole.HYPOTHESIS,
        f"lambda_log(1/A{s}) + 1 < mu_log(A{s})",
        Relation.LT,
        lhs,
        session.mu_log(s),
    )


def _phi_order(session: _Session) -> Check | None:
    phi = session.phi()
    if phi is None:
        return None
    value = session.order("sigma22(phi)", "phi", phi, session.grid, 2, 2, Flavor.UPPER)
    return session.compare(
        "phi_order",
        CheckRole.HYPOTHESIS,
        "sigma22(phi) < mu_log(A0)",
        Relation.LT,
        value,
        session.mu_log(0),
    )


def _alpha(session: _Session) -> float:
    s = session.s
    parts = [session.mu_log(s), *(session.sigma_log(j) for j in session.others)]
    return session.derived("alpha", max(parts))


def _beta(session: _Session) -> float:
    return session.derived("beta", max(session.sigma_log(j) for j in range(session.ode.k)))


def _forcing_dominated(session: _Session) -> Check:
    phi = session.phi()
    assert phi is not None
    try:
        shifted, g = shift_solution(session.ode, session.solution(), phi)
    except (SchemaError, SolutionUnavailable):
        raise
    except GrowthLabError as exc:
        message = f"scenario '{session.scenario.id}': shifting by phi failed: {exc}"
        raise SolutionUnavailable(message) from exc
    session.shifted = g
    assert shifted.forcing is not None
    parts = [session.order("sigma22(F)", "F", shifted.forcing, session.grid, 2, 2, Flavor.UPPER)]
    parts.extend(session.sigma22_coefficient(j) for j in range(session.ode.k))
    lhs = session.derived("max sigma22(F, A_j)", max(parts))
    rhs = session.order("sigma22(g)", "g", g, session.solution_grid, 2, 2, Flavor.UPPER)
    return session.compare(
        "forcing_dominated",
        CheckRole.HYPOTHESIS,
        "max(sigma22(F), sigma22(A_j)) < sigma22(g)",
        Relation.LT,
        lhs,
        rhs,
    )


def _hypotheses(session: _Session) -> list[Check]:
    theorem = session.scenario.theorem
    alternative = session.scenario.alternative
    checks: list[Check | None] = []
    if theorem in (TheoremId.T1, TheoremId.T5, TheoremId.T6):
        checks.append(_dominance(session))
        if theorem is TheoremId.T5:
            checks.append(_lambda_gap(session))
        if theorem is TheoremId.T6 and alternative is Alternative.M_RATIO:
            checks.append(_m_ratio(session))
        else:
            checks.append(_type_sum(session, with_delta=False, needs_order_one=theorem is not TheoremId.T5))
    elif theorem is TheoremId.T2:
        checks.extend([_dominance(session), _m_ratio(session)])
    elif theorem in (TheoremId.T3, TheoremId.T7):
        if theorem is TheoremId.T7 and alternative is Alternative.LAMBDA_GAP:
            checks.append(_lambda_gap(session))
            checks.append(_dominance(session))
            checks.append(_type_sum(session, with_delta=False, needs_order_one=True))
        elif theorem is TheoremId.T7 and alternative is Alternative.M_RATIO:
            checks.append(_delta(session))
            checks.append(_m_ratio(session))
        else:
            checks.append(_delta(session))
            checks.append(_dominance(session))
            checks.append(_type_sum(session, with_delta=True, needs_order_one=True))
    elif theorem is TheoremId.T4:
        checks.extend([_delta(session), _m_ratio(session)])
    elif theorem is TheoremId.L5:
        checks.append(
            session.compare(
                "alpha_floor", CheckRole.HYPOTHESIS, "1 <= alpha", Relation.LE, 1.0, _alpha(session)
            )
        )
    elif theorem is TheoremId.L16:
        checks.append(_forcing_dominated(session))
    if theorem in (TheoremId.T1, TheoremId.T2):
        checks.append(_phi_order(session))
    return [c for c in checks if c is not None]


# ── Conclusions ──────────────────────────────────────────────────────────


def _oscillation(session: _Session, name: str) -> Check:
    tol = session.tol.oscillation
    theorem = session.scenario.theorem
    if theorem is TheoremId.L16:
        assert session.shifted is not None
        target, phi, label = session.shifted, None, "g"
    else:
        target, phi, label = session.solution(), session.phi(), "f"
    session.oscillation_grid.require_reach(session.solution())
    key = f"{label}@oscillation"
    if session.oscillation is None:
        with session.measuring("oscillation"):
            result = check_oscillation(
                target, phi, session.oscillation_grid, session.cfg,
                distinct_budget=session.distinct_budget, workers=session.workers,
            )
        session.oscillation = result
        counted = f"{label}-phi@zeros" if phi is not None else key
        session.tables[counted] = result.table
        recipe = {
            "functional": "order", "table": counted, "p": 2, "q": 2, "flavor": "upper", "source": "Nz",
        }
        session.record(f"lambda22({result.g.name})", result.lambda_, recipe)
        if result.lambda_bar is not None and result.distinct_table is not None:
            distinct_key = f"{counted}-distinct"
            session.tables[distinct_key] = result.distinct_table
            session.record(f"lambda_bar22({result.g.name})", result.lambda_bar, {**recipe, "table": distinct_key})
        session.derived(f"zeros({result.g.name})", float(result.zeros))
    result = session.oscillation
    # without phi the counted table is g's own growth table
    sigma = session.order(
        f"sigma22({label})@oscillation", key, target, session.oscillation_grid, 2, 2, Flavor.UPPER
    )
    if name == "oscillation":
        return session.compare(
            name, CheckRole.CONCLUSION, f"lambda22({result.g.name}) == sigma22({label})",
            Relation.EQ, result.lambda_.value, sigma, tol=tol,
        )
    predicate = f"lambda_bar22({result.g.name}) == sigma22({label})"
    if result.lambda_bar is None:
        return session.skipped(
            name, CheckRole.CONCLUSION, predicate, Relation.EQ,
            f"{result.zeros} zeros exceed the distinct-count budget of {session.distinct_budget}",
        )
    return session.compare(
        name, CheckRole.CONCLUSION, predicate, Relation.EQ, result.lambda_bar.value, sigma, tol=tol
    )


def _conclusion(session: _Session, name: str) -> Check:
    s = session.s
    role = CheckRole.CONCLUSION
    compare = session.compare
    if name.startswith("oscillation"):
        return _oscillation(session, name)
    rules: dict[str, Callable[[], Check]] = {
        "mu22_lower": lambda: compare(
            name, role, f"mu_log(A{s}) - 1 <= mu22(f)", Relation.LE, session.mu_log(s) - 1.0, session.mu22_f()
        ),
        "mu22_upper": lambda: compare(
            name, role, f"mu22(f) <= mu_log(A{s})", Relation.LE, session.mu22_f(), session.mu_log(s)
        ),
        "mu22_equals_mu_log": lambda: compare(
            name, role, f"mu22(f) == mu_log(A{s})", Relation.EQ, session.mu22_f(), session.mu_log(s)
        ),
        "sigma22_equals_sigma_log": lambda: compare(
            name, role, f"sigma22(f) == sigma_log(A{s})", Relation.EQ, session.sigma22_f(), session.sigma_log(s)
        ),
        "mu22_at_least_mu_log": lambda: compare(
            name, role, f"mu_log(A{s}) <= mu22(f)", Relation.LE, session.mu_log(s), session.mu22_f()
        ),
        "mu_log_above_one": lambda: compare(
            name, role, f"1 < mu_log(A{s})", Relation.LT, 1.0, session.mu_log(s)
        ),
        "mu22_below_mu_log": lambda: compare(
            name, role, f"mu22(f) <= mu_log(A{s})", Relation.LE, session.mu22_f(), session.mu_log(s)
        ),
        "mu_log_below_mu_log_f": lambda: compare(
            name, role, f"mu_log(A{s}) <= mu_log(f)", Relation.LE, session.mu_log(s), session.mu_log_f()
        ),
        "mu_log_minus_one_below_mu_log_f": lambda: compare(
            name, role, f"mu_log(A{s}) - 1 <= mu_log(f)", Relation.LE, session.mu_log(s) - 1.0, session.mu_log_f()
        ),
        "mu22_below_alpha": lambda: compare(
            name, role, "mu22(f) <= alpha", Relation.LE, session.mu22_f(), _alpha(session)
        ),
        "sigma22_below_beta": lambda: compare(
            name, role, "sigma22(f) <= beta", Relation.LE, session.sigma22_f(), _beta(session)
        ),
    }
    return rules[name]()


def _conditional_holds(session: _Session) -> bool:
    if session.scenario.theorem in (TheoremId.L5, TheoremId.L6, TheoremId.L16):
        return True
    return session.mu_log(session.s) > 1.0


def _check_expected(scenario: Scenario) -> None:
    known = CONCLUSIONS[scenario.theorem]
    unknown = [name for name in scenario.expected if name not in known]
    if unknown:
        message = (
            f"scenario '{scenario.id}': {scenario.theorem.value} has no conclusions "
            f"{unknown}; known: {list(known)}"
        )
        raise SchemaError(message)


# ── Entry points ─────────────────────────────────────────────────────────


def run_scenario(
    scenario: Scenario,
    cfg: QuadratureConfig = DEFAULT_QUADRATURE,
    *,
    workers: int = 1,
    distinct_budget: int = DISTINCT_BUDGET,
) -> Verdict:
    """Measure and check one scenario.

    Raises:
        SchemaError: the scenario names unknown conclusions or a malformed equation.
        GridError: a grid reaches past the series solution's residual radius.
        SolutionUnavailable: the equation could not be built or solved.
        MeasurementFailure: an estimator failed; ``quantity`` names it.
    """
    _check_expected(scenario)
    tracer = get_tracer(__name__)
    with tracer.start_as_current_span("scenario.run") as span:
        add_span_attributes(span, {"scenario.id": scenario.id, "scenario.theorem": scenario.theorem.value})
        session = _Session(scenario, cfg, workers, distinct_budget)
        hypotheses = _hypotheses(session)
        outcome_notes: list[str] = []

        if not all(c.status.ok for c in hypotheses):
            outcome = Outcome.HYPOTHESIS_NOT_MET
            failed = next(c for c in hypotheses if not c.status.ok)
            outcome_notes.append(f"hypothesis '{failed.name}' not met; conclusions not evaluated")
            conclusions = [
                session.skipped(name, CheckRole.CONCLUSION, name, Relation.LE, "hypotheses not met")
                for name in scenario.expected
            ]
        else:
            conditional = _conditional_holds(session)
            conclusions = []
            for name in scenario.expected:
                if name in CONDITIONAL and not conditional:
                    conclusions.append(
                        session.skipped(
                            name, CheckRole.CONCLUSION, name, Relation.LE,
                            f"stated only for mu_log(A{session.s}) > 1",
                        )
                    )
                    continue
                conclusions.append(_conclusion(session, name))
            failed_any = any(c.status is CheckStatus.FAIL for c in conclusions)
            outcome = Outcome.FAIL if failed_any else Outcome.PASS

        verdict = Verdict(
            scenario_id=scenario.id,
            theorem=scenario.theorem,
            outcome=outcome,
            expected_outcome=scenario.expected_outcome,
            measured=session.measured,
            hypotheses=hypotheses,
            conclusions=conclusions,
            tables={key: table.to_csv() for key, table in sorted(session.tables.items())},
            notes=[WITNESS_NOTE, *session.notes, *outcome_notes],
        )
        add_span_attributes(span, {"scenario.outcome": outcome.value, "scenario.as_expected": verdict.as_expected})
    logger.info("scenario %s (%s): %s", scenario.id, scenario.theorem.value, outcome.value)
    return verdict


def run_scenarios(
    scenarios: Sequence[Scenario],
    cfg: QuadratureConfig = DEFAULT_QUADRATURE,
    *,
    workers: int = 1,
    parallel: int = 1,
    distinct_budget: int = DISTINCT_BUDGET,
) -> list[Verdict]:
    """Run scenarios independently; verdicts come back in input order."""
    if parallel <= 1:
        return [run_scenario(sc, cfg, workers=workers, distinct_budget=distinct_budget) for sc in scenarios]
    verdicts: list[Verdict | None] = [None] * len(scenarios)
    with ThreadPoolExecutor(max_workers=parallel) as pool:
        future_map = {
            pool.submit(run_scenario, sc, cfg, workers=workers, distinct_budget=distinct_budget): i
            for i, sc in enumerate(scenarios)
        }
        for future in as_completed(future_map):
            verdicts[future_map[future]] = future.result()
    return [v for v in verdicts if v is not None]
