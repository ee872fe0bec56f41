"""Manufactured equations: pick a solution, solve (1.2) for one coefficient.

``A_s = -(f^(k) + sum_{j != s} A_j f^(j)) / f^(s)``. When f is given as
``exp(h)`` the logarithmic derivatives ``R_j = f^(j)/f`` are built directly
(``R_1 = h'``, ``R_{j+1} = R_j' + R_j R_1``) so that f itself never appears in
a denominator and ``A_0`` stays entire.
"""

from __future__ import annotations

import logging
import math
from collections.abc import Mapping

import numpy as np

from punctured_functions import (
    ConsistencyError,
    DivisorDegenerate,
    FunctionKind,
    PuncturedFunction,
    SchemaError,
    SeriesOutOfRange,
    UnsupportedNode,
    ZeroPoleLedger,
    differentiate,
)
from punctured_functions.expression import (
    ONE,
    Const,
    Exp,
    Node,
    Omega,
    add,
    div,
    evaluate,
    is_one,
    is_zero,
    mul,
    neg,
    power,
    z_derivative,
)
from punctured_functions.ledger import LedgerEntry
from punctured_functions.log_complex import log_sum

from .errors import ResidualTooLarge
from .taylor import series_of

logger = logging.getLogger(__name__)

RESIDUAL_POINTS = 32
RESIDUAL_RADIUS = 2.0
RESIDUAL_LOG_TOL = math.log(1e-6)


def log_derivative_trees(h: Node, k: int) -> list[Node]:
    """``[R_0 .. R_k]`` with ``R_j = (exp h)^(j) / exp h`` in z-derivatives."""
    first = z_derivative(h)
    trees = [ONE, first]
    for _ in range(1, k):
        previous = trees[-1]
        trees.append(add(z_derivative(previous), mul(previous, first)))
    return trees[: k + 1]


def _check_inputs(f: PuncturedFunction, others: Mapping[int, PuncturedFunction], s: int, k: int) -> None:
    if k < 1 or not 0 <= s < k:
        message = f"need 0 <= s < k, got s={s}, k={k}"
        raise SchemaError(message)
    expected = set(range(k)) - {s}
    if set(others) != expected:
        message = f"coefficients {sorted(expected)} are required, got {sorted(others)}"
        raise SchemaError(message)
    for j, coefficient in others.items():
        if coefficient.z0 != f.z0:
            message = f"A_{j} lives at z0={coefficient.z0}, the solution at {f.z0}"
            raise SchemaError(message)


def _sample_radius(trees: list[Node]) -> float:
    radius = RESIDUAL_RADIUS
    for tree in trees:
        for leaf in tree.leaves():
            radius = min(radius, 0.5 * leaf.series.residual_radius)
    return radius


def equation_residual(
    f: PuncturedFunction,
    coefficients: Mapping[int, PuncturedFunction],
    k: int,
    *,
    points: int = RESIDUAL_POINTS,
) -> float:
    """Worst ``|f^(k) + sum A_j f^(j)|`` relative to its largest term.

    Evaluated at ``points`` pseudo-random omega on a circle inside every
    series' residual radius; returns the log of the worst ratio.
    """
    derivatives = [differentiate(f, j).tree for j in range(k + 1)]
    trees = [*derivatives, *(c.tree for c in coefficients.values())]
    radius = _sample_radius(trees)
    rng = np.random.default_rng(0)
    omega = radius * np.exp(2j * np.pi * rng.random(points))
    top_l, top_t = evaluate(derivatives[k], omega)
    parts_l = [top_l]
    parts_t = [top_t]
    for j, coefficient in coefficients.items():
        a_l, a_t = evaluate(coefficient.tree, omega)
        d_l, d_t = evaluate(derivatives[j], omega)
        with np.errstate(invalid="ignore"):
            parts_l.append(np.where(np.isneginf(a_l) | np.isneginf(d_l), -np.inf, a_l + d_l))
        parts_t.append(a_t + d_t)
    stack_l = np.stack(parts_l)
    stack_t = np.stack(parts_t)
    residual_l, _ = log_sum(stack_l, stack_t, axis=0)
    scale = np.max(stack_l, axis=0)
    valid = np.isfinite(scale)
    if not np.any(valid):
        return -math.inf
    return float(np.max(residual_l[valid] - scale[valid]))


def manufacture_coefficient(
    f: PuncturedFunction,
    others: Mapping[int, PuncturedFunction],
    s: int,
    k: int,
    *,
    name: str | None = None,
    terms: int | None = None,
) -> PuncturedFunction:
    """Return ``A_s`` making ``f`` an exact solution of the order-k equation.

    Args:
        f: the chosen solution.
        others: ``A_j`` for every ``j != s`` in ``0..k-1``.
        s: slot to manufacture.
        k: equation order.
        name: label of the result (default ``A{s}``).
        terms: when given, a Taylor series of that length is attached if the
            quotient has one at omega = 0.

    Raises:
        SchemaError: wrong slots or mismatched z0.
        DivisorDegenerate: ``f^(s)`` vanishes identically.
        ResidualTooLarge: f fails the manufactured equation at test points.
    """
    _check_inputs(f, others, s, k)
    label = name or f"A{s}"
    if isinstance(f.closed_form, Exp):
        derivatives = log_derivative_trees(f.closed_form.argument, k)
    else:
        derivatives = [differentiate(f, j).tree for j in range(k + 1)]

    numerator = derivatives[k]
    for j, coefficient in sorted(others.items()):
        numerator = add(numerator, mul(coefficient.tree, derivatives[j]))
    divisor_tree = derivatives[s]
    if is_zero(divisor_tree):
        message = f"f^({s}) of '{f.name}' vanishes identically"
        raise DivisorDegenerate(message)

    entire = is_one(divisor_tree)
    tree = neg(numerator) if entire else neg(div(numerator, divisor_tree))
    meromorphic = [c for _, c in sorted(others.items()) if not c.is_analytic]
    analytic = entire and not meromorphic
    divisor = None
    if analytic:
        ledger = ZeroPoleLedger.analytic()
    elif entire and all(c.effective_ledger.pole_complete for c in meromorphic):
        # poles can only come from the other coefficients
        ledger = ZeroPoleLedger(poles=_merged_poles(meromorphic), pole_complete=True)
    else:
        ledger = ZeroPoleLedger(pole_complete=False)
        trees = [_divisor_tree(c) for c in meromorphic]
        if all(t is not None for t in trees):
            divisor_tree_all = ONE if entire else divisor_tree
            for t in trees:
                divisor_tree_all = mul(divisor_tree_all, t)
            divisor = PuncturedFunction(
                z0=f.z0, closed_form=divisor_tree_all, name=f"{label}_divisor", domain=f.domain
            )
        else:
            logger.info("no pole divisor for %s: a coefficient has neither ledger nor divisor", label)

    coefficient = PuncturedFunction(
        z0=f.z0,
        closed_form=tree,
        ledger=ledger,
        kind=FunctionKind.ANALYTIC if analytic else FunctionKind.MEROMORPHIC,
        name=label,
        domain=f.domain,
        pole_divisor=divisor,
    )
    if terms is not None:
        coefficient = _with_series(coefficient, terms)

    slots = {**others, s: coefficient}
    worst = equation_residual(f, slots, k)
    if worst > RESIDUAL_LOG_TOL:
        message = (
            f"'{f.name}' misses its manufactured equation: relative residual "
            f"{math.exp(worst):.3g}"
        )
        raise ResidualTooLarge(message)
    logger.debug("manufactured %s for '%s' (k=%d, %s)", label, f.name, k, coefficient.kind.value)
    return coefficient


def _merged_poles(functions: list[PuncturedFunction]) -> tuple[LedgerEntry, ...]:
    """Union of pole ledgers, keeping the highest multiplicity per location."""
    poles: dict[complex, LedgerEntry] = {}
    for function in functions:
        for pole in function.effective_ledger.poles:
            known = poles.get(pole.location)
            if known is None or known.multiplicity < pole.multiplicity:
                poles[pole.location] = pole
    return tuple(poles.values())


def _divisor_tree(f: PuncturedFunction) -> Node | None:
    """A tree vanishing at every pole of f, or None if f gives no way to build one."""
    if f.pole_divisor is not None:
        return f.pole_divisor.tree
    ledger = f.effective_ledger
    if not ledger.pole_complete:
        return None
    tree: Node = ONE
    for pole in ledger.poles:
        tree = mul(tree, power(add(Omega(), Const(-pole.location)), pole.multiplicity))
    return tree


def _with_series(coefficient: PuncturedFunction, terms: int) -> PuncturedFunction:
    assert coefficient.closed_form is not None
    try:
        series = series_of(coefficient.closed_form, terms)
        return PuncturedFunction(
            z0=coefficient.z0,
            closed_form=coefficient.closed_form,
            series=series,
            ledger=coefficient.ledger,
            kind=coefficient.kind,
            name=coefficient.name,
            domain=coefficient.domain,
            pole_divisor=coefficient.pole_divisor,
        )
    except (DivisorDegenerate, UnsupportedNode, ConsistencyError, SeriesOutOfRange) as exc:
        logger.debug(
            "%s keeps its closed form only; no Taylor expansion at omega = 0 (%s)",
            coefficient.name,
            exc,
        )
        return coefficient
