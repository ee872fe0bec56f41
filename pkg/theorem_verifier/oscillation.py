"""Exponents of convergence of the phi-points of a solution."""

from __future__ import annotations

import logging
from dataclasses import dataclass

from growth_estimators import (
    Flavor,
    GrowthTable,
    OrderEstimate,
    RadiusGrid,
    Source,
    estimate_order,
    sample_growth,
)
from nevanlinna_core import DEFAULT_QUADRATURE, NonIntegerWinding, QuadratureConfig, ZeroOnContour
from nevanlinna_core.zeros import zeros_inside
from punctured_functions import PuncturedFunction, subtract

logger = logging.getLogger(__name__)

DISTINCT_BUDGET = 256


@dataclass(frozen=True, eq=False)
class OscillationResult:
    """``lambda_[2,2]`` and, when affordable, ``lambda-bar_[2,2]`` of ``g = f - phi``.

    Attributes:
        g: the shifted function whose zeros are counted.
        lambda_: estimate from the multiplicity-counted zeros.
        lambda_bar: estimate from distinct zeros, None past the budget.
        table: growth table of g with its zero counting column.
        distinct_table: the same with distinct counts, if computed.
        zeros: zeros of g inside the smallest grid circle.
    """

    g: PuncturedFunction
    lambda_: OrderEstimate
    lambda_bar: OrderEstimate | None
    table: GrowthTable
    distinct_table: GrowthTable | None
    zeros: int


def check_oscillation(
    f: PuncturedFunction,
    phi: PuncturedFunction | None,
    grid: RadiusGrid,
    cfg: QuadratureConfig = DEFAULT_QUADRATURE,
    *,
    distinct_budget: int = DISTINCT_BUDGET,
    workers: int = 1,
) -> OscillationResult:
    """Count the zeros of ``g = f - phi`` on nested annuli and estimate their exponents.

    Distinct counts split annuli into sectors until each holds one zero, which
    is only affordable for a few hundred zeros; past ``distinct_budget`` the
    distinct exponent is left undetermined.
    """
    g = f if phi is None else subtract(f, phi)
    innermost = grid.circle_radius(g, grid.points - 1)
    try:
        total = zeros_inside(g, g.omega_modulus(innermost))
    except (ZeroOnContour, NonIntegerWinding) as exc:
        logger.info("zeros of '%s' inside the grid not counted: %s", g.name, exc)
        total = distinct_budget + 1
    table = sample_growth(g, grid, cfg, zeros=True, workers=workers)
    lambda_ = estimate_order(table, 2, 2, Flavor.UPPER, Source.NZ)

    distinct_table = None
    lambda_bar = None
    if total <= distinct_budget:
        distinct_table = sample_growth(g, grid, cfg, distinct=True, workers=workers)
        lambda_bar = estimate_order(distinct_table, 2, 2, Flavor.UPPER, Source.NZ)
    else:
        logger.info(
            "'%s' has %d zeros inside the grid; distinct exponent not resolved (budget %d)",
            g.name,
            total,
            distinct_budget,
        )
    return OscillationResult(g, lambda_, lambda_bar, table, distinct_table, total)
