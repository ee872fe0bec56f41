"""Fill a :class:`GrowthTable` by evaluating the functionals on every radius."""

from __future__ import annotations

import logging
import math
from concurrent.futures import ThreadPoolExecutor, as_completed
from dataclasses import dataclass, field

import numpy as np

from nevanlinna_core import (
    DEFAULT_QUADRATURE,
    QuadratureConfig,
    ZeroCountProfile,
    central_index_at,
    ledger_counting,
    max_modulus,
    proximity,
    zero_counting_profile,
)
from nevanlinna_core.errors import IncompleteLedger
from punctured_functions import GrowthLabError, PuncturedFunction, SeriesOutOfRange

from .errors import TooManyFailures
from .grid import RadiusGrid
from .table import FLAG_SEPARATOR, GrowthTable

logger = logging.getLogger(__name__)

MAX_FAILED_FRACTION = 0.25


@dataclass
class _Row:
    m: float = math.nan
    n: float = math.nan
    t: float = math.nan
    log_m: float = math.nan
    v: float = math.nan
    n_zeros: float = math.nan
    flags: list[str] = field(default_factory=list)


class _PoleCounter:
    """``N(r, f)`` for every grid radius, built once per table."""

    def __init__(self, f: PuncturedFunction, radii: list[float], cfg: QuadratureConfig) -> None:
        self._f = f
        self._profile: ZeroCountProfile | None = None
        self._error: GrowthLabError | None = None
        if f.is_analytic or f.effective_ledger.pole_complete:
            return
        if f.pole_divisor is None:
            message = f"'{f.name}' has an incomplete pole ledger and no pole divisor"
            self._error = IncompleteLedger(message)
            return
        try:
            self._profile = zero_counting_profile(f.pole_divisor, radii, cfg)
        except GrowthLabError as exc:
            logger.warning("pole counts of '%s' unavailable: %s", f.name, exc)
            self._error = exc

    def __call__(self, r: float) -> float:
        if self._error is not None:
            raise self._error
        if self._f.is_analytic:
            return 0.0
        if self._profile is None:
            return ledger_counting(self._f, r)
        return self._profile.counting(r)


def _sample_row(
    f: PuncturedFunction,
    r: float,
    cfg: QuadratureConfig,
    poles: _PoleCounter,
    zeros: ZeroCountProfile | None,
    distinct: bool,
) -> _Row:
    row = _Row()
    try:
        row.m = proximity(f, r, cfg)
        row.n = poles(r)
        row.t = row.m + row.n
        if f.is_analytic:
            row.log_m = max_modulus(f, r)
        if zeros is not None:
            row.n_zeros = zeros.counting(r, distinct=distinct)
    except GrowthLabError as exc:
        logger.debug("row r=%.6g of '%s' failed: %s", r, f.name, exc)
        row.flags.append(type(exc).__name__)
        return row
    if f.series is not None:
        try:
            row.v = float(central_index_at(f, r)[0])
        except SeriesOutOfRange as exc:
            logger.debug("no central index at r=%.6g: %s", r, exc)
    return row


def sample_growth(
    f: PuncturedFunction,
    grid: RadiusGrid,
    cfg: QuadratureConfig = DEFAULT_QUADRATURE,
    *,
    zeros: bool = False,
    distinct: bool = False,
    workers: int = 1,
) -> GrowthTable:
    """Sample every functional that f's kind supports on ``grid``.

    Args:
        f: the function; plane-domain functions are sampled on ``|omega| = 1/r``.
        grid: the radius grid.
        cfg: quadrature settings.
        zeros: also fill ``N_zeros`` from a nested-annulus zero profile.
        distinct: count distinct zeros in ``N_zeros`` (implies ``zeros``).
        workers: thread pool size for the rows; results keep grid order.

    Raises:
        TooManyFailures: more than a quarter of the rows were flagged.
    """
    radii = [grid.circle_radius(f, i) for i in range(grid.points)]
    poles = _PoleCounter(f, radii, cfg)
    profile = None
    if zeros or distinct:
        profile = zero_counting_profile(f, radii, cfg, distinct=distinct)

    rows: list[_Row | None] = [None] * grid.points
    if workers <= 1:
        for i, r in enumerate(radii):
            rows[i] = _sample_row(f, r, cfg, poles, profile, distinct)
    else:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            future_map = {
                pool.submit(_sample_row, f, r, cfg, poles, profile, distinct): i
                for i, r in enumerate(radii)
            }
            for future in as_completed(future_map):
                rows[future_map[future]] = future.result()
    done = [row for row in rows if row is not None]

    failed = sum(1 for row in done if row.flags)
    if failed > MAX_FAILED_FRACTION * grid.points:
        message = f"{failed} of {grid.points} rows of '{f.name}' failed"
        raise TooManyFailures(message)
    if failed:
        logger.info("'%s': %d of %d rows flagged", f.name, failed, grid.points)

    columns = {
        "m": np.array([row.m for row in done]),
        "N": np.array([row.n for row in done]),
        "T": np.array([row.t for row in done]),
        "logM": np.array([row.log_m for row in done]),
        "V": np.array([row.v for row in done]),
        "N_zeros": np.array([row.n_zeros for row in done]),
    }
    flags = [FLAG_SEPARATOR.join(row.flags) for row in done]
    return GrowthTable.from_columns(grid, columns, flags, name=f.name, distinct=distinct)
