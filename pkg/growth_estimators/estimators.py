"""Order, type, delta and proximity-ratio estimates from growth tables.

An upper limit (limsup) or lower limit (liminf) of ``y/x`` is approximated
two ways on the tail of the grid:

- ratio: the max (upper) or min (lower) of ``y_k / x_k``;
- slope: least squares on the vertices of the upper and lower convex hulls of
  ``(x_k, y_k)``. Additive constants in ``y`` drop out of the slope, which is
  why it is the reported value.

Iterated logarithms follow the usual conventions: ``log_1^+ x = log^+ x``,
``log_{p+1}^+ x = log^+ log_p^+ x``; on the radius axis ``log_1(1/r) =
log(1/r)`` and ``log_2(1/r) = log log(1/r) = u``.
"""

from __future__ import annotations

import logging
import math
from collections.abc import Callable, Sequence
from dataclasses import asdict, dataclass, field
from enum import Enum
from typing import Any

import numpy as np

from punctured_functions.log_complex import FloatArray

from .errors import GridError, InsufficientData, OrderOutOfRange
from .table import GrowthTable

logger = logging.getLogger(__name__)

MIN_ROWS = 12
MIN_TAIL = 3
DEFAULT_WINDOW = 0.4
SENSITIVITY_WINDOWS = (0.3, 0.4, 0.5)
TYPE_CLAMP_FLOOR = 0.9
NEGATIVE_GROWTH = "negative-growth"
ORDER_CLAMPED = "order-clamped"


class Source(str, Enum):
    """Column an estimate is read from."""

    T = "T"
    M = "M"
    V = "V"
    NZ = "Nz"
    N = "N"

    @property
    def column(self) -> str:
        return {"T": "T", "M": "logM", "V": "V", "Nz": "N_zeros", "N": "N"}[self.value]


class Flavor(str, Enum):
    UPPER = "upper"
    LOWER = "lower"


class Functional(str, Enum):
    ORDER = "order"
    TYPE = "type"
    DELTA = "delta"
    RATIO = "ratio"


@dataclass(frozen=True)
class OrderEstimate:
    """An estimated growth exponent (or type, delta, ratio) with its band.

    Attributes:
        value: the reported estimate (slope method for order, tail ratio for type).
        flavor: upper limit or lower limit.
        method: ``slope`` or ``ratio``.
        band: ``(lo, hi)`` spanning value, ratio and window sensitivity
            (the last two tail windows for type).
        window: tail fraction used for ``value``.
        ratio: the raw-ratio estimate over the same tail.
        slope_upper / slope_lower: slopes of the two hull fits.
        sensitivity: value per tail fraction.
        flags: e.g. ``negative-growth``, ``order-clamped``.
        p, q: iterated-log depths (order only).
        source: the column the estimate was read from.
        functional: what was estimated.
        rows_used: tail rows behind ``value``.
        failed_rows: flagged rows of the table.
    """

    value: float
    flavor: Flavor
    method: str
    band: tuple[float, float]
    window: float
    ratio: float
    slope_upper: float = math.nan
    slope_lower: float = math.nan
    sensitivity: dict[float, float] = field(default_factory=dict)
    flags: tuple[str, ...] = ()
    p: int | None = None
    q: int | None = None
    source: Source | None = None
    functional: Functional = Functional.ORDER
    rows_used: int = 0
    failed_rows: int = 0

    @property
    def width(self) -> float:
        return self.band[1] - self.band[0]

    def to_dict(self) -> dict[str, Any]:
        data = asdict(self)
        data["flavor"] = self.flavor.value
        data["functional"] = self.functional.value
        data["source"] = self.source.value if self.source is not None else None
        data["band"] = list(self.band)
        data["flags"] = list(self.flags)
        data["sensitivity"] = {str(k): v for k, v in self.sensitivity.items()}
        return data


# ── Helpers ──────────────────────────────────────────────────────────────


def iterated_log_plus(values: FloatArray, depth: int) -> FloatArray:
    """``log_depth^+`` elementwise; ``depth = 0`` is the identity."""
    out = np.asarray(values, dtype=np.float64)
    for _ in range(depth):
        with np.errstate(divide="ignore", invalid="ignore"):
            logged = np.where(out > 1.0, np.log(np.maximum(out, 1.0)), 0.0)
            out = np.where(np.isnan(out), np.nan, logged)
    return out


def radius_axis(u: FloatArray, q: int) -> FloatArray:
    """``log_q(1/r)`` from ``u = log log(1/r)``; NaN where undefined."""
    if q < 1:
        message = f"q must be >= 1, got {q}"
        raise ValueError(message)
    if q == 1:
        return np.exp(u)
    x = np.asarray(u, dtype=np.float64)
    for _ in range(q - 2):
        with np.errstate(divide="ignore", invalid="ignore"):
            x = np.where(x > 0, np.log(np.where(x > 0, x, 1.0)), np.nan)
    return x


def _hull(x: FloatArray, y: FloatArray, upper: bool) -> tuple[FloatArray, FloatArray]:
    """Vertices of the upper (or lower) convex hull, x ascending."""
    sign = 1.0 if upper else -1.0
    keep: list[int] = []
    for i in range(x.size):
        while len(keep) >= 2:
            a, b = keep[-2], keep[-1]
            cross = (x[b] - x[a]) * (y[i] - y[a]) - (y[b] - y[a]) * (x[i] - x[a])
            if sign * cross >= 0:
                keep.pop()
            else:
                break
        keep.append(i)
    return x[keep], y[keep]


def envelope_slopes(x: FloatArray, y: FloatArray) -> tuple[float, float]:
    """Least-squares slopes through the upper and lower hull vertices."""
    order = np.argsort(x, kind="stable")
    xs, ys = x[order], y[order]
    slopes = []
    for upper in (True, False):
        hx, hy = _hull(xs, ys, upper)
        if hx.size < 2 or hx[-1] == hx[0]:
            slopes.append(0.0)
        else:
            slopes.append(float(np.polyfit(hx, hy, 1)[0]))
    return slopes[0], slopes[1]


def _tail(x: FloatArray, y: FloatArray, window: float) -> tuple[FloatArray, FloatArray]:
    size = max(MIN_TAIL, math.ceil(window * x.size))
    return x[-size:], y[-size:]


def _pick(flavor: Flavor, upper: float, lower: float) -> float:
    return max(upper, lower) if flavor is Flavor.UPPER else min(upper, lower)


def _extreme(flavor: Flavor, values: FloatArray) -> float:
    return float(np.max(values)) if flavor is Flavor.UPPER else float(np.min(values))


def _valid_points(
    table: GrowthTable, y: FloatArray, x: FloatArray, what: str
) -> tuple[FloatArray, FloatArray]:
    mask = table.valid & np.isfinite(y) & np.isfinite(x) & (x > 0)
    count = int(np.count_nonzero(mask))
    if count < MIN_ROWS:
        message = (
            f"{what} of '{table.name}' needs {MIN_ROWS} usable rows, got {count} "
            f"({table.failed_rows} flagged)"
        )
        raise InsufficientData(message)
    return x[mask], y[mask]


def _windowed(
    x: FloatArray,
    y: FloatArray,
    window: float,
    statistic: Callable[[FloatArray, FloatArray], float],
) -> dict[float, float]:
    windows = sorted({*SENSITIVITY_WINDOWS, window})
    return {w: statistic(*_tail(x, y, w)) for w in windows}


# ── Order ────────────────────────────────────────────────────────────────


def estimate_order(
    table: GrowthTable,
    p: int,
    q: int,
    flavor: Flavor | str = Flavor.UPPER,
    source: Source | str = Source.T,
    *,
    window: float = DEFAULT_WINDOW,
) -> OrderEstimate:
    """The ``[p, q]``-order (upper) or lower order of a table column.

    ``y = log_p^+`` of the column (``log_{p+1}^+ M`` for source M) against
    ``x = log_q(1/r)``. For ``(p, q) = (1, 2)`` and the counting sources
    (``Nz``, ``N``) one is subtracted, giving the logarithmic exponent of
    convergence.

    Raises:
        InsufficientData: fewer than 12 usable rows.
        ValueError: p or q below 1.
    """
    flavor = Flavor(flavor)
    source = Source(source)
    if p < 1 or q < 1:
        message = f"[p, q]-order needs p, q >= 1, got ({p}, {q})"
        raise ValueError(message)
    raw = table.column(source.column)
    if source is Source.M:
        y_all = iterated_log_plus(np.maximum(raw, 0.0), p)
    else:
        y_all = iterated_log_plus(raw, p)
    x_all = radius_axis(table.u, q)
    x, y = _valid_points(table, y_all, x_all, f"[{p},{q}]-order from {source.value}")
    shift = 1.0 if (p, q) == (1, 2) and source in (Source.NZ, Source.N) else 0.0

    tail_x, tail_y = _tail(x, y, window)
    common = {
        "flavor": flavor,
        "window": window,
        "p": p,
        "q": q,
        "source": source,
        "rows_used": int(tail_x.size),
        "failed_rows": table.failed_rows,
    }
    if not np.any(tail_y > 0):
        logger.info("'%s' %s column not eventually positive; order 0", table.name, source.value)
        return OrderEstimate(
            value=0.0, method="slope", band=(0.0, 0.0), ratio=0.0, slope_upper=0.0,
            slope_lower=0.0, flags=(NEGATIVE_GROWTH,), **common,
        )

    upper, lower = envelope_slopes(tail_x, tail_y)
    value = _pick(flavor, upper, lower) - shift
    ratio = _extreme(flavor, tail_y / tail_x) - shift
    sensitivity = _windowed(
        x, y, window, lambda tx, ty: _pick(flavor, *envelope_slopes(tx, ty)) - shift
    )
    candidates = [value, ratio, *sensitivity.values()]
    return OrderEstimate(
        value=value,
        method="slope",
        band=(min(candidates), max(candidates)),
        ratio=ratio,
        slope_upper=upper - shift,
        slope_lower=lower - shift,
        sensitivity=sensitivity,
        **common,
    )


# ── Type ─────────────────────────────────────────────────────────────────


def _type_band_windows(window: float) -> list[float]:
    """The tail fraction behind ``value`` and its nearest narrower neighbour."""
    windows = sorted({*SENSITIVITY_WINDOWS, window})
    start = max(windows.index(window) - 1, 0)
    return windows[start : start + 2]


def estimate_type(
    table: GrowthTable,
    order: float,
    flavor: Flavor | str = Flavor.UPPER,
    source: Source | str = Source.T,
    *,
    window: float = DEFAULT_WINDOW,
) -> OrderEstimate:
    """Logarithmic type: limsup (or liminf) of the column over ``(log 1/r)^order``.

    The value is the tail max (upper) or min (lower) of
    ``column / (log 1/r_k)^order``; the band is the spread of that statistic
    over the last two tail windows. Envelope slopes of the column against
    ``(log 1/r)^order`` are kept as diagnostics. The column is T or
    ``log^+ M``. Orders in ``[0.9, 1)`` are taken as 1 and flagged
    ``order-clamped``.

    Raises:
        OrderOutOfRange: order below 0.9.
        InsufficientData: fewer than 12 usable rows.
    """
    flavor = Flavor(flavor)
    source = Source(source)
    if source not in (Source.T, Source.M):
        message = f"logarithmic type is read from T or M, not {source.value}"
        raise ValueError(message)
    flags: tuple[str, ...] = ()
    if order < TYPE_CLAMP_FLOOR:
        message = f"logarithmic type needs order >= 1, got {order:.4g}"
        raise OrderOutOfRange(message)
    if order < 1.0:
        logger.warning("order %.4g of '%s' below 1; using 1 for the type", order, table.name)
        order = 1.0
        flags = (ORDER_CLAMPED,)

    raw = table.column(source.column)
    column = np.maximum(raw, 0.0) if source is Source.M else raw
    scale = np.exp(order * table.u)
    x, y = _valid_points(table, column, scale, f"type from {source.value}")
    tail_x, tail_y = _tail(x, y, window)
    value = _extreme(flavor, tail_y / tail_x)
    upper, lower = envelope_slopes(tail_x, tail_y)
    sensitivity = _windowed(x, y, window, lambda tx, ty: _extreme(flavor, ty / tx))
    candidates = [sensitivity[w] for w in _type_band_windows(window)]
    return OrderEstimate(
        value=value,
        flavor=flavor,
        method="ratio",
        band=(min(candidates), max(candidates)),
        window=window,
        ratio=value,
        slope_upper=upper,
        slope_lower=lower,
        sensitivity=sensitivity,
        flags=flags,
        source=source,
        functional=Functional.TYPE,
        rows_used=int(tail_x.size),
        failed_rows=table.failed_rows,
    )


# ── Ratios of columns ────────────────────────────────────────────────────


def _ratio_estimate(
    ratios: FloatArray,
    mask: np.ndarray,
    flavor: Flavor,
    functional: Functional,
    window: float,
    failed_rows: int,
    what: str,
) -> OrderEstimate:
    values = ratios[mask]
    if values.size < MIN_ROWS:
        message = f"{what} needs {MIN_ROWS} usable rows, got {values.size}"
        raise InsufficientData(message)
    index = np.arange(values.size, dtype=np.float64)

    def statistic(_: FloatArray, tail: FloatArray) -> float:
        return _extreme(flavor, tail)

    tail_index, tail = _tail(index, values, window)
    value = statistic(tail_index, tail)
    sensitivity = _windowed(index, values, window, statistic)
    candidates = [value, *sensitivity.values()]
    return OrderEstimate(
        value=value,
        flavor=flavor,
        method="ratio",
        band=(min(candidates), max(candidates)),
        window=window,
        ratio=value,
        sensitivity=sensitivity,
        functional=functional,
        rows_used=int(tail.size),
        failed_rows=failed_rows,
    )


def estimate_delta(table: GrowthTable, *, window: float = DEFAULT_WINDOW) -> OrderEstimate:
    """``liminf m / T``: the share of the characteristic carried by proximity.

    Raises:
        InsufficientData: fewer than 12 rows with positive T.
    """
    m = table.column("m")
    t = table.column("T")
    mask = table.valid & np.isfinite(m) & np.isfinite(t) & (t > 0)
    with np.errstate(divide="ignore", invalid="ignore"):
        ratios = np.clip(m / np.where(t > 0, t, 1.0), 0.0, 1.0)
    return _ratio_estimate(
        ratios, mask, Flavor.LOWER, Functional.DELTA, window, table.failed_rows,
        f"delta of '{table.name}'",
    )


def estimate_proximity_ratio(
    numerators: Sequence[GrowthTable],
    denominator: GrowthTable,
    *,
    window: float = DEFAULT_WINDOW,
) -> OrderEstimate:
    """``limsup sum_j m(r, A_j) / m(r, A_s)`` over tables on one grid.

    Raises:
        GridError: the tables were sampled on different grids.
        InsufficientData: fewer than 12 rows usable in every table.
    """
    if not numerators:
        message = "proximity ratio needs at least one numerator table"
        raise ValueError(message)
    for table in numerators:
        if table.grid != denominator.grid:
            message = f"'{table.name}' and '{denominator.name}' use different grids"
            raise GridError(message)
    bottom = denominator.column("m")
    top = np.sum([table.column("m") for table in numerators], axis=0)
    mask = denominator.valid & np.isfinite(bottom) & (bottom > 0) & np.isfinite(top)
    for table in numerators:
        mask &= table.valid
    with np.errstate(divide="ignore", invalid="ignore"):
        ratios = top / np.where(bottom > 0, bottom, 1.0)
    failed = max(t.failed_rows for t in (*numerators, denominator))
    names = "+".join(t.name for t in numerators)
    return _ratio_estimate(
        ratios, mask, Flavor.UPPER, Functional.RATIO, window, failed,
        f"m-ratio ({names})/{denominator.name}",
    )
