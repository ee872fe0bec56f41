"""Argument-principle zero counts on nested annuli.

Radii follow the function's domain; internally everything is an omega-plane
radius ``rho``. Zeros of a meromorphic function are winding numbers plus the
poles inside, so such functions need a complete pole ledger.
"""

from __future__ import annotations

import logging
import math
from collections.abc import Sequence
from dataclasses import dataclass

import numpy as np

from punctured_functions import Domain, PuncturedFunction, winding_number
from punctured_functions.argument import winding_increment
from punctured_functions.log_complex import FloatArray

from .config import DEFAULT_QUADRATURE, QuadratureConfig
from .errors import (
    IncompleteLedger,
    NonIntegerWinding,
    UnresolvedDistinctCount,
    ZeroOnContour,
)

logger = logging.getLogger(__name__)

PERTURB_STEPS = (0.0, 1e-4, -1e-4, 1e-3, -1e-3)
# Grid phase in units of one annulus; keeps boundaries off half-integer log radii.
GRID_OFFSET = 0.3737
MERGE_RTOL = 1e-9
RESOLVE_LOG_WIDTH = 1e-3
RESOLVE_MAX_COUNT = 16
ORIGIN_FRACTION = 1e-6
TINY_CELL = 1e-9
MAX_SPLIT_DEPTH = 96
# Cut positions tried in order; the offsets are golden-ratio steps off the middle.
SPLIT_FRACTIONS = (0.5, 0.5381966, 0.4381966, 0.5763932, 0.4145898)
# Half-width of the strip that must be zero-free around a new cut, as a
# fraction of the split dimension.
CUT_CLEARANCE = 1e-3


def _poles_inside(f: PuncturedFunction, rho: float) -> int:
    if f.is_analytic:
        return 0
    ledger = f.effective_ledger
    if not ledger.pole_complete:
        message = f"zero counts of '{f.name}' need a complete pole ledger"
        raise IncompleteLedger(message)
    return sum(p.multiplicity for p in ledger.poles if abs(p.location) < rho)


def zeros_inside(f: PuncturedFunction, rho: float) -> int:
    """Zeros of g (with multiplicity) in ``|omega| < rho``."""
    return winding_number(f, 0j, rho) + _poles_inside(f, rho)


def _zeros_inside_perturbed(f: PuncturedFunction, rho: float) -> tuple[float, int]:
    last: Exception | None = None
    for shift in PERTURB_STEPS:
        radius = rho * (1.0 + shift)
        try:
            return radius, zeros_inside(f, radius)
        except (ZeroOnContour, NonIntegerWinding) as exc:
            last = exc
    assert last is not None
    raise last


def count_zeros_annulus(f: PuncturedFunction, t_inner: float, t_outer: float) -> int:
    """Zeros of f with ``t_inner < |z - z0| < t_outer`` (multiplicity counted).

    For plane-domain functions the radii are omega radii.

    Raises:
        ZeroOnContour: a zero on either circle.
        NonIntegerWinding: an argument increment did not settle.
    """
    if not 0 < t_inner < t_outer:
        message = f"need 0 < t_inner < t_outer, got {t_inner}, {t_outer}"
        raise ValueError(message)
    a = f.omega_modulus(t_inner)
    b = f.omega_modulus(t_outer)
    lo, hi = min(a, b), max(a, b)
    return zeros_inside(f, hi) - zeros_inside(f, lo)


# ── Nested-annulus profiles ──────────────────────────────────────────────


@dataclass(frozen=True, eq=False)
class ZeroCountProfile:
    """Zero counts on nested omega-annuli.

    Attributes:
        boundaries: omega radii ``b_0 < b_1 < ...``.
        inner: zeros with ``|omega| < b_0``.
        counts: zeros in ``[b_{i-1}, b_i)`` for ``i >= 1``.
        domain: domain of the counted function (maps radii to omega radii).
        distinct_inner / distinct_counts: the same with multiplicities
            collapsed (``None`` unless requested).
    """

    boundaries: FloatArray
    inner: int
    counts: np.ndarray
    domain: Domain
    distinct_inner: int | None = None
    distinct_counts: np.ndarray | None = None

    @property
    def midpoints(self) -> FloatArray:
        return np.sqrt(self.boundaries[:-1] * self.boundaries[1:])

    def omega_radius(self, radius: float) -> float:
        return 1.0 / radius if self.domain is Domain.PUNCTURED else radius

    def cumulative(self, radius: float, *, distinct: bool = False) -> int:
        """Zeros whose lumped position lies within the circle of ``radius``."""
        inner, counts = self._pick(distinct)
        rho = self.omega_radius(radius)
        inside = self.midpoints <= rho
        return int(inner + int(np.sum(counts[inside])))

    def counting(self, radius: float, *, distinct: bool = False) -> float:
        """``N(radius, 1/g)`` by partial summation, zeros lumped at midpoints.

        Zeros inside the innermost circle sit at half its radius; zeros of an
        annulus sit at its geometric midpoint.
        """
        inner, counts = self._pick(distinct)
        rho = self.omega_radius(radius)
        terms = []
        innermost = 0.5 * float(self.boundaries[0])
        if inner and rho > innermost:
            terms.append(inner * math.log(rho / innermost))
        mids = self.midpoints
        inside = mids <= rho
        for count, mid in zip(counts[inside], mids[inside], strict=True):
            if count:
                terms.append(float(count) * math.log(rho / mid))
        return math.fsum(terms)

    def _pick(self, distinct: bool) -> tuple[int, np.ndarray]:
        if not distinct:
            return self.inner, self.counts
        if self.distinct_counts is None or self.distinct_inner is None:
            message = "distinct counts were not computed for this profile"
            raise UnresolvedDistinctCount(message)
        return self.distinct_inner, self.distinct_counts


def annulus_boundaries(rhos: Sequence[float], per_unit: int) -> FloatArray:
    """Geometric boundaries (``per_unit`` per unit of log rho) plus ``rhos``."""
    ordered = sorted(float(r) for r in rhos)
    start = min(1.0, ordered[0]) * math.exp(-GRID_OFFSET / per_unit)
    span = math.log(ordered[-1]) - math.log(start)
    steps = max(1, math.ceil(span * per_unit))
    grid = start * np.exp(np.arange(steps + 1) / per_unit)
    merged = np.unique(np.concatenate((grid[grid < ordered[-1]], ordered)))
    keep = [float(merged[0])]
    for value in merged[1:]:
        if value > keep[-1] * (1.0 + MERGE_RTOL):
            keep.append(float(value))
    return np.array(keep)


def _resolve(
    f: PuncturedFunction, lo: float, hi: float, n_lo: int, n_hi: int, log_width: float
) -> list[tuple[float, int]]:
    """Interior boundaries splitting ``[lo, hi)`` until its zeros are localized."""
    if n_hi == n_lo or n_hi - n_lo > RESOLVE_MAX_COUNT or math.log(hi / lo) <= log_width:
        return []
    mid, n_mid = _zeros_inside_perturbed(f, math.sqrt(lo * hi))
    if not lo < mid < hi:
        return []
    return [
        *_resolve(f, lo, mid, n_lo, n_mid, log_width),
        (mid, n_mid),
        *_resolve(f, mid, hi, n_mid, n_hi, log_width),
    ]


def zero_counting_profile(
    f: PuncturedFunction,
    radii: Sequence[float],
    cfg: QuadratureConfig = DEFAULT_QUADRATURE,
    *,
    distinct: bool = False,
    resolve: float | None = RESOLVE_LOG_WIDTH,
) -> ZeroCountProfile:
    """Count zeros of ``f`` on nested annuli reaching every requested radius.

    Args:
        f: the function whose zeros are counted.
        radii: radii (in f's domain) the profile must reach.
        cfg: ``annuli_per_decade`` sets the base grid.
        distinct: also count distinct zeros per annulus.
        resolve: annuli holding a few zeros are halved in log radius down to
            this width, so that lumping zeros at midpoints stays accurate.
            ``None`` keeps the base grid.

    Raises:
        IncompleteLedger: meromorphic f without a complete pole ledger.
        ZeroOnContour / NonIntegerWinding: a boundary could not be resolved
            even after small radius perturbations.
        UnresolvedDistinctCount: ``distinct`` requested and zeros could not
            be separated.
    """
    if not radii:
        message = "zero_counting_profile needs at least one radius"
        raise ValueError(message)
    rhos = [f.omega_modulus(r) for r in radii]
    points = [_zeros_inside_perturbed(f, float(rho)) for rho in annulus_boundaries(rhos, cfg.annuli_per_decade)]
    if resolve is not None:
        refined = [points[0]]
        for (lo, n_lo), (hi, n_hi) in zip(points[:-1], points[1:], strict=True):
            refined.extend(_resolve(f, lo, hi, n_lo, n_hi, resolve))
            refined.append((hi, n_hi))
        points = refined
    bounds = np.array([p[0] for p in points])
    cumulative = np.array([p[1] for p in points], dtype=np.int64)
    counts = np.diff(cumulative)
    if np.any(counts < 0) or np.any(np.diff(bounds) <= 0):
        message = f"zero counts of '{f.name}' are not monotone; perturb the grid"
        raise NonIntegerWinding(message)
    logger.debug(
        "zero profile of '%s': %d zeros below rho=%.6g over %d annuli",
        f.name,
        cumulative[-1],
        bounds[-1],
        counts.size,
    )

    distinct_inner = None
    distinct_counts = None
    if distinct:
        distinct_inner = distinct_zero_count(f, 0.0, float(bounds[0]), int(cumulative[0]))
        distinct_counts = np.array(
            [
                distinct_zero_count(f, float(bounds[i - 1]), float(bounds[i]), int(counts[i - 1]))
                for i in range(1, bounds.size)
            ],
            dtype=np.int64,
        )
    return ZeroCountProfile(
        boundaries=bounds,
        inner=int(cumulative[0]),
        counts=counts,
        domain=f.domain,
        distinct_inner=distinct_inner,
        distinct_counts=distinct_counts,
    )


def distinct_zero_counts(
    f: PuncturedFunction, radii: Sequence[float], cfg: QuadratureConfig = DEFAULT_QUADRATURE
) -> list[int]:
    """Distinct zeros of ``f`` inside each requested circle, ``n-bar(t, 1/f)``."""
    profile = zero_counting_profile(f, radii, cfg, distinct=True)
    return [profile.cumulative(r, distinct=True) for r in radii]


# ── Distinct zeros by sector subdivision ─────────────────────────────────


@dataclass(frozen=True)
class _Cell:
    rho_lo: float
    rho_hi: float
    psi_lo: float
    psi_hi: float

    @property
    def full_turn(self) -> bool:
        return self.psi_hi - self.psi_lo >= 2.0 * math.pi - 1e-15

    @property
    def tiny(self) -> bool:
        log_width = math.log(self.rho_hi / self.rho_lo) if self.rho_lo > 0 else math.inf
        return log_width < TINY_CELL and (self.psi_hi - self.psi_lo) < TINY_CELL

    @property
    def _angular_split(self) -> bool:
        radial = math.log(self.rho_hi / self.rho_lo) if self.rho_lo > 0 else math.inf
        return self.psi_hi - self.psi_lo >= radial or self.full_turn

    def _radial_cut(self, fraction: float) -> float:
        if self.rho_lo > 0:
            return self.rho_lo * math.exp(fraction * math.log(self.rho_hi / self.rho_lo))
        return fraction * self.rho_hi

    def split(self, fraction: float = 0.5) -> tuple[_Cell, _Cell]:
        if self._angular_split:
            cut = self.psi_lo + fraction * (self.psi_hi - self.psi_lo)
            return (
                _Cell(self.rho_lo, self.rho_hi, self.psi_lo, cut),
                _Cell(self.rho_lo, self.rho_hi, cut, self.psi_hi),
            )
        cut = self._radial_cut(fraction)
        return (
            _Cell(self.rho_lo, cut, self.psi_lo, self.psi_hi),
            _Cell(cut, self.rho_hi, self.psi_lo, self.psi_hi),
        )

    def cut_strips(self, fraction: float, width: float) -> list[_Cell]:
        """Thin cells straddling the edges that ``split(fraction)`` introduces.

        A full turn gains two rays (at ``psi_lo`` and at the cut); any other
        cell gains one ray or one arc.
        """
        if self._angular_split:
            half = width * (self.psi_hi - self.psi_lo)
            cuts = [self.psi_lo + fraction * (self.psi_hi - self.psi_lo)]
            if self.full_turn:
                cuts.append(self.psi_lo)
            return [_Cell(self.rho_lo, self.rho_hi, cut - half, cut + half) for cut in cuts]
        lo = self._radial_cut(fraction - width)
        hi = self._radial_cut(fraction + width)
        return [_Cell(lo, hi, self.psi_lo, self.psi_hi)]


def _arc(rho: float, start: float, stop: float):
    def path(n: int) -> np.ndarray:
        return rho * np.exp(1j * np.linspace(start, stop, n + 1))

    return path


def _ray(psi: float, start: float, stop: float):
    def path(n: int) -> np.ndarray:
        return np.linspace(start, stop, n + 1) * np.exp(1j * psi)

    return path


def _cell_zero_count(f: PuncturedFunction, cell: _Cell) -> int:
    """Zeros inside a sector cell, from the argument increment on its edges."""
    edges = [_arc(cell.rho_hi, cell.psi_lo, cell.psi_hi)]
    if not cell.full_turn:
        edges.append(_ray(cell.psi_hi, cell.rho_hi, cell.rho_lo))
    if cell.rho_lo > 0:
        edges.append(_arc(cell.rho_lo, cell.psi_hi, cell.psi_lo))
    if not cell.full_turn:
        edges.append(_ray(cell.psi_lo, cell.rho_lo, cell.rho_hi))
    total = math.fsum(winding_increment(f, edge) for edge in edges) / (2.0 * math.pi)
    nearest = round(total)
    if abs(total - nearest) > 1e-3:
        message = f"cell winding {total:.6f} is not an integer"
        raise NonIntegerWinding(message)
    poles = 0
    if not f.is_analytic:
        for pole in f.effective_ledger.poles:
            modulus = abs(pole.location)
            # Strips around psi = 0 start at a negative angle.
            offset = (float(np.angle(pole.location)) - cell.psi_lo) % (2.0 * math.pi)
            inside_angle = cell.full_turn or offset < cell.psi_hi - cell.psi_lo
            if cell.rho_lo <= modulus < cell.rho_hi and inside_angle:
                poles += pole.multiplicity
    return int(nearest) + poles


def _cut_is_clear(f: PuncturedFunction, cell: _Cell, fraction: float) -> bool:
    """No zero or pole near the edges a split at ``fraction`` would add.

    A multiple zero lying on a cut contributes half its winding to each
    child, so the children's counts still add up and the zero would be
    counted twice.
    """
    return all(
        _cell_zero_count(f, strip) == 0 and not _strip_poles(f, strip)
        for strip in cell.cut_strips(fraction, CUT_CLEARANCE)
    )


def _strip_poles(f: PuncturedFunction, strip: _Cell) -> bool:
    if f.is_analytic:
        return False
    for pole in f.effective_ledger.poles:
        offset = (float(np.angle(pole.location)) - strip.psi_lo) % (2.0 * math.pi)
        if strip.rho_lo <= abs(pole.location) < strip.rho_hi and offset < strip.psi_hi - strip.psi_lo:
            return True
    return False


def _split_counted(f: PuncturedFunction, cell: _Cell, total: int) -> list[tuple[_Cell, int]]:
    for fraction in SPLIT_FRACTIONS:
        try:
            if not _cut_is_clear(f, cell, fraction):
                logger.debug("cut at %.4f of %s passes near a zero; shifting", fraction, cell)
                continue
            children = cell.split(fraction)
            counts = [_cell_zero_count(f, child) for child in children]
        except (ZeroOnContour, NonIntegerWinding):
            continue
        if sum(counts) == total:
            return list(zip(children, counts, strict=True))
    message = f"could not split cell {cell} holding {total} zeros"
    raise UnresolvedDistinctCount(message)


def distinct_zero_count(f: PuncturedFunction, rho_lo: float, rho_hi: float, total: int) -> int:
    """Distinct zeros in ``rho_lo <= |omega| < rho_hi`` given their total count.

    Cells are halved (angle or log-radius, whichever is wider) until each
    holds at most one zero; a cell below 1e-9 in both directions that still
    holds several is one multiple zero. A cut whose surrounding strip holds a
    zero moves to the next fraction in ``SPLIT_FRACTIONS``.

    Raises:
        UnresolvedDistinctCount: subdivision could not separate the zeros.
    """
    if total <= 1:
        return max(total, 0)
    distinct = 0
    if rho_lo == 0.0:
        # A zero at the origin sits on every ray; count it once and cut it out.
        log_origin, _ = f.evaluate_omega(np.array([0j]))
        if np.isneginf(log_origin[0]):
            rho_lo = rho_hi * ORIGIN_FRACTION
            total -= zeros_inside(f, rho_lo)
            distinct = 1
            if total <= 1:
                return distinct + max(total, 0)
    stack = [(_Cell(rho_lo, rho_hi, 0.0, 2.0 * math.pi), total, 0)]
    while stack:
        cell, count, depth = stack.pop()
        if count <= 1:
            distinct += count
            continue
        if cell.tiny:
            distinct += 1
            continue
        if depth >= MAX_SPLIT_DEPTH:
            message = f"zeros in {cell} unresolved after {depth} splits"
            raise UnresolvedDistinctCount(message)
        for child, child_count in _split_counted(f, cell, count):
            stack.append((child, child_count, depth + 1))
    return distinct
