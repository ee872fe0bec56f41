"""Truncated power series in omega with log-domain coefficients.

``PowerSeries`` stores ``a_0 .. a_N`` as ``(log_mag, arg)`` arrays and knows the
largest |omega| at which its truncation tail stays negligible (the residual
radius). Evaluation past that radius is refused.
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass, field

import numpy as np
from numpy.typing import ArrayLike

from .errors import DivisorDegenerate, SeriesOutOfRange
from .log_complex import (
    FloatArray,
    LogComplex,
    log_add_arrays,
    log_sum,
    to_log_arrays,
    wrap_angles,
)

logger = logging.getLogger(__name__)

TAIL_WINDOW = 32
TAIL_REL_LOG = math.log(1e-6)
PRUNE_GAP = 80.0
EVAL_CHUNK = 512
# Stand-in for log|omega| at omega = 0 (keeps n * log|omega| finite).
LOG_ZERO_RADIUS = -1e300
MAX_LOG_RADIUS = 700.0


def _residual_radius(log_mag: FloatArray) -> float:
    """Largest R with geometric tail bound <= 1e-6 of the maximum term."""
    support = np.flatnonzero(np.isfinite(log_mag))
    if support.size <= 1:
        return math.inf
    tail = support[-min(TAIL_WINDOW, support.size) :]
    tail_l = log_mag[tail]
    slopes = np.diff(tail_l) / np.diff(tail).astype(np.float64)
    q_log = float(np.max(slopes))
    n_last = int(tail[-1])
    l_last = float(tail_l[-1])
    first_missing = log_mag.size
    support_l = log_mag[support]
    support_n = support.astype(np.float64)

    def tail_ok(x: float) -> bool:
        rate = q_log + x
        if rate >= 0.0:
            return False
        bound = (
            l_last
            + (first_missing - n_last) * q_log
            + first_missing * x
            - math.log1p(-math.exp(rate))
        )
        peak = float(np.max(support_l + support_n * x))
        return bound <= peak + TAIL_REL_LOG

    hi = min(-q_log, MAX_LOG_RADIUS)
    lo = -MAX_LOG_RADIUS
    if not tail_ok(lo):
        return 0.0
    if tail_ok(hi):
        return math.exp(hi)
    for _ in range(200):
        mid = 0.5 * (lo + hi)
        if tail_ok(mid):
            lo = mid
        else:
            hi = mid
        if hi - lo < 1e-13:
            break
    return math.exp(lo)


@dataclass(frozen=True, eq=False)
class PowerSeries:
    """Coefficients ``a_n`` of ``g(omega) = sum a_n omega^n``.

    Attributes:
        log_mag: log|a_n| (``-inf`` for zero coefficients).
        arg: arg a_n in ``(-pi, pi]``.
        exact: True when the series is a polynomial (no truncation tail).
        residual_radius: largest reliable |omega|; ``inf`` when exact.
    """

    log_mag: FloatArray
    arg: FloatArray
    exact: bool = False
    residual_radius: float = field(init=False)

    def __post_init__(self) -> None:
        log_mag = np.array(self.log_mag, dtype=np.float64).reshape(-1)
        arg = np.array(self.arg, dtype=np.float64).reshape(-1)
        if log_mag.size == 0 or log_mag.shape != arg.shape:
            message = "series needs matching, non-empty log_mag and arg arrays"
            raise ValueError(message)
        if np.any(np.isnan(log_mag)) or np.any(log_mag == np.inf):
            message = "series coefficients must be finite or zero"
            raise ValueError(message)
        arg = np.where(np.isneginf(log_mag), 0.0, wrap_angles(arg))
        log_mag.setflags(write=False)
        arg.setflags(write=False)
        object.__setattr__(self, "log_mag", log_mag)
        object.__setattr__(self, "arg", arg)
        radius = math.inf if self.exact else _residual_radius(log_mag)
        object.__setattr__(self, "residual_radius", radius)

    # ── Constructors ─────────────────────────────────────────────────────

    @classmethod
    def from_complex(cls, coefficients: ArrayLike, *, exact: bool = False) -> PowerSeries:
        log_mag, arg = to_log_arrays(coefficients)
        return cls(log_mag, arg, exact=exact)

    @classmethod
    def zero(cls) -> PowerSeries:
        return cls(np.array([-np.inf]), np.array([0.0]), exact=True)

    # ── Queries ──────────────────────────────────────────────────────────

    @property
    def terms(self) -> int:
        """Number of stored coefficients (N + 1)."""
        return int(self.log_mag.size)

    @property
    def support(self) -> np.ndarray:
        return np.flatnonzero(np.isfinite(self.log_mag))

    @property
    def is_zero(self) -> bool:
        return self.support.size == 0

    def coefficient(self, n: int) -> LogComplex:
        if n < 0 or n >= self.terms:
            return LogComplex.zero()
        return LogComplex(float(self.log_mag[n]), float(self.arg[n]))

    def to_complex(self) -> np.ndarray:
        with np.errstate(over="ignore"):
            return np.exp(self.log_mag) * np.exp(1j * self.arg)

    def lowest_index(self) -> int | None:
        support = self.support
        return int(support[0]) if support.size else None

    # ── Evaluation ───────────────────────────────────────────────────────

    def evaluate(self, omega: ArrayLike) -> tuple[FloatArray, FloatArray]:
        """Evaluate at complex points; returns ``(log_mag, arg)`` arrays.

        Raises:
            SeriesOutOfRange: if any |omega| exceeds the residual radius.
        """
        points = np.asarray(omega, dtype=np.complex128)
        shape = points.shape
        flat = points.reshape(-1)
        radius = np.abs(flat)
        if radius.size and float(np.max(radius)) > self.residual_radius * (1 + 1e-12):
            message = (
                f"|omega| = {float(np.max(radius)):.6g} exceeds residual radius "
                f"{self.residual_radius:.6g}"
            )
            raise SeriesOutOfRange(message)

        out_l = np.full(flat.size, -np.inf)
        out_t = np.zeros(flat.size)
        support = self.support
        if support.size == 0 or flat.size == 0:
            return out_l.reshape(shape), out_t.reshape(shape)

        coef_l = self.log_mag[support]
        coef_t = self.arg[support]
        index = support.astype(np.float64)
        with np.errstate(divide="ignore"):
            log_r = np.where(radius > 0, np.log(radius), LOG_ZERO_RADIUS)
        theta = np.angle(flat)

        for start in range(0, flat.size, EVAL_CHUNK):
            stop = min(start + EVAL_CHUNK, flat.size)
            lr = log_r[start:stop]
            upper = coef_l + index * float(np.max(lr))
            floor = float(np.max(coef_l + index * float(np.min(lr)))) - PRUNE_GAP
            keep = upper >= floor
            terms_l = coef_l[keep][None, :] + index[keep][None, :] * lr[:, None]
            terms_t = coef_t[keep][None, :] + index[keep][None, :] * theta[start:stop, None]
            chunk_l, chunk_t = log_sum(terms_l, terms_t, axis=1)
            out_l[start:stop] = chunk_l
            out_t[start:stop] = chunk_t

        at_origin = radius == 0
        if np.any(at_origin):
            out_l[at_origin] = self.log_mag[0]
            out_t[at_origin] = self.arg[0]
        return out_l.reshape(shape), out_t.reshape(shape)

    def max_term(self, log_radius: float) -> tuple[int, float]:
        """Central index and log of the maximal term at |omega| = e^log_radius.

        Ties (within 1e-12 relative) go to the larger index.
        """
        support = self.support
        if support.size == 0:
            return 0, -math.inf
        values = self.log_mag[support] + support * log_radius
        best = float(np.max(values))
        tol = 1e-12 * max(1.0, abs(best))
        winners = support[values >= best - tol]
        return int(winners[-1]), best

    # ── Calculus and algebra ─────────────────────────────────────────────

    def derivative(self) -> PowerSeries:
        """d/d(omega): c_n = (n + 1) a_{n+1}."""
        if self.terms == 1:
            return PowerSeries.zero()
        n = np.arange(1, self.terms, dtype=np.float64)
        return PowerSeries(
            self.log_mag[1:] + np.log(n), self.arg[1:].copy(), exact=self.exact
        )

    def z_derivative(self) -> PowerSeries:
        """d/dz = omega^2 d/d(omega): c_{n+1} = n a_n."""
        n = np.arange(self.terms, dtype=np.float64)
        with np.errstate(divide="ignore"):
            shifted = self.log_mag + np.log(n)
        log_mag = np.concatenate(([-np.inf], shifted))
        arg = np.concatenate(([0.0], self.arg))
        return PowerSeries(log_mag, arg, exact=self.exact)

    def scale(self, factor: LogComplex) -> PowerSeries:
        if factor.is_zero:
            return PowerSeries.zero()
        return PowerSeries(
            self.log_mag + factor.log_mag, self.arg + factor.arg, exact=self.exact
        )

    def negate(self) -> PowerSeries:
        return PowerSeries(self.log_mag.copy(), self.arg + math.pi, exact=self.exact)

    def add(self, other: PowerSeries) -> PowerSeries:
        if self.exact and other.exact:
            size = max(self.terms, other.terms)
        elif self.exact or other.exact:
            size = other.terms if self.exact else self.terms
        else:
            size = min(self.terms, other.terms)
        a_l, a_t = _padded(self, size)
        b_l, b_t = _padded(other, size)
        log_mag, arg = log_add_arrays(a_l, a_t, b_l, b_t)
        return PowerSeries(log_mag, arg, exact=self.exact and other.exact)

    def multiply(self, other: PowerSeries, terms: int | None = None) -> PowerSeries:
        """Cauchy product truncated to ``terms`` coefficients."""
        full = self.terms + other.terms - 1
        exact = self.exact and other.exact
        if terms is None:
            terms = full if exact else min(self.terms, other.terms)
        a_l, a_t = _padded(self, terms)
        b_l, b_t = _padded(other, terms)
        out_l = np.full(terms, -np.inf)
        out_t = np.zeros(terms)
        for n in range(terms):
            l, t = log_sum(a_l[: n + 1] + b_l[n::-1], a_t[: n + 1] + b_t[n::-1])
            out_l[n] = l
            out_t[n] = t
        return PowerSeries(out_l, out_t, exact=exact and terms >= full)

    def divide(self, other: PowerSeries, terms: int | None = None) -> PowerSeries:
        """Power-series quotient ``self / other`` by forward recurrence.

        Raises:
            DivisorDegenerate: if the divisor's constant term vanishes.
        """
        if not math.isfinite(float(other.log_mag[0])):
            message = "series division needs a divisor with nonzero constant term"
            raise DivisorDegenerate(message)
        if terms is None:
            terms = min(self.terms, other.terms)
        a_l, a_t = _padded(self, terms)
        b_l, b_t = _padded(other, terms)
        c_l = np.full(terms, -np.inf)
        c_t = np.zeros(terms)
        lead_l, lead_t = float(b_l[0]), float(b_t[0])
        for n in range(terms):
            if n:
                s_l, s_t = log_sum(b_l[1 : n + 1] + c_l[n - 1 :: -1], b_t[1 : n + 1] + c_t[n - 1 :: -1])
                num_l, num_t = log_add_arrays(a_l[n], a_t[n], s_l, s_t + math.pi)
            else:
                num_l, num_t = a_l[0], a_t[0]
            c_l[n] = float(num_l) - lead_l
            c_t[n] = float(num_t) - lead_t
        return PowerSeries(c_l, c_t)

    def truncate(self, terms: int) -> PowerSeries:
        if terms >= self.terms:
            return self
        return PowerSeries(self.log_mag[:terms].copy(), self.arg[:terms].copy())


def _padded(series: PowerSeries, size: int) -> tuple[FloatArray, FloatArray]:
    log_mag = np.full(size, -np.inf)
    arg = np.zeros(size)
    count = min(size, series.terms)
    log_mag[:count] = series.log_mag[:count]
    arg[:count] = series.arg[:count]
    return log_mag, arg
