"""Log-domain complex arithmetic.

A value is stored as ``(log_mag, arg)`` where ``log_mag`` is the natural log of
the modulus (``-inf`` encodes zero) and ``arg`` lies in ``(-pi, pi]``. This
keeps quantities such as ``exp(exp(12))`` representable.

The scalar :class:`LogComplex` is used at API boundaries; the array helpers
(:func:`log_add_arrays`, :func:`log_sum`, :func:`to_log_arrays`) carry the
vectorized work inside series and expression evaluation.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

import numpy as np
from numpy.typing import ArrayLike, NDArray

FloatArray = NDArray[np.float64]

# Operands further apart than this in log-magnitude do not interact.
ADD_GAP = 750.0
# Sums below this fraction of the larger operand are treated as exact zero.
CANCEL_TOL = 1e-15
TWO_PI = 2.0 * math.pi


def wrap_angle(theta: float) -> float:
    """Wrap an angle into ``(-pi, pi]``; non-finite angles map to 0."""
    if not math.isfinite(theta):
        return 0.0
    wrapped = math.pi - ((math.pi - theta) % TWO_PI)
    if wrapped <= -math.pi:
        wrapped += TWO_PI
    return wrapped


def wrap_angles(theta: ArrayLike) -> FloatArray:
    """Vectorized :func:`wrap_angle`."""
    values = np.asarray(theta, dtype=np.float64)
    with np.errstate(invalid="ignore"):
        wrapped = np.pi - np.mod(np.pi - values, TWO_PI)
    wrapped = np.where(wrapped <= -np.pi, wrapped + TWO_PI, wrapped)
    return np.where(np.isfinite(values), wrapped, 0.0)


@dataclass(frozen=True, slots=True)
class LogComplex:
    """A complex number in log-polar form."""

    log_mag: float
    arg: float = 0.0

    def __post_init__(self) -> None:
        log_mag = float(self.log_mag)
        if math.isnan(log_mag):
            message = "LogComplex log_mag must not be NaN"
            raise ValueError(message)
        arg = 0.0 if log_mag == -math.inf else wrap_angle(float(self.arg))
        object.__setattr__(self, "log_mag", log_mag)
        object.__setattr__(self, "arg", arg)

    # ── Constructors ─────────────────────────────────────────────────────

    @classmethod
    def zero(cls) -> LogComplex:
        return cls(-math.inf, 0.0)

    @classmethod
    def one(cls) -> LogComplex:
        return cls(0.0, 0.0)

    @classmethod
    def from_complex(cls, value: complex) -> LogComplex:
        value = complex(value)
        if value == 0:
            return cls.zero()
        return cls(math.log(abs(value)), cmath.phase(value))

    # ── Queries ──────────────────────────────────────────────────────────

    @property
    def is_zero(self) -> bool:
        return self.log_mag == -math.inf

    def to_complex(self) -> complex:
        """Convert back to a native complex (may overflow to inf)."""
        if self.is_zero:
            return 0j
        try:
            modulus = math.exp(self.log_mag)
        except OverflowError:
            modulus = math.inf
        return cmath.rect(modulus, self.arg)

    # ── Arithmetic ───────────────────────────────────────────────────────

    def __mul__(self, other: LogComplex) -> LogComplex:
        if self.is_zero or other.is_zero:
            return LogComplex.zero()
        return LogComplex(self.log_mag + other.log_mag, self.arg + other.arg)

    def __truediv__(self, other: LogComplex) -> LogComplex:
        if other.is_zero:
            message = "division by a zero LogComplex"
            raise ZeroDivisionError(message)
        if self.is_zero:
            return LogComplex.zero()
        return LogComplex(self.log_mag - other.log_mag, self.arg - other.arg)

    def __pow__(self, exponent: int) -> LogComplex:
        if exponent == 0:
            return LogComplex.one()
        if self.is_zero:
            if exponent < 0:
                message = "negative power of a zero LogComplex"
                raise ZeroDivisionError(message)
            return LogComplex.zero()
        return LogComplex(self.log_mag * exponent, self.arg * exponent)

    def __neg__(self) -> LogComplex:
        if self.is_zero:
            return self
        return LogComplex(self.log_mag, self.arg + math.pi)

    def __add__(self, other: LogComplex) -> LogComplex:
        return log_add(self, other)

    def __sub__(self, other: LogComplex) -> LogComplex:
        return log_add(self, -other)


def log_add(a: LogComplex, b: LogComplex) -> LogComplex:
    """Add two log-domain values with max-shift and cancellation to zero."""
    if a.is_zero:
        return b
    if b.is_zero:
        return a
    big, small = (a, b) if a.log_mag >= b.log_mag else (b, a)
    if big.log_mag == math.inf:
        return big
    if big.log_mag - small.log_mag > ADD_GAP:
        return big
    total = cmath.rect(1.0, big.arg) + cmath.rect(
        math.exp(small.log_mag - big.log_mag), small.arg
    )
    if abs(total) < CANCEL_TOL:
        return LogComplex.zero()
    return LogComplex(big.log_mag + math.log(abs(total)), cmath.phase(total))


# ── Array helpers ────────────────────────────────────────────────────────


def to_log_arrays(values: ArrayLike) -> tuple[FloatArray, FloatArray]:
    """Convert native complex values to ``(log_mag, arg)`` arrays."""
    z = np.asarray(values, dtype=np.complex128)
    modulus = np.abs(z)
    with np.errstate(divide="ignore"):
        log_mag = np.log(modulus)
    arg = np.where(modulus > 0, np.angle(z), 0.0)
    return log_mag, arg


def from_log_arrays(log_mag: ArrayLike, arg: ArrayLike) -> NDArray[np.complex128]:
    """Convert ``(log_mag, arg)`` arrays back to native complex values."""
    with np.errstate(over="ignore", invalid="ignore"):
        return np.exp(np.asarray(log_mag, dtype=np.float64)) * np.exp(
            1j * np.asarray(arg, dtype=np.float64)
        )


def log_add_arrays(
    l1: ArrayLike, t1: ArrayLike, l2: ArrayLike, t2: ArrayLike
) -> tuple[FloatArray, FloatArray]:
    """Elementwise log-domain addition, same rules as :func:`log_add`."""
    a_l, a_t, b_l, b_t = np.broadcast_arrays(
        np.asarray(l1, dtype=np.float64),
        np.asarray(t1, dtype=np.float64),
        np.asarray(l2, dtype=np.float64),
        np.asarray(t2, dtype=np.float64),
    )
    big = np.maximum(a_l, b_l)
    shift = np.where(np.isfinite(big), big, 0.0)
    with np.errstate(over="ignore", invalid="ignore", under="ignore"):
        total = np.exp(a_l - shift + 1j * a_t) + np.exp(b_l - shift + 1j * b_t)
        modulus = np.abs(total)
        with np.errstate(divide="ignore"):
            out_l = shift + np.log(modulus)
    out_t = np.angle(total)
    cancelled = ~(modulus >= CANCEL_TOL)
    out_l = np.where(cancelled, -np.inf, out_l)
    out_t = np.where(cancelled, 0.0, out_t)

    # Far-apart operands and infinities keep the dominant operand verbatim.
    # Two zeros (or two infinities) give nan gaps, which compare False.
    with np.errstate(invalid="ignore"):
        a_wins = (a_l - b_l > ADD_GAP) | (a_l == np.inf)
        b_wins = ((b_l - a_l > ADD_GAP) | (b_l == np.inf)) & ~a_wins
    out_l = np.where(a_wins, a_l, np.where(b_wins, b_l, out_l))
    out_t = np.where(a_wins, a_t, np.where(b_wins, b_t, out_t))
    return out_l, wrap_angles(np.where(np.isneginf(out_l), 0.0, out_t))


def log_sum(
    log_mag: ArrayLike, arg: ArrayLike, axis: int = -1
) -> tuple[FloatArray, FloatArray]:
    """Sum log-domain values along ``axis`` using a max shift.

    numpy's pairwise summation gives a fixed reduction order, so the result is
    reproducible for identical inputs.
    """
    l = np.asarray(log_mag, dtype=np.float64)
    t = np.asarray(arg, dtype=np.float64)
    big = np.max(l, axis=axis, keepdims=True)
    shift = np.where(np.isfinite(big), big, 0.0)
    with np.errstate(over="ignore", invalid="ignore", under="ignore"):
        total = np.sum(np.exp(l - shift + 1j * t), axis=axis)
    shift = np.squeeze(shift, axis=axis)
    modulus = np.abs(total)
    with np.errstate(divide="ignore", invalid="ignore"):
        out_l = shift + np.log(modulus)
    cancelled = ~(modulus >= CANCEL_TOL)
    out_l = np.where(cancelled, -np.inf, out_l)
    has_inf = np.squeeze(np.isposinf(big), axis=axis)
    out_l = np.where(has_inf, np.inf, out_l)
    out_t = np.where(cancelled | has_inf, 0.0, np.angle(total))
    return out_l, wrap_angles(out_t)
