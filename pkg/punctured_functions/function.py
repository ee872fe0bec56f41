"""Functions on the extended plane punctured at z0.

A :class:`PuncturedFunction` is stored through ``g(omega) = f(z0 - 1/omega)``,
``omega = 1/(z0 - z)``. Circles ``|z - z0| = r`` are circles ``|omega| = 1/r``
walked clockwise: ``z = z0 - r e^{i phi}`` gives ``omega = (1/r) e^{-i phi}``.
The ``plane`` domain is the same data read as a function of omega directly,
where radius R means ``|omega| = R``.
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass, replace
from enum import Enum

import numpy as np
from numpy.typing import ArrayLike

from .errors import ConsistencyError, EvaluationAtSingularity, LedgerError, SchemaError
from .expression import (
    ONE,
    Add,
    Div,
    Node,
    SeriesLeaf,
    div,
    evaluate,
    neg,
    z_derivative,
)
from .ledger import LedgerEntry, ZeroPoleLedger
from .log_complex import FloatArray, LogComplex
from .series import PowerSeries

logger = logging.getLogger(__name__)

CHECK_POINTS = 32
CHECK_RADIUS = 2.0
CHECK_RTOL = 1e-8


class FunctionKind(str, Enum):
    """Function class on the punctured sphere.

    Values:
        ANALYTIC: no poles in the omega-plane (g entire).
        MEROMORPHIC: poles allowed.
    """

    ANALYTIC = "analytic"
    MEROMORPHIC = "meromorphic"


class Domain(str, Enum):
    """Which variable circles are measured in.

    Values:
        PUNCTURED: radius r means ``|z - z0| = r`` (``|omega| = 1/r``).
        PLANE: radius R means ``|omega| = R``.
    """

    PUNCTURED = "punctured"
    PLANE = "plane"


@dataclass(frozen=True, eq=False)
class PuncturedFunction:
    """An analytic or meromorphic function of the punctured sphere.

    Attributes:
        z0: the singular point.
        closed_form: expression tree in omega, if any.
        series: truncated Taylor series of g at omega = 0, if any.
        ledger: declared zeros/poles in omega-coordinates.
        kind: analytic or meromorphic.
        name: label used in tables and reports.
        domain: how radii are interpreted (see module docstring).
        pole_divisor: a function whose zeros contain every pole; lets pole
            counts come from the argument principle when the ledger is
            incomplete.
    """

    z0: complex = 0j
    closed_form: Node | None = None
    series: PowerSeries | None = None
    ledger: ZeroPoleLedger | None = None
    kind: FunctionKind = FunctionKind.ANALYTIC
    name: str = "f"
    domain: Domain = Domain.PUNCTURED
    pole_divisor: PuncturedFunction | None = None

    def __post_init__(self) -> None:
        object.__setattr__(self, "z0", complex(self.z0))
        object.__setattr__(self, "kind", FunctionKind(self.kind))
        object.__setattr__(self, "domain", Domain(self.domain))
        if self.closed_form is None and self.series is None:
            message = f"function '{self.name}' needs a closed form or a series"
            raise SchemaError(message)
        if self.kind is FunctionKind.ANALYTIC and self.ledger and self.ledger.poles:
            message = f"analytic function '{self.name}' cannot declare poles"
            raise LedgerError(message)
        if self.closed_form is not None and self.series is not None:
            self._check_representations()

    # ── Representation helpers ───────────────────────────────────────────

    @property
    def tree(self) -> Node:
        """Closed form if present, otherwise the series as a leaf."""
        if self.closed_form is not None:
            return self.closed_form
        assert self.series is not None
        return SeriesLeaf(self.series, self.name)

    @property
    def is_analytic(self) -> bool:
        return self.kind is FunctionKind.ANALYTIC

    @property
    def effective_ledger(self) -> ZeroPoleLedger:
        """Ledger with the analytic convention (no poles, list complete)."""
        if self.ledger is not None:
            if self.is_analytic and not self.ledger.pole_complete:
                return replace(self.ledger, pole_complete=True)
            return self.ledger
        return ZeroPoleLedger(pole_complete=self.is_analytic)

    def omega_modulus(self, radius: float) -> float:
        """|omega| on the circle of the given radius in this function's domain."""
        if radius <= 0 or not math.isfinite(radius):
            message = f"radius must be positive and finite, got {radius}"
            raise ValueError(message)
        return 1.0 / radius if self.domain is Domain.PUNCTURED else radius

    def circle_points(self, radius: float, phi: ArrayLike) -> np.ndarray:
        """omega values at angles ``phi`` on the circle of the given radius."""
        angles = np.asarray(phi, dtype=np.float64)
        sign = -1.0 if self.domain is Domain.PUNCTURED else 1.0
        return self.omega_modulus(radius) * np.exp(sign * 1j * angles)

    def circle_angle(self, omega: complex) -> float:
        """Angle phi at which the circle through ``omega`` passes it."""
        sign = -1.0 if self.domain is Domain.PUNCTURED else 1.0
        return float(np.mod(sign * np.angle(omega), 2 * np.pi))

    def evaluate_omega(self, omega: ArrayLike) -> tuple[FloatArray, FloatArray]:
        """Evaluate g at omega values, preferring the closed form."""
        if self.closed_form is not None:
            return evaluate(self.closed_form, omega)
        assert self.series is not None
        return self.series.evaluate(omega)

    def _check_representations(self) -> None:
        assert self.series is not None and self.closed_form is not None
        radius = CHECK_RADIUS
        if self.series.residual_radius < 2 * CHECK_RADIUS:
            radius = self.series.residual_radius / 2
        rng = np.random.default_rng(0)
        points = radius * np.exp(2j * np.pi * rng.random(CHECK_POINTS))
        tree_l, _ = evaluate(self.closed_form, points)
        series_l, _ = self.series.evaluate(points)
        both_finite = np.isfinite(tree_l) & np.isfinite(series_l)
        scale = np.maximum(1.0, np.abs(np.where(both_finite, tree_l, 0.0)))
        bad = both_finite & (np.abs(tree_l - series_l) > CHECK_RTOL * scale)
        bad |= np.isfinite(tree_l) != np.isfinite(series_l)
        if np.any(bad):
            worst = int(np.argmax(np.where(both_finite, np.abs(tree_l - series_l), np.inf)))
            message = (
                f"closed form and series of '{self.name}' disagree at "
                f"omega={points[worst]:.6g} ({tree_l[worst]!r} vs {series_l[worst]!r})"
            )
            raise ConsistencyError(message)


# ── Operations ───────────────────────────────────────────────────────────


def eval_log(
    f: PuncturedFunction,
    z: complex | None = None,
    *,
    omega: complex | None = None,
) -> LogComplex:
    """Evaluate ``f`` in log form at a point ``z`` or directly at ``omega``.

    Raises:
        EvaluationAtSingularity: ``z == z0`` (or a plane-domain pole at infinity).
        SeriesOutOfRange: series-only function beyond its residual radius.
    """
    if (z is None) == (omega is None):
        message = "pass exactly one of z or omega"
        raise ValueError(message)
    if omega is None:
        assert z is not None
        if f.domain is Domain.PLANE:
            omega = complex(z)
        else:
            if complex(z) == f.z0:
                message = f"cannot evaluate '{f.name}' at its singular point {f.z0}"
                raise EvaluationAtSingularity(message)
            omega = 1.0 / (f.z0 - complex(z))
    if not (math.isfinite(omega.real) and math.isfinite(omega.imag)):
        message = f"omega={omega} is not finite"
        raise EvaluationAtSingularity(message)
    log_mag, arg = f.evaluate_omega(np.array([omega]))
    value = float(log_mag[0])
    if math.isnan(value):
        message = f"'{f.name}' is undefined at omega={omega}"
        raise EvaluationAtSingularity(message)
    return LogComplex(value, float(arg[0]))


def _shift_ledger(
    ledger: ZeroPoleLedger | None, j: int, in_z: bool
) -> ZeroPoleLedger | None:
    """Ledger of the j-th derivative: poles gain order, zeros become unknown."""
    if ledger is None:
        return None
    poles = []
    for pole in ledger.poles:
        if pole.location == 0 and in_z:
            # omega^-m at z = infinity: omega^2 D lowers the order by one per step.
            if pole.multiplicity > j:
                poles.append(LedgerEntry(0j, pole.multiplicity - j))
        else:
            poles.append(LedgerEntry(pole.location, pole.multiplicity + j))
    return ZeroPoleLedger(
        zeros=(), poles=tuple(poles), zero_complete=False, pole_complete=ledger.pole_complete
    )


def differentiate(f: PuncturedFunction, j: int = 1, wrt: str = "z") -> PuncturedFunction:
    """Return the j-th derivative of ``f`` with respect to ``z`` or ``omega``.

    Derivatives in z are realized as ``omega^2 d/d(omega)`` applied j times.
    In the plane domain ``z`` and ``omega`` coincide.

    Raises:
        UnsupportedNode: a node kind without a derivative rule.
    """
    if j < 0:
        message = f"derivative order must be >= 0, got {j}"
        raise ValueError(message)
    if wrt not in ("z", "w", "omega"):
        message = f"wrt must be 'z' or 'omega', got {wrt!r}"
        raise ValueError(message)
    if j == 0:
        return f
    in_z = wrt == "z" and f.domain is Domain.PUNCTURED
    tree = f.closed_form
    series = f.series
    for _ in range(j):
        if tree is not None:
            tree = z_derivative(tree) if in_z else tree.derivative()
        if series is not None:
            series = series.z_derivative() if in_z else series.derivative()
    suffix = "'" * j if j <= 3 else f"^({j})"
    divisor = f.pole_divisor
    return replace(
        f,
        closed_form=tree,
        series=series,
        ledger=_shift_ledger(f.ledger, j, in_z),
        name=f"{f.name}{suffix}",
        pole_divisor=divisor,
    )


def invert_to_plane(f: PuncturedFunction) -> PuncturedFunction:
    """Toggle between the punctured view of f and the plane view of g.

    The data (tree, series, ledger) is shared: ``g(omega) = f(z0 - 1/omega)``
    is literally the stored function, so applying this twice is the identity.
    """
    target = Domain.PLANE if f.domain is Domain.PUNCTURED else Domain.PUNCTURED
    name = f.name[:-6] if f.name.endswith("_plane") else f"{f.name}_plane"
    divisor = invert_to_plane(f.pole_divisor) if f.pole_divisor is not None else None
    return replace(f, domain=target, name=name, pole_divisor=divisor)


def reciprocal(f: PuncturedFunction) -> PuncturedFunction:
    """``1/f``: zeros and poles swap; kind follows the zero ledger."""
    ledger = f.effective_ledger.swapped()
    analytic = ledger.pole_complete and not ledger.poles
    divisor = None
    if not analytic and not ledger.pole_complete:
        divisor = f
    tree = f.tree
    if isinstance(tree, Div):
        inverted = div(tree.denominator, tree.numerator)
    else:
        inverted = div(ONE, tree)
    return PuncturedFunction(
        z0=f.z0,
        closed_form=inverted,
        ledger=ledger,
        kind=FunctionKind.ANALYTIC if analytic else FunctionKind.MEROMORPHIC,
        name=f"1/{f.name}",
        domain=f.domain,
        pole_divisor=divisor,
    )


def subtract(f: PuncturedFunction, g: PuncturedFunction) -> PuncturedFunction:
    """``f - g`` on the same punctured sphere; zeros are left undeclared."""
    if f.z0 != g.z0 or f.domain is not g.domain:
        message = "subtract needs functions on the same punctured sphere"
        raise SchemaError(message)
    analytic = f.is_analytic and g.is_analytic
    if analytic:
        ledger = ZeroPoleLedger.analytic()
    else:
        poles = {p.location: p for p in f.effective_ledger.poles}
        for p in g.effective_ledger.poles:
            if p.location not in poles or poles[p.location].multiplicity < p.multiplicity:
                poles[p.location] = p
        ledger = ZeroPoleLedger(
            poles=tuple(poles.values()),
            pole_complete=f.effective_ledger.pole_complete and g.effective_ledger.pole_complete,
        )
    series = None
    if f.series is not None and g.series is not None:
        series = f.series.add(g.series.negate())
    closed = None
    if f.closed_form is not None or g.closed_form is not None or series is None:
        closed = Add(f.tree, neg(g.tree))
    return PuncturedFunction(
        z0=f.z0,
        closed_form=closed,
        series=series if closed is None else None,
        ledger=ledger,
        kind=FunctionKind.ANALYTIC if analytic else FunctionKind.MEROMORPHIC,
        name=f"{f.name}-{g.name}",
        domain=f.domain,
    )


__all__ = [
    "Domain",
    "FunctionKind",
    "PuncturedFunction",
    "differentiate",
    "eval_log",
    "invert_to_plane",
    "reciprocal",
    "subtract",
]
