"""Linear equations ``f^(k) + A_{k-1} f^(k-1) + ... + A_0 f = F`` near z0.

Equation document shape::

    {
      "name": "thm1",
      "k": 2,
      "s": 0,                                  # dominant coefficient, optional
      "z0": [0.0, 0.0],
      "terms": 400,
      "coefficients": {
        "A1": {"closed_form": "1 + w^3"},
        "A0": {"manufacture": true}
      },
      "solution": {"closed_form": "exp(@G)", "leaves": {"G": {...}}},
      "initial": [[1.0, 0.0], [0.0, 0.0]],     # optional with a solution
      "forcing": {"closed_form": "w"}          # optional
    }

Coefficient entries are function documents (see
:mod:`punctured_functions.spec_parser`); at most one may be
``{"manufacture": true}``, which derives it from the ``solution``.
"""

from __future__ import annotations

import logging
from collections.abc import Mapping
from dataclasses import dataclass, field
from typing import Any

from pydantic import BaseModel, ConfigDict, Field, ValidationError

from punctured_functions import (
    FunctionKind,
    LogComplex,
    PuncturedFunction,
    SchemaError,
    parse_function_spec,
    subtract,
)
from punctured_functions.expression import ZERO, Node, add, mul, neg
from punctured_functions.function import differentiate
from punctured_functions.generators import parse_complex

from .manufacture import manufacture_coefficient
from .taylor import initial_values, taylor_series

logger = logging.getLogger(__name__)

DEFAULT_TERMS = 400
MANUFACTURE_KEY = "manufacture"


@dataclass(frozen=True, eq=False)
class OdeSpec:
    """An order-k linear equation with its data for the series solver.

    Attributes:
        k: order.
        coefficients: ``A_0 .. A_{k-1}``.
        initial: ``g(0), g'(0), ..., g^(k-1)(0)`` in the omega-plane.
        terms: truncation length N of the solution series.
        s: index of the dominant coefficient, if the equation names one.
        forcing: right-hand side F (None for the homogeneous equation).
        solution: the chosen solution of a manufactured equation.
        manufactured: slot derived from ``solution``, if any.
        name: label for reports.
        z0: the singular point.
        document: the validated source document, when parsed from one.
    """

    k: int
    coefficients: tuple[PuncturedFunction, ...]
    initial: tuple[LogComplex, ...]
    terms: int = DEFAULT_TERMS
    s: int | None = None
    forcing: PuncturedFunction | None = None
    solution: PuncturedFunction | None = None
    manufactured: int | None = None
    name: str = "ode"
    z0: complex = 0j
    document: dict[str, Any] | None = field(default=None, repr=False)

    def __post_init__(self) -> None:
        if self.k < 1:
            message = f"equation order must be >= 1, got {self.k}"
            raise SchemaError(message)
        if len(self.coefficients) != self.k:
            message = f"order {self.k} needs {self.k} coefficients, got {len(self.coefficients)}"
            raise SchemaError(message)
        if len(self.initial) != self.k:
            message = f"order {self.k} needs {self.k} initial values, got {len(self.initial)}"
            raise SchemaError(message)
        if self.terms <= 4 * self.k:
            message = f"terms must exceed 4k = {4 * self.k}, got {self.terms}"
            raise SchemaError(message)
        if self.forcing is None and all(v.is_zero for v in self.initial):
            message = "initial data of a homogeneous equation must not all vanish"
            raise SchemaError(message)
        if self.s is not None and not 0 <= self.s < self.k:
            message = f"dominant index s={self.s} outside 0..{self.k - 1}"
            raise SchemaError(message)

    def coefficient_map(self) -> dict[int, PuncturedFunction]:
        return dict(enumerate(self.coefficients))

    @property
    def coefficients_analytic(self) -> bool:
        return all(c.is_analytic for c in self.coefficients)


# ── Documents ────────────────────────────────────────────────────────────


class EquationDocument(BaseModel):
    """Validated equation document."""

    model_config = ConfigDict(extra="forbid")

    name: str = "ode"
    k: int = Field(ge=1)
    s: int | None = None
    z0: tuple[float, float] = (0.0, 0.0)
    terms: int = Field(default=DEFAULT_TERMS, gt=0)
    coefficients: dict[str, dict[str, Any]]
    solution: dict[str, Any] | None = None
    initial: list[float | tuple[float, float]] | None = None
    forcing: dict[str, Any] | None = None


def _load(document: str | bytes | Mapping[str, Any]) -> EquationDocument:
    try:
        if isinstance(document, (str, bytes)):
            return EquationDocument.model_validate_json(document)
        return EquationDocument.model_validate(dict(document))
    except ValidationError as exc:
        first = exc.errors()[0]
        message = f"invalid equation: {first['msg']} at {first['loc']}"
        raise SchemaError(message) from exc


def _function(doc: EquationDocument, body: Mapping[str, Any], default_name: str) -> PuncturedFunction:
    merged = {"name": default_name, **body, "z0": list(doc.z0)}
    return parse_function_spec(merged)


def ode_from_spec(document: str | bytes | Mapping[str, Any]) -> OdeSpec:
    """Build an :class:`OdeSpec` from an equation document.

    Raises:
        SchemaError: malformed document, missing or extra coefficients, a
            manufactured slot without a solution, or no initial data.
        DivisorDegenerate / ResidualTooLarge: manufacturing failed.
    """
    doc = _load(document)
    expected = {f"A{j}" for j in range(doc.k)}
    given = set(doc.coefficients)
    if given != expected:
        missing = sorted(expected - given)
        extra = sorted(given - expected)
        message = f"equation '{doc.name}' coefficients: missing {missing}, unexpected {extra}"
        raise SchemaError(message)

    manufactured = [
        j for j in range(doc.k) if doc.coefficients[f"A{j}"].get(MANUFACTURE_KEY) is True
    ]
    for j in manufactured:
        if set(doc.coefficients[f"A{j}"]) != {MANUFACTURE_KEY}:
            message = f"manufactured coefficient A{j} takes no other fields"
            raise SchemaError(message)
    if len(manufactured) > 1:
        message = f"at most one coefficient can be manufactured, got {manufactured}"
        raise SchemaError(message)

    solution = None
    if doc.solution is not None:
        solution = _function(doc, doc.solution, f"{doc.name}_f")
    elif manufactured:
        message = f"equation '{doc.name}' manufactures A{manufactured[0]} but has no solution"
        raise SchemaError(message)

    others = {
        j: _function(doc, doc.coefficients[f"A{j}"], f"{doc.name}_A{j}")
        for j in range(doc.k)
        if j not in manufactured
    }
    coefficients = dict(others)
    slot = manufactured[0] if manufactured else None
    if slot is not None:
        assert solution is not None
        coefficients[slot] = manufacture_coefficient(
            solution, others, slot, doc.k, name=f"{doc.name}_A{slot}", terms=doc.terms
        )

    if doc.initial is not None:
        initial = tuple(
            LogComplex.from_complex(parse_complex(v, what="initial value")) for v in doc.initial
        )
    elif solution is not None:
        initial = tuple(
            LogComplex.from_complex(v)
            for v in initial_values(taylor_series(solution, doc.terms), doc.k)
        )
    else:
        message = f"equation '{doc.name}' needs 'initial' or a 'solution'"
        raise SchemaError(message)

    forcing = None
    if doc.forcing is not None:
        forcing = _function(doc, doc.forcing, f"{doc.name}_F")

    return OdeSpec(
        k=doc.k,
        coefficients=tuple(coefficients[j] for j in range(doc.k)),
        initial=initial,
        terms=doc.terms,
        s=doc.s,
        forcing=forcing,
        solution=solution,
        manufactured=slot,
        name=doc.name,
        z0=complex(*doc.z0),
        document=doc.model_dump(mode="json", exclude_none=True),
    )


# ── Nonhomogeneous equations ─────────────────────────────────────────────


def _operator_tree(ode: OdeSpec, f: PuncturedFunction) -> Node:
    tree = differentiate(f, ode.k).tree
    for j, coefficient in enumerate(ode.coefficients):
        tree = add(tree, mul(coefficient.tree, differentiate(f, j).tree))
    return tree


def forcing_of(ode: OdeSpec, f: PuncturedFunction) -> PuncturedFunction:
    """``L(f) = f^(k) + sum A_j f^(j)`` as a closed-form function."""
    analytic = f.is_analytic and ode.coefficients_analytic
    return PuncturedFunction(
        z0=ode.z0,
        closed_form=_operator_tree(ode, f),
        kind=FunctionKind.ANALYTIC if analytic else FunctionKind.MEROMORPHIC,
        name=f"L({f.name})",
        domain=f.domain,
    )


def shift_solution(
    ode: OdeSpec, f: PuncturedFunction, phi: PuncturedFunction
) -> tuple[OdeSpec, PuncturedFunction]:
    """Substitute ``g = f - phi``: g solves ``L(g) = F - L(phi)``.

    Returns the shifted equation and g. Zeros of g are the phi-points of f.
    """
    g = subtract(f, phi)
    forcing_tree = ode.forcing.tree if ode.forcing is not None else ZERO
    forcing_tree = add(forcing_tree, neg(_operator_tree(ode, phi)))
    analytic = phi.is_analytic and ode.coefficients_analytic and (
        ode.forcing is None or ode.forcing.is_analytic
    )
    forcing = PuncturedFunction(
        z0=ode.z0,
        closed_form=forcing_tree,
        kind=FunctionKind.ANALYTIC if analytic else FunctionKind.MEROMORPHIC,
        name=f"{ode.name}_F",
        domain=f.domain,
    )
    f_initial = [v.to_complex() for v in ode.initial]
    phi_initial = initial_values(taylor_series(phi, ode.terms), ode.k)
    initial = tuple(
        LogComplex.from_complex(a - b) for a, b in zip(f_initial, phi_initial, strict=True)
    )
    shifted = OdeSpec(
        k=ode.k,
        coefficients=ode.coefficients,
        initial=initial,
        terms=ode.terms,
        s=ode.s,
        forcing=forcing,
        solution=g,
        name=f"{ode.name}_shifted",
        z0=ode.z0,
    )
    logger.debug("shifted '%s' by '%s'", ode.name, phi.name)
    return shifted, g
