"""Function-spec documents (JSON) to :class:`PuncturedFunction`.

Document shape::

    {
      "name": "exp_gaussian",
      "z0": [0.0, 0.0],
      "kind": "analytic",                  # optional, inferred when absent
      "closed_form": "exp(@G)",            # and/or "series"
      "leaves": {"G": {"generator": "gaussian", "sigma_sq": 4}},
      "series": {"generator": "exponential", "terms": 2000},
      "ledger": {"zeros": [{"re": 1, "im": 0, "mult": 2}], "poles": [],
                 "zero_complete": false, "pole_complete": true},
      "domain": "punctured"
    }

Declared ledger entries are verified by the argument principle on a small
circle around each entry; complete ledgers are also checked on |omega| = 1.
"""

from __future__ import annotations

import json
import logging
from collections.abc import Mapping
from typing import Any

from pydantic import BaseModel, ConfigDict, Field, ValidationError, field_validator

from .argument import NonIntegerWinding, ZeroOnContour, winding_number
from .errors import LedgerError, SchemaError
from .expression import contains_division, parse_expression
from .function import Domain, FunctionKind, PuncturedFunction
from .generators import build_series
from .ledger import LedgerEntry, ZeroPoleLedger

logger = logging.getLogger(__name__)

LOCAL_RADIUS = 0.5
UNIT_CIRCLE_CLEARANCE = 1e-3


class LedgerEntryDocument(BaseModel):
    model_config = ConfigDict(extra="forbid")

    re: float
    im: float = 0.0
    mult: int = Field(default=1, ge=1)


class LedgerDocument(BaseModel):
    model_config = ConfigDict(extra="forbid")

    zeros: list[LedgerEntryDocument] = Field(default_factory=list)
    poles: list[LedgerEntryDocument] = Field(default_factory=list)
    zero_complete: bool = False
    pole_complete: bool = False


class FunctionDocument(BaseModel):
    """Validated function-spec document."""

    model_config = ConfigDict(extra="forbid")

    name: str = "f"
    z0: tuple[float, float] = (0.0, 0.0)
    kind: FunctionKind | None = None
    closed_form: str | None = None
    leaves: dict[str, dict[str, Any]] = Field(default_factory=dict)
    series: dict[str, Any] | None = None
    ledger: LedgerDocument | None = None
    domain: Domain = Domain.PUNCTURED
    pole_divisor: str | None = None

    @field_validator("closed_form")
    @classmethod
    def _non_blank(cls, value: str | None) -> str | None:
        if value is not None and not value.strip():
            message = "closed_form must not be blank"
            raise ValueError(message)
        return value


def _entries(items: list[LedgerEntryDocument]) -> tuple[LedgerEntry, ...]:
    return tuple(LedgerEntry(complex(e.re, e.im), e.mult) for e in items)


def _load(document: str | bytes | Mapping[str, Any]) -> FunctionDocument:
    try:
        if isinstance(document, (str, bytes)):
            return FunctionDocument.model_validate_json(document)
        return FunctionDocument.model_validate(dict(document))
    except ValidationError as exc:
        message = f"invalid function spec: {exc.errors()[0]['msg']} at {exc.errors()[0]['loc']}"
        raise SchemaError(message) from exc


def parse_function_spec(
    document: str | bytes | Mapping[str, Any], *, verify_ledger: bool = True
) -> PuncturedFunction:
    """Build a function from a spec document.

    Args:
        document: JSON text or an already-decoded mapping.
        verify_ledger: run the argument-principle checks on declared entries.

    Raises:
        SchemaError: malformed document or expression.
        ConsistencyError: closed form and series disagree.
        LedgerError: ledger contradicts the argument principle.
    """
    doc = _load(document)
    if doc.closed_form is None and doc.series is None:
        message = f"function '{doc.name}' needs 'closed_form' or 'series'"
        raise SchemaError(message)

    leaves = {label: build_series(spec).series for label, spec in doc.leaves.items()}
    closed = parse_expression(doc.closed_form, leaves) if doc.closed_form else None

    series = None
    generated_ledger = None
    if doc.series is not None:
        generated = build_series(doc.series)
        series = generated.series
        generated_ledger = generated.ledger

    ledger = None
    if doc.ledger is not None:
        ledger = ZeroPoleLedger(
            zeros=_entries(doc.ledger.zeros),
            poles=_entries(doc.ledger.poles),
            zero_complete=doc.ledger.zero_complete,
            pole_complete=doc.ledger.pole_complete,
        )
    elif generated_ledger is not None:
        ledger = generated_ledger

    kind = doc.kind
    if kind is None:
        has_poles = ledger is not None and bool(ledger.poles)
        may_have_poles = closed is not None and contains_division(closed)
        kind = FunctionKind.MEROMORPHIC if has_poles or may_have_poles else FunctionKind.ANALYTIC

    divisor = None
    if doc.pole_divisor is not None:
        divisor = PuncturedFunction(
            z0=complex(*doc.z0),
            closed_form=parse_expression(doc.pole_divisor, leaves),
            name=f"{doc.name}_divisor",
            domain=doc.domain,
        )

    function = PuncturedFunction(
        z0=complex(*doc.z0),
        closed_form=closed,
        series=series,
        ledger=ledger,
        kind=kind,
        name=doc.name,
        domain=doc.domain,
        pole_divisor=divisor,
    )
    if verify_ledger and ledger is not None and doc.ledger is not None:
        verify_ledger_counts(function)
    logger.debug("parsed function '%s' (%s)", function.name, function.kind.value)
    return function


def _local_radius(location: complex, others: list[complex]) -> float:
    """Half the distance to the nearest other entry or to the origin."""
    gaps = [abs(location - other) for other in others]
    if location != 0:
        gaps.append(abs(location))
    return 0.5 * min(gaps) if gaps else LOCAL_RADIUS


def verify_ledger_counts(f: PuncturedFunction) -> None:
    """Check every declared ledger entry with the argument principle.

    Raises:
        LedgerError: a local or global winding count disagrees with the ledger.
    """
    ledger = f.effective_ledger
    signed = [(e, 1) for e in ledger.zeros] + [(e, -1) for e in ledger.poles]
    locations = [e.location for e, _ in signed]
    for entry, sign in signed:
        others = [loc for loc in locations if loc != entry.location]
        radius = _local_radius(entry.location, others)
        expected = sign * entry.multiplicity
        try:
            counted = winding_number(f, entry.location, radius)
        except (ZeroOnContour, NonIntegerWinding) as exc:
            message = f"cannot verify ledger entry at {entry.location}: {exc}"
            raise LedgerError(message) from exc
        if counted != expected:
            label = "zero" if sign > 0 else "pole"
            message = (
                f"ledger {label} at omega={entry.location} declares multiplicity "
                f"{entry.multiplicity}, argument principle counts {abs(counted)}"
            )
            raise LedgerError(message)

    if not (ledger.zero_complete and ledger.pole_complete):
        return
    if any(abs(abs(loc) - 1.0) < UNIT_CIRCLE_CLEARANCE for loc in locations):
        return
    expected = sum(sign * e.multiplicity for e, sign in signed if abs(e.location) < 1.0)
    try:
        counted = winding_number(f, 0j, 1.0)
    except (ZeroOnContour, NonIntegerWinding) as exc:
        message = f"cannot verify complete ledger on |omega|=1: {exc}"
        raise LedgerError(message) from exc
    if counted != expected:
        message = (
            f"complete ledger predicts winding {expected} on |omega|=1, "
            f"argument principle gives {counted}"
        )
        raise LedgerError(message)


def function_spec_to_json(document: Mapping[str, Any]) -> str:
    """Canonical JSON text for a spec mapping (sorted keys, two-space indent)."""
    return json.dumps(document, indent=2, sort_keys=True)


