"""Zero/pole ledgers stored in omega-coordinates."""

from __future__ import annotations

import math
from collections.abc import Iterable
from dataclasses import dataclass

from .errors import LedgerError

# Two ledger locations closer than this are considered the same point.
LOCATION_TOL = 1e-12


@dataclass(frozen=True, slots=True)
class LedgerEntry:
    """One zero or pole: location in the omega-plane and multiplicity."""

    location: complex
    multiplicity: int = 1

    def __post_init__(self) -> None:
        if self.multiplicity < 1:
            message = f"multiplicity must be >= 1, got {self.multiplicity}"
            raise LedgerError(message)
        location = complex(self.location)
        if not (math.isfinite(location.real) and math.isfinite(location.imag)):
            message = f"ledger location must be finite, got {location}"
            raise LedgerError(message)
        object.__setattr__(self, "location", location)

    def to_dict(self) -> dict[str, float | int]:
        return {
            "re": self.location.real,
            "im": self.location.imag,
            "mult": self.multiplicity,
        }


def _same(a: complex, b: complex) -> bool:
    return abs(a - b) <= LOCATION_TOL * max(1.0, abs(a), abs(b))


@dataclass(frozen=True)
class ZeroPoleLedger:
    """Declared zeros and poles of g(omega).

    ``zero_complete``/``pole_complete`` state that the respective list holds
    every zero/pole of g in the omega-plane.
    """

    zeros: tuple[LedgerEntry, ...] = ()
    poles: tuple[LedgerEntry, ...] = ()
    zero_complete: bool = False
    pole_complete: bool = False

    def __post_init__(self) -> None:
        object.__setattr__(self, "zeros", tuple(self.zeros))
        object.__setattr__(self, "poles", tuple(self.poles))
        for label, entries in (("zeros", self.zeros), ("poles", self.poles)):
            for i, entry in enumerate(entries):
                for other in entries[i + 1 :]:
                    if _same(entry.location, other.location):
                        message = f"duplicate location {entry.location} in {label}"
                        raise LedgerError(message)
        for zero in self.zeros:
            for pole in self.poles:
                if _same(zero.location, pole.location):
                    message = f"location {zero.location} is both a zero and a pole"
                    raise LedgerError(message)

    @classmethod
    def empty(cls, *, complete: bool = False) -> ZeroPoleLedger:
        return cls(zero_complete=complete, pole_complete=complete)

    @classmethod
    def analytic(cls, zeros: Iterable[LedgerEntry] = (), *, zero_complete: bool = False) -> ZeroPoleLedger:
        """Ledger of a function with no poles in the omega-plane."""
        return cls(tuple(zeros), (), zero_complete=zero_complete, pole_complete=True)

    def swapped(self) -> ZeroPoleLedger:
        """Ledger of the reciprocal: zeros and poles trade places."""
        return ZeroPoleLedger(
            zeros=self.poles,
            poles=self.zeros,
            zero_complete=self.pole_complete,
            pole_complete=self.zero_complete,
        )

    def pole_multiplicity_at_origin(self) -> int:
        return sum(p.multiplicity for p in self.poles if abs(p.location) == 0.0)

    def to_dict(self) -> dict[str, object]:
        return {
            "zeros": [z.to_dict() for z in self.zeros],
            "poles": [p.to_dict() for p in self.poles],
            "zero_complete": self.zero_complete,
            "pole_complete": self.pole_complete,
        }
