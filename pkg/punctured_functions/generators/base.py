"""Generator interface for built-in coefficient families.

Each family lives in its own module and implements :class:`SeriesGenerator`.
Parameters arrive as the raw mapping from a function-spec document (minus the
``generator`` key); generators validate them and raise ``SchemaError``.
"""

from __future__ import annotations

from abc import ABC, abstractmethod
from collections.abc import Mapping
from dataclasses import dataclass
from typing import Any

from ..errors import SchemaError
from ..ledger import ZeroPoleLedger
from ..series import PowerSeries

DEFAULT_TERMS = 2000


@dataclass(frozen=True)
class GeneratedSeries:
    """A generated series plus any ledger the family knows exactly."""

    series: PowerSeries
    ledger: ZeroPoleLedger | None = None


class SeriesGenerator(ABC):
    """A named family of power-series coefficients."""

    name: str = "base"
    parameters: tuple[str, ...] = ()

    @abstractmethod
    def build(self, params: Mapping[str, Any]) -> GeneratedSeries:
        """Return the coefficients described by ``params``."""
        raise NotImplementedError

    # ── Shared parameter helpers ─────────────────────────────────────────

    def check_keys(self, params: Mapping[str, Any]) -> None:
        unknown = sorted(set(params) - set(self.parameters))
        if unknown:
            message = f"generator '{self.name}' got unknown parameters: {unknown}"
            raise SchemaError(message)

    def positive_int(self, params: Mapping[str, Any], key: str, default: int) -> int:
        value = params.get(key, default)
        if isinstance(value, bool) or not isinstance(value, int) or value < 1:
            message = f"generator '{self.name}': '{key}' must be a positive integer"
            raise SchemaError(message)
        return value

    def positive_float(self, params: Mapping[str, Any], key: str, default: float) -> float:
        value = params.get(key, default)
        if isinstance(value, bool) or not isinstance(value, (int, float)) or value <= 0:
            message = f"generator '{self.name}': '{key}' must be a positive number"
            raise SchemaError(message)
        return float(value)


def parse_complex(value: Any, *, what: str = "value") -> complex:
    """Read a number, ``[re, im]`` pair or ``{"re": .., "im": ..}`` mapping."""
    if isinstance(value, bool):
        message = f"{what} must be numeric"
        raise SchemaError(message)
    if isinstance(value, (int, float)):
        return complex(float(value), 0.0)
    if isinstance(value, (list, tuple)) and len(value) == 2:
        return complex(float(value[0]), float(value[1]))
    if isinstance(value, Mapping) and "re" in value:
        return complex(float(value["re"]), float(value.get("im", 0.0)))
    message = f"{what} must be a number, [re, im] or {{re, im}}, got {value!r}"
    raise SchemaError(message)
