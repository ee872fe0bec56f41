"""Explicit coefficient lists.

``explicit`` treats the list as the truncation of an infinite series, so it
gets a finite residual radius; ``polynomial`` declares the list exact.
"""

from __future__ import annotations

from collections.abc import Mapping
from typing import Any

import numpy as np

from ..errors import SchemaError
from ..series import PowerSeries
from .base import GeneratedSeries, SeriesGenerator, parse_complex


def _coefficients(name: str, params: Mapping[str, Any]) -> np.ndarray:
    raw = params.get("coefficients")
    if not isinstance(raw, list) or not raw:
        message = f"generator '{name}' needs a non-empty 'coefficients' list"
        raise SchemaError(message)
    return np.array(
        [parse_complex(c, what=f"{name} coefficient") for c in raw], dtype=np.complex128
    )


class ExplicitGenerator(SeriesGenerator):
    name = "explicit"
    parameters = ("coefficients",)

    def build(self, params: Mapping[str, Any]) -> GeneratedSeries:
        self.check_keys(params)
        return GeneratedSeries(PowerSeries.from_complex(_coefficients(self.name, params)))


class PolynomialGenerator(SeriesGenerator):
    name = "polynomial"
    parameters = ("coefficients",)

    def build(self, params: Mapping[str, Any]) -> GeneratedSeries:
        self.check_keys(params)
        coefficients = _coefficients(self.name, params)
        return GeneratedSeries(PowerSeries.from_complex(coefficients, exact=True))
