"""Gap series: Gaussian coefficients kept only at indices ``base^k``.

The gaps make upper and lower logarithmic type differ, which the regular
Gaussian family cannot show.
"""

from __future__ import annotations

from collections.abc import Mapping
from typing import Any

import numpy as np

from ..errors import SchemaError
from ..series import PowerSeries
from .base import DEFAULT_TERMS, GeneratedSeries, SeriesGenerator


class LacunaryGenerator(SeriesGenerator):
    name = "lacunary"
    parameters = ("base", "sigma_sq", "terms")

    def build(self, params: Mapping[str, Any]) -> GeneratedSeries:
        self.check_keys(params)
        base = self.positive_int(params, "base", 2)
        if base < 2:
            message = "generator 'lacunary': 'base' must be >= 2"
            raise SchemaError(message)
        sigma_sq = self.positive_float(params, "sigma_sq", 1.0)
        terms = self.positive_int(params, "terms", DEFAULT_TERMS)
        log_mag = np.full(terms, -np.inf)
        log_mag[0] = 0.0
        index = 1
        while index < terms:
            log_mag[index] = -(index * index) / (2.0 * sigma_sq)
            index *= base
        return GeneratedSeries(PowerSeries(log_mag, np.zeros(terms)))
