"""Gaussian coefficients ``a_n = scale * exp(-n^2 / (2 sigma_sq))``.

``log M(R) ~ sigma_sq (log R)^2 / 2``: logarithmic order 2, type sigma_sq / 2.
"""

from __future__ import annotations

import math
from collections.abc import Mapping
from typing import Any

import numpy as np

from ..series import PowerSeries
from .base import DEFAULT_TERMS, GeneratedSeries, SeriesGenerator


class GaussianGenerator(SeriesGenerator):
    name = "gaussian"
    parameters = ("sigma_sq", "terms", "scale")

    def build(self, params: Mapping[str, Any]) -> GeneratedSeries:
        self.check_keys(params)
        sigma_sq = self.positive_float(params, "sigma_sq", 1.0)
        terms = self.positive_int(params, "terms", DEFAULT_TERMS)
        scale = self.positive_float(params, "scale", 1.0)
        n = np.arange(terms, dtype=np.float64)
        log_mag = math.log(scale) - n * n / (2.0 * sigma_sq)
        return GeneratedSeries(PowerSeries(log_mag, np.zeros(terms)))
