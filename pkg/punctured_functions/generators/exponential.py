"""Exponential coefficients ``rate^n / n!`` (the series of ``exp(rate * omega)``)."""

from __future__ import annotations

import cmath
import math
from collections.abc import Mapping
from typing import Any

import numpy as np
from scipy.special import gammaln

from ..errors import SchemaError
from ..series import PowerSeries
from .base import DEFAULT_TERMS, GeneratedSeries, SeriesGenerator, parse_complex


class ExponentialGenerator(SeriesGenerator):
    name = "exponential"
    parameters = ("rate", "terms")

    def build(self, params: Mapping[str, Any]) -> GeneratedSeries:
        self.check_keys(params)
        rate = parse_complex(params.get("rate", 1.0), what="exponential rate")
        if rate == 0:
            message = "generator 'exponential': 'rate' must be nonzero"
            raise SchemaError(message)
        terms = self.positive_int(params, "terms", DEFAULT_TERMS)
        n = np.arange(terms, dtype=np.float64)
        log_mag = n * math.log(abs(rate)) - gammaln(n + 1.0)
        arg = n * cmath.phase(rate)
        return GeneratedSeries(PowerSeries(log_mag, arg))
