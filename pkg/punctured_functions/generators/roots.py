"""Polynomials given by their roots: ``prod_j (1 - omega / rho_j)``.

The product is formed in log domain so roots spread over many orders of
magnitude stay representable. The zero ledger is complete by construction.
"""

from __future__ import annotations

import cmath
import math
from collections.abc import Mapping
from typing import Any

import numpy as np

from ..errors import SchemaError
from ..ledger import LedgerEntry, ZeroPoleLedger
from ..series import PowerSeries
from .base import GeneratedSeries, SeriesGenerator, parse_complex


class RootsGenerator(SeriesGenerator):
    name = "roots"
    parameters = ("roots", "log_moduli")

    def build(self, params: Mapping[str, Any]) -> GeneratedSeries:
        self.check_keys(params)
        roots = self._roots(params)
        if any(r == 0 for r in roots):
            message = "generator 'roots': roots must be nonzero"
            raise SchemaError(message)

        product = PowerSeries(np.array([0.0]), np.array([0.0]), exact=True)
        counts: dict[complex, int] = {}
        for root in roots:
            # 1 - omega / rho
            factor = PowerSeries(
                np.array([0.0, -math.log(abs(root))]),
                np.array([0.0, math.pi - cmath.phase(root)]),
                exact=True,
            )
            product = product.multiply(factor)
            counts[root] = counts.get(root, 0) + 1

        ledger = ZeroPoleLedger.analytic(
            (LedgerEntry(loc, mult) for loc, mult in counts.items()),
            zero_complete=True,
        )
        return GeneratedSeries(product, ledger)

    def _roots(self, params: Mapping[str, Any]) -> list[complex]:
        if "log_moduli" in params:
            # Positive real roots e^t, the compact way to write geometric ladders.
            raw = params["log_moduli"]
            if not isinstance(raw, list) or not raw:
                message = "generator 'roots': 'log_moduli' must be a non-empty list"
                raise SchemaError(message)
            return [complex(math.exp(float(t)), 0.0) for t in raw]
        raw = params.get("roots")
        if not isinstance(raw, list) or not raw:
            message = "generator 'roots' needs a non-empty 'roots' list"
            raise SchemaError(message)
        return [parse_complex(r, what="root") for r in raw]
