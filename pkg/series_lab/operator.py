"""Expansion of ``(omega^2 d/d(omega))^j``, the z-derivative seen from omega."""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

MAX_ORDER = 64


@dataclass(frozen=True)
class OperatorExpansion:
    """``(omega^2 D)^j = sum_{i=1..j} rows[i-1] * omega^(j+i) * D^i``.

    Rows are exact Python integers for every supported j.
    """

    j: int
    rows: tuple[int, ...]

    def coefficient(self, i: int) -> int:
        """``a_{j,i}``; zero outside ``1..j``."""
        return self.rows[i - 1] if 1 <= i <= self.j else 0

    def monomial_factor(self, n: int) -> int:
        """c with ``(omega^2 D)^j omega^n = c omega^(n+j)``."""
        return sum(a * math.perm(n, i) for i, a in enumerate(self.rows, start=1))


@lru_cache(maxsize=MAX_ORDER)
def expand_operator(j: int) -> OperatorExpansion:
    """Rows of ``(omega^2 D)^j`` via ``a_{j+1,i} = (j+i) a_{j,i} + a_{j,i-1}``.

    Raises:
        ValueError: j outside ``1..64``.
    """
    if not 1 <= j <= MAX_ORDER:
        message = f"operator order must be in 1..{MAX_ORDER}, got {j}"
        raise ValueError(message)
    rows = [1]
    for order in range(1, j):
        previous = [0, *rows, 0]
        rows = [(order + i) * previous[i] + previous[i - 1] for i in range(1, order + 2)]
    return OperatorExpansion(j=j, rows=tuple(rows))
