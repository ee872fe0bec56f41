"""Taylor series at omega = 0 of closed-form trees, computed in log domain."""

from __future__ import annotations

import math

import numpy as np

from punctured_functions import PowerSeries, PuncturedFunction, UnsupportedNode
from punctured_functions.expression import (
    Add,
    Const,
    Div,
    Exp,
    LogOmega,
    Mul,
    Node,
    Omega,
    Pow,
    SeriesLeaf,
)
from punctured_functions.log_complex import log_sum, to_log_arrays


def exp_series(a: PowerSeries, terms: int) -> PowerSeries:
    """``exp`` of a series: ``n c_n = sum_{k=1..n} k a_k c_{n-k}``."""
    a_l = np.full(terms, -np.inf)
    a_t = np.zeros(terms)
    count = min(terms, a.terms)
    a_l[:count] = a.log_mag[:count]
    a_t[:count] = a.arg[:count]
    c_l = np.full(terms, -np.inf)
    c_t = np.zeros(terms)
    a0 = a.coefficient(0).to_complex()
    c_l[0] = a0.real
    c_t[0] = a0.imag
    k = np.arange(1, terms, dtype=np.float64)
    log_k = np.log(k)
    for n in range(1, terms):
        l, t = log_sum(
            log_k[:n] + a_l[1 : n + 1] + c_l[n - 1 :: -1],
            a_t[1 : n + 1] + c_t[n - 1 :: -1],
        )
        c_l[n] = float(l) - math.log(n)
        c_t[n] = float(t)
    return PowerSeries(c_l, c_t)


def _product(a: PowerSeries, b: PowerSeries, terms: int) -> PowerSeries:
    if a.exact and b.exact:
        return a.multiply(b)
    return a.multiply(b, terms)


def _power(base: PowerSeries, exponent: int, terms: int) -> PowerSeries:
    result = PowerSeries.from_complex([1.0], exact=True)
    square = base
    remaining = exponent
    while remaining:
        if remaining & 1:
            result = _product(result, square, terms)
        remaining >>= 1
        if remaining:
            square = _product(square, square, terms)
    return result


def series_of(node: Node, terms: int) -> PowerSeries:
    """Taylor coefficients ``a_0 .. a_{terms-1}`` of a tree at omega = 0.

    Polynomial subtrees stay exact; anything else is truncated to ``terms``.

    Raises:
        UnsupportedNode: ``logw`` (no expansion at the origin).
        DivisorDegenerate: a division whose divisor vanishes at the origin.
    """
    if isinstance(node, Const):
        return PowerSeries.from_complex([complex(node.value)], exact=True)
    if isinstance(node, Omega):
        return PowerSeries.from_complex([0.0, 1.0], exact=True)
    if isinstance(node, SeriesLeaf):
        return node.series.truncate(terms)
    if isinstance(node, Add):
        total = series_of(node.left, terms).add(series_of(node.right, terms))
        return total if total.exact else total.truncate(terms)
    if isinstance(node, Mul):
        return _product(series_of(node.left, terms), series_of(node.right, terms), terms)
    if isinstance(node, Div):
        return series_of(node.numerator, terms).divide(series_of(node.denominator, terms), terms)
    if isinstance(node, Pow):
        base = series_of(node.base, terms)
        if node.exponent >= 0:
            return _power(base, node.exponent, terms)
        one = PowerSeries.from_complex([1.0], exact=True)
        return one.divide(_power(base, -node.exponent, terms), terms)
    if isinstance(node, Exp):
        return exp_series(series_of(node.argument, terms), terms)
    if isinstance(node, LogOmega):
        message = "logw has no Taylor expansion at omega = 0"
        raise UnsupportedNode(message)
    message = f"no Taylor rule for node {type(node).__name__}"
    raise UnsupportedNode(message)


def taylor_series(f: PuncturedFunction, terms: int) -> PowerSeries:
    """The function's own series when it has one, else the tree's expansion."""
    if f.series is not None:
        return f.series
    assert f.closed_form is not None
    return series_of(f.closed_form, terms)


def initial_values(series: PowerSeries, k: int) -> list[complex]:
    """``g^(n)(0) = n! a_n`` for ``n < k``."""
    return [math.factorial(n) * series.coefficient(n).to_complex() for n in range(k)]


def to_log_pair(values: list[complex]) -> tuple[np.ndarray, np.ndarray]:
    return to_log_arrays(np.asarray(values, dtype=np.complex128))
