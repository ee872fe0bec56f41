"""Growth tables and estimates of orders, types and related limits.

Public surface:
    - :class:`RadiusGrid`, :class:`GrowthTable`, :func:`sample_growth`
    - :func:`estimate_order`, :func:`estimate_type`, :func:`estimate_delta`,
      :func:`estimate_proximity_ratio`
    - :class:`OrderEstimate`, :class:`Source`, :class:`Flavor`
"""

from .errors import GridError, InsufficientData, OrderOutOfRange, TooManyFailures
from .estimators import (
    Flavor,
    Functional,
    OrderEstimate,
    Source,
    envelope_slopes,
    estimate_delta,
    estimate_order,
    estimate_proximity_ratio,
    estimate_type,
    iterated_log_plus,
    radius_axis,
)
from .grid import RadiusGrid
from .sampling import sample_growth
from .table import COLUMNS, SCHEMA_VERSION, GrowthTable

__all__ = [
    "COLUMNS",
    "SCHEMA_VERSION",
    "Flavor",
    "Functional",
    "GridError",
    "GrowthTable",
    "InsufficientData",
    "OrderEstimate",
    "OrderOutOfRange",
    "RadiusGrid",
    "Source",
    "TooManyFailures",
    "envelope_slopes",
    "estimate_delta",
    "estimate_order",
    "estimate_proximity_ratio",
    "estimate_type",
    "iterated_log_plus",
    "radius_axis",
    "sample_growth",
]
