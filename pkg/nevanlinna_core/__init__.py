"""Nevanlinna functionals near a punctured point.

Public surface:
    - :func:`proximity`, :func:`counting`, :func:`characteristic`
    - :func:`max_modulus`, :func:`max_modulus_point`
    - :func:`central_index`, :func:`central_index_at`
    - :func:`count_zeros_annulus`, :func:`zero_counting_profile`,
      :func:`distinct_zero_counts`
    - lemma checks in :mod:`nevanlinna_core.lemma_checks`
    - :class:`QuadratureConfig`, :class:`CircleSample`
"""

from .central_index import central_index, central_index_at
from .config import DEFAULT_QUADRATURE, CircleSample, QuadratureConfig
from .errors import (
    IncompleteLedger,
    MeromorphicMaxModulus,
    NonIntegerWinding,
    PoleOnCircle,
    QuadratureNoConvergence,
    UnresolvedDistinctCount,
    ZeroOnContour,
)
from .functionals import (
    characteristic,
    counting,
    ledger_counting,
    max_modulus,
    max_modulus_point,
    proximity,
)
from .lemma_checks import (
    check_inversion_identity,
    check_log_derivative_bound,
    check_log_derivative_proximity,
    check_reciprocal_boundedness,
    check_wiman_valiron,
)
from .zeros import (
    ZeroCountProfile,
    count_zeros_annulus,
    distinct_zero_counts,
    zero_counting_profile,
)

__all__ = [
    "DEFAULT_QUADRATURE",
    "CircleSample",
    "IncompleteLedger",
    "MeromorphicMaxModulus",
    "NonIntegerWinding",
    "PoleOnCircle",
    "QuadratureConfig",
    "QuadratureNoConvergence",
    "UnresolvedDistinctCount",
    "ZeroCountProfile",
    "ZeroOnContour",
    "central_index",
    "central_index_at",
    "characteristic",
    "check_inversion_identity",
    "check_log_derivative_bound",
    "check_log_derivative_proximity",
    "check_reciprocal_boundedness",
    "check_wiman_valiron",
    "count_zeros_annulus",
    "counting",
    "distinct_zero_counts",
    "ledger_counting",
    "max_modulus",
    "max_modulus_point",
    "proximity",
    "zero_counting_profile",
]
