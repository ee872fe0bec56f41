"""Functions analytic or meromorphic on the sphere punctured at z0.

Everything is stored through ``omega = 1/(z0 - z)`` so that the classical
function ``g(omega) = f(z0 - 1/omega)`` is the stored object.

Public surface:
    - :class:`PuncturedFunction`, :class:`FunctionKind`, :class:`Domain`
    - :func:`eval_log`, :func:`differentiate`, :func:`invert_to_plane`,
      :func:`reciprocal`, :func:`subtract`
    - :func:`parse_function_spec`, :func:`load_catalog_function`
    - :class:`LogComplex`, :class:`PowerSeries`, :class:`ZeroPoleLedger`
    - :func:`winding_number`
"""

from .argument import NonIntegerWinding, ZeroOnContour, winding_number
from .catalog import catalog_document, catalog_names, load_catalog_function
from .errors import (
    ConsistencyError,
    DivisorDegenerate,
    EvaluationAtSingularity,
    ExpressionSyntaxError,
    GrowthLabError,
    LedgerError,
    SchemaError,
    SeriesOutOfRange,
    UnsupportedNode,
)
from .expression import Node, parse_expression
from .function import (
    Domain,
    FunctionKind,
    PuncturedFunction,
    differentiate,
    eval_log,
    invert_to_plane,
    reciprocal,
    subtract,
)
from .ledger import LedgerEntry, ZeroPoleLedger
from .log_complex import LogComplex, log_add
from .series import PowerSeries
from .spec_parser import parse_function_spec, verify_ledger_counts

__all__ = [
    "ConsistencyError",
    "DivisorDegenerate",
    "Domain",
    "EvaluationAtSingularity",
    "ExpressionSyntaxError",
    "FunctionKind",
    "GrowthLabError",
    "LedgerEntry",
    "LedgerError",
    "LogComplex",
    "Node",
    "NonIntegerWinding",
    "PowerSeries",
    "PuncturedFunction",
    "SchemaError",
    "SeriesOutOfRange",
    "UnsupportedNode",
    "ZeroOnContour",
    "ZeroPoleLedger",
    "catalog_document",
    "catalog_names",
    "differentiate",
    "eval_log",
    "invert_to_plane",
    "load_catalog_function",
    "log_add",
    "parse_expression",
    "parse_function_spec",
    "reciprocal",
    "subtract",
    "verify_ledger_counts",
    "winding_number",
]
