"""Named function documents (``catalog:NAME`` on the command line)."""

from __future__ import annotations

import copy
import math
from typing import Any

from .errors import SchemaError
from .function import PuncturedFunction

_LADDER = list(range(1, 41))

CATALOG: dict[str, dict[str, Any]] = {
    "constant": {"name": "constant", "closed_form": "5"},
    "identity": {"name": "identity", "closed_form": "w"},
    "rational_d1": {"name": "rational_d1", "closed_form": "w"},
    "rational_d2": {"name": "rational_d2", "closed_form": "w^2"},
    "rational_d3": {"name": "rational_d3", "closed_form": "w^3"},
    "shifted_pole": {
        "name": "shifted_pole",
        "closed_form": "1/(w-2)",
        "ledger": {
            "poles": [{"re": 2.0, "im": 0.0, "mult": 1}],
            "zero_complete": True,
            "pole_complete": True,
        },
    },
    "rational_mixed": {
        "name": "rational_mixed",
        "closed_form": "(w^2+1)/(w-3)",
        "ledger": {
            "zeros": [{"re": 0.0, "im": 1.0, "mult": 1}, {"re": 0.0, "im": -1.0, "mult": 1}],
            "poles": [{"re": 3.0, "im": 0.0, "mult": 1}],
            "zero_complete": True,
            "pole_complete": True,
        },
    },
    "exp": {
        "name": "exp",
        "closed_form": "exp(w)",
        "series": {"generator": "exponential", "terms": 2000},
    },
    "gaussian": {
        "name": "gaussian",
        "series": {"generator": "gaussian", "sigma_sq": 1.0, "terms": 2000},
    },
    "gaussian_wide": {
        "name": "gaussian_wide",
        "series": {"generator": "gaussian", "sigma_sq": 4.0, "terms": 2000},
    },
    "lacunary": {
        "name": "lacunary",
        "series": {"generator": "lacunary", "base": 2, "sigma_sq": 4.0, "terms": 4096},
    },
    "exp_gaussian": {
        "name": "exp_gaussian",
        "closed_form": "exp(@G)",
        "leaves": {"G": {"generator": "gaussian", "sigma_sq": 4.0, "terms": 400}},
    },
    "zero_ladder": {
        "name": "zero_ladder",
        "series": {"generator": "roots", "log_moduli": _LADDER},
    },
    "pole_ladder": {
        "name": "pole_ladder",
        "closed_form": "1/@P",
        "leaves": {"P": {"generator": "roots", "log_moduli": _LADDER}},
        "ledger": {
            "poles": [{"re": math.exp(n), "mult": 1} for n in _LADDER],
            "zero_complete": True,
            "pole_complete": True,
        },
    },
    "inverse_gaussian": {
        "name": "inverse_gaussian",
        "kind": "meromorphic",
        "closed_form": "1/@G",
        "leaves": {"G": {"generator": "gaussian", "sigma_sq": 1.0, "terms": 2000}},
        "pole_divisor": "@G",
    },
}


def catalog_names() -> list[str]:
    """Return the catalog's function names (sorted)."""
    return sorted(CATALOG)


def catalog_document(name: str) -> dict[str, Any]:
    """Return a deep copy of a catalog document.

    Raises:
        SchemaError: unknown name.
    """
    try:
        return copy.deepcopy(CATALOG[name])
    except KeyError:
        message = f"unknown catalog function {name!r}; known: {catalog_names()}"
        raise SchemaError(message) from None


def load_catalog_function(name: str) -> PuncturedFunction:
    """Parse a catalog entry into a :class:`PuncturedFunction`."""
    from .spec_parser import parse_function_spec

    return parse_function_spec(catalog_document(name))
