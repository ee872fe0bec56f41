"""Built-in coefficient generators and the name-to-generator registry.

Public surface:
    - :func:`build_series`: build a series from a ``{"generator": ..}`` mapping
    - :func:`generator_names`: registered generator names
    - :class:`SeriesGenerator`, :class:`GeneratedSeries`
"""

from __future__ import annotations

from collections.abc import Mapping
from typing import Any

from ..errors import SchemaError
from .base import GeneratedSeries, SeriesGenerator, parse_complex
from .explicit import ExplicitGenerator, PolynomialGenerator
from .exponential import ExponentialGenerator
from .gaussian import GaussianGenerator
from .lacunary import LacunaryGenerator
from .roots import RootsGenerator

_GENERATORS: tuple[SeriesGenerator, ...] = (
    ExplicitGenerator(),
    PolynomialGenerator(),
    GaussianGenerator(),
    LacunaryGenerator(),
    ExponentialGenerator(),
    RootsGenerator(),
)

_REGISTRY: dict[str, SeriesGenerator] = {g.name: g for g in _GENERATORS}


def generator_names() -> list[str]:
    """Return all registered generator names (sorted)."""
    return sorted(_REGISTRY)


def build_series(spec: Mapping[str, Any]) -> GeneratedSeries:
    """Build the series described by a generator spec.

    Raises:
        SchemaError: unknown generator or invalid parameters.
    """
    name = spec.get("generator")
    generator = _REGISTRY.get(str(name))
    if generator is None:
        message = f"unknown series generator {name!r}; expected one of {generator_names()}"
        raise SchemaError(message)
    params = {key: value for key, value in spec.items() if key != "generator"}
    return generator.build(params)


__all__ = [
    "GeneratedSeries",
    "SeriesGenerator",
    "build_series",
    "generator_names",
    "parse_complex",
]
