"""
Observability module: OpenTelemetry tracing for scenario runs.

Call setup_tracing() once at process startup (growth_cli.__main__:main).
Call get_tracer() anywhere you need a manual span. Without setup the global
no-op provider is in place and spans cost nothing.
"""

from __future__ import annotations

import logging
from typing import Any, Mapping, Optional

from opentelemetry import trace
from opentelemetry.sdk.resources import Resource
from opentelemetry.sdk.trace import TracerProvider
from opentelemetry.sdk.trace.export import ConsoleSpanExporter, SimpleSpanProcessor

logger = logging.getLogger(__name__)

SERVICE_NAME = "punctured-growth"
MAX_ATTRIBUTE_LENGTH = 500

_tracer_provider: Optional[TracerProvider] = None


def setup_tracing(console: bool = False) -> Optional[TracerProvider]:
    """
    Configure the OTEL tracer provider.

    Safe to call multiple times (idempotent).

    Args:
        console: export finished spans to stdout.

    Returns:
        The provider, or None when setup failed.
    """
    global _tracer_provider

    if _tracer_provider is not None:
        return _tracer_provider

    try:
        resource = Resource(attributes={"service.name": SERVICE_NAME})
        provider = TracerProvider(resource=resource)
        if console:
            provider.add_span_processor(SimpleSpanProcessor(ConsoleSpanExporter()))
        trace.set_tracer_provider(provider)
        _tracer_provider = provider
        logger.info("Tracing active (console export: %s)", console)
        return provider

    except Exception as exc:
        logger.warning("Tracing setup failed (tracing disabled): %s", exc)
        return None


def get_tracer(name: str = SERVICE_NAME) -> trace.Tracer:
    """Return an OpenTelemetry tracer (no-op until setup_tracing runs)."""
    return trace.get_tracer(name)


def add_span_attributes(span: Any, attributes: Mapping[str, Any]) -> None:
    """Set attributes on ``span`` (or the current span when None); never raises."""
    try:
        target = span if span is not None else trace.get_current_span()
        if target and target.is_recording():
            for key, value in attributes.items():
                if value is None:
                    continue
                if isinstance(value, (bool, int, float)):
                    target.set_attribute(str(key), value)
                else:
                    target.set_attribute(str(key), str(value)[:MAX_ATTRIBUTE_LENGTH])
    except Exception:
        pass  # Never break execution on observability
