"""Tests for observability module (OTEL tracer setup and span helpers)."""
from unittest.mock import MagicMock, patch


def test_get_tracer_returns_tracer():
    """get_tracer() returns an OpenTelemetry tracer instance."""
    from observability import get_tracer
    tracer = get_tracer()
    assert hasattr(tracer, "start_as_current_span")


def test_setup_tracing_returns_provider():
    """setup_tracing() installs and returns a tracer provider."""
    import observability
    observability._tracer_provider = None

    with patch("observability.trace.set_tracer_provider") as mock_set:
        provider = observability.setup_tracing()
        assert provider is not None
        mock_set.assert_called_once_with(provider)
    observability._tracer_provider = None


def test_setup_tracing_returns_none_on_failure():
    """setup_tracing() returns None if the provider cannot be built."""
    import observability
    observability._tracer_provider = None

    with patch("observability.TracerProvider", side_effect=Exception("broken sdk")):
        assert observability.setup_tracing() is None
    assert observability._tracer_provider is None


def test_setup_tracing_is_idempotent():
    """Calling setup_tracing() twice returns the same provider without re-initializing."""
    import observability
    observability._tracer_provider = None

    with patch("observability.trace.set_tracer_provider") as mock_set:
        first = observability.setup_tracing(console=True)
        second = observability.setup_tracing()
        assert first is second
        assert mock_set.call_count == 1
    observability._tracer_provider = None


def test_add_span_attributes_skips_none_and_truncates():
    """Scalars pass through, None is skipped, long text is cut."""
    from observability import MAX_ATTRIBUTE_LENGTH, add_span_attributes
    span = MagicMock()
    span.is_recording.return_value = True

    add_span_attributes(span, {"scenario.id": "thm1", "ok": True, "missing": None, "long": "x" * 2000})

    keys = [call.args[0] for call in span.set_attribute.call_args_list]
    assert keys == ["scenario.id", "ok", "long"]
    assert len(span.set_attribute.call_args_list[-1].args[1]) == MAX_ATTRIBUTE_LENGTH


def test_add_span_attributes_never_raises():
    """A span that throws does not break the caller."""
    from observability import add_span_attributes
    span = MagicMock()
    span.is_recording.return_value = True
    span.set_attribute.side_effect = RuntimeError("exporter gone")

    add_span_attributes(span, {"scenario.id": "thm1"})
