"""Tracing for pipeline stages. The CLI calls init_tracing() once per run."""

import logging
from collections.abc import Mapping
from typing import Any

from opentelemetry.trace import NoOpTracer, Span, Tracer

from src.config import settings

logger = logging.getLogger(__name__)

_tracer: Tracer | None = None


def init_tracing(enabled: bool | None = None) -> Tracer:
    """Register Phoenix when tracing is on; fall back to a no-op tracer otherwise."""
    global _tracer
    enabled = settings.TRACING_ENABLED if enabled is None else enabled
    if not enabled:
        _tracer = NoOpTracer()
        return _tracer
    try:
        from phoenix.otel import register

        provider = register(
            project_name=settings.PHOENIX_PROJECT_NAME,
            endpoint=settings.PHOENIX_COLLECTOR_ENDPOINT,
        )
        _tracer = provider.get_tracer("mdimlab")
        logger.info("Tracing to %s", settings.PHOENIX_COLLECTOR_ENDPOINT)
    except Exception:
        logger.warning("Phoenix tracing unavailable, using no-op tracer", exc_info=True)
        _tracer = NoOpTracer()
    return _tracer


def get_tracer() -> Tracer:
    if _tracer is None:
        return init_tracing()
    return _tracer


def record_numbers(span: Span, prefix: str, values: Mapping[str, Any]) -> None:
    """Copy the numeric and boolean entries of ``values`` onto ``span``.

    NaN and infinite estimates are skipped; other types (lists, nested reports)
    never become attributes.
    """
    for key, value in values.items():
        if isinstance(value, bool) or (
            isinstance(value, int | float) and value == value and abs(value) != float("inf")
        ):
            span.set_attribute(f"{prefix}.{key}", value)
