import math

from opentelemetry.trace import NoOpTracer

from src import observability
from src.observability import get_tracer, init_tracing, record_numbers


class RecordingSpan:
    def __init__(self):
        self.attributes = {}

    def set_attribute(self, key, value):
        self.attributes[key] = value


def test_disabled_tracing_is_a_noop():
    tracer = init_tracing(enabled=False)
    assert isinstance(tracer, NoOpTracer)
    assert get_tracer() is tracer
    with tracer.start_as_current_span("pipeline.test") as span:
        record_numbers(span, "test", {"value": 1.0})


def test_get_tracer_initializes_lazily(monkeypatch):
    monkeypatch.setattr(observability, "_tracer", None)
    assert isinstance(get_tracer(), NoOpTracer)


def test_record_numbers_keeps_finite_scalars():
    span = RecordingSpan()
    record_numbers(
        span,
        "mdim",
        {
            "upper": 0.25,
            "count": 3,
            "passed": True,
            "lower": math.nan,
            "slope": math.inf,
            "command": "mdim",
            "ledgers": [1, 2],
        },
    )
    assert span.attributes == {"mdim.upper": 0.25, "mdim.count": 3, "mdim.passed": True}
