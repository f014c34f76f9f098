"""Opt-in timing of scenario runs."""

from .collector import Collector, MetricsCollector, NullCollector, Span
from .events import SpanEvent
from .listeners import ScenarioRecorder, span_totals
from .report import build_report, save_report

__all__ = [
    'Collector',
    'MetricsCollector',
    'NullCollector',
    'ScenarioRecorder',
    'Span',
    'SpanEvent',
    'build_report',
    'save_report',
    'span_totals',
]
