"""Timing spans for scenario runs.

``collector.span('scan')`` inside ``collector.span('taudist')`` is reported
as ``taudist.scan``. The dotted prefix lives in a ContextVar, so spans opened
on worker threads nest under the span that dispatched them as long as the
worker runs in a copy of the caller's context.
"""

from __future__ import annotations

import threading
import time
from collections.abc import Callable
from contextvars import ContextVar, Token
from typing import Any

from .events import SpanEvent

Listener = Callable[[SpanEvent], None]

_prefix: ContextVar[str] = ContextVar('tauclock_metrics_prefix', default='')


class Span:
    __slots__ = ('_collector', '_details', '_name', '_start', '_token')

    def __init__(self, collector: MetricsCollector, name: str) -> None:
        self._collector = collector
        self._name = name
        self._details: dict[str, Any] = {}
        self._start = 0.0
        self._token: Token[str] | None = None

    @property
    def name(self) -> str:
        return self._name

    def __enter__(self) -> Span:
        self._token = _prefix.set(self._name)
        self._start = time.perf_counter()
        return self

    def __exit__(self, *exc: object) -> bool:
        elapsed_ms = (time.perf_counter() - self._start) * 1000
        if self._token is not None:
            _prefix.reset(self._token)
        self._collector.emit(SpanEvent(self._name, elapsed_ms, self._details))
        return False

    def detail(self, key: str, value: Any) -> None:
        """Attach a size or count (grid points, paths, halvings) to the span."""
        self._details[key] = value


class MetricsCollector:
    """Dispatches finished spans to listeners; safe to emit from worker threads."""

    def __init__(self) -> None:
        self._listeners: list[Listener] = []
        self._lock = threading.Lock()

    def span(self, name: str) -> Span:
        parent = _prefix.get()
        return Span(self, f'{parent}.{name}' if parent else name)

    def emit(self, event: SpanEvent) -> None:
        with self._lock:
            for listener in self._listeners:
                listener(event)

    def add_listener(self, listener: Listener) -> None:
        with self._lock:
            self._listeners.append(listener)


class _NullSpan:
    __slots__ = ()

    name = ''

    def __enter__(self) -> _NullSpan:
        return self

    def __exit__(self, *exc: object) -> bool:
        return False

    def detail(self, key: str, value: Any) -> None:
        pass


_NULL_SPAN = _NullSpan()


class NullCollector:
    """Used when --metrics is off."""

    def span(self, name: str) -> _NullSpan:
        return _NULL_SPAN

    def emit(self, event: SpanEvent) -> None:
        pass

    def add_listener(self, listener: Listener) -> None:
        pass


Collector = MetricsCollector | NullCollector
