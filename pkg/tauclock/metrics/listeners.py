from __future__ import annotations

import time
from collections import defaultdict
from typing import Any

from .events import SpanEvent


class ScenarioRecorder:
    """Collects the spans of each scenario run into a JSON-ready record."""

    def __init__(self) -> None:
        self.scenarios: list[dict[str, Any]] = []
        self._current: dict[str, Any] | None = None
        self._started = 0.0

    def start_scenario(self, *, scenario_id: str, kind: str) -> None:
        self._current = {'id': scenario_id, 'kind': kind, 'status': 'running', 'spans': []}
        self._started = time.perf_counter()

    def finish_scenario(self, status: str = 'ok') -> None:
        if self._current is None:
            return
        self._current['status'] = status
        self._current['total_ms'] = round((time.perf_counter() - self._started) * 1000, 3)
        self._current['totals_ms'] = span_totals(self._current['spans'])
        self.scenarios.append(self._current)
        self._current = None

    def on_event(self, event: SpanEvent) -> None:
        if self._current is None:
            return
        record: dict[str, Any] = {'name': event.name, 'duration_ms': round(event.duration_ms, 3)}
        if event.details:
            record['details'] = dict(event.details)
        self._current['spans'].append(record)


def span_totals(spans: list[dict[str, Any]]) -> dict[str, float]:
    """Summed duration per span name; repeated spans (per chunk, per level) add up."""
    totals: dict[str, float] = defaultdict(float)
    for span in spans:
        totals[span['name']] += span['duration_ms']
    return {name: round(total, 3) for name, total in sorted(totals.items())}
