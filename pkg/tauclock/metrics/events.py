from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any


@dataclass
class SpanEvent:
    """A finished timing span."""

    name: str  # Dotted path, e.g. "taudist.scan"
    duration_ms: float
    details: dict[str, Any] = field(default_factory=dict)  # e.g. {'n_lambda': 4096}
