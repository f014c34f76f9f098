"""Thread pool helpers with order-preserving, reproducible reductions."""

from __future__ import annotations

import contextvars
import os
from collections.abc import Callable, Sequence
from concurrent.futures import ThreadPoolExecutor

from .logging import logger

WORKERS_ENV = 'TAUCLOCK_WORKERS'
DEFAULT_MAX_WORKERS = 4


def worker_count() -> int:
    """Worker cap from ``TAUCLOCK_WORKERS``, else min(cpu count, 4)."""
    raw = os.environ.get(WORKERS_ENV, '')
    if raw:
        try:
            value = int(raw)
        except ValueError:
            value = 0
        if value >= 1:
            return value
        logger.warning(f'Ignoring {WORKERS_ENV}={raw!r}: expected a positive integer')
    return min(os.cpu_count() or 1, DEFAULT_MAX_WORKERS)


def ordered_map[T, R](fn: Callable[[T], R], items: Sequence[T]) -> list[R]:
    """Apply ``fn`` to every item, returning results in submission order.

    Each item is reduced on its own, so the result does not depend on the
    number of workers or on completion order.
    """
    workers = min(worker_count(), len(items))
    if workers <= 1:
        return [fn(item) for item in items]
    # Workers see the caller's context (scenario tag, metrics prefix).
    context = contextvars.copy_context()
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(lambda item: context.copy().run(fn, item), items))
