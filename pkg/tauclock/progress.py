"""Progress display for long lambda scans."""

from __future__ import annotations

import threading

from rich.console import Console
from rich.progress import BarColumn, MofNCompleteColumn, Progress, TaskID, TextColumn, TimeElapsedColumn

from .logging import err_console


class ScanProgress:
    """Context manager whose ``update`` method is a ProgressCallback.

    Renders on stderr and only when attached to a terminal, so result files and
    captured output are unaffected.
    """

    def __init__(self, label: str, console: Console | None = None, enabled: bool = True) -> None:
        self._console = console or err_console
        self._label = label
        self._progress = Progress(
            TextColumn('[cyan]{task.description}'),
            BarColumn(),
            MofNCompleteColumn(),
            TimeElapsedColumn(),
            console=self._console,
            transient=True,
            disable=not (enabled and self._console.is_terminal),
        )
        self._task: TaskID | None = None
        self._lock = threading.Lock()

    def __enter__(self) -> ScanProgress:
        self._progress.__enter__()
        return self

    def __exit__(self, *exc: object) -> bool:
        self._progress.__exit__(None, None, None)
        return False

    def update(self, done: int, total: int) -> None:
        with self._lock:
            if self._task is None:
                self._task = self._progress.add_task(self._label, total=total)
            self._progress.update(self._task, completed=done, total=total)
