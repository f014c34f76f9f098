"""Timing report files, written next to the results when --metrics is given."""

from __future__ import annotations

import json
import platform
import subprocess
from datetime import UTC, datetime
from pathlib import Path
from typing import Any

from .. import __version__

REPORT_VERSION = 1


def _git(*args: str) -> str | None:
    try:
        result = subprocess.run(['git', *args], capture_output=True, text=True, check=True, timeout=5)
    except (OSError, subprocess.SubprocessError):
        return None
    return result.stdout.strip()


def git_commit() -> str:
    return _git('rev-parse', '--short', 'HEAD') or 'unknown'


def git_dirty() -> bool:
    status = _git('status', '--porcelain')
    return status is None or bool(status)


def build_report(*, scenarios: list[dict[str, Any]], config: dict[str, Any], workers: int) -> dict[str, Any]:
    return {
        'version': REPORT_VERSION,
        'tauclock': __version__,
        'python': platform.python_version(),
        'git_commit': git_commit(),
        'dirty': git_dirty(),
        'timestamp': datetime.now(UTC).strftime('%Y-%m-%dT%H:%M:%SZ'),
        'workers': workers,
        'config': config,
        'scenarios': scenarios,
    }


def save_report(report: dict[str, Any], path: Path) -> Path:
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(json.dumps(report, indent=2, sort_keys=False) + '\n', encoding='utf-8')
    return path
