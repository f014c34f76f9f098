"""Shared utilities for CLI commands."""

from __future__ import annotations

import argparse
import sys
from collections.abc import Callable
from pathlib import Path
from typing import NoReturn

from ..config import ScenarioConfig, load_config
from ..errors import ConfigIssue, ConfigValidationError, TauClockError
from ..logging import err_console

SUBCOMMANDS = ('taudist', 'clock', 'interferometer', 'oracle', 'validate')


def add_config_arguments(parser: argparse.ArgumentParser) -> None:
    parser.add_argument('--config', required=True, type=Path, help='Scenario JSON file')
    parser.add_argument('--verbose', '-v', action='store_true')


def fail(error: TauClockError) -> NoReturn:
    """Print the machine-readable error line(s) and exit with status 1."""
    if isinstance(error, ConfigValidationError):
        for issue in error.issues:
            err_console.print(f'error: {error.code}: {issue.message} [field={issue.path}]', markup=False)
    else:
        err_console.print(error.error_line(), markup=False)
    sys.exit(1)


def guarded[T](action: Callable[[], T]) -> T:
    try:
        return action()
    except TauClockError as error:
        fail(error)


def load_for(subcommand: str, path: Path) -> ScenarioConfig:
    """Load a scenario and check that its kind matches the subcommand."""
    config = load_config(path)
    if subcommand != 'validate' and config.kind != subcommand:
        raise ConfigValidationError(
            [ConfigIssue('kind', f'scenario kind {config.kind!r} cannot run under {subcommand!r}')]
        )
    return config
