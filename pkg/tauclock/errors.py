"""Error taxonomy shared by every tauclock module.

Each error carries a stable machine-readable ``code`` that the CLI prints as
``error: <code>: <message>``, and optionally the dotted config ``field`` it
refers to.
"""

from __future__ import annotations

from typing import NamedTuple


class TauClockError(Exception):
    code = 'tauclock-error'

    def __init__(self, message: str, *, field: str | None = None) -> None:
        super().__init__(message)
        self.message = message
        self.field = field

    def error_line(self) -> str:
        line = f'error: {self.code}: {self.message}'
        if self.field:
            line += f' [field={self.field}]'
        return line


class InvalidParameterError(TauClockError):
    code = 'invalid-parameter'


class InvalidInputError(TauClockError):
    code = 'invalid-input'


class UnsupportedConfigurationError(TauClockError):
    code = 'unsupported-configuration'


class DegenerateTransitionError(TauClockError):
    """The transition amplitude vanishes, so amplitude-weighted means do not exist."""

    code = 'degenerate-transition'


class TooLargeLatticeError(TauClockError):
    code = 'too-large-lattice'


class UseQuadraticProbeError(TauClockError):
    """The probe is orthogonal to the initial spin, so there is no linear response."""

    code = 'use-quadratic-probe'


class ConfigIssue(NamedTuple):
    path: str  # Dotted field path, e.g. "barrier.d"
    message: str


class ConfigValidationError(TauClockError):
    code = 'invalid-config'

    def __init__(self, issues: list[ConfigIssue]) -> None:
        summary = '; '.join(f'{issue.path}: {issue.message}' for issue in issues)
        super().__init__(summary, field=issues[0].path if len(issues) == 1 else None)
        self.issues = issues
