import logging
from contextvars import ContextVar

from rich.console import Console
from rich.logging import RichHandler

current_scenario: ContextVar[str] = ContextVar('current_scenario', default='')

console = Console()
# Machine-readable error lines go to stderr without markup or wrapping.
err_console = Console(stderr=True, highlight=False, soft_wrap=True)

logging.basicConfig(
    level=logging.WARNING,
    format='%(message)s',
    handlers=[RichHandler(console=err_console, show_time=False, show_path=False)],
)

logger = logging.getLogger('tauclock')


def set_verbose(verbose: bool) -> None:
    level = logging.DEBUG if verbose else logging.INFO
    logger.setLevel(level)
    logging.getLogger().setLevel(level)


def scenario_tag() -> str:
    """Prefix for log lines emitted while a scenario is running."""
    tag = current_scenario.get()
    return f'[{tag}] ' if tag else ''
