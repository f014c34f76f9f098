"""CLI entry point: routes to the scenario or validate subcommands."""

import sys

from .commands.common import SUBCOMMANDS
from .logging import err_console

USAGE = 'usage: tauclock {taudist|clock|interferometer|oracle|validate} --config <path> [--out <prefix>] [--verbose] [--metrics]'


def main(argv: list[str] | None = None) -> None:
    args = sys.argv[1:] if argv is None else argv
    if not args or args[0] not in SUBCOMMANDS:
        err_console.print(USAGE, markup=False)
        sys.exit(2)

    subcommand, rest = args[0], args[1:]
    if subcommand == 'validate':
        from .commands.validate_cmd import run as run_validate

        run_validate(rest)
    else:
        from .commands.run_cmd import run

        run(subcommand, rest)


if __name__ == '__main__':
    main()
