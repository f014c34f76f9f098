"""CLI handler for 'validate': check a scenario and echo it with defaults filled in."""

from __future__ import annotations

import argparse
import json

from ..logging import console, set_verbose
from .common import add_config_arguments, guarded, load_for


def parse_args(argv: list[str]) -> argparse.Namespace:
    parser = argparse.ArgumentParser(
        prog='tauclock validate',
        description='Validate a scenario file and print the normalised config',
    )
    add_config_arguments(parser)
    return parser.parse_args(argv)


def run(argv: list[str]) -> None:
    args = parse_args(argv)
    set_verbose(args.verbose)
    config = guarded(lambda: load_for('validate', args.config))
    console.print_json(json.dumps(config.to_dict()))
