"""CLI handler for the scenario subcommands (taudist, clock, interferometer, oracle)."""

from __future__ import annotations

import argparse
from pathlib import Path

from ..logging import console, set_verbose
from ..metrics import MetricsCollector, ScenarioRecorder, build_report, save_report
from ..runner import print_result, run_scenario
from ..workers import worker_count
from .common import add_config_arguments, guarded, load_for

DESCRIPTIONS = {
    'taudist': 'Amplitude distribution over durations spent in the barrier, and the complex time',
    'clock': 'Spin-j Larmor clock readouts over a list of field strengths',
    'interferometer': 'Two-arm interferometer: weak mean time and a sweep of the arm phase',
    'oracle': 'Exact lattice path sum checked against the lambda-Fourier route',
}


def parse_args(subcommand: str, argv: list[str]) -> argparse.Namespace:
    parser = argparse.ArgumentParser(prog=f'tauclock {subcommand}', description=DESCRIPTIONS[subcommand])
    add_config_arguments(parser)
    parser.add_argument(
        '--out',
        default=None,
        help='Output path prefix (default: output.prefix from the config, else the scenario id)',
    )
    parser.add_argument('--metrics', action='store_true', help='Write <prefix>_metrics.json with timings')
    return parser.parse_args(argv)


def run(subcommand: str, argv: list[str]) -> None:
    args = parse_args(subcommand, argv)
    set_verbose(args.verbose)

    config = guarded(lambda: load_for(subcommand, args.config))
    if args.out:
        config = config.with_prefix(args.out)

    if args.metrics:
        collector = MetricsCollector()
        recorder = ScenarioRecorder()
        collector.add_listener(recorder.on_event)
        recorder.start_scenario(scenario_id=config.id, kind=config.kind)
    else:
        collector = None
        recorder = None

    result = guarded(lambda: run_scenario(config, collector=collector, show_progress=True))
    print_result(result)

    if recorder is not None:
        recorder.finish_scenario()
        report = build_report(scenarios=recorder.scenarios, config=config.to_dict(), workers=worker_count())
        path = save_report(report, Path(f'{config.output.prefix}_metrics.json'))
        console.print(f'[dim]Metrics saved to {path}[/dim]')
