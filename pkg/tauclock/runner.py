"""Scenario pipelines: one function per kind, each writing its CSV artifacts.

Every file starts with the flattened, normalised config as ``# key = value``
lines, so identical configs give byte-identical files.
"""

from __future__ import annotations

import math
from collections.abc import Callable
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any

import numpy as np
from rich.table import Table

from .clock import (
    SpinState,
    final_spin_state,
    linear_response_report,
    orthogonal_probe_modulus,
    probe_probability,
    readout_angles,
    rotation_witness,
    weak_relative_change,
)
from .config import ScenarioConfig
from .duration import (
    classical_scale_gap,
    complex_time,
    derivative_complex_time,
    distribution_scale_gap,
    export_distribution,
    invert_to_tau,
    nth_moment,
    plane_wave_complex_time,
    scan_source,
    sum_rule_check,
)
from .errors import TauClockError, UseQuadraticProbeError
from .interferometer import (
    SWEEP_COLUMNS,
    anomaly_flags,
    phase_sweep,
    precession_angles,
    second_moment,
    solve_alphas,
    weak_mean_time,
)
from .lattice import equivalence_report, export_report, format_report, unitarity_report
from .logging import console, current_scenario, logger, scenario_tag
from .metrics import Collector, NullCollector
from .output import flatten, write_csv
from .progress import ScanProgress
from .scattering import ScatteringSource
from .types import ComplexTime

SUMMARY_COLUMNS = ['quantity', 'value']
ORTHOGONAL_OVERLAP = 1e-12


@dataclass
class ScenarioResult:
    kind: str
    id: str
    summary: dict[str, Any] = field(default_factory=dict)
    files: list[Path] = field(default_factory=list)
    report: str = ''  # plain-text report (oracle)


def _artifact(config: ScenarioConfig, suffix: str) -> Path:
    return Path(f'{config.output.prefix}_{suffix}.csv')


def _header(config: ScenarioConfig) -> dict[str, Any]:
    return flatten(config.to_dict())


def _time_entries(prefix: str, value: ComplexTime) -> dict[str, float]:
    return {f're_{prefix}': value.re, f'im_{prefix}': value.im, f'abs_{prefix}': value.modulus}


def _total_time_entries(tau_bar: ComplexTime, T_total: float) -> dict[str, Any]:
    return {
        'abs_tau_over_T': tau_bar.modulus / T_total,
        'modulus_exceeds_total': tau_bar.modulus > T_total,
    }


def _write_summary(config: ScenarioConfig, result: ScenarioResult) -> None:
    path = _artifact(config, 'summary')
    write_csv(path, _header(config), SUMMARY_COLUMNS, list(result.summary.items()))
    result.files.append(path)


# ---------------------------------------------------------------------------
# taudist
# ---------------------------------------------------------------------------


def _duration_pipeline(config: ScenarioConfig, collector: Collector, show_progress: bool):
    assert config.packet and config.barrier and config.detection and config.lambda_grid
    packet = config.packet.build()
    barrier = config.barrier.build()
    detection, grid = config.detection, config.lambda_grid
    source = ScatteringSource(packet, barrier, detection.x, detection.T_total)

    with collector.span('scan') as span, ScanProgress(f'{config.id}: lambda scan', enabled=show_progress) as bar:
        scan = scan_source(source, grid.Lambda, grid.n_lambda, center=grid.center, on_progress=bar.update)
        span.detail('n_lambda', grid.n_lambda)
        span.detail('n_points', packet.momenta.size)
    with collector.span('invert'):
        dist = invert_to_tau(scan, detection.T_total, grid.build_taper())
    return packet, barrier, source, scan, dist


def _run_taudist(config: ScenarioConfig, collector: Collector, show_progress: bool) -> ScenarioResult:
    packet, barrier, source, scan, dist = _duration_pipeline(config, collector, show_progress)
    result = ScenarioResult(config.kind, config.id)
    T_total = dist.T_total

    with collector.span('moments'):
        moments_time = complex_time(dist)
        second = nth_moment(dist, 2)
        gap = distribution_scale_gap(dist)
        total = sum_rule_check(dist)
    with collector.span('derivative') as span:
        estimate = derivative_complex_time(source)
        span.detail('halvings', estimate.halvings)

    at_zero = scan.value_at(0.0)
    expected = dist.window.weight_at_zero * at_zero
    derivative = estimate.tau_bar.as_complex()
    summary = result.summary
    summary.update({'re_A0': at_zero.real, 'im_A0': at_zero.imag, 'abs_A0': abs(at_zero)})
    summary.update({'re_sum_rule': total.real, 'im_sum_rule': total.imag})
    summary['sum_rule_rel_error'] = abs(total - expected) / abs(expected) if expected else math.nan
    summary.update({'leakage': dist.leakage, 'converged': dist.converged, 'peak_tau': dist.peak_tau()})
    summary.update(_time_entries('tau', moments_time))
    summary.update(_time_entries('tau_derivative', estimate.tau_bar))
    summary['derivative_halvings'] = estimate.halvings
    summary['derivative_residual'] = estimate.residual
    gap_to_derivative = abs(moments_time.as_complex() - derivative)
    summary['moment_derivative_rel_gap'] = gap_to_derivative / abs(derivative) if derivative else gap_to_derivative
    summary.update({'re_tau2': second.real, 'im_tau2': second.imag, 'classical_scale_gap': gap})
    summary['tau_classical'] = packet.mu * barrier.d / packet.p0
    summary['tunnelling'] = packet.tunnels_through(barrier.min_height)
    summary.update(_total_time_entries(moments_time, T_total))
    try:
        summary.update(_time_entries('tau_plane_wave', plane_wave_complex_time(packet.p0, barrier, packet.mu)))
    except TauClockError as error:
        logger.warning(f'{scenario_tag()}Plane-wave time at p0 unavailable: {error.message}')

    path = _artifact(config, 'tau')
    export_distribution(dist, path, _header(config))
    result.files.append(path)
    _write_summary(config, result)
    return result


# ---------------------------------------------------------------------------
# clock
# ---------------------------------------------------------------------------

CLOCK_COLUMNS = [
    'scenario',
    'omega_L',
    'delta_phi',
    'delta_theta',
    're_tau_readout',
    'im_tau_readout',
    'abs_tau_readout',
    'norm',
    'rotation_witness',
    'route_deviation',
]


def _route_deviation(exact: SpinState, quadrature: SpinState) -> float:
    scale = np.max(np.abs(exact.amps))
    return float(np.max(np.abs(exact.amps - quadrature.amps)) / scale) if scale else math.nan


def _run_clock(config: ScenarioConfig, collector: Collector, show_progress: bool) -> ScenarioResult:
    assert config.clock is not None
    _, _, source, _, dist = _duration_pipeline(config, collector, show_progress)
    clock = config.clock
    gamma = clock.gamma.state(clock.j)
    probes = [(probe.name, probe.state(clock.j)) for probe in clock.probes]
    result = ScenarioResult(config.kind, config.id)

    columns = list(CLOCK_COLUMNS)
    for name, _ in probes:
        columns += [f'P_{name}', f'rel_change_{name}']

    rows: list[list[Any]] = []
    with collector.span('clock') as span:
        span.detail('n_omega', len(clock.omega_L))
        for omega in clock.omega_L:
            state = final_spin_state(source, omega, gamma)
            readout = readout_angles(state, omega if omega else None)
            tau = readout.tau_inferred
            row: list[Any] = [
                config.id,
                omega,
                readout.delta_phi,
                readout.delta_theta,
                tau.re if tau else math.nan,
                tau.im if tau else math.nan,
                tau.modulus if tau else math.nan,
                state.norm,
                rotation_witness(state),
                _route_deviation(state, final_spin_state(dist, omega, gamma)),
            ]
            for _, beta in probes:
                row.append(probe_probability(source, beta, gamma, omega))
                try:
                    row.append(weak_relative_change(source, beta, gamma, omega))
                except UseQuadraticProbeError:
                    row.append(math.nan)
            rows.append(row)

    with collector.span('moments'):
        moments_time = complex_time(dist)
    result.summary.update(_time_entries('tau', moments_time))
    result.summary.update({'leakage': dist.leakage, 'converged': dist.converged})
    result.summary.update(_total_time_entries(moments_time, dist.T_total))
    with collector.span('weak_response'):
        _clock_summary(result.summary, source, gamma, probes, clock.omega_L)

    path = _artifact(config, 'clock')
    write_csv(path, _header(config), columns, rows)
    result.files.append(path)
    _write_summary(config, result)
    return result


def _clock_summary(
    summary: dict[str, Any],
    source: ScatteringSource,
    gamma: SpinState,
    probes: list[tuple[str, SpinState]],
    omegas: tuple[float, ...],
) -> None:
    reference = derivative_complex_time(source).tau_bar
    summary.update(_time_entries('tau_derivative', reference))
    nonzero = [abs(omega) for omega in omegas if omega]
    if not nonzero:
        return
    weakest = min(nonzero)
    summary['weak_omega_L'] = weakest
    for name, beta in probes:
        if abs(beta.overlap(gamma)) <= ORTHOGONAL_OVERLAP:
            modulus = orthogonal_probe_modulus(source, beta, gamma, weakest)
            summary[f'abs_tau_quadratic_{name}'] = modulus
            continue
        report = linear_response_report(source, beta, gamma, weakest)
        summary[f'slope_{name}'] = report.slope
        summary[f'slope_derived_{name}'] = report.derived
        summary[f'slope_as_typeset_{name}'] = report.as_typeset
        summary[f'slope_match_{name}'] = report.matches


# ---------------------------------------------------------------------------
# interferometer
# ---------------------------------------------------------------------------


def _run_interferometer(config: ScenarioConfig, collector: Collector, show_progress: bool) -> ScenarioResult:
    assert config.interferometer is not None
    setup = config.interferometer.build()
    result = ScenarioResult(config.kind, config.id)
    summary = result.summary

    with collector.span('weak_mean_time'):
        tau_bar = weak_mean_time(setup)
        readout = precession_angles(setup)
    summary.update(_time_entries('tau', tau_bar))
    if setup.omega_L:
        summary['dphi_over_omega'] = readout.delta_phi / setup.omega_L
        summary['dtheta_over_omega'] = readout.delta_theta / setup.omega_L
    summary.update(anomaly_flags(setup))
    if setup.tau1 != setup.tau2:
        alphas = solve_alphas(setup.tau1, setup.tau2, tau_bar.as_complex())
        tau2 = second_moment(alphas, setup.tau1, setup.tau2)
        summary.update({'re_alpha1': alphas.alpha1.real, 'im_alpha1': alphas.alpha1.imag})
        summary.update({'re_alpha2': alphas.alpha2.real, 'im_alpha2': alphas.alpha2.imag})
        summary.update({'re_tau2': tau2.real, 'im_tau2': tau2.imag})
        if tau_bar.modulus:
            summary['classical_scale_gap'] = classical_scale_gap(tau_bar.as_complex(), tau2)

    with collector.span('sweep') as span:
        n_phi = config.interferometer.n_phi
        span.detail('n_phi', n_phi)
        rows = phase_sweep(setup, n_phi) if setup.omega_L else []
    summary['degenerate_phases'] = sum(row.degenerate for row in rows)

    path = _artifact(config, 'sweep')
    write_csv(path, _header(config), SWEEP_COLUMNS, rows)
    result.files.append(path)
    _write_summary(config, result)
    return result


# ---------------------------------------------------------------------------
# oracle
# ---------------------------------------------------------------------------


def _run_oracle(config: ScenarioConfig, collector: Collector, show_progress: bool) -> ScenarioResult:
    assert config.lattice is not None
    lattice = config.lattice.build()
    result = ScenarioResult(config.kind, config.id)

    with collector.span('path_sum') as span:
        span.detail('paths', lattice.path_count)
        report = equivalence_report(lattice)
    with collector.span('unitarity'):
        unitarity = unitarity_report(lattice)

    result.report = format_report(report, unitarity)
    result.summary.update(
        {
            'max_discrepancy': report.max_discrepancy,
            'completeness': report.completeness,
            'unitarity_deviation': unitarity.deviation,
            'passed': report.passed,
        }
    )
    path = _artifact(config, 'oracle')
    export_report(report, path, _header(config), unitarity)
    result.files.append(path)
    _write_summary(config, result)
    return result


# ---------------------------------------------------------------------------
# Entry point
# ---------------------------------------------------------------------------

RUNNERS: dict[str, Callable[[ScenarioConfig, Collector, bool], ScenarioResult]] = {
    'taudist': _run_taudist,
    'clock': _run_clock,
    'interferometer': _run_interferometer,
    'oracle': _run_oracle,
}


def run_scenario(
    config: ScenarioConfig,
    *,
    collector: Collector | None = None,
    show_progress: bool = False,
) -> ScenarioResult:
    collector = collector or NullCollector()
    token = current_scenario.set(config.id)
    try:
        logger.info(f'{scenario_tag()}Running {config.kind} scenario')
        with collector.span(config.kind):
            result = RUNNERS[config.kind](config, collector, show_progress)
        logger.info(f'{scenario_tag()}Wrote {", ".join(str(path) for path in result.files)}')
        return result
    finally:
        current_scenario.reset(token)


def summary_table(result: ScenarioResult) -> Table:
    table = Table(title=f'{result.kind}: {result.id}', title_justify='left')
    table.add_column('quantity', style='cyan')
    table.add_column('value', justify='right')
    for quantity, value in result.summary.items():
        match value:
            case bool():
                text = '[green]yes[/green]' if value else '[dim]no[/dim]'
            case float():
                text = f'{value:.6g}'
            case _:
                text = str(value)
        table.add_row(quantity, text)
    return table


def print_result(result: ScenarioResult) -> None:
    if result.report:
        console.print(result.report, highlight=False, markup=False)
    console.print(summary_table(result))
