"""Exact spin-j Larmor clock and its weak-field response.

A field confined to the barrier region adds omega_L * J_z there, so the
spin component m moves in the composite potential V + m * omega_L and leaves
with amplitude A(m * omega_L) * gamma_m. Equivalently, each duration tau
rotates the spin by exp(-i omega_L tau J_z) and the rotated states are
summed with the duration amplitudes.
"""

from __future__ import annotations

from typing import NamedTuple

import numpy as np

from ..duration.inversion import TauAmplitudeDistribution
from ..duration.moments import derivative_complex_time
from ..duration.scan import LambdaScan
from ..errors import DegenerateTransitionError, InvalidInputError, UseQuadraticProbeError
from ..logging import logger, scenario_tag
from ..scattering.amplitude import LambdaAmplitudeSource
from ..types import ComplexTime
from ..workers import ordered_map
from .spin import SpinState, require_same_spin, spin_matrices

Amplitudes = TauAmplitudeDistribution | LambdaScan | LambdaAmplitudeSource

ORTHOGONAL_TOL = 1e-12
MATCH_TOL = 1e-3
MATCH_FLOOR = 1e-9  # slopes this small count as zero


def gamma_kernel(
    tau: float | np.ndarray, omega_L: float, beta: SpinState, gamma: SpinState
) -> complex | np.ndarray:
    """sum_m conj(beta_m) gamma_m exp(-i m omega_L tau); vectorised over tau."""
    require_same_spin(beta, gamma)
    taus = np.asarray(tau, dtype=float)
    weights = np.conj(beta.amps) * gamma.amps
    phases = np.exp(-1j * omega_L * np.multiply.outer(taus, gamma.m_values))
    values = phases @ weights
    return complex(values) if taus.ndim == 0 else values


def _shifted_amplitudes(amplitudes: Amplitudes, shifts: np.ndarray) -> np.ndarray:
    if isinstance(amplitudes, TauAmplitudeDistribution):
        phases = np.exp(-1j * np.multiply.outer(shifts, amplitudes.tau))
        return phases @ amplitudes.values * amplitudes.tau_step
    if isinstance(amplitudes, LambdaScan):
        return np.array([amplitudes.value_at(float(lam)) for lam in shifts])
    values = ordered_map(lambda lam: complex(amplitudes(np.array([lam]))[0]), list(shifts))
    return np.array(values)


def final_spin_state(amplitudes: Amplitudes, omega_L: float, gamma: SpinState) -> SpinState:
    """Unnormalised spin state of particles detected at x.

    ``amplitudes`` may be a source (exact evaluation at the 2j + 1 shifts),
    a scan (the shifts must be grid nodes) or a distribution over durations
    (quadrature of the rotated states).
    """
    shifts = gamma.m_values * omega_L
    return SpinState(gamma.j, _shifted_amplitudes(amplitudes, shifts) * gamma.amps)


def detection_probability(final_state: SpinState, beta: SpinState) -> float:
    """|<beta|final>|^2: probability to find the particle at x with spin beta."""
    return abs(beta.overlap(final_state)) ** 2


def probe_probability(amplitudes: Amplitudes, beta: SpinState, gamma: SpinState, omega_L: float) -> float:
    return detection_probability(final_spin_state(amplitudes, omega_L, gamma), beta)


def _require_linear_probe(beta: SpinState, gamma: SpinState) -> complex:
    overlap = beta.overlap(gamma)
    if abs(overlap) <= ORTHOGONAL_TOL * np.sqrt(beta.norm * gamma.norm):
        raise UseQuadraticProbeError(
            'Probe is orthogonal to the initial spin; the response starts at second order'
        )
    return overlap


def weak_relative_change(amplitudes: Amplitudes, beta: SpinState, gamma: SpinState, omega_L: float) -> float:
    """[P(omega_L) - P(0)] / P(0) for the probe ``beta``."""
    _require_linear_probe(beta, gamma)
    baseline = probe_probability(amplitudes, beta, gamma, 0.0)
    if baseline == 0:
        raise UseQuadraticProbeError('Detection probability vanishes without a field')
    return probe_probability(amplitudes, beta, gamma, omega_L) / baseline - 1


def z_ratio(beta: SpinState, gamma: SpinState) -> complex:
    """<beta|J_z|gamma> / <beta|gamma>."""
    overlap = _require_linear_probe(beta, gamma)
    _, _, jz = spin_matrices(gamma.j)
    return complex(np.vdot(beta.amps, jz @ gamma.amps)) / overlap


class WeakResponseReport(NamedTuple):
    slope: float  # d/d omega_L of the relative change at omega_L = 0
    derived: float  # 2 (Re Z Im tau + Im Z Re tau)
    as_typeset: float  # 2 Re Z Im tau + Im Z Re tau
    tau_bar: ComplexTime
    z: complex
    matches: str  # 'both' | 'symmetric' | 'as_typeset' | 'neither'


def linear_response_report(
    source: LambdaAmplitudeSource, beta: SpinState, gamma: SpinState, omega_L: float
) -> WeakResponseReport:
    """Slope of the relative change from the exact probabilities, against both coefficient forms."""

    def symmetric_slope(omega: float) -> float:
        up = weak_relative_change(source, beta, gamma, omega)
        down = weak_relative_change(source, beta, gamma, -omega)
        return (up - down) / (2 * omega)

    slope = (4 * symmetric_slope(omega_L / 2) - symmetric_slope(omega_L)) / 3
    tau_bar = derivative_complex_time(source).tau_bar
    z = z_ratio(beta, gamma)
    derived = 2 * (z.real * tau_bar.im + z.imag * tau_bar.re)
    as_typeset = 2 * z.real * tau_bar.im + z.imag * tau_bar.re

    tolerance = MATCH_TOL * max(abs(slope), abs(derived), abs(as_typeset)) + MATCH_FLOOR
    symmetric_ok = abs(slope - derived) <= tolerance
    typeset_ok = abs(slope - as_typeset) <= tolerance
    match (symmetric_ok, typeset_ok):
        case (True, True):
            matches = 'both'
        case (True, False):
            matches = 'symmetric'
        case (False, True):
            matches = 'as_typeset'
        case _:
            matches = 'neither'
    logger.debug(
        f'{scenario_tag()}Weak response slope {slope:.6g}: derived {derived:.6g}, '
        f'typeset {as_typeset:.6g} -> {matches}'
    )
    return WeakResponseReport(slope, derived, as_typeset, tau_bar, z, matches)


def orthogonal_probe_modulus(
    amplitudes: Amplitudes, beta: SpinState, gamma: SpinState, omega_L: float
) -> float:
    """|tau_bar| from an orthogonal probe: P ~ omega_L^2 |A(0)|^2 |tau_bar|^2 |<beta|J_z|gamma>|^2."""
    if abs(beta.overlap(gamma)) > ORTHOGONAL_TOL * np.sqrt(beta.norm * gamma.norm):
        raise InvalidInputError('Probe is not orthogonal to the initial spin; use the linear response')
    _, _, jz = spin_matrices(gamma.j)
    coupling = abs(np.vdot(beta.amps, jz @ gamma.amps))
    at_zero = abs(_shifted_amplitudes(amplitudes, np.zeros(1))[0])
    if coupling == 0 or at_zero == 0 or omega_L == 0:
        raise DegenerateTransitionError('Orthogonal probe carries no second-order signal')
    probability = probe_probability(amplitudes, beta, gamma, omega_L)
    return float(np.sqrt(probability) / (abs(omega_L) * at_zero * coupling))
