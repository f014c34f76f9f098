"""Moments of duration amplitudes and the complex time.

Two independent routes to tau_bar:

* moments: sum(tau * A) / sum(A) over the inverted distribution;
* derivative: i * d ln A(lam) / d lam at lam = 0, by central differences
  refined with Richardson extrapolation, never touching the tau grid.

Moments sum over the whole periodic tau grid, leakage included, so they
stay consistent with the derivative of the tapered scan at lam = 0.
"""

from __future__ import annotations

from typing import NamedTuple

import numpy as np

from ..errors import DegenerateTransitionError, InvalidInputError, InvalidParameterError
from ..logging import logger, scenario_tag
from ..scattering.amplitude import LambdaAmplitudeSource, PlaneWaveSource, ScatteringSource
from ..scattering.barrier import BarrierSpec
from ..types import ComplexTime
from ..wavepacket import WavePacket
from .inversion import TauAmplitudeDistribution

AMPLITUDE_GUARD = 1e-300
MAX_MOMENT = 3
DEFAULT_DELTA = 1e-2
RICHARDSON_TOL = 1e-10
MAX_HALVINGS = 30


def _warn_unconverged(dist: TauAmplitudeDistribution, what: str) -> None:
    if not dist.converged:
        logger.warning(
            f'{scenario_tag()}{what} from an unconverged distribution (leakage {dist.leakage:.3g})'
        )


def sum_rule_check(dist: TauAmplitudeDistribution) -> complex:
    """Quadrature of A over tau; equals W(0) * A(lam=0) up to round-off."""
    _warn_unconverged(dist, 'Sum rule')
    return complex(np.sum(dist.values) * dist.tau_step)


def _denominator(dist: TauAmplitudeDistribution) -> complex:
    total = complex(np.sum(dist.values) * dist.tau_step)
    if abs(total) < AMPLITUDE_GUARD:
        raise DegenerateTransitionError(
            f'Amplitudes over durations sum to {abs(total):.3g}; the mean duration is undefined'
        )
    return total


def nth_moment(dist: TauAmplitudeDistribution, n: int) -> complex:
    """Amplitude-weighted moment sum(tau^n A) / sum(A)."""
    if n not in range(MAX_MOMENT + 1):
        raise InvalidParameterError(f'Moment order must be in 0..{MAX_MOMENT}, got {n}')
    _warn_unconverged(dist, f'Moment {n}')
    denominator = _denominator(dist)
    if n == 0:
        return 1 + 0j
    return complex(np.sum(dist.tau**n * dist.values) * dist.tau_step) / denominator


def complex_time(dist: TauAmplitudeDistribution) -> ComplexTime:
    return ComplexTime.from_complex(nth_moment(dist, 1))


def classical_scale_gap(first: complex, second: complex) -> float:
    """|<tau^2> - tau_bar^2| / |tau_bar|^2; small only when one classical duration dominates."""
    scale = ComplexTime.from_complex(first).modulus_squared
    if scale == 0:
        raise DegenerateTransitionError('Mean duration is zero; the relative gap is undefined')
    return abs(second - first**2) / scale


def distribution_scale_gap(dist: TauAmplitudeDistribution) -> float:
    return classical_scale_gap(nth_moment(dist, 1), nth_moment(dist, 2))


# ---------------------------------------------------------------------------
# Derivative route
# ---------------------------------------------------------------------------


class DerivativeEstimate(NamedTuple):
    tau_bar: ComplexTime
    delta: float  # final step used
    halvings: int
    residual: float  # last change between Richardson values


def central_difference(source: LambdaAmplitudeSource, delta: float) -> complex:
    """i * ln(A(delta) / A(-delta)) / (2 delta) on the principal branch of the ratio."""
    plus, minus = source(np.array([delta, -delta]))
    if abs(plus) < AMPLITUDE_GUARD or abs(minus) < AMPLITUDE_GUARD:
        raise DegenerateTransitionError(f'Amplitude vanishes within +/-{delta} of lambda=0')
    return complex(1j * np.log(plus / minus) / (2 * delta))


def derivative_complex_time(
    source: LambdaAmplitudeSource,
    delta_lambda: float = DEFAULT_DELTA,
    *,
    tol: float = RICHARDSON_TOL,
) -> DerivativeEstimate:
    """Halve the step until consecutive Richardson values agree to ``tol`` (relative)."""
    if not delta_lambda > 0:
        raise InvalidParameterError(f'delta_lambda must be positive, got {delta_lambda}')
    at_zero = complex(source(np.array([0.0]))[0])
    if abs(at_zero) < AMPLITUDE_GUARD:
        raise DegenerateTransitionError(
            f'Transition amplitude at lambda=0 is {abs(at_zero):.3g}; the complex time is undefined'
        )

    delta = delta_lambda
    coarse = central_difference(source, delta)
    previous: complex | None = None
    last_residual = np.inf
    for halving in range(1, MAX_HALVINGS + 1):
        fine = central_difference(source, delta / 2)
        extrapolated = (4 * fine - coarse) / 3
        if previous is not None:
            residual = abs(extrapolated - previous)
            if residual <= tol * max(abs(extrapolated), 1.0):
                logger.debug(
                    f'{scenario_tag()}Derivative converged after {halving} halvings '
                    f'(delta={delta / 2:.3g}, residual={residual:.2e})'
                )
                return DerivativeEstimate(
                    ComplexTime.from_complex(extrapolated), delta / 2, halving, residual
                )
            if halving > 3 and residual > last_residual:
                # Round-off now dominates; the previous value is the most accurate.
                logger.debug(
                    f'{scenario_tag()}Derivative hit the round-off floor at delta={delta:.3g} '
                    f'(residual={last_residual:.2e})'
                )
                return DerivativeEstimate(
                    ComplexTime.from_complex(previous), delta, halving - 1, last_residual
                )
            last_residual = residual
        previous = extrapolated
        coarse = fine
        delta /= 2

    raise InvalidInputError(
        f'Finite differences did not stabilise after {MAX_HALVINGS} halvings of {delta_lambda}'
    )


def complex_time_by_derivative(
    packet: WavePacket,
    barrier: BarrierSpec,
    x: float,
    T_total: float,
    delta_lambda: float = DEFAULT_DELTA,
) -> ComplexTime:
    source = ScatteringSource(packet, barrier, x, T_total)
    return derivative_complex_time(source, delta_lambda).tau_bar


def plane_wave_complex_time(
    p: float, barrier: BarrierSpec, mu: float, delta_lambda: float = DEFAULT_DELTA
) -> ComplexTime:
    """tau_bar of a single momentum: i * d ln t(p; V + lam) / d lam at lam = 0."""
    return derivative_complex_time(PlaneWaveSource(p, barrier, mu), delta_lambda).tau_bar
