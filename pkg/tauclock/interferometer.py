"""Two-arm interferometer: two durations, one spin, and the weak mean time.

The arm amplitudes G1, G2 at the detection point are inputs (any extra arm
phase is folded into G2). Arm i keeps the spin in the field for tau_i, so
the detected spinor is the two-duration case of the Larmor clock and is
built through the same code path.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from .clock.larmor import final_spin_state
from .clock.readout import baz_angles
from .clock.spin import SpinState
from .errors import DegenerateTransitionError, InvalidInputError, InvalidParameterError
from .logging import logger, scenario_tag
from .scattering.amplitude import SyntheticSource
from .types import ClockReadout, ComplexTime

# Relative to |G1| + |G2|; phase sweeps land on cancellation only up to round-off.
CANCELLATION_TOL = 1e-12
ROUND_TRIP_TOL = 1e-12


@dataclass(frozen=True)
class TwoPathConfig:
    G1: complex
    G2: complex
    tau1: float
    tau2: float
    omega_L: float
    T_total: float

    def __post_init__(self) -> None:
        if not self.T_total > 0:
            raise InvalidParameterError(
                f'Total time must be positive, got {self.T_total}', field='interferometer.T_total'
            )
        for name in ('tau1', 'tau2'):
            value = getattr(self, name)
            if not 0 <= value <= self.T_total:
                raise InvalidParameterError(
                    f'{name}={value} must lie in [0, T_total={self.T_total}]',
                    field=f'interferometer.{name}',
                )
        object.__setattr__(self, 'G1', complex(self.G1))
        object.__setattr__(self, 'G2', complex(self.G2))

    def with_phase(self, phi: float) -> TwoPathConfig:
        """The same interferometer with an extra phase phi on the second arm."""
        return TwoPathConfig(
            self.G1, self.G2 * np.exp(1j * phi), self.tau1, self.tau2, self.omega_L, self.T_total
        )

    def source(self) -> SyntheticSource:
        return SyntheticSource.of([self.G1, self.G2], [self.tau1, self.tau2])


class AlphaPair(NamedTuple):
    alpha1: complex
    alpha2: complex


def two_path_state(config: TwoPathConfig) -> SpinState:
    """Unnormalised spinor G1 R(tau1)|up_x> + G2 R(tau2)|up_x>."""
    return final_spin_state(config.source(), config.omega_L, SpinState.up_x())


def _total_amplitude(config: TwoPathConfig) -> complex:
    total = config.G1 + config.G2
    if abs(total) <= CANCELLATION_TOL * (abs(config.G1) + abs(config.G2)):
        raise DegenerateTransitionError(
            f'Arm amplitudes cancel (G1 + G2 = {total}); the weak mean time is undefined',
            field='interferometer.G2',
        )
    return total


def weak_mean_time(config: TwoPathConfig) -> ComplexTime:
    total = _total_amplitude(config)
    return ComplexTime.from_complex((config.tau1 * config.G1 + config.tau2 * config.G2) / total)


def precession_angles(config: TwoPathConfig) -> ClockReadout:
    return baz_angles(two_path_state(config), config.omega_L)


def solve_alphas(tau1: float, tau2: float, tau_bar: complex) -> AlphaPair:
    """Relative amplitudes alpha1 + alpha2 = 1 whose weighted mean of (tau1, tau2) is tau_bar."""
    if tau1 == tau2:
        raise InvalidInputError('Durations must differ to solve for the relative amplitudes')
    tau_bar = complex(tau_bar)
    gap = tau1 - tau2
    alpha1 = (tau_bar - tau2) / gap
    alpha2 = -(tau_bar - tau1) / gap
    scale = max(abs(tau1), abs(tau2), abs(tau_bar), 1.0)
    if abs(alpha1 + alpha2 - 1) > ROUND_TRIP_TOL * max(abs(alpha1), 1.0) or (
        abs(alpha1 * tau1 + alpha2 * tau2 - tau_bar) > ROUND_TRIP_TOL * scale * max(abs(alpha1), 1.0)
    ):
        raise InvalidInputError(
            f'Relative amplitudes lost precision for tau1={tau1}, tau2={tau2}, tau_bar={tau_bar}'
        )
    return AlphaPair(alpha1, alpha2)


def second_moment(alphas: AlphaPair, tau1: float, tau2: float) -> complex:
    """alpha1 tau1^2 + alpha2 tau2^2; equals tau_bar^2 only if one alpha vanishes."""
    return alphas.alpha1 * tau1**2 + alphas.alpha2 * tau2**2


def anomaly_flags(config: TwoPathConfig) -> dict[str, bool]:
    tau_bar = weak_mean_time(config)
    return {
        'negative': tau_bar.re < 0,
        'exceeds_total': tau_bar.re > config.T_total,
        'modulus_exceeds_total': tau_bar.modulus > config.T_total,
    }


# ---------------------------------------------------------------------------
# Phase sweep
# ---------------------------------------------------------------------------

SWEEP_COLUMNS = ('phi', 'tau_re', 'tau_im', 'dphi_over_omega', 'dtheta_over_omega', 'degenerate')


class SweepRow(NamedTuple):
    phi: float
    tau_re: float
    tau_im: float
    dphi_over_omega: float
    dtheta_over_omega: float
    degenerate: bool


def phase_sweep(config: TwoPathConfig, n_phi: int = 64) -> list[SweepRow]:
    """Weak mean time and clock readings for phi = 2 pi k / n_phi on the second arm."""
    if n_phi < 1:
        raise InvalidParameterError(f'n_phi must be positive, got {n_phi}', field='interferometer.n_phi')
    if config.omega_L == 0:
        raise InvalidParameterError('The sweep needs a non-zero field', field='interferometer.omega_L')

    rows: list[SweepRow] = []
    for k in range(n_phi):
        phi = 2 * np.pi * k / n_phi
        shifted = config.with_phase(phi)
        try:
            tau_bar = weak_mean_time(shifted)
            readout = precession_angles(shifted)
        except DegenerateTransitionError:
            logger.warning(f'{scenario_tag()}Arms cancel at phi={phi:.6g}; row left empty')
            nan = float('nan')
            rows.append(SweepRow(phi, nan, nan, nan, nan, True))
            continue
        rows.append(
            SweepRow(
                phi,
                tau_bar.re,
                tau_bar.im,
                readout.delta_phi / config.omega_L,
                readout.delta_theta / config.omega_L,
                False,
            )
        )
    return rows
