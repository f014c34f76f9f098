"""Rotation angles read off a final spin state."""

from __future__ import annotations

import numpy as np

from ..errors import DegenerateTransitionError, InvalidInputError
from ..types import ClockReadout, ComplexTime
from .spin import SpinState, spin_matrices

MIN_MEAN_SPIN = 1e-12


def _readout(delta_phi: float, delta_theta: float, omega_L: float | None) -> ClockReadout:
    tau = None
    if omega_L:
        tau = ComplexTime.from_complex(complex(delta_phi, delta_theta) / omega_L)
    return ClockReadout(delta_phi, delta_theta, omega_L, tau)


def _require_norm(state: SpinState) -> None:
    if state.norm == 0:
        raise DegenerateTransitionError('Final spin state has zero norm; no particle reaches x')


def bloch_vector(state: SpinState) -> np.ndarray:
    """(<sigma_x>, <sigma_y>, <sigma_z>) of a normalised spin-1/2 state."""
    if state.j != 0.5:
        raise InvalidInputError(f'Bloch vector needs spin 1/2, got j={state.j}')
    _require_norm(state)
    down, up = state.normalized().amps
    cross = np.conj(up) * down
    return np.array([2 * cross.real, 2 * cross.imag, abs(up) ** 2 - abs(down) ** 2])


def baz_angles(state: SpinState, omega_L: float | None = None) -> ClockReadout:
    """Exact spin-1/2 angles: delta_phi = atan2(<s_y>, <s_x>), delta_theta = arcsin(<s_z>)."""
    sx, sy, sz = bloch_vector(state)
    return _readout(float(np.arctan2(sy, sx)), float(np.arcsin(np.clip(sz, -1.0, 1.0))), omega_L)


def mean_spin_direction(state: SpinState) -> np.ndarray:
    """<J> / j for the normalised state; length 1 only for spin-coherent states."""
    _require_norm(state)
    normalized = state.normalized()
    return np.array([normalized.expectation(op).real for op in spin_matrices(state.j)]) / state.j


def readout_angles(state: SpinState, omega_L: float | None = None) -> ClockReadout:
    """Angles of the mean spin direction; equals ``baz_angles`` for spin 1/2."""
    if state.j == 0.5:
        return baz_angles(state, omega_L)
    direction = mean_spin_direction(state)
    length = float(np.linalg.norm(direction))
    if length < MIN_MEAN_SPIN:
        raise DegenerateTransitionError('Mean spin vanishes; the rotation angles are undefined')
    delta_phi = float(np.arctan2(direction[1], direction[0]))
    delta_theta = float(np.arcsin(np.clip(direction[2] / length, -1.0, 1.0)))
    return _readout(delta_phi, delta_theta, omega_L)


def rotation_witness(state: SpinState) -> float:
    """1 - |<J>|/j: positive when no single rotation of a coherent state gives ``state``."""
    return 1.0 - float(np.linalg.norm(mean_spin_direction(state)))
