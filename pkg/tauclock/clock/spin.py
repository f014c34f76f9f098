"""Spin-j states in the J_z eigenbasis, stored m-ascending (index 0 is m = -j)."""

from __future__ import annotations

from dataclasses import dataclass
from functools import cache

import numpy as np
from scipy.linalg import expm

from ..errors import InvalidInputError, InvalidParameterError

NORMALIZED_TOL = 1e-12


def _check_spin(j: float) -> float:
    twice = round(2 * j)
    if twice < 1 or abs(2 * j - twice) > 1e-12:
        raise InvalidParameterError(f'Spin must be a positive multiple of 1/2, got {j}', field='clock.j')
    return twice / 2


@cache
def spin_matrices(j: float) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """(J_x, J_y, J_z) for spin j from the ladder-operator matrix elements."""
    j = _check_spin(j)
    m = np.linspace(-j, j, round(2 * j) + 1)
    ladder_up = np.diag(np.sqrt(j * (j + 1) - m[:-1] * (m[:-1] + 1)), k=-1).astype(complex)
    lower = ladder_up.conj().T
    jx = (ladder_up + lower) / 2
    jy = (ladder_up - lower) / 2j
    jz = np.diag(m).astype(complex)
    for matrix in (jx, jy, jz):
        matrix.setflags(write=False)
    return jx, jy, jz


@dataclass(frozen=True, eq=False)
class SpinState:
    j: float
    amps: np.ndarray  # gamma_m for m = -j .. j

    def __post_init__(self) -> None:
        j = _check_spin(self.j)
        amps = np.asarray(self.amps, dtype=complex)
        if amps.shape != (round(2 * j) + 1,):
            raise InvalidInputError(f'Spin {j} needs {round(2 * j) + 1} amplitudes, got shape {amps.shape}')
        object.__setattr__(self, 'j', j)
        object.__setattr__(self, 'amps', amps)

    @property
    def dim(self) -> int:
        return self.amps.size

    @property
    def m_values(self) -> np.ndarray:
        return np.linspace(-self.j, self.j, self.dim)

    @property
    def norm(self) -> float:
        return float(np.sum(np.abs(self.amps) ** 2))

    @property
    def is_normalized(self) -> bool:
        return abs(self.norm - 1) < NORMALIZED_TOL

    def normalized(self) -> SpinState:
        norm = self.norm
        if norm == 0:
            raise InvalidInputError('Cannot normalise a zero-norm spin state')
        return SpinState(self.j, self.amps / np.sqrt(norm))

    def overlap(self, other: SpinState) -> complex:
        """<self|other>."""
        require_same_spin(self, other)
        return complex(np.vdot(self.amps, other.amps))

    def expectation(self, operator: np.ndarray) -> complex:
        return complex(np.vdot(self.amps, operator @ self.amps))

    def rotated_z(self, angle: float) -> SpinState:
        """exp(-i angle J_z) applied to the state."""
        return SpinState(self.j, np.exp(-1j * angle * self.m_values) * self.amps)

    @classmethod
    def basis(cls, j: float, m: float) -> SpinState:
        j = _check_spin(j)
        index = round(m + j)
        if abs(m + j - index) > 1e-12 or not 0 <= index <= round(2 * j):
            raise InvalidParameterError(f'm={m} is not a level of spin {j}')
        amps = np.zeros(round(2 * j) + 1, dtype=complex)
        amps[index] = 1
        return cls(j, amps)

    @classmethod
    def coherent(cls, j: float, polar: float, azimuth: float) -> SpinState:
        """exp(-i azimuth J_z) exp(-i polar J_y) |j, j>: fully polarised along (polar, azimuth)."""
        _, jy, jz = spin_matrices(_check_spin(j))
        top = cls.basis(j, j).amps
        return cls(j, expm(-1j * azimuth * jz) @ (expm(-1j * polar * jy) @ top))

    @classmethod
    def up_x(cls, j: float = 0.5) -> SpinState:
        return cls.coherent(j, np.pi / 2, 0.0)

    @classmethod
    def down_x(cls, j: float = 0.5) -> SpinState:
        return cls.coherent(j, np.pi / 2, np.pi)

    @classmethod
    def from_components(cls, j: float, components: list[complex]) -> SpinState:
        return cls(j, np.asarray(components, dtype=complex))


def require_same_spin(a: SpinState, b: SpinState) -> None:
    if a.j != b.j:
        raise InvalidInputError(f'Spin mismatch: j={a.j} vs j={b.j}')
