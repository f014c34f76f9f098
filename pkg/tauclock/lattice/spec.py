"""Tiny lattices whose every path can be enumerated."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.linalg import expm
from scipy.stats import unitary_group

from ..errors import InvalidParameterError

MAX_SITES = 8
MAX_STEPS = 12
UNITARY_TOL = 1e-12


@dataclass(frozen=True, eq=False)
class LatticeSpec:
    n_sites: int
    region: tuple[int, ...]  # sites where arrivals count towards the duration
    hop: np.ndarray  # single-step unitary, hop[to, from]
    n_steps: int
    dt: float
    start: int
    end: int

    def __post_init__(self) -> None:
        if not 1 <= self.n_sites <= MAX_SITES:
            raise InvalidParameterError(
                f'n_sites must be in 1..{MAX_SITES}, got {self.n_sites}', field='lattice.n_sites'
            )
        if not 0 <= self.n_steps <= MAX_STEPS:
            raise InvalidParameterError(
                f'n_steps must be in 0..{MAX_STEPS}, got {self.n_steps}', field='lattice.n_steps'
            )
        if not self.dt > 0:
            raise InvalidParameterError(f'dt must be positive, got {self.dt}', field='lattice.dt')

        region = tuple(sorted(set(int(site) for site in self.region)))
        if not region:
            raise InvalidParameterError('Region must contain at least one site', field='lattice.region')
        if region[0] < 0 or region[-1] >= self.n_sites:
            raise InvalidParameterError(f'Region sites {region} out of range', field='lattice.region')
        for name in ('start', 'end'):
            if not 0 <= getattr(self, name) < self.n_sites:
                raise InvalidParameterError(f'{name} site out of range', field=f'lattice.{name}')

        hop = np.asarray(self.hop, dtype=complex)
        if hop.shape != (self.n_sites, self.n_sites):
            raise InvalidParameterError(
                f'Hop matrix must be {self.n_sites}x{self.n_sites}, got {hop.shape}', field='lattice.hop'
            )
        deviation = np.max(np.abs(hop.conj().T @ hop - np.eye(self.n_sites)))
        if deviation > UNITARY_TOL:
            raise InvalidParameterError(f'Hop matrix is not unitary (deviation {deviation:.3g})', field='lattice.hop')

        object.__setattr__(self, 'region', region)
        object.__setattr__(self, 'hop', hop)

    @property
    def T_total(self) -> float:
        return self.n_steps * self.dt

    @property
    def region_mask(self) -> np.ndarray:
        mask = np.zeros(self.n_sites, dtype=np.intp)
        mask[list(self.region)] = 1
        return mask

    @property
    def path_count(self) -> int:
        return self.n_sites**self.n_steps

    def ending_at(self, end: int) -> LatticeSpec:
        return LatticeSpec(self.n_sites, self.region, self.hop, self.n_steps, self.dt, self.start, end)


def tight_binding_hop(n_sites: int, theta: float) -> np.ndarray:
    """exp(-i theta H) for a nearest-neighbour chain with unit hopping."""
    hamiltonian = np.eye(n_sites, k=1) + np.eye(n_sites, k=-1)
    return expm(-1j * theta * hamiltonian)


def random_hop(n_sites: int, seed: int) -> np.ndarray:
    """Haar-random unitary, reproducible from ``seed``."""
    if n_sites == 1:
        # unitary_group needs dim >= 2; U(1) is a random phase.
        phase = np.random.default_rng(seed).uniform(0.0, 2 * np.pi)
        return np.array([[np.exp(1j * phase)]])
    return np.asarray(unitary_group.rvs(n_sites, random_state=seed), dtype=complex)
