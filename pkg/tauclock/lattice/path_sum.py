"""Duration amplitudes on a lattice, by brute-force paths and by lambda phases."""

from __future__ import annotations

import itertools
from typing import NamedTuple

import numpy as np

from ..errors import TooLargeLatticeError
from ..logging import logger, scenario_tag
from ..workers import ordered_map
from .spec import LatticeSpec

MAX_PATHS = 10_000_000


class DiscreteTauAmplitudes(NamedTuple):
    amps: np.ndarray  # A_n for n = 0 .. N arrivals inside the region
    dt: float

    @property
    def tau(self) -> np.ndarray:
        return np.arange(self.amps.size) * self.dt

    @property
    def total(self) -> complex:
        return complex(np.sum(self.amps))


def _tails(n_sites: int, length: int) -> np.ndarray:
    """Every site sequence of the given length, one per row."""
    rows = list(itertools.product(range(n_sites), repeat=length))
    return np.array(rows, dtype=np.intp).reshape(len(rows), length)


def _shard(lattice: LatticeSpec, first: int, tails: np.ndarray) -> np.ndarray:
    """Binned amplitudes of all paths whose first arrival is ``first``."""
    hop, mask, n_bins = lattice.hop, lattice.region_mask, lattice.n_steps + 1
    sites = np.column_stack(
        [
            np.full(len(tails), lattice.start),
            np.full(len(tails), first),
            tails,
            np.full(len(tails), lattice.end),
        ]
    )
    amplitudes = np.prod(hop[sites[:, 1:], sites[:, :-1]], axis=1)
    counts = mask[sites[:, 1:]].sum(axis=1)
    real = np.bincount(counts, weights=amplitudes.real, minlength=n_bins)
    imag = np.bincount(counts, weights=amplitudes.imag, minlength=n_bins)
    return real + 1j * imag


def path_sum_tau(lattice: LatticeSpec) -> DiscreteTauAmplitudes:
    """Enumerate every path from start to end and bin by arrivals inside the region."""
    if lattice.path_count > MAX_PATHS:
        raise TooLargeLatticeError(
            f'{lattice.n_sites}^{lattice.n_steps} = {lattice.path_count} paths exceeds the cap of {MAX_PATHS}',
            field='lattice.n_steps',
        )
    n, mask = lattice.n_steps, lattice.region_mask
    if n == 0:
        amps = np.array([1.0 + 0j if lattice.start == lattice.end else 0j])
        return DiscreteTauAmplitudes(amps, lattice.dt)
    if n == 1:
        amps = np.zeros(2, dtype=complex)
        amps[mask[lattice.end]] = lattice.hop[lattice.end, lattice.start]
        return DiscreteTauAmplitudes(amps, lattice.dt)

    tails = _tails(lattice.n_sites, n - 2)
    logger.debug(
        f'{scenario_tag()}Enumerating {lattice.n_sites * len(tails)} paths '
        f'in {lattice.n_sites} shards'
    )
    shards = ordered_map(lambda first: _shard(lattice, first, tails), list(range(lattice.n_sites)))
    # Fixed shard order keeps the reduction reproducible.
    amps = np.zeros(n + 1, dtype=complex)
    for shard in shards:
        amps += shard
    return DiscreteTauAmplitudes(amps, lattice.dt)


def lattice_lambda_amplitude(lattice: LatticeSpec, lam: float) -> complex:
    """(end, start) entry of (P(lam) U)^N with P(lam) the region phase exp(-i lam dt)."""
    phases = np.where(lattice.region_mask == 1, np.exp(-1j * lam * lattice.dt), 1.0)
    step = phases[:, None] * lattice.hop
    return complex(np.linalg.matrix_power(step, lattice.n_steps)[lattice.end, lattice.start])


def dft_tau(lattice: LatticeSpec) -> DiscreteTauAmplitudes:
    """A_n from the lambda amplitudes at lam_k = 2 pi k / ((N + 1) dt), k = 0 .. N."""
    n_bins = lattice.n_steps + 1
    lambdas = 2 * np.pi * np.arange(n_bins) / (n_bins * lattice.dt)
    values = np.array([lattice_lambda_amplitude(lattice, lam) for lam in lambdas])
    return DiscreteTauAmplitudes(np.fft.ifft(values), lattice.dt)
