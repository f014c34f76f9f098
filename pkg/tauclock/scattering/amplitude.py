"""Transmitted-packet amplitudes as functions of the potential shift lambda.

A source maps an array of shifts to the amplitude of arriving at ``x`` at
time ``T_total`` while a constant lambda is added over the barrier region:

    A(lam) = integral a(p - p0) t(p; V + lam, d) exp(i p x - i p^2 T / (2 mu)) dp

Synthetic sources give the exact transform of a finite set of durations and
stand in for the physical one wherever closed forms are needed.
"""

from __future__ import annotations

from collections.abc import Sequence
from dataclasses import dataclass, field
from typing import Any, Protocol

import numpy as np

from ..errors import InvalidInputError, InvalidParameterError, UnsupportedConfigurationError
from ..types import LambdaAmplitude
from ..wavepacket import WavePacket, free_phase
from .barrier import BarrierSpec
from .transmission import transmission

# Shifts per vectorised evaluation; bounds memory at chunk * n_points complex.
DEFAULT_CHUNK = 256


class LambdaAmplitudeSource(Protocol):
    def __call__(self, lambdas: np.ndarray) -> np.ndarray: ...

    def describe(self) -> dict[str, Any]: ...


@dataclass(frozen=True, eq=False)
class ScatteringSource:
    packet: WavePacket
    barrier: BarrierSpec
    x: float
    T_total: float
    _weights: np.ndarray = field(init=False, repr=False)

    def __post_init__(self) -> None:
        if not self.T_total > 0:
            raise InvalidParameterError(
                f'Total time must be positive, got {self.T_total}', field='detection.T_total'
            )
        if not self.x > self.barrier.d:
            raise UnsupportedConfigurationError(
                f'Detection point x={self.x} must lie beyond the barrier (x > d={self.barrier.d})',
                field='detection.x',
            )
        weights = self.packet.amplitudes * free_phase(self.packet, self.x, self.T_total)
        object.__setattr__(self, '_weights', weights)

    def __call__(self, lambdas: np.ndarray) -> np.ndarray:
        lams = np.atleast_1d(np.asarray(lambdas, dtype=float))
        out = np.empty(lams.shape, dtype=complex)
        p = self.packet.momenta
        for start in range(0, lams.size, DEFAULT_CHUNK):
            chunk = lams[start : start + DEFAULT_CHUNK]
            t = transmission(p, self.barrier, self.packet.mu, shift=chunk[:, None])
            out[start : start + DEFAULT_CHUNK] = np.trapezoid(self._weights * t, p, axis=-1)
        return out

    def describe(self) -> dict[str, Any]:
        return {
            'source': 'scattering',
            'barrier_height': self.barrier.V,
            'barrier_width': self.barrier.d,
            'x': self.x,
            'T_total': self.T_total,
        }


@dataclass(frozen=True, eq=False)
class SyntheticSource:
    """A(lam) = sum_i w_i exp(-i lam tau_i): the exact transform of point durations."""

    weights: tuple[complex, ...]
    durations: tuple[float, ...]

    def __post_init__(self) -> None:
        if not self.weights or len(self.weights) != len(self.durations):
            raise InvalidInputError('Synthetic source needs matching, non-empty weights and durations')

    @classmethod
    def of(cls, weights: Sequence[complex], durations: Sequence[float]) -> SyntheticSource:
        return cls(tuple(complex(w) for w in weights), tuple(float(t) for t in durations))

    def __call__(self, lambdas: np.ndarray) -> np.ndarray:
        lams = np.atleast_1d(np.asarray(lambdas, dtype=float))
        phases = np.exp(-1j * np.multiply.outer(lams, np.asarray(self.durations)))
        return phases @ np.asarray(self.weights)

    def describe(self) -> dict[str, Any]:
        return {'source': 'synthetic', 'barrier_height': 0.0, 'n_durations': len(self.durations)}


@dataclass(frozen=True)
class PlaneWaveSource:
    """Bare transmission t(p; V + lam) of a single momentum."""

    p: float
    barrier: BarrierSpec
    mu: float

    def __call__(self, lambdas: np.ndarray) -> np.ndarray:
        lams = np.atleast_1d(np.asarray(lambdas, dtype=float))
        return np.asarray(transmission(self.p, self.barrier, self.mu, shift=lams), dtype=complex)

    def describe(self) -> dict[str, Any]:
        return {'source': 'plane-wave', 'barrier_height': self.barrier.V, 'p': self.p}


def lambda_amplitude(
    packet: WavePacket, barrier: BarrierSpec, lam: float, x: float, T_total: float
) -> LambdaAmplitude:
    source = ScatteringSource(packet, barrier, x, T_total)
    return LambdaAmplitude(float(lam), complex(source(np.array([lam]))[0]))


def transmitted_amplitude(
    packet: WavePacket, barrier: BarrierSpec, x: float | np.ndarray, T_total: float
) -> complex | np.ndarray:
    """Transmitted packet at time T_total, vectorised over x (no shift)."""
    xs = np.asarray(x, dtype=float)
    p = packet.momenta
    t = transmission(p, barrier, packet.mu)
    phase = np.exp(1j * (np.multiply.outer(xs, p) - p**2 * T_total / (2 * packet.mu)))
    values = np.trapezoid(packet.amplitudes * t * phase, p, axis=-1)
    return complex(values) if xs.ndim == 0 else values


def transmitted_peak(
    packet: WavePacket,
    barrier: BarrierSpec,
    T_total: float,
    half_width: float,
    n_points: int = 4001,
) -> float:
    """Location of the transmitted packet maximum within +/- half_width of the free centre."""
    centre = packet.x_c + packet.p0 * T_total / packet.mu
    xs = np.linspace(centre - half_width, centre + half_width, n_points)
    magnitudes = np.abs(transmitted_amplitude(packet, barrier, xs, T_total))
    return float(xs[int(np.argmax(magnitudes))])
