"""Gaussian wave packets in momentum space and their free evolution.

Natural units (hbar = 1). A packet is stored as samples of a(p - p0) on a
uniform momentum grid, normalised so that 2*pi*sum(|a|^2)*dp_step = 1.
The position-space amplitude is

    G(x, t) = integral a(p - p0) exp(i p x - i p^2 t / (2 mu)) dp

evaluated by trapezoid quadrature on the packet grid.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import InvalidParameterError

MIN_POINTS = 16
MIN_SPAN = 6.0


@dataclass(frozen=True, eq=False)
class WavePacket:
    p0: float
    dp: float
    x_c: float
    mu: float
    momenta: np.ndarray  # uniform, strictly increasing
    amplitudes: np.ndarray  # a(p - p0) at each momentum

    @property
    def step(self) -> float:
        return float(self.momenta[1] - self.momenta[0])

    @property
    def grid(self) -> list[tuple[float, complex]]:
        return [(float(p), complex(a)) for p, a in zip(self.momenta, self.amplitudes, strict=True)]

    def tunnels_through(self, height: float) -> bool:
        """True when every grid momentum has kinetic energy below ``height``."""
        return bool(np.all(self.momenta**2 / (2 * self.mu) < height))


def make_gaussian_packet(
    p0: float,
    dp: float,
    x_c: float,
    mu: float = 1.0,
    n_points: int = 512,
    span: float = MIN_SPAN,
) -> WavePacket:
    """Gaussian packet a(q) ~ exp(-q^2 / (4 dp^2) - i q x_c) on p0 +/- span*dp."""
    if not dp > 0:
        raise InvalidParameterError(f'Momentum spread must be positive, got {dp}', field='packet.dp')
    if not mu > 0:
        raise InvalidParameterError(f'Mass must be positive, got {mu}', field='packet.mu')
    if n_points < MIN_POINTS:
        raise InvalidParameterError(
            f'Need at least {MIN_POINTS} grid points, got {n_points}', field='packet.n_points'
        )
    if span < MIN_SPAN:
        raise InvalidParameterError(
            f'Grid must cover at least p0 +/- {MIN_SPAN}*dp, got span={span}', field='packet.span'
        )

    momenta = np.linspace(p0 - span * dp, p0 + span * dp, n_points)
    q = momenta - p0
    amplitudes = np.exp(-(q**2) / (4 * dp**2) - 1j * q * x_c)
    step = momenta[1] - momenta[0]
    amplitudes /= np.sqrt(2 * np.pi * np.sum(np.abs(amplitudes) ** 2) * step)

    return WavePacket(p0=p0, dp=dp, x_c=x_c, mu=mu, momenta=momenta, amplitudes=amplitudes)


def packet_norm(packet: WavePacket) -> float:
    return float(2 * np.pi * np.sum(np.abs(packet.amplitudes) ** 2) * packet.step)


def mean_momentum(packet: WavePacket) -> float:
    weights = np.abs(packet.amplitudes) ** 2
    return float(np.sum(packet.momenta * weights) / np.sum(weights))


def free_phase(packet: WavePacket, x: float, t: float) -> np.ndarray:
    """exp(i p x - i p^2 t / (2 mu)) on the packet grid."""
    p = packet.momenta
    return np.exp(1j * (p * x - p**2 * t / (2 * packet.mu)))


def position_amplitude(
    packet: WavePacket, x: float | np.ndarray, t_free: float = 0.0
) -> complex | np.ndarray:
    """Free-evolved position amplitude G(x, t_free); vectorised over ``x``."""
    xs = np.asarray(x, dtype=float)
    p = packet.momenta
    phase = np.exp(1j * (np.multiply.outer(xs, p) - p**2 * t_free / (2 * packet.mu)))
    values = np.trapezoid(packet.amplitudes * phase, p, axis=-1)
    if xs.ndim == 0:
        return complex(values)
    return values


def free_peak_position(packet: WavePacket, t_free: float, half_width: float, n_points: int = 4001) -> float:
    """Location of max |G(x, t_free)| found by a quadrature scan around the classical centre."""
    centre = packet.x_c + packet.p0 * t_free / packet.mu
    xs = np.linspace(centre - half_width, centre + half_width, n_points)
    magnitudes = np.abs(position_amplitude(packet, xs, t_free))
    return float(xs[int(np.argmax(magnitudes))])
