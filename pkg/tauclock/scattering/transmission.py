"""Plane-wave transmission through rectangular and piecewise-constant barriers.

Convention: a wave exp(i p x) incident from the left leaves the region as
t * exp(i p x) for x > d, so an empty region gives t = 1. Inside a layer of
height U the local wavenumber is q = sqrt(p^2 - 2 mu U) with Im q >= 0, which
covers barriers (imaginary q), wells and above-barrier motion (real q) with
one formula.

Everything is vectorised: ``p`` and the height shift broadcast against each
other, which is how lambda scans evaluate many composite potentials at once.
"""

from __future__ import annotations

from typing import NamedTuple

import numpy as np

from ..errors import InvalidParameterError
from .barrier import BarrierSpec

# Below |q w| = 1 the cos/sinc form is used; it is entire in q^2 and so
# continuous through E = U.
_SMALL_PHASE = 1.0
_SINC_SERIES = 1e-4


class ScatteringAmplitudes(NamedTuple):
    transmission: complex | np.ndarray
    reflection: complex | np.ndarray


def _momenta(p: float | np.ndarray) -> np.ndarray:
    k = np.asarray(p, dtype=float)
    if np.any(~(k > 0)):
        raise InvalidParameterError('Momentum must be positive', field='p')
    return k


def _sinc(z: np.ndarray) -> np.ndarray:
    out = np.ones_like(z)
    tiny = np.abs(z) < _SINC_SERIES
    out[tiny] = 1 - z[tiny] ** 2 / 6
    big = ~tiny
    out[big] = np.sin(z[big]) / z[big]
    return out


def _wavenumber(q2: np.ndarray) -> np.ndarray:
    # q2 is real, so +0j keeps the branch with Im q >= 0.
    return np.sqrt(q2.astype(complex))


def _broadcast(p: float | np.ndarray, heights: float | np.ndarray) -> tuple[np.ndarray, np.ndarray, bool]:
    k, h = np.broadcast_arrays(_momenta(p), np.asarray(heights, dtype=float))
    return np.atleast_1d(k), np.atleast_1d(h), k.ndim == 0


def _unwrap(values: np.ndarray, scalar: bool) -> complex | np.ndarray:
    return complex(values[0]) if scalar else values


def rect_transmission(
    p: float | np.ndarray, V: float | np.ndarray, d: float, mu: float
) -> complex | np.ndarray:
    """Closed-form transmission amplitude of a rectangle of height V on [0, d]."""
    if not d > 0:
        raise InvalidParameterError(f'Barrier width must be positive, got {d}', field='barrier.d')
    k, U, scalar = _broadcast(p, V)
    q2 = k**2 - 2 * mu * U
    q = _wavenumber(q2)
    t = np.empty(k.shape, dtype=complex)

    small = np.abs(q * d) < _SMALL_PHASE
    if np.any(small):
        ks, q2s, qs = k[small], q2[small], q[small]
        denom = np.cos(qs * d) - 1j * (ks**2 + q2s) / (2 * ks) * d * _sinc(qs * d)
        t[small] = np.exp(-1j * ks * d) / denom

    big = ~small
    if np.any(big):
        kb, qb = k[big], q[big]
        numerator = 4 * kb * qb * np.exp(1j * (qb - kb) * d)
        t[big] = numerator / ((kb + qb) ** 2 - (kb - qb) ** 2 * np.exp(2j * qb * d))

    return _unwrap(t, scalar)


def _layer_matrices(k: np.ndarray, q2: np.ndarray, width: float) -> tuple[np.ndarray, np.ndarray]:
    """Transfer matrices of one layer in the (psi, psi') basis.

    Returns (N, log_scale) with the layer matrix equal to exp(log_scale) * N.
    Opaque layers have exp(-i q w) factored out so N stays bounded.
    """
    q = _wavenumber(q2)
    qw = q * width
    mats = np.empty(k.shape + (2, 2), dtype=complex)
    log_scale = np.zeros(k.shape, dtype=complex)

    big = np.abs(qw) >= _SMALL_PHASE
    if np.any(big):
        qb = q[big]
        w2 = np.exp(2j * qb * width)
        mats[big, 0, 0] = (1 + w2) / 2
        mats[big, 0, 1] = (w2 - 1) / (2j * qb)
        mats[big, 1, 0] = -qb * (w2 - 1) / 2j
        mats[big, 1, 1] = (1 + w2) / 2
        log_scale[big] = -1j * qb * width

    small = ~big
    if np.any(small):
        z = qw[small]
        cos_z = np.cos(z)
        sinc_z = _sinc(z)
        mats[small, 0, 0] = cos_z
        mats[small, 0, 1] = width * sinc_z
        mats[small, 1, 0] = -q2[small] * width * sinc_z
        mats[small, 1, 1] = cos_z

    return mats, log_scale


def _scaled_product(
    k: np.ndarray, lam: np.ndarray, barrier: BarrierSpec, mu: float
) -> tuple[np.ndarray, np.ndarray]:
    """Product of all layer matrices as (N, L) with the true product exp(L) * N.

    The running product is renormalised by its largest entry after every
    layer, so arbitrarily opaque stacks never overflow.
    """
    total = np.broadcast_to(np.eye(2, dtype=complex), k.shape + (2, 2)).copy()
    log_scale = np.zeros(k.shape, dtype=complex)
    for width, height in barrier.layers:
        mats, layer_log = _layer_matrices(k, k**2 - 2 * mu * (height + lam), width)
        total = mats @ total
        peak = np.max(np.abs(total), axis=(-2, -1))
        total /= peak[..., None, None]
        log_scale += layer_log + np.log(peak)
    return total, log_scale


def _lead_denominator(k: np.ndarray, total: np.ndarray) -> np.ndarray:
    # Leads: psi = e^{ikx} + r e^{-ikx} left of 0, psi = t' e^{ik(x-d)} right of d.
    n00, n01 = total[..., 0, 0], total[..., 0, 1]
    n10, n11 = total[..., 1, 0], total[..., 1, 1]
    return 1j * k * n00 + k**2 * n01 - n10 + 1j * k * n11


def piecewise_scattering(
    p: float | np.ndarray,
    barrier: BarrierSpec,
    mu: float,
    shift: float | np.ndarray = 0.0,
) -> ScatteringAmplitudes:
    """Transfer-matrix transmission and reflection, ``shift`` added to every layer."""
    k, lam, scalar = _broadcast(p, shift)
    total, log_scale = _scaled_product(k, lam, barrier, mu)
    delta = _lead_denominator(k, total)
    reflection = 2 * (1j * k * total[..., 1, 1] + k**2 * total[..., 0, 1]) / delta - 1
    # The unscaled product has unit determinant.
    transmission = 2j * k * np.exp(-log_scale - 1j * k * barrier.d) / delta
    return ScatteringAmplitudes(_unwrap(transmission, scalar), _unwrap(reflection, scalar))


def piecewise_transmission(
    p: float | np.ndarray, barrier: BarrierSpec, mu: float
) -> complex | np.ndarray:
    return piecewise_scattering(p, barrier, mu).transmission


def log_transmission(p: float, barrier: BarrierSpec, mu: float) -> complex:
    """ln t for one momentum; the real part stays exact far below float range."""
    k, lam, _ = _broadcast(p, 0.0)
    total, log_scale = _scaled_product(k, lam, barrier, mu)
    delta = _lead_denominator(k, total)
    return complex(np.log(2j * k[0] / delta[0]) - log_scale[0] - 1j * k[0] * barrier.d)


def transmission(
    p: float | np.ndarray,
    barrier: BarrierSpec,
    mu: float,
    shift: float | np.ndarray = 0.0,
) -> complex | np.ndarray:
    """Transmission through ``barrier`` raised by ``shift``; closed form for rectangles."""
    if barrier.is_rectangular:
        width, height = barrier.layers[0]
        return rect_transmission(p, np.asarray(shift, dtype=float) + height, width, mu)
    return piecewise_scattering(p, barrier, mu, shift).transmission
