"""Fourier inversion of a lambda scan into amplitudes over durations.

    A(tau) = (1 / 2 pi) integral exp(i lam tau) W(lam) A(lam) dlam

is evaluated with one FFT on the full periodic grid tau_k = k * dtau,
k = -n/2 .. n/2 - 1, dtau = pi / Lambda. Samples with tau < 0 or
tau > T_total are kept and reported as leakage.
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace
from typing import Any, Literal

import numpy as np

from ..errors import InvalidInputError, InvalidParameterError
from ..logging import logger, scenario_tag
from .scan import LambdaScan

CONVERGED_LEAKAGE = 0.01

TaperKind = Literal['none', 'raised-cosine']


@dataclass(frozen=True)
class Taper:
    kind: TaperKind = 'raised-cosine'
    fraction: float = 0.1  # flank width on each side, as a fraction of Lambda

    def __post_init__(self) -> None:
        if self.kind not in ('none', 'raised-cosine'):
            raise InvalidParameterError(f'Unknown taper {self.kind!r}', field='lambda_grid.taper')
        if self.kind == 'raised-cosine' and not 0 < self.fraction <= 1:
            raise InvalidParameterError(
                f'Taper fraction must be in (0, 1], got {self.fraction}',
                field='lambda_grid.taper_fraction',
            )

    def weights(self, lambdas: np.ndarray, center: float, Lambda: float) -> np.ndarray:
        if self.kind == 'none':
            return np.ones_like(lambdas)
        width = self.fraction * Lambda
        edge_distance = np.minimum(lambdas - (center - Lambda), (center + Lambda) - lambdas)
        flank = np.clip(edge_distance / width, 0.0, 1.0)
        return 0.5 * (1 - np.cos(np.pi * flank))

    def describe(self) -> str:
        return 'none' if self.kind == 'none' else f'raised-cosine({self.fraction:g})'


@dataclass(frozen=True)
class WindowMeta:
    Lambda: float
    n_lambda: int
    step: float  # lambda spacing
    center: float
    taper: Taper
    tau_step: float  # pi / Lambda
    weight_at_zero: float  # W(0); the sum rule returns W(0) * A(0)


@dataclass(frozen=True, eq=False)
class TauAmplitudeDistribution:
    tau: np.ndarray
    values: np.ndarray
    T_total: float
    window: WindowMeta
    leakage: float
    source_meta: dict[str, Any] = field(default_factory=dict)

    @property
    def converged(self) -> bool:
        return self.leakage < CONVERGED_LEAKAGE

    @property
    def tau_step(self) -> float:
        return self.window.tau_step

    def physical_mask(self) -> np.ndarray:
        return (self.tau >= 0) & (self.tau <= self.T_total)

    def peak_tau(self, *, physical_only: bool = False) -> float:
        magnitudes = np.abs(self.values)
        if physical_only:
            magnitudes = np.where(self.physical_mask(), magnitudes, -1.0)
        return float(self.tau[int(np.argmax(magnitudes))])


def leakage_ratio(tau: np.ndarray, values: np.ndarray, T_total: float) -> float:
    """Share of sum |A| lying outside [0, T_total] (uniform grid, so dtau cancels)."""
    magnitudes = np.abs(values)
    total = float(np.sum(magnitudes))
    if total == 0:
        return 0.0
    outside = (tau < 0) | (tau > T_total)
    return float(np.sum(magnitudes[outside])) / total


def _check_uniform(scan: LambdaScan) -> None:
    spacing = np.diff(scan.lambdas)
    if spacing.size == 0 or not np.allclose(spacing, scan.step, rtol=1e-9, atol=0):
        raise InvalidInputError('Inversion needs a uniform lambda grid')


def invert_to_tau(scan: LambdaScan, T_total: float, taper: Taper | None = None) -> TauAmplitudeDistribution:
    taper = taper or Taper()
    if not T_total > 0:
        raise InvalidParameterError(f'Total time must be positive, got {T_total}', field='detection.T_total')
    _check_uniform(scan)

    n = scan.n_lambda
    weights = taper.weights(scan.lambdas, scan.center, scan.Lambda)
    tau_step = 2 * np.pi / (n * scan.step)
    k = np.arange(-(n // 2), n - n // 2)
    tau = k * tau_step

    spectrum = np.fft.fftshift(np.fft.ifft(weights * scan.values))
    values = (scan.step * n / (2 * np.pi)) * np.exp(1j * scan.lambdas[0] * tau) * spectrum

    zero = int(np.argmin(np.abs(scan.lambdas)))
    weight_at_zero = float(weights[zero]) if scan.lambdas[zero] == 0 else 0.0
    if weight_at_zero < 1:
        logger.warning(
            f'{scenario_tag()}Taper weight at lambda=0 is {weight_at_zero:.3g}; '
            'the sum rule will not reproduce the untapered amplitude'
        )

    leakage = leakage_ratio(tau, values, T_total)
    logger.debug(f'{scenario_tag()}Inverted {n} samples: dtau={tau_step:.4g}, leakage={leakage:.3e}')

    return TauAmplitudeDistribution(
        tau=tau,
        values=values,
        T_total=T_total,
        window=WindowMeta(
            Lambda=scan.Lambda,
            n_lambda=n,
            step=scan.step,
            center=scan.center,
            taper=taper,
            tau_step=tau_step,
            weight_at_zero=weight_at_zero,
        ),
        leakage=leakage,
        source_meta=dict(scan.source_meta),
    )


def with_values(dist: TauAmplitudeDistribution, values: np.ndarray, **meta: Any) -> TauAmplitudeDistribution:
    """Copy of ``dist`` carrying new amplitudes; leakage is recomputed."""
    return replace(
        dist,
        values=values,
        leakage=leakage_ratio(dist.tau, values, dist.T_total),
        source_meta={**dist.source_meta, **meta},
    )
