"""Uniform lambda scans of a transmitted amplitude."""

from __future__ import annotations

import threading
from collections.abc import Iterator
from dataclasses import dataclass, field
from typing import Any

import numpy as np

from ..errors import InvalidInputError, InvalidParameterError
from ..logging import logger, scenario_tag
from ..scattering.amplitude import DEFAULT_CHUNK, LambdaAmplitudeSource, ScatteringSource
from ..scattering.barrier import BarrierSpec
from ..types import LambdaAmplitude, ProgressCallback
from ..wavepacket import WavePacket
from ..workers import ordered_map

MIN_LAMBDA_POINTS = 256


@dataclass(frozen=True, eq=False)
class LambdaScan:
    """Amplitude samples on lam_j = offset + j * step, j = 0 .. n - 1.

    The window is [center - Lambda, center + Lambda) with ``center`` snapped
    to a multiple of ``step``, so lam = 0 is always a grid node.
    """

    lambdas: np.ndarray
    values: np.ndarray
    Lambda: float
    center: float
    step: float
    source_meta: dict[str, Any] = field(default_factory=dict)

    @property
    def n_lambda(self) -> int:
        return int(self.lambdas.size)

    def __len__(self) -> int:
        return self.n_lambda

    def __iter__(self) -> Iterator[LambdaAmplitude]:
        for lam, value in zip(self.lambdas, self.values, strict=True):
            yield LambdaAmplitude(float(lam), complex(value))

    def __getitem__(self, index: int) -> LambdaAmplitude:
        return LambdaAmplitude(float(self.lambdas[index]), complex(self.values[index]))

    def node_index(self, lam: float) -> int:
        """Index of the grid node at ``lam``; raises if ``lam`` is not a node."""
        position = (lam - self.lambdas[0]) / self.step
        index = round(position)
        if abs(position - index) > 1e-6 or not 0 <= index < self.n_lambda:
            raise InvalidInputError(
                f'lambda={lam} is not a node of the scan grid '
                f'[{self.lambdas[0]}, {self.lambdas[-1]}] with step {self.step}'
            )
        return index

    def value_at(self, lam: float) -> complex:
        return complex(self.values[self.node_index(lam)])


def lambda_grid(Lambda: float, n_lambda: int, center: float = 0.0) -> tuple[np.ndarray, float, float]:
    """Grid nodes, step and snapped centre of a scan window."""
    if not Lambda > 0:
        raise InvalidParameterError(f'Lambda must be positive, got {Lambda}', field='lambda_grid.Lambda')
    if n_lambda < MIN_LAMBDA_POINTS or n_lambda & (n_lambda - 1):
        raise InvalidParameterError(
            f'n_lambda must be a power of two >= {MIN_LAMBDA_POINTS}, got {n_lambda}',
            field='lambda_grid.n_lambda',
        )
    step = 2 * Lambda / n_lambda
    shift = round(center / step)
    if abs(shift) >= n_lambda // 2:
        raise InvalidParameterError(
            f'Window centre {center} puts lambda=0 outside [-Lambda, Lambda)',
            field='lambda_grid.center',
        )
    # Integer node indices keep lambda = 0 exactly representable.
    indices = np.arange(n_lambda) + (shift - n_lambda // 2)
    return indices * step, step, shift * step


def scan_source(
    source: LambdaAmplitudeSource,
    Lambda: float,
    n_lambda: int,
    *,
    center: float = 0.0,
    on_progress: ProgressCallback | None = None,
) -> LambdaScan:
    lambdas, step, snapped = lambda_grid(Lambda, n_lambda, center)
    chunks = [lambdas[i : i + DEFAULT_CHUNK] for i in range(0, n_lambda, DEFAULT_CHUNK)]
    logger.debug(
        f'{scenario_tag()}Scanning {n_lambda} shifts in {len(chunks)} chunks '
        f'(Lambda={Lambda}, step={step:.3g}, center={snapped})'
    )

    done = 0
    lock = threading.Lock()

    def evaluate(chunk: np.ndarray) -> np.ndarray:
        nonlocal done
        values = source(chunk)
        with lock:
            done += 1
            if on_progress is not None:
                on_progress(done, len(chunks))
        return values

    values = np.concatenate(ordered_map(evaluate, chunks))
    if not np.all(np.isfinite(values)):
        raise InvalidInputError('Amplitude scan produced non-finite values')

    return LambdaScan(
        lambdas=lambdas,
        values=values,
        Lambda=Lambda,
        center=snapped,
        step=step,
        source_meta=source.describe(),
    )


def lambda_scan(
    packet: WavePacket,
    barrier: BarrierSpec,
    x: float,
    T_total: float,
    Lambda: float,
    n_lambda: int,
    *,
    center: float = 0.0,
    on_progress: ProgressCallback | None = None,
) -> LambdaScan:
    """Scan the transmitted amplitude over lam in [center - Lambda, center + Lambda)."""
    source = ScatteringSource(packet, barrier, x, T_total)
    return scan_source(source, Lambda, n_lambda, center=center, on_progress=on_progress)


def default_Lambda(T_total: float) -> float:
    return 20 * (2 * np.pi / T_total)
