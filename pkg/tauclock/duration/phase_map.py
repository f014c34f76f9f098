from __future__ import annotations

from dataclasses import replace

import numpy as np

from ..errors import InvalidInputError
from .inversion import TauAmplitudeDistribution, with_values


def rect_phase_map(free_dist: TauAmplitudeDistribution, V: float) -> TauAmplitudeDistribution:
    """Durations for a rectangle of height V from the empty-region distribution.

    Raising the region by V multiplies every duration amplitude by
    exp(-i V tau). The result matches a direct inversion at height V whose
    lambda window is centred on -V, node for node when V is a multiple of the
    lambda step.
    """
    height = free_dist.source_meta.get('barrier_height', 0.0)
    if height != 0.0:
        raise InvalidInputError(
            f'Phase map needs a distribution computed without a barrier, got height {height}'
        )
    mapped = with_values(free_dist, free_dist.values * np.exp(-1j * V * free_dist.tau), barrier_height=V)
    return replace(mapped, window=replace(free_dist.window, center=free_dist.window.center - V))
