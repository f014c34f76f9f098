from __future__ import annotations

from pathlib import Path
from typing import Any

import numpy as np

from ..output import write_csv
from .inversion import TauAmplitudeDistribution

DISTRIBUTION_COLUMNS = ['tau', 're_A', 'im_A', 'abs_A']


def distribution_metadata(dist: TauAmplitudeDistribution) -> dict[str, Any]:
    window = dist.window
    return {
        'distribution.Lambda': window.Lambda,
        'distribution.n_lambda': window.n_lambda,
        'distribution.lambda_step': window.step,
        'distribution.lambda_center': window.center,
        'distribution.taper': window.taper.describe(),
        'distribution.tau_step': window.tau_step,
        'distribution.T_total': dist.T_total,
        'distribution.leakage': dist.leakage,
        'distribution.converged': dist.converged,
    }


def export_distribution(
    dist: TauAmplitudeDistribution, path: Path, metadata: dict[str, Any] | None = None
) -> Path:
    """CSV with columns tau, re_A, im_A, abs_A over the whole tau grid."""
    rows = zip(
        dist.tau,
        dist.values.real,
        dist.values.imag,
        np.abs(dist.values),
        strict=True,
    )
    return write_csv(path, {**(metadata or {}), **distribution_metadata(dist)}, DISTRIBUTION_COLUMNS, rows)
