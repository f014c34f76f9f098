"""Spin-j Larmor clock: final spin states, readout angles and weak response."""

from .larmor import (
    WeakResponseReport,
    detection_probability,
    final_spin_state,
    gamma_kernel,
    linear_response_report,
    orthogonal_probe_modulus,
    probe_probability,
    weak_relative_change,
    z_ratio,
)
from .readout import baz_angles, bloch_vector, mean_spin_direction, readout_angles, rotation_witness
from .spin import SpinState, spin_matrices

__all__ = [
    'SpinState',
    'WeakResponseReport',
    'baz_angles',
    'bloch_vector',
    'detection_probability',
    'final_spin_state',
    'gamma_kernel',
    'linear_response_report',
    'mean_spin_direction',
    'orthogonal_probe_modulus',
    'probe_probability',
    'readout_angles',
    'rotation_witness',
    'spin_matrices',
    'weak_relative_change',
    'z_ratio',
]
