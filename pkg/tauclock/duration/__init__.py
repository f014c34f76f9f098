"""Amplitude distributions over durations spent in the barrier region."""

from .export import export_distribution
from .inversion import (
    CONVERGED_LEAKAGE,
    Taper,
    TauAmplitudeDistribution,
    WindowMeta,
    invert_to_tau,
    leakage_ratio,
)
from .moments import (
    DerivativeEstimate,
    classical_scale_gap,
    complex_time,
    complex_time_by_derivative,
    derivative_complex_time,
    distribution_scale_gap,
    nth_moment,
    plane_wave_complex_time,
    sum_rule_check,
)
from .phase_map import rect_phase_map
from .scan import LambdaScan, default_Lambda, lambda_scan, scan_source

__all__ = [
    'CONVERGED_LEAKAGE',
    'DerivativeEstimate',
    'LambdaScan',
    'Taper',
    'TauAmplitudeDistribution',
    'WindowMeta',
    'classical_scale_gap',
    'complex_time',
    'complex_time_by_derivative',
    'default_Lambda',
    'derivative_complex_time',
    'distribution_scale_gap',
    'export_distribution',
    'invert_to_tau',
    'lambda_scan',
    'leakage_ratio',
    'nth_moment',
    'plane_wave_complex_time',
    'rect_phase_map',
    'scan_source',
    'sum_rule_check',
]
