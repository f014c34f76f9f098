"""Exact path-sum oracle for duration amplitudes on small lattices."""

from .path_sum import (
    MAX_PATHS,
    DiscreteTauAmplitudes,
    dft_tau,
    lattice_lambda_amplitude,
    path_sum_tau,
)
from .report import (
    EQUIVALENCE_TOL,
    EquivalenceReport,
    UnitarityReport,
    equivalence_report,
    export_report,
    format_report,
    unitarity_report,
)
from .spec import LatticeSpec, random_hop, tight_binding_hop

__all__ = [
    'EQUIVALENCE_TOL',
    'MAX_PATHS',
    'DiscreteTauAmplitudes',
    'EquivalenceReport',
    'LatticeSpec',
    'UnitarityReport',
    'dft_tau',
    'equivalence_report',
    'export_report',
    'format_report',
    'lattice_lambda_amplitude',
    'path_sum_tau',
    'random_hop',
    'tight_binding_hop',
    'unitarity_report',
]
