from __future__ import annotations

from pathlib import Path
from typing import Any, NamedTuple

import numpy as np

from ..output import write_csv
from .path_sum import DiscreteTauAmplitudes, dft_tau, lattice_lambda_amplitude, path_sum_tau
from .spec import LatticeSpec

EQUIVALENCE_TOL = 1e-12
REPORT_COLUMNS = ['n', 'tau', 're', 'im', 'abs', 'dft_re', 'dft_im']


class EquivalenceReport(NamedTuple):
    path_sum: DiscreteTauAmplitudes
    dft: DiscreteTauAmplitudes
    max_discrepancy: float  # max_n |A_n(paths) - A_n(dft)|
    direct: complex  # (U^N)[end, start]
    completeness: float  # |sum_n A_n - direct|

    @property
    def passed(self) -> bool:
        return self.max_discrepancy < EQUIVALENCE_TOL and self.completeness < EQUIVALENCE_TOL


class UnitarityReport(NamedTuple):
    probabilities: np.ndarray  # |sum_n A_n|^2 per end site
    total: float

    @property
    def deviation(self) -> float:
        return abs(self.total - 1)


def equivalence_report(lattice: LatticeSpec) -> EquivalenceReport:
    paths = path_sum_tau(lattice)
    dft = dft_tau(lattice)
    direct = lattice_lambda_amplitude(lattice, 0.0)
    return EquivalenceReport(
        path_sum=paths,
        dft=dft,
        max_discrepancy=float(np.max(np.abs(paths.amps - dft.amps))),
        direct=direct,
        completeness=abs(paths.total - direct),
    )


def unitarity_report(lattice: LatticeSpec) -> UnitarityReport:
    """Probability of ending anywhere, summed from the path-binned amplitudes."""
    probabilities = np.array(
        [abs(path_sum_tau(lattice.ending_at(end)).total) ** 2 for end in range(lattice.n_sites)]
    )
    return UnitarityReport(probabilities, float(np.sum(probabilities)))


def format_report(report: EquivalenceReport, unitarity: UnitarityReport | None = None) -> str:
    lines = [f'{"n":>3} {"tau":>10} {"Re A_n":>22} {"Im A_n":>22} {"|A_n|":>22}']
    for n, (tau, value) in enumerate(zip(report.path_sum.tau, report.path_sum.amps, strict=True)):
        lines.append(f'{n:>3} {tau:>10.4g} {value.real:>22.15e} {value.imag:>22.15e} {abs(value):>22.15e}')
    relation = '<' if report.max_discrepancy < EQUIVALENCE_TOL else '>='
    lines.append(f'max_discrepancy {relation} {EQUIVALENCE_TOL:g} ({report.max_discrepancy:.3e})')
    lines.append(f'completeness = {report.completeness:.3e}')
    if unitarity is not None:
        lines.append(f'unitarity_deviation = {unitarity.deviation:.3e}')
    return '\n'.join(lines)


def report_metadata(report: EquivalenceReport, unitarity: UnitarityReport | None = None) -> dict[str, Any]:
    metadata: dict[str, Any] = {
        'oracle.max_discrepancy': report.max_discrepancy,
        'oracle.completeness': report.completeness,
        'oracle.passed': report.passed,
    }
    if unitarity is not None:
        metadata['oracle.unitarity_deviation'] = unitarity.deviation
    return metadata


def export_report(
    report: EquivalenceReport,
    path: Path,
    metadata: dict[str, Any] | None = None,
    unitarity: UnitarityReport | None = None,
) -> Path:
    """CSV with one row per bin n: path-sum amplitude and its lambda-DFT counterpart."""
    paths, dft = report.path_sum, report.dft
    rows = zip(
        range(paths.amps.size),
        paths.tau,
        paths.amps.real,
        paths.amps.imag,
        np.abs(paths.amps),
        dft.amps.real,
        dft.amps.imag,
        strict=True,
    )
    return write_csv(path, {**(metadata or {}), **report_metadata(report, unitarity)}, REPORT_COLUMNS, rows)
