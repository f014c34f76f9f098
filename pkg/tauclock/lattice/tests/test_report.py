import numpy as np
import pytest

from tauclock.lattice import (
    LatticeSpec,
    equivalence_report,
    export_report,
    format_report,
    random_hop,
    tight_binding_hop,
    unitarity_report,
)
from tauclock.output import read_csv


@pytest.fixture
def random_lattice():
    return LatticeSpec(4, (1, 2), random_hop(4, 7), 6, 0.5, 0, 3)


class TestEquivalenceReport:
    def test_random_lattice_passes(self, random_lattice):
        report = equivalence_report(random_lattice)
        assert report.max_discrepancy < 1e-12
        assert report.completeness < 1e-12
        assert report.passed

    def test_direct_amplitude(self, random_lattice):
        report = equivalence_report(random_lattice)
        expected = np.linalg.matrix_power(random_lattice.hop, 6)[3, 0]
        assert report.direct == pytest.approx(expected, abs=1e-14)
        assert report.path_sum.total == pytest.approx(expected, abs=1e-12)


class TestUnitarityReport:
    def test_probabilities_sum_to_one(self, random_lattice):
        unitarity = unitarity_report(random_lattice)
        assert unitarity.probabilities.shape == (4,)
        assert unitarity.total == pytest.approx(1.0, abs=1e-12)
        assert unitarity.deviation < 1e-12

    def test_identity_hop_stays_put(self):
        lattice = LatticeSpec(3, (0,), np.eye(3), 3, 1.0, 1, 1)
        assert unitarity_report(lattice).probabilities.tolist() == [0.0, 1.0, 0.0]


class TestFormatReport:
    def test_lists_every_bin(self):
        lattice = LatticeSpec(2, (1,), tight_binding_hop(2, 0.3), 2, 1.0, 0, 1)
        text = format_report(equivalence_report(lattice))
        lines = text.splitlines()
        assert lines[0].split() == ['n', 'tau', 'Re', 'A_n', 'Im', 'A_n', '|A_n|']
        assert len(lines) == 1 + 3 + 2
        assert 'max_discrepancy < 1e-12' in text
        assert 'unitarity_deviation' not in text

    def test_includes_unitarity(self, random_lattice):
        text = format_report(equivalence_report(random_lattice), unitarity_report(random_lattice))
        assert 'unitarity_deviation = ' in text


class TestExportReport:
    def test_columns_and_metadata(self, tmp_path, random_lattice):
        report = equivalence_report(random_lattice)
        path = export_report(report, tmp_path / 'oracle.csv', {'id': 'oracle_random'}, unitarity_report(random_lattice))
        metadata, rows = read_csv(path)
        assert metadata['id'] == 'oracle_random'
        assert metadata['oracle.passed'] == 'true'
        assert 'oracle.unitarity_deviation' in metadata
        assert len(rows) == 7
        assert list(rows[0]) == ['n', 'tau', 're', 'im', 'abs', 'dft_re', 'dft_im']
        assert float(rows[2]['tau']) == pytest.approx(1.0)
        assert float(rows[4]['re']) == pytest.approx(report.path_sum.amps[4].real, abs=1e-15)
