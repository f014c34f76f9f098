from unittest.mock import patch

import numpy as np
import pytest

from tauclock.duration import (
    LambdaScan,
    Taper,
    export_distribution,
    invert_to_tau,
    leakage_ratio,
    scan_source,
    sum_rule_check,
)
from tauclock.errors import InvalidInputError, InvalidParameterError
from tauclock.output import read_csv
from tauclock.scattering import SyntheticSource

NO_TAPER = Taper('none')


def spikes(weights, durations, T_total=20.0, Lambda=np.pi, n_lambda=256, taper=NO_TAPER):
    scan = scan_source(SyntheticSource.of(weights, durations), Lambda, n_lambda)
    return invert_to_tau(scan, T_total, taper)


def index_of(dist, tau):
    return int(np.argmin(np.abs(dist.tau - tau)))


class TestInvertToTau:
    def test_grid(self):
        dist = spikes([1.0], [3.0])
        assert dist.tau_step == pytest.approx(1.0)
        assert dist.tau.size == 256
        assert dist.tau[0] == pytest.approx(-128.0)

    def test_spikes_land_on_their_nodes(self):
        dist = spikes([1.0, -0.5j], [3.0, 7.0])
        recovered = dist.values * dist.tau_step
        assert recovered[index_of(dist, 3.0)] == pytest.approx(1.0, abs=1e-12)
        assert recovered[index_of(dist, 7.0)] == pytest.approx(-0.5j, abs=1e-12)
        others = np.delete(recovered, [index_of(dist, 3.0), index_of(dist, 7.0)])
        assert np.max(np.abs(others)) < 1e-12

    def test_converged_when_everything_is_inside(self):
        dist = spikes([1.0, 0.5], [3.0, 7.0])
        assert dist.leakage < 1e-12
        assert dist.converged

    def test_leakage_counts_durations_outside(self):
        dist = spikes([1.0, 3.0], [5.0, 40.0])
        assert dist.leakage == pytest.approx(0.75, abs=1e-12)
        assert not dist.converged

    def test_peak(self):
        dist = spikes([0.2, 1.0], [3.0, 30.0])
        assert dist.peak_tau() == pytest.approx(30.0)
        assert dist.peak_tau(physical_only=True) == pytest.approx(3.0)

    def test_leakage_shrinks_as_window_grows(self):
        leakages = [
            spikes([1.0], [10.0], T_total=20.0, Lambda=Lambda, n_lambda=1024, taper=Taper()).leakage
            for Lambda in (np.pi, 2 * np.pi, 4 * np.pi)
        ]
        assert leakages[0] > leakages[1] > leakages[2] > 0

    def test_sum_rule_returns_amplitude_at_zero(self):
        dist = spikes([1.0, 0.5j], [2.0, 5.0], taper=Taper())
        assert sum_rule_check(dist) == pytest.approx(1 + 0.5j, abs=1e-12)
        assert dist.window.weight_at_zero == 1.0

    def test_rejects_non_positive_time(self, two_durations):
        scan = scan_source(two_durations, np.pi, 256)
        with pytest.raises(InvalidParameterError):
            invert_to_tau(scan, 0.0)

    def test_rejects_uneven_grid(self):
        scan = LambdaScan(
            lambdas=np.array([-1.0, 0.0, 2.0]),
            values=np.ones(3, dtype=complex),
            Lambda=1.0,
            center=0.0,
            step=1.0,
        )
        with pytest.raises(InvalidInputError):
            invert_to_tau(scan, 10.0)

    def test_warns_when_taper_touches_zero(self, two_durations):
        scan = scan_source(two_durations, np.pi, 256, center=-0.95 * np.pi)
        with patch('tauclock.duration.inversion.logger') as mock_logger:
            dist = invert_to_tau(scan, 20.0, Taper('raised-cosine', 0.1))
        assert dist.window.weight_at_zero < 1
        mock_logger.warning.assert_called_once()

    def test_keeps_source_metadata(self, two_durations):
        dist = invert_to_tau(scan_source(two_durations, np.pi, 256), 20.0)
        assert dist.source_meta['source'] == 'synthetic'


class TestTaper:
    def test_raised_cosine_profile(self):
        lambdas = np.linspace(-1.0, 1.0, 201)
        weights = Taper('raised-cosine', 0.1).weights(lambdas, 0.0, 1.0)
        assert weights[0] == pytest.approx(0.0)
        assert weights[100] == 1.0
        assert np.all(np.diff(weights[:100]) >= 0)

    def test_none_is_flat(self):
        assert np.all(Taper('none').weights(np.linspace(-1, 1, 5), 0.0, 1.0) == 1.0)

    def test_rejects_unknown_kind(self):
        with pytest.raises(InvalidParameterError):
            Taper('hann')

    def test_rejects_zero_fraction(self):
        with pytest.raises(InvalidParameterError):
            Taper('raised-cosine', 0.0)

    def test_describe(self):
        assert Taper().describe() == 'raised-cosine(0.1)'
        assert NO_TAPER.describe() == 'none'


class TestLeakageRatio:
    def test_empty_distribution(self):
        assert leakage_ratio(np.arange(4.0), np.zeros(4), 2.0) == 0.0

    def test_edges_count_as_inside(self):
        tau = np.array([-1.0, 0.0, 2.0, 3.0])
        assert leakage_ratio(tau, np.ones(4), 2.0) == pytest.approx(0.5)


class TestExportDistribution:
    def test_columns_and_metadata(self, tmp_path):
        dist = spikes([1.0], [3.0])
        path = export_distribution(dist, tmp_path / 'run_tau.csv', {'id': 'spike'})
        metadata, rows = read_csv(path)
        assert metadata['id'] == 'spike'
        assert metadata['distribution.taper'] == 'none'
        assert metadata['distribution.converged'] == 'true'
        assert len(rows) == 256
        assert list(rows[0]) == ['tau', 're_A', 'im_A', 'abs_A']
        peak = rows[index_of(dist, 3.0)]
        assert float(peak['tau']) == pytest.approx(3.0)
        assert float(peak['abs_A']) == pytest.approx(1.0, abs=1e-12)


@pytest.mark.slow
class TestOpaqueScenario:
    def test_shipped_window_converges(self, opaque_case):
        dist = opaque_case.dist
        assert dist.window.Lambda == 20.48
        assert dist.leakage < 0.01
        assert dist.converged

    def test_sum_rule(self, opaque_case):
        expected = opaque_case.scan.value_at(0.0)
        assert abs(sum_rule_check(opaque_case.dist) - expected) < 1e-3 * abs(expected)

    def test_leakage_falls_along_refinement_ladder(self, opaque_case):
        ladder = [(20 * 2 * np.pi / 60.0, 4096, 0.1), (10.24, 4096, 0.1)]
        leakages = []
        for Lambda, n_lambda, fraction in ladder:
            scan = scan_source(opaque_case.source, Lambda, n_lambda)
            leakages.append(invert_to_tau(scan, 60.0, Taper('raised-cosine', fraction)).leakage)
        leakages.append(opaque_case.dist.leakage)

        assert leakages[0] > leakages[1] > leakages[2]
        assert leakages[1] > 0.01
