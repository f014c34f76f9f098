import numpy as np
import pytest

from tauclock.duration import LambdaScan, default_Lambda, lambda_scan, scan_source
from tauclock.duration.scan import lambda_grid
from tauclock.errors import InvalidInputError, InvalidParameterError
from tauclock.scattering import ScatteringSource


class TestLambdaGrid:
    def test_zero_is_a_node(self):
        lambdas, step, center = lambda_grid(10.24, 4096)
        assert step == pytest.approx(0.005)
        assert center == 0.0
        assert lambdas[2048] == 0.0
        assert lambdas[0] == pytest.approx(-10.24)

    def test_centre_is_snapped_to_the_grid(self):
        lambdas, step, center = lambda_grid(10.24, 4096, center=-2.0012)
        assert center == pytest.approx(-2.0)
        assert 0.0 in lambdas
        assert lambdas[0] == pytest.approx(-12.24)

    def test_rejects_non_power_of_two(self):
        with pytest.raises(InvalidParameterError) as excinfo:
            lambda_grid(10.24, 1000)
        assert excinfo.value.field == 'lambda_grid.n_lambda'

    def test_rejects_too_few_points(self):
        with pytest.raises(InvalidParameterError):
            lambda_grid(10.24, 128)

    def test_rejects_centre_that_drops_zero(self):
        with pytest.raises(InvalidParameterError) as excinfo:
            lambda_grid(1.0, 256, center=1.5)
        assert excinfo.value.field == 'lambda_grid.center'

    def test_default_window(self):
        assert default_Lambda(60.0) == pytest.approx(20 * 2 * np.pi / 60.0)


class TestScanSource:
    def test_samples_source_on_grid(self, two_durations):
        scan = scan_source(two_durations, np.pi, 256)
        np.testing.assert_allclose(scan.values, two_durations(scan.lambdas), rtol=1e-14)
        assert len(scan) == 256
        assert scan.source_meta == {'source': 'synthetic', 'barrier_height': 0.0, 'n_durations': 2}

    def test_value_at_node(self, two_durations):
        scan = scan_source(two_durations, np.pi, 256)
        assert scan.value_at(0.0) == pytest.approx(1 + 0.5j, rel=1e-14)
        assert scan.value_at(3 * scan.step) == scan[scan.node_index(0.0) + 3].value

    def test_value_between_nodes_is_rejected(self, two_durations):
        scan = scan_source(two_durations, np.pi, 256)
        with pytest.raises(InvalidInputError):
            scan.value_at(scan.step / 2)

    def test_progress_reports_every_chunk(self, two_durations):
        calls = []
        scan_source(two_durations, np.pi, 1024, on_progress=lambda done, total: calls.append((done, total)))
        assert sorted(calls) == [(1, 4), (2, 4), (3, 4), (4, 4)]

    def test_non_finite_values_are_rejected(self):
        class Broken:
            def __call__(self, lambdas):
                return np.full(np.shape(lambdas), np.nan, dtype=complex)

            def describe(self):
                return {'source': 'broken'}

        with pytest.raises(InvalidInputError):
            scan_source(Broken(), np.pi, 256)

    def test_iterates_as_records(self, two_durations):
        scan = scan_source(two_durations, np.pi, 256)
        first = next(iter(scan))
        assert first.lam == pytest.approx(-np.pi)
        assert isinstance(scan, LambdaScan)


class TestLambdaScan:
    def test_matches_direct_source(self, opaque_packet, opaque_barrier):
        scan = lambda_scan(opaque_packet, opaque_barrier, 30.0, 60.0, Lambda=2.56, n_lambda=256)
        source = ScatteringSource(opaque_packet, opaque_barrier, 30.0, 60.0)
        assert scan.value_at(0.0) == pytest.approx(source(np.array([0.0]))[0], rel=1e-12)
        assert scan.source_meta['barrier_height'] == 2.0
