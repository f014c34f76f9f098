import numpy as np
import pytest

from tauclock.errors import InvalidInputError, InvalidParameterError, UnsupportedConfigurationError
from tauclock.scattering import (
    BarrierSpec,
    PlaneWaveSource,
    ScatteringSource,
    SyntheticSource,
    lambda_amplitude,
    transmission,
    transmitted_amplitude,
    transmitted_peak,
)
from tauclock.wavepacket import free_peak_position, position_amplitude


class TestScatteringSource:
    def test_detection_must_lie_beyond_barrier(self, opaque_packet, opaque_barrier):
        with pytest.raises(UnsupportedConfigurationError) as excinfo:
            ScatteringSource(opaque_packet, opaque_barrier, x=3.0, T_total=60.0)
        assert excinfo.value.field == 'detection.x'
        assert excinfo.value.code == 'unsupported-configuration'

    def test_rejects_non_positive_time(self, opaque_packet, opaque_barrier):
        with pytest.raises(InvalidParameterError):
            ScatteringSource(opaque_packet, opaque_barrier, x=30.0, T_total=0.0)

    def test_empty_region_gives_free_evolution(self, opaque_packet):
        source = ScatteringSource(opaque_packet, BarrierSpec.free(5.0), x=30.0, T_total=60.0)
        free = position_amplitude(opaque_packet, 30.0, 60.0)
        assert source(np.array([0.0]))[0] == pytest.approx(free, rel=1e-12)

    def test_chunks_do_not_change_values(self, opaque_packet, opaque_barrier):
        source = ScatteringSource(opaque_packet, opaque_barrier, x=30.0, T_total=60.0)
        lambdas = np.linspace(-3.0, 3.0, 600)
        together = source(lambdas)
        one_by_one = np.array([source(np.array([lam]))[0] for lam in lambdas[::50]])
        np.testing.assert_allclose(together[::50], one_by_one, rtol=1e-12)

    def test_lambda_amplitude_record(self, opaque_packet, opaque_barrier):
        record = lambda_amplitude(opaque_packet, opaque_barrier, 0.25, 30.0, 60.0)
        source = ScatteringSource(opaque_packet, opaque_barrier, 30.0, 60.0)
        assert record.lam == 0.25
        assert record.value == source(np.array([0.25]))[0]

    def test_describe(self, opaque_packet, opaque_barrier):
        meta = ScatteringSource(opaque_packet, opaque_barrier, 30.0, 60.0).describe()
        assert meta['source'] == 'scattering'
        assert meta['barrier_height'] == 2.0


class TestSyntheticSource:
    def test_exact_transform(self, two_durations):
        lam = 0.3
        expected = np.exp(-2j * lam) + 0.5j * np.exp(-5j * lam)
        assert two_durations(np.array([lam]))[0] == pytest.approx(expected, rel=1e-14)

    def test_rejects_mismatched_lengths(self):
        with pytest.raises(InvalidInputError):
            SyntheticSource.of([1.0, 2.0], [1.0])


class TestPlaneWaveSource:
    def test_is_bare_transmission(self, opaque_barrier):
        source = PlaneWaveSource(1.0, opaque_barrier, 1.0)
        lambdas = np.array([-0.5, 0.0, 0.5])
        np.testing.assert_allclose(source(lambdas), transmission(1.0, opaque_barrier, 1.0, shift=lambdas))


class TestTransmittedPacket:
    def test_vectorised_over_x(self, opaque_packet, opaque_barrier):
        xs = np.array([10.0, 20.0, 30.0])
        values = transmitted_amplitude(opaque_packet, opaque_barrier, xs, 60.0)
        assert values[1] == pytest.approx(transmitted_amplitude(opaque_packet, opaque_barrier, 20.0, 60.0))

    def test_empty_region_peak_matches_free_packet(self, opaque_packet):
        free = free_peak_position(opaque_packet, 100.0, half_width=10.0)
        peak = transmitted_peak(opaque_packet, BarrierSpec.free(5.0), 100.0, half_width=10.0)
        assert peak == pytest.approx(free, abs=5e-3)
