import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from tauclock.errors import InvalidParameterError
from tauclock.scattering import (
    BarrierSpec,
    log_transmission,
    piecewise_scattering,
    piecewise_transmission,
    rect_transmission,
    transmission,
)


def split(barrier, parts):
    """Same potential with every layer cut into `parts` equal pieces."""
    layers = tuple((width / parts, height) for width, height in barrier.layers for _ in range(parts))
    return BarrierSpec(V=barrier.V, d=barrier.d, segments=layers)

def below_barrier_probability(p, V, d, mu=1.0):
    E = p**2 / (2 * mu)
    kappa = math.sqrt(2 * mu * (V - E))
    return 1 / (1 + V**2 * math.sinh(kappa * d) ** 2 / (4 * E * (V - E)))


def above_barrier_probability(p, V, d, mu=1.0):
    E = p**2 / (2 * mu)
    q = math.sqrt(2 * mu * (E - V))
    return 1 / (1 + V**2 * math.sin(q * d) ** 2 / (4 * E * (E - V)))


class TestRectTransmission:
    @pytest.mark.parametrize('p', [0.05, 0.1, 1.0, 3.0])
    def test_empty_region_is_transparent(self, p):
        assert rect_transmission(p, 0.0, 5.0, 1.0) == pytest.approx(1.0, abs=1e-14)

    @pytest.mark.parametrize(('p', 'V', 'd'), [(1.0, 2.0, 5.0), (0.5, 1.0, 1.0), (1.9, 2.0, 0.2)])
    def test_tunnelling_probability(self, p, V, d):
        assert abs(rect_transmission(p, V, d, 1.0)) ** 2 == pytest.approx(
            below_barrier_probability(p, V, d), rel=1e-9
        )

    @pytest.mark.parametrize(('p', 'V', 'd'), [(3.0, 2.0, 5.0), (2.1, 2.0, 1.0), (1.0, -3.0, 2.0)])
    def test_above_barrier_probability(self, p, V, d):
        assert abs(rect_transmission(p, V, d, 1.0)) ** 2 == pytest.approx(
            above_barrier_probability(p, V, d), rel=1e-9
        )

    def test_energy_equal_to_height(self):
        # Linear limit: |t|^2 = 1 / (1 + mu V d^2 / 2).
        assert abs(rect_transmission(2.0, 2.0, 5.0, 1.0)) ** 2 == pytest.approx(1 / 26, rel=1e-12)

    def test_continuous_through_energy_equal_to_height(self):
        at = rect_transmission(2.0, 2.0, 5.0, 1.0)
        near = rect_transmission(2.0, np.array([2.0 - 1e-9, 2.0 + 1e-9]), 5.0, 1.0)
        assert np.max(np.abs(near - at)) < 1e-6

    def test_broadcasts_heights(self):
        heights = np.linspace(-1.0, 3.0, 7)
        values = rect_transmission(1.0, heights, 5.0, 1.0)
        assert values.shape == (7,)
        assert values[2] == pytest.approx(rect_transmission(1.0, heights[2], 5.0, 1.0), rel=1e-14)

    def test_rejects_non_positive_momentum(self):
        with pytest.raises(InvalidParameterError):
            rect_transmission(np.array([1.0, 0.0]), 2.0, 5.0, 1.0)


class TestPiecewise:
    def test_single_layer_matches_closed_form(self):
        barrier = BarrierSpec(V=2.0, d=5.0)
        p = np.linspace(0.2, 3.0, 29)
        np.testing.assert_allclose(
            piecewise_transmission(p, barrier, 1.0), rect_transmission(p, 2.0, 5.0, 1.0), rtol=1e-10
        )

    @settings(max_examples=60, deadline=None)
    @given(
        V=st.floats(-1.0, 3.0),
        d=st.floats(0.5, 5.0),
        p=st.floats(0.3, 3.0),
        parts=st.integers(1, 5),
    )
    def test_splitting_a_layer_changes_nothing(self, V, d, p, parts):
        barrier = BarrierSpec(V=V, d=d)
        whole = rect_transmission(p, V, d, 1.0)
        pieces = piecewise_transmission(p, split(barrier, parts), 1.0)
        assert abs(pieces - whole) <= 1e-8 * abs(whole)

    def test_probability_conserved(self):
        barrier = BarrierSpec(V=0.0, d=4.5, segments=((1.0, 0.5), (2.0, 3.0), (1.5, -1.0)))
        p = np.array([0.5, 1.0, 2.0, 3.0])
        t, r = piecewise_scattering(p, barrier, 1.0)
        np.testing.assert_allclose(np.abs(t) ** 2 + np.abs(r) ** 2, 1.0, atol=1e-10)

    def test_shift_raises_every_layer(self):
        barrier = BarrierSpec(V=0.0, d=3.0, segments=((1.0, 0.5), (2.0, 1.5)))
        shifted = piecewise_transmission(1.2, barrier.shifted(0.7), 1.0)
        assert transmission(1.2, barrier, 1.0, shift=0.7) == pytest.approx(shifted, rel=1e-12)

    def test_transmission_dispatches_rectangles_to_closed_form(self):
        barrier = BarrierSpec(V=2.0, d=5.0)
        assert transmission(1.0, barrier, 1.0, shift=0.5) == pytest.approx(
            rect_transmission(1.0, 2.5, 5.0, 1.0), rel=1e-14
        )


class TestOpaqueBarriers:
    def test_wide_barrier_log_transmission(self):
        k, kappa, d = 1.0, math.sqrt(3.0), 50.0
        expected = math.log(4 * k * kappa / (k**2 + kappa**2)) - kappa * d
        value = log_transmission(k, BarrierSpec(V=2.0, d=d), 1.0)
        assert value.real == pytest.approx(expected, abs=1e-9)

    def test_log_transmission_beyond_float_range(self):
        value = log_transmission(1.0, split(BarrierSpec(V=2.0, d=500.0), 10), 1.0)
        assert math.isfinite(value.real)
        assert value.real == pytest.approx(
            math.log(4 * math.sqrt(3.0) / 4) - 500 * math.sqrt(3.0), abs=1e-8
        )

    def test_wide_barrier_stays_finite(self):
        t = piecewise_transmission(np.array([0.5, 1.0, 1.5]), split(BarrierSpec(V=2.0, d=50.0), 4), 1.0)
        assert np.all(np.isfinite(t))
        assert np.all(np.abs(t) < 1e-20)


class TestBarrierSpec:
    def test_rejects_non_positive_width(self):
        with pytest.raises(InvalidParameterError) as excinfo:
            BarrierSpec(V=1.0, d=-1.0)
        assert excinfo.value.field == 'barrier.d'

    def test_segments_must_fill_region(self):
        with pytest.raises(InvalidParameterError) as excinfo:
            BarrierSpec(V=0.0, d=3.0, segments=((1.0, 1.0), (1.0, 2.0)))
        assert excinfo.value.field == 'barrier.segments'

    def test_layers(self):
        assert BarrierSpec(V=2.0, d=5.0).layers == ((5.0, 2.0),)
        assert split(BarrierSpec(V=2.0, d=5.0), 2).layers == ((2.5, 2.0), (2.5, 2.0))

    def test_min_height(self):
        barrier = BarrierSpec(V=0.0, d=2.0, segments=((1.0, 3.0), (1.0, -0.5)))
        assert barrier.min_height == -0.5
        assert not barrier.is_rectangular
