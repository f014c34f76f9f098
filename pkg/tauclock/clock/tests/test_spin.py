import numpy as np
import pytest

from tauclock.clock import SpinState, mean_spin_direction, spin_matrices
from tauclock.errors import InvalidInputError, InvalidParameterError


class TestSpinMatrices:
    @pytest.mark.parametrize('j', [0.5, 1.0, 1.5, 2.0])
    def test_commutation(self, j):
        jx, jy, jz = spin_matrices(j)
        np.testing.assert_allclose(jx @ jy - jy @ jx, 1j * jz, atol=1e-12)

    @pytest.mark.parametrize('j', [0.5, 1.0, 1.5])
    def test_casimir(self, j):
        jx, jy, jz = spin_matrices(j)
        casimir = jx @ jx + jy @ jy + jz @ jz
        np.testing.assert_allclose(casimir, j * (j + 1) * np.eye(jz.shape[0]), atol=1e-12)

    def test_m_ascending(self):
        _, _, jz = spin_matrices(1.0)
        assert np.diag(jz).real.tolist() == [-1.0, 0.0, 1.0]

    def test_read_only(self):
        _, _, jz = spin_matrices(0.5)
        with pytest.raises(ValueError):
            jz[0, 0] = 3

    def test_rejects_non_half_integer(self):
        with pytest.raises(InvalidParameterError) as excinfo:
            spin_matrices(0.3)
        assert excinfo.value.field == 'clock.j'


class TestSpinState:
    def test_up_x(self):
        np.testing.assert_allclose(SpinState.up_x().amps, [2**-0.5, 2**-0.5], atol=1e-14)

    def test_down_x_is_orthogonal_to_up_x(self):
        assert abs(SpinState.down_x().overlap(SpinState.up_x())) < 1e-14

    @pytest.mark.parametrize('j', [0.5, 1.0, 2.5])
    def test_coherent_state_points_along_its_axis(self, j):
        state = SpinState.coherent(j, np.pi / 2 - 0.1, 0.3)
        direction = mean_spin_direction(state)
        expected = [np.cos(0.1) * np.cos(0.3), np.cos(0.1) * np.sin(0.3), np.sin(0.1)]
        np.testing.assert_allclose(direction, expected, atol=1e-12)
        assert state.is_normalized

    def test_rotated_z_shifts_azimuth(self):
        rotated = SpinState.up_x(1.0).rotated_z(0.4)
        np.testing.assert_allclose(mean_spin_direction(rotated), [np.cos(0.4), np.sin(0.4), 0.0], atol=1e-12)

    def test_basis(self):
        state = SpinState.basis(1.5, -0.5)
        assert state.amps.tolist() == [0, 1, 0, 0]
        assert state.m_values.tolist() == [-1.5, -0.5, 0.5, 1.5]

    def test_basis_rejects_missing_level(self):
        with pytest.raises(InvalidParameterError):
            SpinState.basis(1.0, 0.5)

    def test_wrong_length(self):
        with pytest.raises(InvalidInputError):
            SpinState(1.0, np.ones(2))

    def test_normalized(self):
        state = SpinState.from_components(0.5, [3.0, 4.0j]).normalized()
        assert state.norm == pytest.approx(1.0)
        np.testing.assert_allclose(state.amps, [0.6, 0.8j])

    def test_zero_state_cannot_be_normalised(self):
        with pytest.raises(InvalidInputError):
            SpinState(0.5, np.zeros(2)).normalized()

    def test_overlap_needs_same_spin(self):
        with pytest.raises(InvalidInputError):
            SpinState.up_x(0.5).overlap(SpinState.up_x(1.0))
