"""Tests for state representations and grid utilities."""

from math import pi

import numpy as np
import pytest
from pydantic import ValidationError

from kirchhoff_string.core import (
    GridSpec,
    GridState,
    ModalState,
    VectorSample,
    clamp_fixed_ends,
    difference_norm_sq,
    grid_state_from_samples,
    integrate_dot,
    integrate_norm_sq,
    planar_profile,
    sample_function_on_grid,
    vector_profile,
)
from kirchhoff_string.errors import BoundaryConditionError


def test_vector_sample_norm() -> None:
    """Measure the Euclidean magnitude of a vector sample."""
    sample = VectorSample(v_component=3.0, w_component=4.0)

    assert sample.norm_sq == 25.0
    assert sample.norm == 5.0
    assert sample.as_array().tolist() == [3.0, 4.0]


def test_modal_state_mode(single_mode_state: ModalState) -> None:
    """Access coefficients by one-based mode number."""
    coeff, rate = single_mode_state.mode(1)

    assert single_mode_state.num_modes == 4
    assert coeff == VectorSample(v_component=1.0)
    assert rate == VectorSample()

    with pytest.raises(IndexError):
        single_mode_state.mode(5)


@pytest.mark.parametrize('coeffs, rates', (
    pytest.param(np.zeros((3, 2)), np.zeros((4, 2)), id='shape mismatch'),
    pytest.param(np.zeros((0, 2)), np.zeros((0, 2)), id='no modes'),
    pytest.param(np.zeros((3, 3)), np.zeros((3, 3)), id='three components'),
    pytest.param([[np.nan, 0.0]], [[0.0, 0.0]], id='not finite'),
))
def test_modal_state_invalid(coeffs: np.ndarray, rates: np.ndarray) -> None:
    """Reject malformed modal coefficients."""
    with pytest.raises(ValidationError):
        ModalState(length_l=1.0, coeffs=coeffs, rates=rates)


def test_state_arrays_read_only(single_mode_state: ModalState) -> None:
    """Store arrays that can not be modified in place."""
    with pytest.raises(ValueError, match='read-only'):
        single_mode_state.coeffs[0, 0] = 2.0


def test_modal_state_zeros() -> None:
    """Create the rest state."""
    state = ModalState.zeros(3, 2.0, time_t=1.0)

    assert state.num_modes == 3
    assert state.time_t == 1.0
    assert not np.any(state.coeffs)


def test_grid_state_requires_fixed_ends() -> None:
    """Reject displacement that does not vanish exactly at the ends."""
    values = np.ones((5, 2))

    with pytest.raises(ValidationError, match='fixed ends'):
        GridState(length_l=1.0, u_values=values, ut_values=np.zeros((5, 2)))


def test_grid_state_geometry() -> None:
    """Expose grid size, spacing and nodes."""
    state = GridState(length_l=2.0, u_values=np.zeros((5, 2)), ut_values=np.zeros((5, 2)))

    assert state.num_points == 5
    assert state.x_spacing == 0.5
    assert state.nodes.tolist() == [0.0, 0.5, 1.0, 1.5, 2.0]


def test_clamp_round_off() -> None:
    """Snap round-off end values to exact zeros."""
    grid = GridSpec(length_l=pi, num_points=33)
    values = sample_function_on_grid(planar_profile(np.sin), grid)

    assert values[-1, 0] != 0.0

    clamped = clamp_fixed_ends(values)

    assert clamped[0, 0] == 0.0
    assert clamped[-1, 0] == 0.0
    assert np.array_equal(clamped[1:-1], values[1:-1])


def test_clamp_rejects_nonzero_ends() -> None:
    """Reject data that do not vanish at the ends."""
    values = np.zeros((9, 2))
    values[-1, 1] = 1e-3

    with pytest.raises(BoundaryConditionError, match='u1'):
        clamp_fixed_ends(values, 'u1')


def test_grid_state_from_samples() -> None:
    """Build a grid state from sampled profiles."""
    grid = GridSpec(length_l=pi, num_points=17)
    u_values = sample_function_on_grid(vector_profile(np.sin, lambda x: 0.5 * np.sin(2.0 * x)), grid)

    state = grid_state_from_samples(u_values, np.zeros_like(u_values), length_l=pi, time_t=2.0)

    assert state.time_t == 2.0
    assert state.u_values[8].tolist() == pytest.approx([1.0, 0.0], abs=1e-15)


def test_grid_quadrature() -> None:
    """Integrate squared magnitudes and products on the grid."""
    grid = GridSpec(length_l=pi, num_points=65)
    first = sample_function_on_grid(vector_profile(np.sin, np.sin), grid)
    second = sample_function_on_grid(planar_profile(lambda x: np.sin(3.0 * x)), grid)

    assert integrate_norm_sq(first, grid.x_spacing) == pytest.approx(pi, rel=1e-12)
    assert integrate_dot(first, second, grid.x_spacing) == pytest.approx(0.0, abs=1e-12)


def test_difference_norm_sq() -> None:
    """Sum squared forward differences, exact for linear profiles."""
    grid = GridSpec(length_l=1.0, num_points=11)
    linear = np.stack((2.0 * grid.nodes, -grid.nodes), axis=1)

    assert difference_norm_sq(linear, grid.x_spacing) == pytest.approx(5.0)

    fine = GridSpec(length_l=pi, num_points=513)
    mode = sample_function_on_grid(planar_profile(np.sin), fine)

    assert difference_norm_sq(mode, fine.x_spacing) == pytest.approx(pi / 2, rel=1e-5)
