"""Sine basis of the fixed-end string.

The field is represented as ``u(x, t) = Σ_{n=1..N} b_n(t) sin(nπx/l)``.
By Parseval's identity on ``[0, l]``:

    ∫|u|² dx     = (l/2) Σ |b_n|²
    ∫|u_t|² dx   = (l/2) Σ |ḃ_n|²
    ∫u·u_t dx    = (l/2) Σ b_n·ḃ_n
    ∫|u_x|² dx   = (π²/(2l)) Σ n² |b_n|²

Projection uses composite Simpson quadrature; on a grid of ``8N + 1``
points it is exact (up to round-off) for fields spanned by the first
``N`` modes.
"""

from math import pi
from typing import TYPE_CHECKING

import numpy as np
from scipy.integrate import simpson

from kirchhoff_string.core import (
    GridSpec,
    GridState,
    ModalState,
    clamp_fixed_ends,
    sample_function_on_grid,
)

if TYPE_CHECKING:
    from kirchhoff_string.core import Profile
    from kirchhoff_string.models import FloatArray

#: Quadrature points per retained mode used for projection.
POINTS_PER_MODE = 8

#: Initial data: a vectorized profile or samples on a uniform grid with both ends.
type InitialData = Profile | FloatArray | None


def mode_numbers(num_modes: int) -> 'FloatArray':
    """Mode numbers ``1..N`` as floats."""
    return np.arange(1, num_modes + 1, dtype=np.float64)


def wavenumbers(num_modes: int, length_l: float) -> 'FloatArray':
    """Modal wavenumbers ``k_n = nπ/l``."""
    return mode_numbers(num_modes) * pi / length_l


def sine_matrix(nodes: 'FloatArray', num_modes: int, length_l: float) -> 'FloatArray':
    """Matrix ``sin(k_n x_j)`` of shape ``(len(nodes), N)``."""
    return np.sin(np.outer(nodes, wavenumbers(num_modes, length_l)))


def cosine_matrix(nodes: 'FloatArray', num_modes: int, length_l: float) -> 'FloatArray':
    """Matrix ``cos(k_n x_j)`` of shape ``(len(nodes), N)``."""
    return np.cos(np.outer(nodes, wavenumbers(num_modes, length_l)))


def default_resolution(num_modes: int) -> int:
    """Odd number of Simpson points resolving ``N`` modes (at least ``8N + 1``)."""
    return POINTS_PER_MODE * num_modes + 1


def _samples(data: InitialData, grid: GridSpec | None,
             length_l: float, resolution: int) -> tuple['FloatArray', GridSpec]:
    """Turn initial data into samples on a uniform grid."""
    if data is None:
        grid = grid or GridSpec(length_l=length_l, num_points=resolution)
        return np.zeros((grid.num_points, 2)), grid

    if callable(data):
        grid = grid or GridSpec(length_l=length_l, num_points=resolution)
        return sample_function_on_grid(data, grid), grid

    values = np.asarray(data, dtype=np.float64)

    return values, GridSpec(length_l=length_l, num_points=values.shape[0])


def sine_coefficients(values: 'FloatArray', grid: GridSpec, num_modes: int) -> 'FloatArray':
    """Compute ``(2/l) ∫ f(x) sin(nπx/l) dx`` for ``n = 1..N`` by Simpson's rule.

    Args:
        values: Samples of shape ``(num_points, 2)`` on `grid`.
        grid: Uniform grid including both ends.
        num_modes: Number of coefficients ``N``.

    Returns:
        Coefficients of shape ``(N, 2)``.
    """
    basis = sine_matrix(grid.nodes, num_modes, grid.length_l)
    integrand = basis[:, :, np.newaxis] * values[:, np.newaxis, :]

    return (2.0 / grid.length_l) * simpson(integrand, dx=grid.x_spacing, axis=0)


def project_initial_data(u0: InitialData, u1: InitialData = None, *,
                         length_l: float,
                         num_modes: int = 32,
                         resolution: int | None = None,
                         time_t: float = 0.0) -> ModalState:
    """Project initial displacement and velocity onto the sine basis.

    Profiles are sampled on ``resolution`` points (default ``8N + 1``);
    sampled arrays are used on their own uniform grid.

    Args:
        u0: Initial displacement (profile, samples, or None for zero).
        u1: Initial velocity (profile, samples, or None for zero).
        length_l: String length.
        num_modes: Number of retained modes ``N``.
        resolution: Number of quadrature points for profiles.
        time_t: Time stamp of the returned state.

    Returns:
        Modal state with ``b_n(0)`` from ``u0`` and ``ḃ_n(0)`` from ``u1``.

    Raises:
        BoundaryConditionError: If the data do not vanish at the ends.
        ValueError: If ``num_modes < 1``.
    """
    if num_modes < 1:
        raise ValueError('at least one mode is required')

    resolution = resolution or default_resolution(num_modes)
    if resolution % 2 == 0:
        resolution += 1

    u0_values, u0_grid = _samples(u0, None, length_l, resolution)
    u1_values, u1_grid = _samples(u1, u0_grid if u1 is None else None, length_l, resolution)

    coeffs = sine_coefficients(clamp_fixed_ends(u0_values, 'u0'), u0_grid, num_modes)
    rates = sine_coefficients(clamp_fixed_ends(u1_values, 'u1'), u1_grid, num_modes)

    return ModalState(time_t=time_t, length_l=length_l, coeffs=coeffs, rates=rates)


def project_grid_state(state: GridState, num_modes: int) -> ModalState:
    """Project a grid state onto ``N`` sine modes on its own grid."""
    return project_initial_data(
        state.u_values,
        state.ut_values,
        length_l=state.length_l,
        num_modes=num_modes,
        time_t=state.time_t,
    )


def reconstruct(state: ModalState, num_points: int) -> GridState:
    """Evaluate the sine series of ``u`` and ``u_t`` on a uniform grid.

    Args:
        state: Modal state.
        num_points: Number of grid points including both ends.

    Returns:
        Grid state with exact zero end values.

    Raises:
        ValueError: If ``num_points < 2``.
    """
    if num_points < 2:  # noqa: PLR2004
        raise ValueError('at least two grid points are required')

    grid = GridSpec(length_l=state.length_l, num_points=num_points)
    basis = sine_matrix(grid.nodes, state.num_modes, state.length_l)

    u_values = basis @ state.coeffs
    ut_values = basis @ state.rates
    u_values[[0, -1]] = 0.0
    ut_values[[0, -1]] = 0.0

    return GridState(
        time_t=state.time_t,
        length_l=state.length_l,
        u_values=u_values,
        ut_values=ut_values,
    )


def reconstruct_gradient(state: ModalState, num_points: int) -> 'FloatArray':
    """Evaluate the exact series of ``∂u/∂x`` on a uniform grid."""
    grid = GridSpec(length_l=state.length_l, num_points=num_points)
    basis = cosine_matrix(grid.nodes, state.num_modes, state.length_l)
    scale = wavenumbers(state.num_modes, state.length_l)[:, np.newaxis]

    return basis @ (scale * state.coeffs)


def gradient_norm_sq(state: ModalState) -> float:
    """Kirchhoff scalar ``S = ∫|∂u/∂x|² dx = (π²/(2l)) Σ n²|b_n|²``."""
    squares = np.sum(state.coeffs * state.coeffs, axis=1)
    weights = mode_numbers(state.num_modes) ** 2

    return float(pi ** 2 / (2.0 * state.length_l) * np.dot(weights, squares))


def displacement_norm_sq(state: ModalState) -> float:
    """Amplitude ``∫|u|² dx = (l/2) Σ |b_n|²``."""
    return float(0.5 * state.length_l * np.sum(state.coeffs * state.coeffs))


def velocity_norm_sq(state: ModalState) -> float:
    """Kinetic integral ``∫|u_t|² dx = (l/2) Σ |ḃ_n|²``."""
    return float(0.5 * state.length_l * np.sum(state.rates * state.rates))


def cross_product(state: ModalState) -> float:
    """Cross integral ``∫u·u_t dx = (l/2) Σ b_n·ḃ_n``."""
    return float(0.5 * state.length_l * np.sum(state.coeffs * state.rates))
