"""Uniform grids, profile sampling and grid quadrature.

Profiles are vectorized callables mapping an array of abscissae of
shape ``(n,)`` to vector samples of shape ``(n, 2)``. The helpers
`vector_profile` and `planar_profile` build such callables from scalar
component functions.
"""

from collections.abc import Callable
from typing import TYPE_CHECKING

import numpy as np
from pydantic import Field
from scipy.integrate import trapezoid

from kirchhoff_string.errors import BoundaryConditionError
from kirchhoff_string.models import SchemaModel

from .states import GridState

if TYPE_CHECKING:
    from kirchhoff_string.models import FloatArray

#: Vectorized transverse profile: abscissae ``(n,)`` to samples ``(n, 2)``.
type Profile = Callable[[FloatArray], FloatArray]

#: Scalar component profile: abscissae ``(n,)`` to values ``(n,)``.
type ComponentProfile = Callable[[FloatArray], FloatArray]

#: Relative size of end values accepted as round-off of a vanishing profile.
BOUNDARY_TOLERANCE = 1e-12


class GridSpec(SchemaModel):
    """Uniform grid on ``[0, l]`` including both ends."""

    length_l: float = Field(gt=0, allow_inf_nan=False)
    num_points: int = Field(ge=2)

    @property
    def nodes(self) -> 'FloatArray':
        """Grid abscissae."""
        return np.linspace(0.0, self.length_l, self.num_points)

    @property
    def x_spacing(self) -> float:
        """Uniform spacing ``dx``."""
        return self.length_l / (self.num_points - 1)


def vector_profile(v: ComponentProfile | None = None,
                   w: ComponentProfile | None = None) -> Profile:
    """Combine scalar component profiles into a vector profile.

    Args:
        v: First transverse component, zero when omitted.
        w: Second transverse component, zero when omitted.

    Returns:
        A vectorized profile.
    """
    def profile(x: 'FloatArray') -> 'FloatArray':
        values = np.zeros((x.shape[0], 2))
        if v is not None:
            values[:, 0] = v(x)
        if w is not None:
            values[:, 1] = w(x)
        return values

    return profile


def planar_profile(v: ComponentProfile) -> Profile:
    """Profile of a motion confined to the first component (``w ≡ 0``)."""
    return vector_profile(v=v)


def sample_function_on_grid(profile: Profile, grid: GridSpec) -> 'FloatArray':
    """Sample a vector profile at every grid node, ends included.

    Args:
        profile: Vectorized profile defined on ``[0, l]``.
        grid: Target grid.

    Returns:
        Array of shape ``(num_points, 2)``.
    """
    values = np.asarray(profile(grid.nodes), dtype=np.float64)

    return np.broadcast_to(values, (grid.num_points, 2)).copy()


def clamp_fixed_ends(values: 'FloatArray', name: str = 'u') -> 'FloatArray':
    """Check that samples vanish at both ends and make them exactly zero.

    End values within `BOUNDARY_TOLERANCE` of the sample magnitude are
    treated as round-off (``sin(nπ)`` is not exactly zero in floating point).

    Args:
        values: Samples of shape ``(n, 2)`` including both ends.
        name: Name of the sampled field for error messages.

    Returns:
        A copy with exact zero end rows.

    Raises:
        BoundaryConditionError: If an end value is not negligible.
    """
    samples = np.array(values, dtype=np.float64)

    scale = max(1.0, float(np.max(np.abs(samples), initial=0.0)))
    ends = np.abs(samples[[0, -1]])
    if np.any(ends > BOUNDARY_TOLERANCE * scale):
        raise BoundaryConditionError(
            f'Initial data {name!r} must vanish at both fixed ends, got '
            f'{samples[0].tolist()} and {samples[-1].tolist()}',
        )

    samples[[0, -1]] = 0.0

    return samples


def grid_state_from_samples(u_values: 'FloatArray', ut_values: 'FloatArray', *,
                            length_l: float, time_t: float = 0.0) -> GridState:
    """Build a grid state from raw samples after the fixed-end check.

    Raises:
        BoundaryConditionError: If ``u`` or ``u_t`` does not vanish at the ends.
    """
    return GridState(
        time_t=time_t,
        length_l=length_l,
        u_values=clamp_fixed_ends(u_values, 'u0'),
        ut_values=clamp_fixed_ends(ut_values, 'u1'),
    )


def integrate_norm_sq(values: 'FloatArray', dx: float) -> float:
    """Trapezoid quadrature of ``|f|²`` over the grid."""
    return float(trapezoid(np.sum(values * values, axis=1), dx=dx))


def integrate_dot(first: 'FloatArray', second: 'FloatArray', dx: float) -> float:
    """Trapezoid quadrature of ``f·g`` over the grid."""
    return float(trapezoid(np.sum(first * second, axis=1), dx=dx))


def difference_norm_sq(values: 'FloatArray', dx: float) -> float:
    """Forward-difference value ``Σ|f_{j+1} − f_j|²/dx`` of ``∫|f_x|² dx``.

    Its variation with respect to ``f_j`` is the central second difference.
    """
    return float(np.sum(np.diff(values, axis=0) ** 2) / dx)
