"""Parameters, state representations and grid utilities.

Everything in this package is an immutable value shared by the modal
solver, the finite-difference oracle, the energy monitors and the
certificate checks.
"""

from .grid import (
    GridSpec,
    Profile,
    clamp_fixed_ends,
    difference_norm_sq,
    grid_state_from_samples,
    integrate_dot,
    integrate_norm_sq,
    planar_profile,
    sample_function_on_grid,
    vector_profile,
)
from .parameters import PhysicalString, WaveParameters, derive_wave_parameters
from .states import GridState, ModalState, VectorSample

__all__ = (
    'GridSpec',
    'GridState',
    'ModalState',
    'PhysicalString',
    'Profile',
    'VectorSample',
    'WaveParameters',
    'clamp_fixed_ends',
    'derive_wave_parameters',
    'difference_norm_sq',
    'grid_state_from_samples',
    'integrate_dot',
    'integrate_norm_sq',
    'planar_profile',
    'sample_function_on_grid',
    'vector_profile',
)
