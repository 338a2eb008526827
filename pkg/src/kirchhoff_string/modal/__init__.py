"""Spectral Galerkin solver on the sine basis of the fixed-end string."""

from .basis import (
    cross_product,
    displacement_norm_sq,
    gradient_norm_sq,
    project_grid_state,
    project_initial_data,
    reconstruct,
    reconstruct_gradient,
    velocity_norm_sq,
)
from .solver import (
    IntegratorConfig,
    ModalDerivative,
    ModalTrajectory,
    Scheme,
    default_time_step,
    integrate,
    modal_frequencies,
    modal_rhs,
)

__all__ = (
    'IntegratorConfig',
    'ModalDerivative',
    'ModalTrajectory',
    'Scheme',
    'cross_product',
    'default_time_step',
    'displacement_norm_sq',
    'gradient_norm_sq',
    'integrate',
    'modal_frequencies',
    'modal_rhs',
    'project_grid_state',
    'project_initial_data',
    'reconstruct',
    'reconstruct_gradient',
    'velocity_norm_sq',
)
