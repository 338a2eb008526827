"""Independent finite-difference solver used to cross-validate the modal solver."""

from .compare import DiscrepancyReport, compare_solvers
from .fd import FdConfig, GridTrajectory, cfl_limit, default_fd_time_step, fd_integrate, fd_step, kirchhoff_scalar

__all__ = (
    'DiscrepancyReport',
    'FdConfig',
    'GridTrajectory',
    'cfl_limit',
    'compare_solvers',
    'default_fd_time_step',
    'fd_integrate',
    'fd_step',
    'kirchhoff_scalar',
)
