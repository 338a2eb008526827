"""Cross-validation of the modal solver against the finite-difference oracle."""

from typing import TYPE_CHECKING

import numpy as np
from pydantic import Field

from kirchhoff_string.core import integrate_norm_sq
from kirchhoff_string.errors import AlignmentError
from kirchhoff_string.modal import reconstruct
from kirchhoff_string.models import SchemaModel

if TYPE_CHECKING:
    from collections.abc import Sequence

if TYPE_CHECKING:
    from kirchhoff_string.modal import ModalTrajectory
    from kirchhoff_string.models import FloatArray

    from .fd import GridTrajectory

#: Relative tolerance for matching sample instants of two trajectories.
TIME_MATCH_TOLERANCE = 1e-9


class DiscrepancyReport(SchemaModel):
    """Per-sample differences of the displacement between two solvers."""

    times: tuple[float, ...]
    max_diff: tuple[float, ...] = Field(description='max_x |u_modal − u_fd| per sample.')
    l2_diff: tuple[float, ...] = Field(description='(∫|u_modal − u_fd|² dx)^½ per sample.')

    @property
    def summary_max(self) -> float:
        """Largest pointwise difference over all samples."""
        return max(self.max_diff, default=0.0)

    @property
    def summary_l2(self) -> float:
        """Largest L² difference over all samples."""
        return max(self.l2_diff, default=0.0)


def _find_sample(times: 'FloatArray', time: float, tolerance: float) -> int | None:
    """Position of the sample closest to ``time`` if it lies within ``tolerance``."""
    position = int(np.argmin(np.abs(times - time)))

    return position if abs(times[position] - time) <= tolerance else None


def compare_solvers(modal: 'ModalTrajectory', fd: 'GridTrajectory',
                    times: 'Sequence[float] | None' = None) -> DiscrepancyReport:
    """Compare two trajectories of the same problem at common sample times.

    Modal states are reconstructed on the grid of the finite-difference
    states before differencing.

    Args:
        modal: Modal trajectory.
        fd: Finite-difference trajectory.
        times: Sample instants to compare; defaults to every FD sample.

    Returns:
        Pointwise and L² discrepancies per compared sample.

    Raises:
        AlignmentError: If a requested instant is missing from either trajectory,
            or the trajectories describe strings of different length.
    """
    if not modal or not fd:
        raise AlignmentError('Both trajectories must contain at least one sample')
    if modal[0].length_l != fd[0].length_l:
        raise AlignmentError('Trajectories describe strings of different length')

    horizon = max(1.0, abs(fd[-1].time_t), abs(modal[-1].time_t))
    tolerance = TIME_MATCH_TOLERANCE * horizon
    modal_times = np.array([state.time_t for state in modal])
    fd_times = np.array([state.time_t for state in fd])

    requested = list(times) if times is not None else [state.time_t for state in fd]

    compared, max_diff, l2_diff = [], [], []
    for time in requested:
        modal_position = _find_sample(modal_times, time, tolerance)
        fd_position = _find_sample(fd_times, time, tolerance)
        if modal_position is None or fd_position is None:
            raise AlignmentError(f'Sample time {time:.9g} is missing from one of the trajectories')

        grid_state = fd[fd_position]
        modal_state = reconstruct(modal[modal_position], grid_state.num_points)

        difference = modal_state.u_values - grid_state.u_values
        compared.append(float(time))
        max_diff.append(float(np.max(np.linalg.norm(difference, axis=1))))
        l2_diff.append(float(np.sqrt(integrate_norm_sq(difference, grid_state.x_spacing))))

    return DiscrepancyReport(
        times=tuple(compared),
        max_diff=tuple(max_diff),
        l2_diff=tuple(l2_diff),
    )
