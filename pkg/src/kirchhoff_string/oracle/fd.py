"""Finite-difference oracle for the vector Kirchhoff equation.

Shares no numerical machinery with the modal solver: ``u_xx`` uses
second-order central differences, the Kirchhoff scalar is the sum of
squared forward differences, and time stepping is a velocity-Verlet
splitting. With these choices the acceleration is the gradient of the
discrete energy

    E_h = ½Σ|u_t,j|²dx + ½a²S_h + (b/4)S_h²,   S_h = Σ|u_{j+1} − u_j|²/dx,

which an undamped run keeps constant up to ``O(dt²)`` oscillations.
The opening half kick is explicit and the closing one treats damping
semi-implicitly,

    u_t ← u_t·(1 − 2δ·dt/2) + (dt/2)·A(u)
    u   ← u + dt·u_t
    u_t ← (u_t + (dt/2)·A(u)) / (1 + 2δ·dt/2),   A(u) = (a² + b·S(u))·u_xx,

so the damping factor of a full step is the second-order
``(1 − δ·dt)/(1 + δ·dt)``.

The explicit step is stable while ``dt ≤ safety·dx/√(a² + b·S)``; the
effective wave speed grows with amplitude, so the constraint is checked
before every step.
"""

import logging
from math import ceil, sqrt
from typing import TYPE_CHECKING

import numpy as np
from pydantic import Field

from kirchhoff_string.core import (
    GridState,
    WaveParameters,
    difference_norm_sq,
    integrate_norm_sq,
)
from kirchhoff_string.errors import DivergenceError, StabilityError
from kirchhoff_string.models import SchemaModel

if TYPE_CHECKING:
    from kirchhoff_string.models import FloatArray

logger = logging.getLogger(__name__)

#: Default step as a fraction of the largest stable step.
DT_FRACTION = 0.9

#: An FD trajectory: grid states at the sample instants, ``state0`` first.
type GridTrajectory = tuple[GridState, ...]


class FdConfig(SchemaModel):
    """Finite-difference oracle settings."""

    num_interior_points: int = Field(
        default=127, ge=1,
        title='Interior grid points',
        description='Number of grid points strictly between the fixed ends.',
    )
    dt: float | None = Field(
        default=None, gt=0, allow_inf_nan=False,
        title='Time step',
        description=(
            'Fixed time step. When omitted, a step below the CFL limit for the '
            'largest Kirchhoff scalar the initial energy allows is used.'
        ),
    )
    t_end: float = Field(gt=0, allow_inf_nan=False, title='Final time')
    safety_factor: float = Field(
        default=0.5, gt=0, le=1,
        title='CFL safety factor',
        description='Fraction of the CFL limit dx/√(a² + b·S) a step may use.',
    )
    sample_stride: int = Field(default=1, ge=1, title='Sample stride')

    @property
    def num_points(self) -> int:
        """Grid points including both ends."""
        return self.num_interior_points + 2


def kirchhoff_scalar(u_values: 'FloatArray', dx: float) -> float:
    """Forward-difference value of ``∫|u_x|² dx``."""
    return difference_norm_sq(u_values, dx)


def _laplacian(u_values: 'FloatArray', dx: float) -> 'FloatArray':
    """Central second difference; zero at the fixed ends."""
    out = np.zeros_like(u_values)
    out[1:-1] = (u_values[2:] - 2.0 * u_values[1:-1] + u_values[:-2]) / (dx * dx)

    return out


def _acceleration(u_values: 'FloatArray', dx: float, params: WaveParameters) -> tuple['FloatArray', float]:
    """Conservative acceleration ``(a² + b·S)·u_xx`` and the scalar ``S``."""
    scalar = kirchhoff_scalar(u_values, dx)

    return (params.a_sq + params.b_coeff * scalar) * _laplacian(u_values, dx), scalar


def cfl_limit(scalar: float, dx: float, params: WaveParameters) -> float:
    """Largest stable step ``dx/√(a² + b·S)`` for a Kirchhoff scalar ``S``."""
    return dx / sqrt(params.a_sq + params.b_coeff * scalar)


class _Stepper:
    """Velocity-Verlet stepper working on raw sample arrays."""

    def __init__(self, params: WaveParameters, dx: float, dt: float, safety_factor: float) -> None:
        self.params = params
        self.dx = dx
        self.dt = dt
        self.safety_factor = safety_factor
        self.explicit_damping = 1.0 - params.damping_delta * dt
        self.damping = 1.0 + params.damping_delta * dt

    def step(self, u: 'FloatArray', ut: 'FloatArray', accel: 'FloatArray',
             scalar: float, time_t: float) -> tuple['FloatArray', 'FloatArray', 'FloatArray', float]:
        limit = self.safety_factor * cfl_limit(scalar, self.dx, self.params)
        if self.dt > limit:
            raise StabilityError.at_time(
                f'Time step {self.dt:.6g} violates the CFL limit {limit:.6g}', time_t,
            )

        half = 0.5 * self.dt
        ut_half = ut * self.explicit_damping + half * accel
        u_new = u + self.dt * ut_half
        u_new[[0, -1]] = 0.0

        accel_new, scalar_new = _acceleration(u_new, self.dx, self.params)
        ut_new = (ut_half + half * accel_new) / self.damping
        ut_new[[0, -1]] = 0.0

        if not (np.all(np.isfinite(u_new)) and np.all(np.isfinite(ut_new))):
            raise DivergenceError.at_time('Grid state became non-finite', time_t + self.dt)

        return u_new, ut_new, accel_new, scalar_new


def fd_step(state: GridState, params: WaveParameters, dt: float,
            safety_factor: float = 1.0) -> GridState:
    """Advance a grid state by one explicit step.

    Args:
        state: Current grid state with zero end values.
        params: Wave-equation coefficients.
        dt: Time step.
        safety_factor: Fraction of the CFL limit the step may use.

    Returns:
        The grid state at ``t + dt``.

    Raises:
        StabilityError: If ``dt`` violates the CFL constraint.
        DivergenceError: If the new state is not finite.
    """
    dx = state.x_spacing
    accel, scalar = _acceleration(state.u_values, dx, params)

    stepper = _Stepper(params, dx, dt, safety_factor)
    u_new, ut_new, _, _ = stepper.step(
        state.u_values.copy(), state.ut_values.copy(), accel, scalar, state.time_t,
    )

    return GridState(
        time_t=state.time_t + dt,
        length_l=state.length_l,
        u_values=u_new,
        ut_values=ut_new,
    )


def default_fd_time_step(state: GridState, params: WaveParameters, safety_factor: float) -> float:
    """Step below the CFL limit for every state the initial energy can reach.

    Since ``a²S/2 ≤ E`` and the energy does not grow, ``S ≤ 2E(0)/a²``.
    """
    dx = state.x_spacing
    kinetic = integrate_norm_sq(state.ut_values, dx)
    scalar = kirchhoff_scalar(state.u_values, dx)
    energy = 0.5 * (kinetic + params.a_sq * scalar) + 0.25 * params.b_coeff * scalar ** 2

    return DT_FRACTION * safety_factor * cfl_limit(2.0 * energy / params.a_sq, dx, params)


def fd_integrate(state0: GridState, params: WaveParameters, cfg: FdConfig) -> GridTrajectory:
    """Integrate the finite-difference system over ``[0, t_end]``.

    The step is shrunk slightly when needed so that a whole number of
    sample intervals ends exactly at ``t_end``; end values stay exactly
    zero at every step.

    Args:
        state0: Initial grid state; its grid must match `cfg`.
        params: Wave-equation coefficients.
        cfg: Oracle settings.

    Returns:
        Grid states at the sample instants.

    Raises:
        ValueError: If the grid of ``state0`` does not match `cfg`.
        StabilityError: If a step violates the CFL constraint.
        DivergenceError: If the state becomes non-finite.
    """
    if state0.num_points != cfg.num_points:
        raise ValueError(f'state has {state0.num_points} points, configuration expects {cfg.num_points}')

    dt = cfg.dt or default_fd_time_step(state0, params, cfg.safety_factor)
    intervals = max(1, ceil(cfg.t_end / (dt * cfg.sample_stride) - 1e-9))
    steps = intervals * cfg.sample_stride
    dt = cfg.t_end / steps

    logger.info(
        'FD oracle: %d interior points, %d steps of dt=%.6g', cfg.num_interior_points, steps, dt,
    )

    dx = state0.x_spacing
    stepper = _Stepper(params, dx, dt, cfg.safety_factor)

    u, ut = state0.u_values.copy(), state0.ut_values.copy()
    accel, scalar = _acceleration(u, dx, params)
    trajectory = [state0]

    for step in range(1, steps + 1):
        time_t = state0.time_t + (step - 1) * dt
        u, ut, accel, scalar = stepper.step(u, ut, accel, scalar, time_t)
        if step % cfg.sample_stride == 0:
            trajectory.append(GridState(
                time_t=state0.time_t + step * dt,
                length_l=state0.length_l,
                u_values=u,
                ut_values=ut,
            ))

    return tuple(trajectory)
