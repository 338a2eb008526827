"""Galerkin integration of the vector Kirchhoff equation.

Restricted to ``N`` sine modes, the equation becomes the coupled system

    b̈_n = −2δ ḃ_n − (a² + b·S) (nπ/l)² b_n,   S = (π²/(2l)) Σ n²|b_n|²,

where the single scalar ``S`` couples all modes. Two time integrators
are available: the classic four-stage Runge–Kutta scheme with a fixed
step, and scipy's adaptive Dormand–Prince 8(5,3) pair.

The Kirchhoff scalar is evaluated from each stage state; it is never
lagged.
"""

import logging
from math import ceil, pi, sqrt
from typing import TYPE_CHECKING, Literal, Self

import numpy as np
from pydantic import Field, model_validator
from scipy.integrate import solve_ivp

from kirchhoff_string.core import ModalState, WaveParameters
from kirchhoff_string.errors import DivergenceError, StiffnessError
from kirchhoff_string.models import SchemaModel, VectorArray

from .basis import gradient_norm_sq, wavenumbers

if TYPE_CHECKING:
    from collections.abc import Callable

if TYPE_CHECKING:
    from kirchhoff_string.models import FloatArray

logger = logging.getLogger(__name__)

#: Fraction of the fastest modal period used by the default step heuristic.
CFL_FRACTION = 0.1

#: Relative slack accepted when a sample instant is compared with ``t_end``.
TIME_EPSILON = 1e-9

type Scheme = Literal['rk4', 'adaptive']

#: An integrated trajectory: states at the sample instants, ``state0`` first.
type ModalTrajectory = tuple[ModalState, ...]


class ModalDerivative(SchemaModel):
    """Time derivative ``(ḃ_n, b̈_n)`` of every retained mode."""

    rates: VectorArray
    accelerations: VectorArray


class IntegratorConfig(SchemaModel):
    """Time-integration settings of the modal solver."""

    scheme: Scheme = Field(
        default='rk4',
        title='Integration scheme',
        description=(
            '`rk4` is the classic fixed-step four-stage Runge–Kutta scheme; '
            '`adaptive` is an embedded Dormand–Prince pair with error control.'
        ),
    )
    dt: float | None = Field(
        default=None, gt=0, allow_inf_nan=False,
        title='Time step',
        description=(
            'Fixed step of `rk4` and sampling base of `adaptive`. When omitted, '
            '0.1·(l/(Nπ))/√(a² + b·S₀) is used.'
        ),
    )
    rtol: float = Field(default=1e-10, gt=0, title='Relative tolerance (adaptive)')
    atol: float = Field(default=1e-12, gt=0, title='Absolute tolerance (adaptive)')
    t_end: float = Field(gt=0, allow_inf_nan=False, title='Final time')
    sample_stride: int = Field(
        default=1, ge=1,
        title='Sample stride',
        description='Number of steps between stored samples.',
    )

    @model_validator(mode='after')
    def check_horizon(self) -> Self:
        """Check that at least one step fits into the horizon.

        Raises:
            ValueError: If ``dt`` exceeds ``t_end``.
        """
        if self.dt is not None and self.dt > self.t_end * (1.0 + TIME_EPSILON):
            raise ValueError('time step exceeds the final time')

        return self


class _ModalSystem:
    """Flat right-hand side of the modal system for the time integrators.

    The state vector packs ``(b, ḃ)`` as an array of shape ``(2, N, 2)``.
    """

    def __init__(self, params: WaveParameters, num_modes: int) -> None:
        self.params = params
        self.num_modes = num_modes
        self.k_sq = (wavenumbers(num_modes, params.length_l) ** 2)[:, np.newaxis]
        self.parseval = 0.5 * params.length_l

    def kirchhoff_scalar(self, coeffs: 'FloatArray') -> float:
        return float(self.parseval * np.sum(self.k_sq * coeffs * coeffs))

    def rhs(self, y: 'FloatArray') -> 'FloatArray':
        coeffs, rates = y[0], y[1]
        stiffness = self.params.a_sq + self.params.b_coeff * self.kirchhoff_scalar(coeffs)

        out = np.empty_like(y)
        out[0] = rates
        out[1] = -2.0 * self.params.damping_delta * rates - stiffness * self.k_sq * coeffs

        return out

    def flat_rhs(self, _t: float, flat: 'FloatArray') -> 'FloatArray':
        return self.rhs(flat.reshape(2, self.num_modes, 2)).ravel()

    def pack(self, state: ModalState) -> 'FloatArray':
        return np.stack((state.coeffs, state.rates))

    def unpack(self, y: 'FloatArray', time_t: float, length_l: float) -> ModalState:
        if not np.all(np.isfinite(y)):
            raise DivergenceError.at_time('Modal state became non-finite', time_t)

        return ModalState(time_t=time_t, length_l=length_l, coeffs=y[0], rates=y[1])


def modal_rhs(state: ModalState, params: WaveParameters) -> ModalDerivative:
    """Evaluate the modal right-hand side of the Kirchhoff equation.

    Args:
        state: Current modal state.
        params: Wave-equation coefficients.

    Returns:
        Per-mode ``(ḃ_n, b̈_n)``.
    """
    system = _ModalSystem(params, state.num_modes)
    derivative = system.rhs(system.pack(state))

    return ModalDerivative(rates=derivative[0], accelerations=derivative[1])


def modal_frequencies(state: ModalState, params: WaveParameters) -> 'FloatArray':
    """Instantaneous undamped angular frequencies ``(nπ/l)·√(a² + b·S)``."""
    stiffness = params.a_sq + params.b_coeff * gradient_norm_sq(state)

    return wavenumbers(state.num_modes, params.length_l) * sqrt(stiffness)


def default_time_step(state: ModalState, params: WaveParameters) -> float:
    """Fixed-step heuristic ``0.1·(l/(Nπ))/√(a² + b·S₀)``."""
    stiffness = params.a_sq + params.b_coeff * gradient_norm_sq(state)

    return CFL_FRACTION * (params.length_l / (state.num_modes * pi)) / sqrt(stiffness)


def _step_count(t_end: float, dt: float) -> int:
    """Number of uniform steps of size at most ``dt`` that end exactly at ``t_end``."""
    return max(1, ceil(t_end / dt - TIME_EPSILON))


def _rk4_step(rhs: 'Callable[[FloatArray], FloatArray]', y: 'FloatArray', dt: float) -> 'FloatArray':
    k1 = rhs(y)
    k2 = rhs(y + 0.5 * dt * k1)
    k3 = rhs(y + 0.5 * dt * k2)
    k4 = rhs(y + dt * k3)

    return y + (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4)


def _integrate_rk4(system: _ModalSystem, state0: ModalState,
                   dt: float, cfg: IntegratorConfig) -> ModalTrajectory:
    steps = _step_count(cfg.t_end, dt * cfg.sample_stride) * cfg.sample_stride
    dt = cfg.t_end / steps

    logger.debug('rk4: %d steps of dt=%.6g, stride %d', steps, dt, cfg.sample_stride)

    y = system.pack(state0)
    trajectory = [state0]

    for step in range(1, steps + 1):
        y = _rk4_step(system.rhs, y, dt)
        if step % cfg.sample_stride == 0:
            trajectory.append(system.unpack(y, state0.time_t + step * dt, state0.length_l))

    return tuple(trajectory)


def _integrate_adaptive(system: _ModalSystem, state0: ModalState,
                        dt: float, cfg: IntegratorConfig) -> ModalTrajectory:
    interval = dt * cfg.sample_stride
    samples = _step_count(cfg.t_end, interval)
    times = np.linspace(0.0, cfg.t_end, samples + 1)

    logger.debug('adaptive: %d samples, rtol=%.3g, atol=%.3g', samples, cfg.rtol, cfg.atol)

    solution = solve_ivp(
        system.flat_rhs,
        (0.0, cfg.t_end),
        system.pack(state0).ravel(),
        method='DOP853',
        t_eval=times,
        rtol=cfg.rtol,
        atol=cfg.atol,
    )

    if solution.status < 0:
        failed_at = float(solution.t[-1]) if solution.t.size else 0.0
        if 'step size' in solution.message:
            raise StiffnessError.at_time(f'Adaptive step size underflow: {solution.message}', failed_at)
        raise DivergenceError.at_time(f'Adaptive integration failed: {solution.message}', failed_at)

    shape = (2, system.num_modes, 2)

    return (state0, *(
        system.unpack(column.reshape(shape), state0.time_t + float(time), state0.length_l)
        for time, column in zip(solution.t[1:], solution.y.T[1:], strict=True)
    ))


def integrate(state0: ModalState, params: WaveParameters, cfg: IntegratorConfig) -> ModalTrajectory:
    """Integrate the modal system from ``state0`` over ``[0, t_end]``.

    Sample instants are uniform, every ``sample_stride`` steps, and the
    final time is always sampled. The step is shrunk slightly when needed
    so that a whole number of sample intervals ends exactly at ``t_end``.

    Args:
        state0: Initial modal state; first element of the result.
        params: Wave-equation coefficients.
        cfg: Integrator settings.

    Returns:
        States at the sample instants.

    Raises:
        DivergenceError: If the state becomes non-finite.
        StiffnessError: If the adaptive step size underflows.
    """
    if state0.length_l != params.length_l:
        raise ValueError('state and parameters describe strings of different length')

    dt = cfg.dt or default_time_step(state0, params)
    system = _ModalSystem(params, state0.num_modes)

    logger.info(
        'Integrating %d modes with %s up to t=%.6g', state0.num_modes, cfg.scheme, cfg.t_end,
    )

    if cfg.scheme == 'adaptive':
        return _integrate_adaptive(system, state0, dt, cfg)

    return _integrate_rk4(system, state0, dt, cfg)
