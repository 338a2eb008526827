"""Runtime monitors of the energy identities along a trajectory.

Time derivatives are second-order central differences on stored,
uniformly spaced samples; the first and last sample of a window carry
no derivative-based value.
"""

from typing import TYPE_CHECKING

import numpy as np
from pydantic import Field

from kirchhoff_string.errors import AlignmentError
from kirchhoff_string.models import SchemaModel

from .functionals import (
    InequalityMargins,
    energy_from_integrals,
    lyapunov_from_integrals,
    margins_from_integrals,
    state_integrals,
)

if TYPE_CHECKING:
    from collections.abc import Sequence

    from kirchhoff_string.core import WaveParameters
    from kirchhoff_string.models import FloatArray

    from .functionals import State

#: Smallest energy scale used to normalize slacks near the decayed state.
ENERGY_FLOOR = 1e-300

#: Relative spread of sampling intervals still treated as uniform.
UNIFORM_TOLERANCE = 1e-6


class MonitorTolerances(SchemaModel):
    """Relative slacks accepted per inequality."""

    scheefer: float = Field(default=1e-10, ge=0)
    schwarz: float = Field(default=1e-10, ge=0)
    g_upper: float = Field(default=1e-10, ge=0)
    g_lower: float = Field(default=1e-10, ge=0)
    sandwich_lo: float = Field(default=1e-10, ge=0)
    sandwich_hi: float = Field(default=1e-10, ge=0)
    dissipation: float = Field(default=1e-3, ge=0, description='Relative residual of dE/dt + 2δ∫|u_t|².')
    dG_bound: float = Field(default=1e-4, ge=0, description='Relative slack of the dG/dt bound.')  # noqa: N815
    dV_bound: float = Field(default=1e-4, ge=0, description='Relative slack of the dV/dt bound.')  # noqa: N815


class MonitorConfig(SchemaModel):
    """Lyapunov mixing parameter and monitor tolerances."""

    epsilon: float = Field(gt=0, allow_inf_nan=False, title='Lyapunov mixing parameter ε')
    tolerances: MonitorTolerances = Field(default_factory=MonitorTolerances)


class EnergySample(SchemaModel):
    """Functionals, integrals and slacks of one sampled state."""

    time_t: float
    energy_E: float = Field(ge=0)  # noqa: N815
    lyapunov_G: float  # noqa: N815
    lyapunov_V: float  # noqa: N815
    kinetic_term: float = Field(ge=0)
    grad_term: float = Field(ge=0)
    amp_sq_term: float = Field(ge=0)
    cross_term: float
    margins: InequalityMargins
    dissipation_residual: float | None = None
    dG_slack: float | None = None  # noqa: N815
    dV_slack: float | None = None  # noqa: N815

    @property
    def relative_margins(self) -> InequalityMargins:
        """Margins normalized by ``max(E, floor)``."""
        return self.margins.relative(max(self.energy_E, ENERGY_FLOOR))


def sample_state(state: 'State', params: 'WaveParameters', epsilon: float) -> EnergySample:
    """Evaluate every functional and slack of a single state."""
    integrals = state_integrals(state)
    total = energy_from_integrals(integrals, params).total
    g_value = lyapunov_from_integrals(integrals, params)

    return EnergySample(
        time_t=state.time_t,
        energy_E=total,
        lyapunov_G=g_value,
        lyapunov_V=total + epsilon * g_value,
        kinetic_term=integrals.kinetic,
        grad_term=integrals.grad_sq,
        amp_sq_term=integrals.amp_sq,
        cross_term=integrals.cross,
        margins=margins_from_integrals(integrals, params, epsilon),
    )


def sampling_interval(samples: 'Sequence[EnergySample]') -> float:
    """Uniform sampling interval of a window of at least three samples.

    Raises:
        AlignmentError: If the window is too short or sampling is not uniform.
    """
    if len(samples) < 3:  # noqa: PLR2004
        raise AlignmentError('At least three consecutive samples are required')

    steps = np.diff([sample.time_t for sample in samples])
    interval = float(steps[0])
    if interval <= 0 or np.any(np.abs(steps - interval) > UNIFORM_TOLERANCE * interval):
        raise AlignmentError('Samples must be uniformly spaced in time')

    return interval


def _central_difference(values: 'FloatArray', interval: float) -> 'FloatArray':
    return (values[2:] - values[:-2]) / (2.0 * interval)


def dissipation_residual(samples: 'Sequence[EnergySample]', params: 'WaveParameters') -> 'FloatArray':
    """Residual of the dissipation identity ``dE/dt = −2δ∫|u_t|²`` at interior samples.

    Returns ``|(E(t+h) − E(t−h))/(2h) + 2δ·∫|u_t|²(t)| / max(E(0), 1)``.

    Raises:
        AlignmentError: If sampling is not uniform.
    """
    interval = sampling_interval(samples)
    energies = np.array([sample.energy_E for sample in samples])
    kinetic = np.array([sample.kinetic_term for sample in samples[1:-1]])

    residual = np.abs(_central_difference(energies, interval) + 2.0 * params.damping_delta * kinetic)

    return residual / max(samples[0].energy_E, 1.0)


def dG_bound_check(samples: 'Sequence[EnergySample]', params: 'WaveParameters') -> 'FloatArray':  # noqa: ARG001, N802
    """Slack of ``dG/dt ≤ −2E + 2∫|u_t|²`` at interior samples.

    The slack ``(−2E + 2∫|u_t|²) − dG/dt`` is nonnegative when the bound holds.

    Raises:
        AlignmentError: If sampling is not uniform.
    """
    interval = sampling_interval(samples)
    g_values = np.array([sample.lyapunov_G for sample in samples])
    inner = samples[1:-1]

    bound = np.array([-2.0 * sample.energy_E + 2.0 * sample.kinetic_term for sample in inner])

    return bound - _central_difference(g_values, interval)


def dV_bound_check(samples: 'Sequence[EnergySample]', epsilon: float) -> 'FloatArray':  # noqa: N802
    """Slack of ``dV/dt ≤ −2εE`` at interior samples (holds for ``ε ≤ δ``).

    Raises:
        AlignmentError: If sampling is not uniform.
    """
    interval = sampling_interval(samples)
    v_values = np.array([sample.lyapunov_V for sample in samples])
    inner = np.array([sample.energy_E for sample in samples[1:-1]])

    return -2.0 * epsilon * inner - _central_difference(v_values, interval)


def monitor_trajectory(trajectory: 'Sequence[State]', params: 'WaveParameters',
                       config: MonitorConfig) -> tuple[EnergySample, ...]:
    """Attach energy samples and identity residuals to a trajectory.

    Interior samples carry the dissipation residual and the ``dG/dt`` and
    ``dV/dt`` slacks; trajectories shorter than three samples carry only
    the per-state values.

    Args:
        trajectory: Modal or grid states at uniform sample instants.
        params: Wave-equation coefficients.
        config: Monitor settings.

    Returns:
        One sample per state.
    """
    samples = [sample_state(state, params, config.epsilon) for state in trajectory]
    if len(samples) < 3:  # noqa: PLR2004
        return tuple(samples)

    residuals = dissipation_residual(samples, params)
    g_slacks = dG_bound_check(samples, params)
    v_slacks = dV_bound_check(samples, config.epsilon)

    interior = [
        sample.model_copy(update={
            'dissipation_residual': float(residual),
            'dG_slack': float(g_slack),
            'dV_slack': float(v_slack),
        })
        for sample, residual, g_slack, v_slack in zip(samples[1:-1], residuals, g_slacks, v_slacks, strict=True)
    ]

    return (samples[0], *interior, samples[-1])


def margin_violations(samples: 'Sequence[EnergySample]', tolerances: MonitorTolerances) -> dict[str, int]:
    """Count samples whose relative slacks fall below the tolerances.

    Derivative slacks are normalized by ``max(E(0), 1)`` like the
    dissipation residual.

    Returns:
        Mapping of inequality name to the number of violating samples;
        inequalities without violations are omitted.
    """
    counts: dict[str, int] = {}
    scale = max(samples[0].energy_E, 1.0) if samples else 1.0
    per_margin = tolerances.model_dump()

    for sample in samples:
        relative = sample.relative_margins.model_dump()
        for name, value in relative.items():
            if value < -per_margin[name]:
                counts[name] = counts.get(name, 0) + 1

        if sample.dissipation_residual is not None and sample.dissipation_residual > tolerances.dissipation:
            counts['dissipation'] = counts.get('dissipation', 0) + 1
        if sample.dG_slack is not None and sample.dG_slack / scale < -tolerances.dG_bound:
            counts['dG_bound'] = counts.get('dG_bound', 0) + 1
        if sample.dV_slack is not None and sample.dV_slack / scale < -tolerances.dV_bound:
            counts['dV_bound'] = counts.get('dV_bound', 0) + 1

    return counts
