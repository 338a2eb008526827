"""Energy, Lyapunov functionals and runtime monitors of their inequalities."""

from .functionals import (
    EnergyParts,
    InequalityMargins,
    State,
    StateIntegrals,
    energy,
    energy_parts,
    inequality_margins,
    initial_energy,
    lyapunov_G,
    lyapunov_V,
    mu0_coefficient,
    quasi_steady_gap,
    state_integrals,
)
from .monitors import (
    EnergySample,
    MonitorConfig,
    MonitorTolerances,
    dG_bound_check,
    dissipation_residual,
    dV_bound_check,
    margin_violations,
    monitor_trajectory,
    sample_state,
    sampling_interval,
)

__all__ = (
    'EnergyParts',
    'EnergySample',
    'InequalityMargins',
    'MonitorConfig',
    'MonitorTolerances',
    'State',
    'StateIntegrals',
    'dG_bound_check',
    'dV_bound_check',
    'dissipation_residual',
    'energy',
    'energy_parts',
    'inequality_margins',
    'initial_energy',
    'lyapunov_G',
    'lyapunov_V',
    'margin_violations',
    'monitor_trajectory',
    'mu0_coefficient',
    'quasi_steady_gap',
    'sample_state',
    'sampling_interval',
)
