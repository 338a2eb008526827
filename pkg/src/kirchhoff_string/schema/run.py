"""Run documents: parameters, initial data, solver, monitor and output sections.

A minimal document::

    parameters:
      wave: {length_l: 3.141592653589793, a_sq: 1.0, b_coeff: 0.5, damping_delta: 0.1}
    initial:
      preset: single_mode

Omitted sections take their defaults; unknown keys are rejected.
"""

from pathlib import Path
from typing import Any, Literal, Self

from pydantic import Field, model_validator

from kirchhoff_string.core import PhysicalString, WaveParameters, derive_wave_parameters
from kirchhoff_string.energy import MonitorTolerances
from kirchhoff_string.modal import Scheme  # noqa: TC001
from kirchhoff_string.models import DescribedMixin, SchemaModel

from .initial import InitialCondition, RandomModes

type SolverKind = Literal['modal', 'fd', 'both']


class ParametersSection(SchemaModel):
    """Exactly one source of the wave-equation coefficients."""

    wave: WaveParameters | None = Field(
        default=None,
        title='Wave parameters',
        description='Coefficients (l, δ, a², b) given directly.',
    )
    physical: PhysicalString | None = Field(
        default=None,
        title='Physical string',
        description='Physical constants from which a² and b are derived.',
    )

    @model_validator(mode='after')
    def check_single_source(self) -> Self:
        """Check that exactly one parameter source is given.

        Raises:
            ValueError: If none or both sources are present.
        """
        if (self.wave is None) == (self.physical is None):
            raise ValueError('exactly one of `wave` and `physical` must be given')

        return self

    def resolve(self) -> WaveParameters:
        """Return the wave-equation coefficients.

        Raises:
            ParameterDomainError: If derivation from physical constants fails.
        """
        if self.wave is not None:
            return self.wave

        return derive_wave_parameters(self.physical)  # type: ignore[arg-type]


class FdSection(SchemaModel):
    """Finite-difference oracle settings of a run document."""

    num_interior_points: int = Field(default=127, ge=1, title='Interior grid points')
    dt: float | None = Field(default=None, gt=0, allow_inf_nan=False, title='Time step')
    safety_factor: float = Field(default=0.5, gt=0, le=1, title='CFL safety factor')


class SolverSection(SchemaModel):
    """Solver choice and time-integration settings."""

    kind: SolverKind = Field(
        default='modal',
        title='Solver',
        description='`modal`, `fd`, or `both` to cross-validate the modal solver against the oracle.',
    )
    num_modes: int = Field(default=32, ge=1, title='Retained modes N')
    scheme: Scheme = Field(default='rk4', title='Modal integration scheme')
    dt: float | None = Field(
        default=None, gt=0, allow_inf_nan=False,
        title='Modal time step',
        description='Fixed step of `rk4` or sampling base of `adaptive`; heuristic when omitted.',
    )
    t_end: float | None = Field(
        default=None, gt=0, allow_inf_nan=False,
        title='Final time',
        description='Integration horizon; 10/μ of the decay certificate when omitted.',
    )
    rtol: float = Field(default=1e-10, gt=0, title='Relative tolerance (adaptive)')
    atol: float = Field(default=1e-12, gt=0, title='Absolute tolerance (adaptive)')
    sample_stride: int | None = Field(
        default=None, ge=1,
        title='Sample stride',
        description='Steps between samples; chosen for at least 200 samples per 1/μ when omitted.',
    )
    fd: FdSection | None = Field(
        default=None,
        title='Finite-difference settings',
        description='Allowed only with `kind: fd` or `kind: both`.',
    )

    @model_validator(mode='after')
    def check_pairing(self) -> Self:
        """Check that oracle settings come with a solver that uses them.

        Raises:
            ValueError: If `fd` is given for a modal-only run.
        """
        if self.fd is not None and self.kind == 'modal':
            raise ValueError('`fd` settings require `kind: fd` or `kind: both`')

        return self

    @property
    def fd_settings(self) -> FdSection:
        """Oracle settings with defaults filled in."""
        return self.fd or FdSection()


class MonitorSection(SchemaModel):
    """Lyapunov mixing parameter policy and check tolerances."""

    epsilon: Literal['auto'] | float = Field(
        default='auto',
        title='Mixing parameter ε',
        description='`auto` selects ε = min(δ, κ·πa/l); a number must satisfy 0 < ε ≤ δ and ε < πa/l.',
    )
    kappa: float | None = Field(
        default=None, gt=0, lt=1,
        title='Margin κ',
        description='Fraction of πa/l capping an automatic ε; harness default when omitted.',
    )
    tolerance: float = Field(
        default=1e-6, ge=0,
        title='Certificate tolerance',
        description='Relative tolerance of the decay, amplitude and Lyapunov checks.',
    )
    tolerances: MonitorTolerances = Field(
        default_factory=MonitorTolerances,
        title='Monitor tolerances',
    )

    @model_validator(mode='after')
    def check_epsilon(self) -> Self:
        """Check that an explicit ε is positive.

        Raises:
            ValueError: If ε is not positive.
        """
        if self.epsilon != 'auto' and not self.epsilon > 0:
            raise ValueError('epsilon must be positive')

        return self


class OutputSection(SchemaModel):
    """Output files of a run."""

    csv: Path | None = Field(default=None, title='Time-series CSV path')
    report: Path | None = Field(default=None, title='Certificate report path')


class RunConfig(DescribedMixin, SchemaModel):
    """A complete, validated run document."""

    parameters: ParametersSection
    initial: InitialCondition
    solver: SolverSection = Field(default_factory=SolverSection)
    monitor: MonitorSection = Field(default_factory=MonitorSection)
    output: OutputSection = Field(default_factory=OutputSection)

    @model_validator(mode='after')
    def check_consistency(self) -> Self:
        """Check cross-section invariants.

        Raises:
            ValueError: If the preset excites more modes than are retained,
                an undamped run has no horizon, or ε is out of range.
        """
        params = self.parameters.resolve()

        bandwidth = self.initial.bandwidth or 0
        if self.solver.kind != 'fd' and bandwidth > self.solver.num_modes:
            raise ValueError(
                f'initial data excite mode {bandwidth} but only {self.solver.num_modes} modes are retained',
            )

        if self.solver.t_end is None and params.damping_delta <= 0.0:
            raise ValueError('`solver.t_end` is required for undamped runs')

        epsilon = self.monitor.epsilon
        if epsilon != 'auto' and epsilon >= params.fundamental_rate:
            raise ValueError(f'epsilon must be below πa/l = {params.fundamental_rate:.9g}')

        return self

    @property
    def wave_parameters(self) -> WaveParameters:
        """Resolved wave-equation coefficients."""
        return self.parameters.resolve()

    def with_overrides(self, *, out: Path | None = None,
                       seed: int | None = None,
                       modes: int | None = None,
                       dt: float | None = None,
                       t_end: float | None = None,
                       kappa: float | None = None) -> 'RunConfig':
        """Return a copy with command-line overrides applied and re-validated.

        Raises:
            pydantic.ValidationError: If an override breaks an invariant.
        """
        data: dict[str, Any] = self.model_dump(exclude_unset=True)

        def section(name: str) -> dict[str, Any]:
            return data.setdefault(name, {})

        if out is not None:
            section('output')['csv'] = out
        if seed is not None and isinstance(self.initial, RandomModes):
            section('initial')['seed'] = seed
        if modes is not None:
            section('solver')['num_modes'] = modes
        if dt is not None:
            section('solver')['dt'] = dt
        if t_end is not None:
            section('solver')['t_end'] = t_end
        if kappa is not None:
            section('monitor')['kappa'] = kappa

        return RunConfig.model_validate(data)
