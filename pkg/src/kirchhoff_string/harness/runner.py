"""Execution of run documents.

A run integrates the initial data with the selected solvers, attaches
energy monitors to the primary trajectory (modal when available) and
checks the decay certificate when the string is damped.

Both solvers are sampled on one uniform grid of instants ``k·h``; each
solver's step is shrunk to ``h/stride`` so that whole strides land on
every sample instant.
"""

import logging
from math import ceil
from typing import TYPE_CHECKING
from warnings import catch_warnings, simplefilter

from pydantic import Field

from kirchhoff_string.certificate import (
    CertificateReport,
    DecayConstants,
    certify,
    derive_constants,
    mu0,
    mu_max,
    mu_max_cap,
    overshoot_M,
)
from kirchhoff_string.core import WaveParameters  # noqa: TC001
from kirchhoff_string.energy import EnergySample, MonitorConfig, margin_violations, monitor_trajectory
from kirchhoff_string.errors import NoCertificateError, RemarkWarning
from kirchhoff_string.modal import IntegratorConfig, default_time_step, integrate
from kirchhoff_string.models import SchemaModel
from kirchhoff_string.oracle import DiscrepancyReport, FdConfig, compare_solvers, default_fd_time_step, fd_integrate
from kirchhoff_string.settings import HarnessSettings

from .csvio import write_timeseries
from .reports import write_report

if TYPE_CHECKING:
    from kirchhoff_string.schema import RunConfig

logger = logging.getLogger(__name__)

#: Minimal number of samples per decay time ``1/μ`` of automatic sampling.
SAMPLES_PER_DECAY = 200

#: Integration horizon in decay times ``1/μ`` when a run sets none.
DECAY_TIMES = 10.0

#: Note of the constants table of an undamped string.
UNDAMPED_NOTE = 'undamped string: the energy is conserved and no decay is certified'

#: Relative slack when fitting whole steps into a sample interval.
FIT_EPSILON = 1e-9


class Sampling(SchemaModel):
    """Common sample instants and per-solver steps of a run."""

    t_end: float = Field(gt=0)
    intervals: int = Field(ge=1, description='Number of sample intervals K.')
    modal_dt: float | None = None
    modal_stride: int | None = None
    fd_dt: float | None = None
    fd_stride: int | None = None

    @property
    def interval(self) -> float:
        """Sample interval ``h = t_end/K``."""
        return self.t_end / self.intervals


class RunResult(SchemaModel):
    """Everything a run produced."""

    params: WaveParameters
    epsilon: float = Field(gt=0)
    constants: DecayConstants | None = None
    sampling: Sampling
    samples: tuple[EnergySample, ...]
    discrepancy: DiscrepancyReport | None = None
    report: CertificateReport | None = None
    violations: dict[str, int] = Field(default_factory=dict)

    @property
    def initial_energy(self) -> float:
        return self.samples[0].energy_E

    @property
    def passed(self) -> bool:
        """Whether every certificate check passed; undamped runs have none."""
        return self.report.passed if self.report else True


class ConstantsTable(SchemaModel):
    """Formula values of the decay estimate for one set of parameters."""

    fundamental_rate: float
    dimensionless_damping: float
    mu0: float
    epsilon: float
    mu: float
    big_M: float  # noqa: N815
    mu_max: float
    mu_max_cap: float
    note: str | None = None


def resolve_epsilon(cfg: 'RunConfig', params: WaveParameters,
                    settings: HarnessSettings) -> tuple[float, DecayConstants | None]:
    """Select the mixing parameter and, for damped strings, the decay constants.

    Undamped runs use ``ε = κ·πa/l`` for the monitors and carry no constants.

    Raises:
        ParameterDomainError: If an explicit ``ε`` is not admissible.
    """
    kappa = cfg.monitor.kappa or settings.kappa
    explicit = None if cfg.monitor.epsilon == 'auto' else cfg.monitor.epsilon

    if params.damping_delta <= 0.0:
        return explicit or kappa * params.fundamental_rate, None

    constants = derive_constants(params, kappa, explicit)

    return constants.epsilon, constants


def _fit(interval: float, dt: float) -> tuple[float, int]:
    """Largest step not above ``dt`` that divides ``interval``, with its count."""
    stride = max(1, ceil(interval / dt - FIT_EPSILON))

    return interval / stride, stride


def plan_sampling(t_end: float, constants: DecayConstants | None, *,
                  modal_dt: float | None = None, fd_dt: float | None = None,
                  stride: int | None = None) -> Sampling:
    """Choose the sample instants and fit every solver's step to them.

    Without an explicit stride, samples are at least `SAMPLES_PER_DECAY`
    per decay time ``1/μ`` (every step for undamped runs).

    Args:
        t_end: Integration horizon.
        constants: Decay constants of damped runs.
        modal_dt: Largest modal step, if the modal solver runs.
        fd_dt: Largest oracle step, if the oracle runs.
        stride: Steps of the primary solver between samples.

    Returns:
        The sampling plan.
    """
    base_dt = modal_dt if modal_dt is not None else fd_dt
    if base_dt is None:
        raise ValueError('at least one solver step is required')

    if stride is not None:
        target = stride * base_dt
    elif constants is not None:
        target = 1.0 / (SAMPLES_PER_DECAY * constants.mu)
    else:
        target = base_dt

    intervals = max(1, ceil(t_end / target - FIT_EPSILON))
    interval = t_end / intervals

    modal = _fit(interval, modal_dt) if modal_dt is not None else (None, None)
    fd = _fit(interval, fd_dt) if fd_dt is not None else (None, None)

    return Sampling(
        t_end=t_end,
        intervals=intervals,
        modal_dt=modal[0],
        modal_stride=modal[1],
        fd_dt=fd[0],
        fd_stride=fd[1],
    )


def simulate(cfg: 'RunConfig', settings: HarnessSettings | None = None) -> RunResult:
    """Integrate, monitor and (for damped strings) certify one run.

    Args:
        cfg: Validated run document.
        settings: Harness defaults; resolved from the environment when omitted.

    Returns:
        The run result.

    Raises:
        ParameterDomainError: If an explicit ``ε`` is not admissible.
        NumericalError: If a solver breaks down.
    """
    settings = settings or HarnessSettings()
    params = cfg.wave_parameters
    solver = cfg.solver

    epsilon, constants = resolve_epsilon(cfg, params, settings)
    t_end = solver.t_end or DECAY_TIMES / constants.mu  # type: ignore[union-attr]

    modal_state0 = grid_state0 = None
    modal_dt = fd_dt = None

    if solver.kind != 'fd':
        modal_state0 = cfg.initial.modal_state(solver.num_modes, params.length_l)
        modal_dt = solver.dt or default_time_step(modal_state0, params)

    fd_settings = solver.fd_settings
    if solver.kind != 'modal':
        grid_state0 = cfg.initial.grid_state(fd_settings.num_interior_points + 2, params.length_l)
        fd_dt = fd_settings.dt or default_fd_time_step(grid_state0, params, fd_settings.safety_factor)

    sampling = plan_sampling(
        t_end, constants, modal_dt=modal_dt, fd_dt=fd_dt, stride=solver.sample_stride,
    )
    logger.info('Sampling %d intervals of h=%.6g up to t=%.6g', sampling.intervals, sampling.interval, t_end)

    modal_trajectory = grid_trajectory = None
    if modal_state0 is not None:
        modal_trajectory = integrate(modal_state0, params, IntegratorConfig(
            scheme=solver.scheme,
            dt=sampling.modal_dt,
            rtol=solver.rtol,
            atol=solver.atol,
            t_end=t_end,
            sample_stride=sampling.modal_stride or 1,
        ))
    if grid_state0 is not None:
        grid_trajectory = fd_integrate(grid_state0, params, FdConfig(
            num_interior_points=fd_settings.num_interior_points,
            dt=sampling.fd_dt,
            t_end=t_end,
            safety_factor=fd_settings.safety_factor,
            sample_stride=sampling.fd_stride or 1,
        ))

    primary = modal_trajectory or grid_trajectory
    monitor = MonitorConfig(epsilon=epsilon, tolerances=cfg.monitor.tolerances)
    samples = monitor_trajectory(primary, params, monitor)  # type: ignore[arg-type]

    discrepancy = None
    if modal_trajectory and grid_trajectory:
        discrepancy = compare_solvers(modal_trajectory, grid_trajectory)
        logger.info('Largest modal/FD discrepancy: max %.3e, L² %.3e', discrepancy.summary_max, discrepancy.summary_l2)

    violations = margin_violations(samples, cfg.monitor.tolerances)
    if epsilon > params.damping_delta:
        # dV/dt ≤ −2εE needs ε ≤ δ
        violations.pop('dV_bound', None)
    if violations:
        logger.warning('Monitor tolerances exceeded: %s', violations)

    report = None
    if constants is not None:
        report = certify(samples, constants, params, cfg.monitor.tolerance)

    return RunResult(
        params=params,
        epsilon=epsilon,
        constants=constants,
        sampling=sampling,
        samples=samples,
        discrepancy=discrepancy,
        report=report,
        violations=violations,
    )


def run_simulate(cfg: 'RunConfig', settings: HarnessSettings | None = None) -> RunResult:
    """Simulate a run and write its output files.

    The CSV time series goes to ``output.csv`` and the key-value summary
    to ``output.report`` when set.

    Raises:
        ParameterDomainError: If an explicit ``ε`` is not admissible.
        NumericalError: If a solver breaks down.
    """
    settings = settings or HarnessSettings()
    result = simulate(cfg, settings)

    if cfg.output.csv is not None:
        write_timeseries(cfg.output.csv, result, settings.csv_digits)
    if cfg.output.report is not None:
        write_report(cfg.output.report, result)

    return result


def run_certify(cfg: 'RunConfig', settings: HarnessSettings | None = None) -> RunResult:
    """Simulate a damped run and certify the decay estimate.

    Raises:
        NoCertificateError: If the string is undamped.
        ParameterDomainError: If an explicit ``ε`` is not admissible.
        NumericalError: If a solver breaks down.
    """
    if cfg.wave_parameters.damping_delta <= 0.0:
        raise NoCertificateError(
            'Exponential decay can only be certified for strictly positive damping δ > 0',
        )

    return run_simulate(cfg, settings)


def print_constants(params: WaveParameters, kappa: float | None = None,
                    settings: HarnessSettings | None = None,
                    epsilon: float | None = None) -> ConstantsTable:
    """Evaluate the decay constants without simulating.

    Undamped strings get ``μ = 0`` with the monitor's ``ε = κ·πa/l``
    and the overshoot ``M`` it implies.

    Raises:
        ParameterDomainError: If an explicit ``ε`` is not admissible.
    """
    settings = settings or HarnessSettings()
    kappa = kappa or settings.kappa
    coefficient = mu0(params)

    if params.damping_delta <= 0.0:
        epsilon = epsilon or kappa * params.fundamental_rate
        rate, overshoot, note = 0.0, overshoot_M(epsilon, coefficient, params), UNDAMPED_NOTE
    else:
        constants = derive_constants(params, kappa, epsilon)
        epsilon, rate, overshoot, note = constants.epsilon, constants.mu, constants.big_M, constants.note

    with catch_warnings():
        # already reported by derive_constants
        simplefilter('ignore', RemarkWarning)
        rate_max = mu_max(params)

    return ConstantsTable(
        fundamental_rate=params.fundamental_rate,
        dimensionless_damping=params.dimensionless_damping,
        mu0=coefficient,
        epsilon=epsilon,
        mu=rate,
        big_M=overshoot,
        mu_max=rate_max,
        mu_max_cap=mu_max_cap(params),
        note=note,
    )
