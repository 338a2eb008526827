"""Sample-based certification of the decay estimate along a trajectory."""

import logging
import sys
from math import exp, inf, log, log1p
from typing import TYPE_CHECKING, Literal

from pydantic import Field

from kirchhoff_string.errors import InconsistentTrajectoryError
from kirchhoff_string.models import SchemaModel

from .constants import DecayConstants, log_amplitude_bound

if TYPE_CHECKING:
    from collections.abc import Sequence

    from kirchhoff_string.core import WaveParameters
    from kirchhoff_string.energy import EnergySample

logger = logging.getLogger(__name__)

#: Default relative tolerance of every certificate check.
DEFAULT_TOLERANCE = 1e-6

#: Largest argument of `exp` with a finite result.
LOG_FLOAT_MAX = log(sys.float_info.max)

type Verdict = Literal['pass', 'fail']


class BoundCheck(SchemaModel):
    """Outcome of comparing sampled values with a time-dependent bound."""

    verdict: Verdict
    max_ratio: float = Field(ge=0, description='Largest value-to-bound ratio over the samples.')
    worst_sample_time: float = Field(description='Sample time of the largest ratio.')

    @property
    def passed(self) -> bool:
        return self.verdict == 'pass'


class CertificateReport(SchemaModel):
    """Verdicts of the decay estimate on one trajectory.

    ``verdict`` is ``pass`` exactly when ``max_normalized_ratio ≤ M·(1 + tolerance)``.
    """

    constants: DecayConstants
    initial_energy: float = Field(ge=0)
    tolerance: float = Field(ge=0)
    max_normalized_ratio: float = Field(ge=0, description='max over samples of E(t)·e^{μt}/E(0).')
    verdict: Verdict
    worst_sample_time: float
    amplitude: BoundCheck | None = None
    lyapunov: BoundCheck | None = None

    @property
    def amplitude_verdict(self) -> Verdict | None:
        return self.amplitude.verdict if self.amplitude else None

    @property
    def passed(self) -> bool:
        """Whether every performed check passed."""
        return all(
            check == 'pass'
            for check in (self.verdict, self.amplitude_verdict, self.lyapunov.verdict if self.lyapunov else None)
            if check is not None
        )


def _verdict(passed: bool) -> Verdict:
    return 'pass' if passed else 'fail'


def _log_ratio(value: float, log_bound: float) -> float:
    """Logarithm of ``value / bound``; ``-inf`` for nonpositive values."""
    if value <= 0.0:
        return -inf

    return log(value) - log_bound


def _ratio(log_ratio: float) -> float:
    return exp(log_ratio) if log_ratio < LOG_FLOAT_MAX else inf


def _bound_check(times: 'Sequence[float]', log_ratios: 'Sequence[float]', tolerance: float) -> BoundCheck:
    worst = max(range(len(log_ratios)), key=log_ratios.__getitem__)

    return BoundCheck(
        verdict=_verdict(log_ratios[worst] <= log1p(tolerance)),
        max_ratio=_ratio(log_ratios[worst]),
        worst_sample_time=times[worst],
    )


def _check_samples(samples: 'Sequence[EnergySample]') -> float:
    """Return ``E(0)`` after checking a trajectory can be certified.

    Raises:
        ValueError: If the trajectory is empty.
        InconsistentTrajectoryError: If energy appears from a zero start.
    """
    if not samples:
        raise ValueError('Trajectory must contain at least one sample')

    e0 = samples[0].energy_E
    if e0 == 0.0 and any(sample.energy_E > 0.0 for sample in samples):
        raise InconsistentTrajectoryError(
            'Energy grows from a zero initial energy',
        )

    return e0


def certify_decay(samples: 'Sequence[EnergySample]', constants: DecayConstants,
                  tolerance: float = DEFAULT_TOLERANCE) -> CertificateReport:
    """Check ``E(t) ≤ M·e^{−μt}·E(0)`` at every sample.

    Args:
        samples: Energy samples; the first one is the initial instant.
        constants: Decay constants.
        tolerance: Relative tolerance on ``M``.

    Returns:
        Report with the largest normalized ratio and its sample time.

    Raises:
        ValueError: If the trajectory is empty.
        InconsistentTrajectoryError: If energy appears from a zero start.
    """
    e0 = _check_samples(samples)
    t0 = samples[0].time_t

    if e0 == 0.0:
        log_ratios = [-inf] * len(samples)
    else:
        log_e0 = log(e0)
        log_ratios = [
            _log_ratio(sample.energy_E, log_e0 - constants.mu * (sample.time_t - t0))
            for sample in samples
        ]

    worst = max(range(len(log_ratios)), key=log_ratios.__getitem__)
    passed = log_ratios[worst] <= log(constants.big_M) + log1p(tolerance)
    max_ratio = _ratio(log_ratios[worst])

    logger.info(
        'Decay check: max E·e^{μt}/E(0) = %.9g against M = %.9g (%s)',
        max_ratio, constants.big_M, _verdict(passed),
    )

    return CertificateReport(
        constants=constants,
        initial_energy=e0,
        tolerance=tolerance,
        max_normalized_ratio=max_ratio,
        verdict=_verdict(passed),
        worst_sample_time=samples[worst].time_t,
    )


def certify_amplitude(samples: 'Sequence[EnergySample]', constants: DecayConstants,
                      params: 'WaveParameters', e0: float | None = None,
                      tolerance: float = DEFAULT_TOLERANCE) -> BoundCheck:
    """Check ``∫|u|² dx ≤ amplitude_bound(t)`` at every sample.

    Args:
        samples: Energy samples; the first one is the initial instant.
        constants: Decay constants.
        params: Wave-equation coefficients.
        e0: Initial energy; taken from the first sample when omitted.
        tolerance: Relative tolerance on the bound.

    Returns:
        Verdict with the largest amplitude-to-bound ratio.

    Raises:
        ValueError: If the trajectory is empty.
        InconsistentTrajectoryError: If energy appears from a zero start.
    """
    first = _check_samples(samples)
    e0 = first if e0 is None else e0
    t0 = samples[0].time_t

    return _bound_check(
        [sample.time_t for sample in samples],
        [
            _log_ratio(sample.amp_sq_term, log_amplitude_bound(sample.time_t - t0, constants, params, e0))
            for sample in samples
        ],
        tolerance,
    )


def certify_lyapunov(samples: 'Sequence[EnergySample]', constants: DecayConstants,
                     tolerance: float = DEFAULT_TOLERANCE) -> BoundCheck:
    """Check ``V(t)·e^{μt} ≤ V(0)`` at every sample.

    This is the integrated form of ``dV/dt + μV ≤ 0``; the samples must
    carry ``V`` for the same ``ε`` as `constants`.

    Raises:
        ValueError: If the trajectory is empty.
        InconsistentTrajectoryError: If energy appears from a zero start.
    """
    _check_samples(samples)
    t0 = samples[0].time_t
    log_v0 = log(v0) if (v0 := samples[0].lyapunov_V) > 0.0 else -inf

    return _bound_check(
        [sample.time_t for sample in samples],
        [
            _log_ratio(sample.lyapunov_V, log_v0 - constants.mu * (sample.time_t - t0))
            for sample in samples
        ],
        tolerance,
    )


def certify(samples: 'Sequence[EnergySample]', constants: DecayConstants,
            params: 'WaveParameters', tolerance: float = DEFAULT_TOLERANCE) -> CertificateReport:
    """Run the decay, amplitude and Lyapunov checks on one trajectory."""
    report = certify_decay(samples, constants, tolerance)

    return report.model_copy(update={
        'amplitude': certify_amplitude(samples, constants, params, report.initial_energy, tolerance),
        'lyapunov': certify_lyapunov(samples, constants, tolerance),
    })
