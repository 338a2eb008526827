"""Explicit constants of the exponential energy decay estimate.

With the Lyapunov functional ``V = E + εG`` and ``0 < ε ≤ δ``,
``ε < πa/l``, every solution satisfies

    E(t) ≤ M·e^{−μt}·E(0),
    μ = 2ε/(1 + εμ₀),   M = (1 + εμ₀)/(1 − εl/(πa)),
    μ₀ = (l/(πa))·(1 + 2δl/(πa)).

Both ``μ`` and ``M`` increase with ``ε``; over the damping range
``δl/(πa) ≤ 1`` the largest rate ``ε = δ`` gives is capped at
``2/(1 + 2√2)·πa/l``, attained at ``δl/(πa) = 1/√2``.
"""

import logging
from math import exp, inf, log, pi, sqrt
from typing import TYPE_CHECKING
from warnings import warn

from pydantic import Field

from kirchhoff_string.energy import mu0_coefficient
from kirchhoff_string.errors import NoCertificateError, ParameterDomainError, RemarkWarning
from kirchhoff_string.models import SchemaModel

if TYPE_CHECKING:
    from kirchhoff_string.core import WaveParameters

logger = logging.getLogger(__name__)

#: Default fraction of ``πa/l`` that caps the mixing parameter.
DEFAULT_KAPPA = 0.99

#: Ratio of the universal rate cap to ``πa/l``.
CAP_RATIO = 2.0 / (1.0 + 2.0 * sqrt(2.0))

#: Dimensionless damping ``δl/(πa)`` at which the rate cap is attained.
OPTIMAL_DAMPING = 1.0 / sqrt(2.0)

REMARK_NOTE = 'δ > πa/l lies outside the optimal-damping regime; a decay rate μ = πa/l suffices'


class DecayConstants(SchemaModel):
    """Constants ``(ε, μ₀, μ, M)`` of one decay certificate."""

    epsilon: float = Field(gt=0, allow_inf_nan=False, title='Lyapunov mixing parameter ε')
    mu0: float = Field(gt=0, allow_inf_nan=False, title='Bound coefficient μ₀ of |G| ≤ μ₀E')
    mu: float = Field(gt=0, allow_inf_nan=False, title='Decay rate μ')
    big_M: float = Field(gt=1, allow_inf_nan=False, title='Overshoot M')  # noqa: N815
    dimensionless_damping: float = Field(ge=0, allow_inf_nan=False, title='δl/(πa)')
    note: str | None = Field(default=None, title='Remark on the damping regime')


def mu0(params: 'WaveParameters') -> float:
    """Coefficient ``μ₀ = (l/(πa))·(1 + 2δl/(πa))``."""
    return mu0_coefficient(params)


def choose_epsilon(params: 'WaveParameters', kappa: float = DEFAULT_KAPPA) -> float:
    """Select the mixing parameter ``ε = min(δ, κ·πa/l)``.

    Args:
        params: Wave-equation coefficients.
        kappa: Margin keeping ``ε`` strictly below ``πa/l``.

    Returns:
        The largest admissible ``ε`` under the margin.

    Raises:
        NoCertificateError: If the string is undamped.
        ParameterDomainError: If ``kappa`` is not in ``(0, 1)``.
    """
    if not 0.0 < kappa < 1.0:
        raise ParameterDomainError(f'kappa must lie in (0, 1), got {kappa!r}')
    if params.damping_delta <= 0.0:
        raise NoCertificateError(
            'Exponential decay can only be certified for strictly positive damping δ > 0',
        )

    return min(params.damping_delta, kappa * params.fundamental_rate)


def decay_rate(epsilon: float, mu0: float) -> float:
    """Decay rate ``μ = 2ε/(1 + εμ₀)``.

    Raises:
        ParameterDomainError: If ``epsilon`` is not positive.
    """
    if epsilon <= 0.0:
        raise ParameterDomainError(f'epsilon must be positive, got {epsilon!r}')

    return 2.0 * epsilon / (1.0 + epsilon * mu0)


def decay_rate_slope(epsilon: float, mu0: float) -> float:
    """Derivative ``dμ/dε = 2/(1 + εμ₀)²``."""
    return 2.0 / (1.0 + epsilon * mu0) ** 2


def overshoot_M(epsilon: float, mu0: float, params: 'WaveParameters') -> float:  # noqa: N802
    """Overshoot ``M = (1 + εμ₀)/(1 − εl/(πa))``.

    Raises:
        ParameterDomainError: If ``epsilon`` is not in ``(0, πa/l)``.
    """
    if not 0.0 < epsilon < params.fundamental_rate:
        raise ParameterDomainError(
            f'epsilon must lie in (0, πa/l) = (0, {params.fundamental_rate:.6g}), got {epsilon!r}',
        )

    return (1.0 + epsilon * mu0) / (1.0 - epsilon / params.fundamental_rate)


def overshoot_slope(epsilon: float, mu0: float, params: 'WaveParameters') -> float:
    """Derivative ``dM/dε = (μ₀ + l/(πa))/(1 − εl/(πa))²``."""
    ratio = 1.0 / params.fundamental_rate

    return (mu0 + ratio) / (1.0 - epsilon * ratio) ** 2


def mu_max(params: 'WaveParameters') -> float:
    """Largest rate ``2δ/(1 + δμ₀)`` reached with ``ε = δ``.

    Damping above ``πa/l`` falls outside the regime this optimum is
    derived for; the value is still returned and a `RemarkWarning` is
    issued.

    Undamped strings get a zero rate.
    """
    if params.damping_delta > params.fundamental_rate:
        warn(REMARK_NOTE, category=RemarkWarning, stacklevel=2)

    return 2.0 * params.damping_delta / (1.0 + params.damping_delta * mu0(params))


def mu_max_cap(params: 'WaveParameters') -> float:
    """Universal cap ``2/(1 + 2√2)·πa/l`` of `mu_max` for ``δl/(πa) ≤ 1``."""
    return CAP_RATIO * params.fundamental_rate


def derive_constants(params: 'WaveParameters', kappa: float = DEFAULT_KAPPA,
                     epsilon: float | None = None) -> DecayConstants:
    """Evaluate every constant of the decay estimate.

    Args:
        params: Wave-equation coefficients.
        kappa: Margin used by `choose_epsilon` when ``epsilon`` is omitted.
        epsilon: Explicit mixing parameter; must satisfy ``ε ≤ δ`` and
            ``ε < πa/l``.

    Returns:
        The decay constants, carrying a note when ``δ > πa/l``.

    Raises:
        NoCertificateError: If the string is undamped.
        ParameterDomainError: If an explicit ``epsilon`` is not admissible.
    """
    if epsilon is None:
        epsilon = choose_epsilon(params, kappa)
    elif params.damping_delta <= 0.0:
        raise NoCertificateError(
            'Exponential decay can only be certified for strictly positive damping δ > 0',
        )
    elif not 0.0 < epsilon <= params.damping_delta or epsilon >= params.fundamental_rate:
        raise ParameterDomainError(
            f'epsilon must satisfy 0 < ε ≤ δ and ε < πa/l, got {epsilon!r}',
        )

    note = None
    if params.damping_delta > params.fundamental_rate:
        note = REMARK_NOTE
        warn(REMARK_NOTE, category=RemarkWarning, stacklevel=2)

    coefficient = mu0(params)
    constants = DecayConstants(
        epsilon=epsilon,
        mu0=coefficient,
        mu=decay_rate(epsilon, coefficient),
        big_M=overshoot_M(epsilon, coefficient, params),
        dimensionless_damping=params.dimensionless_damping,
        note=note,
    )

    logger.debug(
        'Decay constants: ε=%.6g μ₀=%.6g μ=%.6g M=%.6g',
        constants.epsilon, constants.mu0, constants.mu, constants.big_M,
    )

    return constants


def energy_bound(time_t: float, constants: DecayConstants, e0: float) -> float:
    """Certified energy bound ``M·e^{−μt}·E(0)``."""
    return constants.big_M * exp(-constants.mu * time_t) * e0


def amplitude_bound(time_t: float, constants: DecayConstants,
                    params: 'WaveParameters', e0: float) -> float:
    """Bound on the total amplitude ``∫|u|² dx`` at time ``t``.

    Solves the quadratic inequality obtained from ``E ≥ ½(π²a²/l²)∫|u|²
    + (b/4)(π⁴/l⁴)(∫|u|²)²`` and the energy bound. The closed form
    ``(l²a²/(π²b))·(√(1 + x) − 1)``, ``x = 4b·M·E(0)·e^{−μt}/a⁴``, is
    evaluated as ``4l²·Y/(π²a²·(√(1 + x) + 1))`` with ``Y = M·E(0)·e^{−μt}``,
    which stays accurate for small ``b`` and equals the linear limit
    ``2l²·Y/(π²a²)`` at ``b = 0``.

    Raises:
        ParameterDomainError: If ``e0`` is negative.
    """
    if e0 < 0.0:
        raise ParameterDomainError(f'initial energy must not be negative, got {e0!r}')

    bound = energy_bound(time_t, constants, e0)
    x = 4.0 * params.b_coeff * bound / params.a_sq ** 2
    scale = (params.length_l / pi) ** 2 / params.a_sq

    return 4.0 * scale * bound / (sqrt(1.0 + x) + 1.0)


def log_amplitude_bound(time_t: float, constants: DecayConstants,
                        params: 'WaveParameters', e0: float) -> float:
    """Natural logarithm of `amplitude_bound`, finite for any ``μt``.

    Returns ``-inf`` for a zero initial energy.

    Raises:
        ParameterDomainError: If ``e0`` is negative.
    """
    if e0 < 0.0:
        raise ParameterDomainError(f'initial energy must not be negative, got {e0!r}')
    if e0 == 0.0:
        return -inf

    x = 4.0 * params.b_coeff * energy_bound(time_t, constants, e0) / params.a_sq ** 2
    scale = (params.length_l / pi) ** 2 / params.a_sq

    return log(4.0 * scale * constants.big_M * e0) - constants.mu * time_t - log(sqrt(1.0 + x) + 1.0)
