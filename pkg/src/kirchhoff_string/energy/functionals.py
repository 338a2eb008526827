"""Energy and Lyapunov functionals of a single state.

For a state of the vector field:

    E = ½∫(|u_t|² + a²|u_x|²) dx + (b/4)(∫|u_x|² dx)²
    G = ∫(u·u_t + δ|u|²) dx
    V = E + εG

On a `ModalState` every integral is evaluated by Parseval's identity;
on a `GridState` by trapezoid quadrature, with ``∫|u_x|²`` taken as
the forward-difference sum the finite-difference oracle conserves.
"""

from math import pi
from typing import TYPE_CHECKING, NamedTuple

from pydantic import Field

from kirchhoff_string.core import (
    GridSpec,
    GridState,
    ModalState,
    difference_norm_sq,
    integrate_dot,
    integrate_norm_sq,
    sample_function_on_grid,
)
from kirchhoff_string.models import SchemaModel
from kirchhoff_string.modal import cross_product, displacement_norm_sq, gradient_norm_sq, velocity_norm_sq

if TYPE_CHECKING:
    from kirchhoff_string.core import Profile, WaveParameters
    from kirchhoff_string.models import FloatArray

#: Default number of quadrature points for initial energies of profiles.
INITIAL_ENERGY_POINTS = 4097

type State = ModalState | GridState


class StateIntegrals(NamedTuple):
    """The four spatial integrals every functional is built from."""

    #: ``∫|u_t|² dx``
    kinetic: float
    #: ``∫|u_x|² dx``, the Kirchhoff scalar
    grad_sq: float
    #: ``∫|u|² dx``
    amp_sq: float
    #: ``∫u·u_t dx``
    cross: float


class EnergyParts(NamedTuple):
    """Additive parts of the energy."""

    kinetic: float
    elastic: float
    stretching: float

    @property
    def total(self) -> float:
        return self.kinetic + self.elastic + self.stretching


def state_integrals(state: State) -> StateIntegrals:
    """Evaluate the spatial integrals of a modal or grid state.

    Raises:
        TypeError: If the state type is unsupported.
    """
    match state:
        case ModalState():
            return StateIntegrals(
                kinetic=velocity_norm_sq(state),
                grad_sq=gradient_norm_sq(state),
                amp_sq=displacement_norm_sq(state),
                cross=cross_product(state),
            )
        case GridState():
            dx = state.x_spacing
            return StateIntegrals(
                kinetic=integrate_norm_sq(state.ut_values, dx),
                grad_sq=difference_norm_sq(state.u_values, dx),
                amp_sq=integrate_norm_sq(state.u_values, dx),
                cross=integrate_dot(state.u_values, state.ut_values, dx),
            )

    raise TypeError(f'{state!r} has unsupported type')


def energy_from_integrals(integrals: StateIntegrals, params: 'WaveParameters') -> EnergyParts:
    """Split the energy into kinetic, elastic and stretching parts."""
    return EnergyParts(
        kinetic=0.5 * integrals.kinetic,
        elastic=0.5 * params.a_sq * integrals.grad_sq,
        stretching=0.25 * params.b_coeff * integrals.grad_sq ** 2,
    )


def energy_parts(state: State, params: 'WaveParameters') -> EnergyParts:
    """Kinetic ``½∫|u_t|²``, elastic ``½a²∫|u_x|²`` and stretching ``(b/4)(∫|u_x|²)²`` energy."""
    return energy_from_integrals(state_integrals(state), params)


def energy(state: State, params: 'WaveParameters') -> float:
    """Total energy ``E`` of a state."""
    return energy_parts(state, params).total


def initial_energy(u0: 'Profile | FloatArray', u1: 'Profile | FloatArray | None',
                   params: 'WaveParameters', num_points: int = INITIAL_ENERGY_POINTS) -> float:
    """Energy ``E(0)`` of initial displacement and velocity data.

    Profiles are sampled on ``num_points`` points; arrays are taken as
    samples on their own uniform grid including both ends.

    Args:
        u0: Initial displacement.
        u1: Initial velocity, zero when omitted.
        params: Wave-equation coefficients.
        num_points: Quadrature points for profiles.

    Returns:
        The initial energy.
    """
    def samples(data: 'Profile | FloatArray') -> tuple['FloatArray', float]:
        if callable(data):
            grid = GridSpec(length_l=params.length_l, num_points=num_points)
            return sample_function_on_grid(data, grid), grid.x_spacing
        return data, params.length_l / (len(data) - 1)

    u0_values, dx0 = samples(u0)
    grad_sq = difference_norm_sq(u0_values, dx0)

    kinetic = 0.0
    if u1 is not None:
        u1_values, dx1 = samples(u1)
        kinetic = integrate_norm_sq(u1_values, dx1)

    return energy_from_integrals(StateIntegrals(kinetic, grad_sq, 0.0, 0.0), params).total


def lyapunov_from_integrals(integrals: StateIntegrals, params: 'WaveParameters') -> float:
    """Cross functional ``G`` from precomputed integrals."""
    return integrals.cross + params.damping_delta * integrals.amp_sq


def lyapunov_G(state: State, params: 'WaveParameters') -> float:  # noqa: N802
    """Cross functional ``G = ∫(u·u_t + δ|u|²) dx``."""
    return lyapunov_from_integrals(state_integrals(state), params)


def lyapunov_V(state: State, params: 'WaveParameters', epsilon: float) -> float:  # noqa: N802
    """Lyapunov functional ``V = E + εG``.

    Raises:
        ValueError: If ``epsilon`` is negative.
    """
    if epsilon < 0:
        raise ValueError('epsilon must not be negative')

    integrals = state_integrals(state)

    return (
        energy_from_integrals(integrals, params).total
        + epsilon * lyapunov_from_integrals(integrals, params)
    )


def mu0_coefficient(params: 'WaveParameters') -> float:
    """Coefficient ``μ₀ = (l/πa)(1 + 2δl/πa)`` bounding ``|G| ≤ μ₀E``."""
    ratio = 1.0 / params.fundamental_rate

    return ratio * (1.0 + 2.0 * params.damping_delta * ratio)


class InequalityMargins(SchemaModel):
    """Slacks of the inequality chain behind the decay estimate.

    Every slack is nonnegative when its inequality holds.
    """

    scheefer: float = Field(description='(l²/π²)∫|u_x|² − ∫|u|²')
    schwarz: float = Field(description='(l/πa)E − |∫u·u_t|')
    g_upper: float = Field(description='μ₀E − |G|')
    g_lower: float = Field(description='G + (l/πa)E')
    sandwich_lo: float = Field(description='V − (1 − εl/πa)E')
    sandwich_hi: float = Field(description='(1 + εμ₀)E − V')

    def relative(self, scale: float) -> 'InequalityMargins':
        """Margins divided by a positive scale (typically ``max(E, floor)``)."""
        return InequalityMargins(**{
            name: value / scale
            for name, value in self.model_dump().items()
        })

    def violations(self, tolerance: float) -> tuple[str, ...]:
        """Names of margins below ``−tolerance``."""
        return tuple(
            name
            for name, value in self.model_dump().items()
            if value < -tolerance
        )


def margins_from_integrals(integrals: StateIntegrals, params: 'WaveParameters',
                           epsilon: float) -> InequalityMargins:
    """Inequality slacks from precomputed integrals."""
    total = energy_from_integrals(integrals, params).total
    g_value = lyapunov_from_integrals(integrals, params)
    v_value = total + epsilon * g_value

    ratio = 1.0 / params.fundamental_rate
    mu0 = mu0_coefficient(params)

    return InequalityMargins(
        scheefer=(params.length_l / pi) ** 2 * integrals.grad_sq - integrals.amp_sq,
        schwarz=ratio * total - abs(integrals.cross),
        g_upper=mu0 * total - abs(g_value),
        g_lower=g_value + ratio * total,
        sandwich_lo=v_value - (1.0 - epsilon * ratio) * total,
        sandwich_hi=(1.0 + epsilon * mu0) * total - v_value,
    )


def inequality_margins(state: State, params: 'WaveParameters', epsilon: float) -> InequalityMargins:
    """Evaluate the Scheefer, Schwarz, ``G``-bound and sandwich slacks of a state.

    Args:
        state: Modal or grid state.
        params: Wave-equation coefficients.
        epsilon: Lyapunov mixing parameter ``ε``.

    Returns:
        Named slacks, nonnegative when satisfied.
    """
    return margins_from_integrals(state_integrals(state), params, epsilon)


def quasi_steady_gap(integrals: StateIntegrals, params: 'WaveParameters') -> float:
    """Gap between ``E`` and its amplitude-only lower bound.

    The bound ``½(π²a²/l²)∫|u|² + (b/4)(π⁴/l⁴)(∫|u|²)²`` follows from
    Scheefer's inequality after dropping the kinetic term; the gap is
    nonnegative and shrinks as velocities die down.
    """
    scale = (pi / params.length_l) ** 2
    lower = 0.5 * params.a_sq * scale * integrals.amp_sq + 0.25 * params.b_coeff * (scale * integrals.amp_sq) ** 2

    return energy_from_integrals(integrals, params).total - lower
