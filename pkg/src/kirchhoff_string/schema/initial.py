"""Initial-condition presets of run documents.

Every preset produces both views of the initial data: a modal state for
the spectral solver and a grid state for the finite-difference oracle.
Presets defined by sine coefficients are reconstructed on the grid
exactly; the polynomial bump is projected by quadrature and sampled
pointwise.
"""

from typing import TYPE_CHECKING, Annotated, Literal

import numpy as np
from pydantic import Field

from kirchhoff_string.core import GridSpec, GridState, ModalState, grid_state_from_samples, sample_function_on_grid
from kirchhoff_string.modal import project_initial_data, reconstruct
from kirchhoff_string.models import COMPONENTS, SchemaModel

if TYPE_CHECKING:
    from kirchhoff_string.core import Profile
    from kirchhoff_string.models import FloatArray

#: Quadrature points used to project non-band-limited profiles.
PROJECTION_POINTS = 4097

type Component = Literal['v', 'w']

COMPONENT_INDEX = {'v': 0, 'w': 1}


class BasePreset(SchemaModel):
    """Common fields and conversions of initial-condition presets."""

    amplitude: float = Field(
        default=1.0, allow_inf_nan=False,
        title='Amplitude',
        description='Overall scale of the initial displacement.',
    )

    @property
    def bandwidth(self) -> int | None:
        """Highest excited mode, or None when the data are not band-limited."""
        return None

    def coefficients(self) -> tuple['FloatArray', 'FloatArray']:  # pragma: no cover
        """Sine coefficients ``(b_n(0), ḃ_n(0))`` of the first `bandwidth` modes."""
        raise NotImplementedError

    def modal_state(self, num_modes: int, length_l: float) -> ModalState:
        """Initial modal state with ``num_modes`` modes.

        Raises:
            ValueError: If the preset excites modes beyond ``num_modes``.
        """
        bandwidth = self.bandwidth or 0
        if bandwidth > num_modes:
            raise ValueError(f'preset excites mode {bandwidth} but only {num_modes} modes are retained')

        coeffs, rates = self.coefficients()

        padded = np.zeros((2, num_modes, COMPONENTS))
        padded[0, :bandwidth] = coeffs
        padded[1, :bandwidth] = rates

        return ModalState(length_l=length_l, coeffs=padded[0], rates=padded[1])

    def grid_state(self, num_points: int, length_l: float) -> GridState:
        """Initial grid state on ``num_points`` points including both ends."""
        return reconstruct(self.modal_state(self.bandwidth or 1, length_l), num_points)


class SingleMode(BasePreset):
    """One excited sine mode in one transverse component."""

    preset: Literal['single_mode']

    mode: int = Field(default=1, ge=1, title='Mode number n')
    component: Component = Field(default='v', title='Excited component')
    rate: float = Field(
        default=0.0, allow_inf_nan=False,
        title='Velocity amplitude',
        description='Initial rate ḃ_n of the excited mode.',
    )

    @property
    def bandwidth(self) -> int:
        return self.mode

    def coefficients(self) -> tuple['FloatArray', 'FloatArray']:
        coeffs = np.zeros((self.mode, COMPONENTS))
        rates = np.zeros((self.mode, COMPONENTS))

        coeffs[-1, COMPONENT_INDEX[self.component]] = self.amplitude
        rates[-1, COMPONENT_INDEX[self.component]] = self.rate

        return coeffs, rates


class PolynomialBump(BasePreset):
    """Parabolic bump ``A·4x(l − x)/l²`` released from rest."""

    preset: Literal['polynomial_bump']

    component: Component = Field(default='v', title='Displaced component')

    def _profile(self, length_l: float) -> 'Profile':
        index = COMPONENT_INDEX[self.component]

        def profile(x: 'FloatArray') -> 'FloatArray':
            values = np.zeros((x.shape[0], COMPONENTS))
            values[:, index] = self.amplitude * 4.0 * x * (length_l - x) / length_l ** 2
            return values

        return profile

    def modal_state(self, num_modes: int, length_l: float) -> ModalState:
        return project_initial_data(
            self._profile(length_l),
            None,
            length_l=length_l,
            num_modes=num_modes,
            resolution=max(PROJECTION_POINTS, 8 * num_modes + 1),
        )

    def grid_state(self, num_points: int, length_l: float) -> GridState:
        grid = GridSpec(length_l=length_l, num_points=num_points)
        u_values = sample_function_on_grid(self._profile(length_l), grid)

        return grid_state_from_samples(u_values, np.zeros_like(u_values), length_l=length_l)


class RandomModes(BasePreset):
    """Seeded random vector coefficients on the first ``count`` modes.

    Displacements and rates are standard normal draws scaled by
    ``amplitude·n⁻²``, so the initial energy stays finite.
    """

    preset: Literal['random_modes']

    count: int = Field(default=4, ge=1, title='Number of excited modes')
    seed: int = Field(default=0, ge=0, title='Random seed')

    @property
    def bandwidth(self) -> int:
        return self.count

    def coefficients(self) -> tuple['FloatArray', 'FloatArray']:
        rng = np.random.default_rng(self.seed)
        scale = self.amplitude / np.arange(1, self.count + 1, dtype=np.float64) ** 2

        coeffs = rng.standard_normal((self.count, COMPONENTS)) * scale[:, np.newaxis]
        rates = rng.standard_normal((self.count, COMPONENTS)) * scale[:, np.newaxis]

        return coeffs, rates


class ExplicitModes(BasePreset):
    """Sine coefficients listed in the run document."""

    preset: Literal['modes']

    displacement: list[tuple[float, float]] = Field(
        min_length=1,
        title='Displacement coefficients',
        description='Pairs (b_n^v, b_n^w) for n = 1, 2, …',
    )
    velocity: list[tuple[float, float]] | None = Field(
        default=None,
        title='Velocity coefficients',
        description='Pairs (ḃ_n^v, ḃ_n^w); zero when omitted.',
    )

    @property
    def bandwidth(self) -> int:
        return max(len(self.displacement), len(self.velocity or ()))

    def coefficients(self) -> tuple['FloatArray', 'FloatArray']:
        coeffs = np.zeros((self.bandwidth, COMPONENTS))
        rates = np.zeros((self.bandwidth, COMPONENTS))

        coeffs[:len(self.displacement)] = self.amplitude * np.array(self.displacement, dtype=np.float64)
        if self.velocity:
            rates[:len(self.velocity)] = self.amplitude * np.array(self.velocity, dtype=np.float64)

        return coeffs, rates


#: Initial condition of a run, selected by its ``preset`` key.
InitialCondition = Annotated[
    SingleMode | PolynomialBump | RandomModes | ExplicitModes,
    Field(discriminator='preset'),
]
