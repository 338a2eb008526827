"""State representations of the transverse vector field ``u = (v, w)``.

Two interchangeable views are used throughout the package:

- `ModalState` keeps sine-series coefficients ``b_n`` and their rates
  ``ḃ_n``; the field ``u(x) = Σ b_n sin(nπx/l)`` satisfies the fixed-end
  conditions by construction.
- `GridState` keeps collocated samples of ``u`` and ``u_t`` on a uniform
  grid including both ends, where ``u`` is exactly zero.

The magnitude ``|u|`` is the Euclidean norm of ``(v, w)``; every
integral of a squared magnitude sums both components.
"""

from math import sqrt
from typing import Self

import numpy as np
from pydantic import Field, model_validator

from kirchhoff_string.models import SchemaModel, VectorArray


class VectorSample(SchemaModel):
    """A single transverse vector ``(v, w)``."""

    v_component: float = Field(default=0.0, allow_inf_nan=False)
    w_component: float = Field(default=0.0, allow_inf_nan=False)

    @property
    def norm_sq(self) -> float:
        """Squared Euclidean magnitude ``v² + w²``."""
        return self.v_component ** 2 + self.w_component ** 2

    @property
    def norm(self) -> float:
        """Euclidean magnitude ``|u|``."""
        return sqrt(self.norm_sq)

    def as_array(self) -> np.ndarray:
        """Return the pair as a length-2 float array."""
        return np.array([self.v_component, self.w_component], dtype=np.float64)


class ModalState(SchemaModel):
    """Time-stamped sine-basis coefficients of the vector field.

    Row ``n - 1`` of `coeffs` holds ``b_n = (b_n^v, b_n^w)`` and the same
    row of `rates` holds ``ḃ_n``.
    """

    time_t: float = Field(default=0.0, allow_inf_nan=False)
    length_l: float = Field(gt=0, allow_inf_nan=False)
    coeffs: VectorArray
    rates: VectorArray

    @model_validator(mode='after')
    def check_shapes(self) -> Self:
        """Check that coefficients and rates describe the same modes.

        Raises:
            ValueError: If shapes differ or no mode is retained.
        """
        if self.coeffs.shape != self.rates.shape:
            raise ValueError('coefficients and rates must have the same shape')
        if self.coeffs.shape[0] < 1:
            raise ValueError('at least one mode is required')

        return self

    @property
    def num_modes(self) -> int:
        """Number of retained sine modes ``N``."""
        return int(self.coeffs.shape[0])

    def mode(self, n: int) -> tuple[VectorSample, VectorSample]:
        """Return ``(b_n, ḃ_n)`` for the one-based mode number ``n``.

        Raises:
            IndexError: If ``n`` is not a retained mode.
        """
        if not 1 <= n <= self.num_modes:
            raise IndexError(f'mode {n} is outside 1..{self.num_modes}')

        coeff, rate = self.coeffs[n - 1], self.rates[n - 1]

        return (
            VectorSample(v_component=coeff[0], w_component=coeff[1]),
            VectorSample(v_component=rate[0], w_component=rate[1]),
        )

    @classmethod
    def zeros(cls, num_modes: int, length_l: float, time_t: float = 0.0) -> Self:
        """Create the rest state with ``num_modes`` modes."""
        zeros = np.zeros((num_modes, 2))

        return cls(time_t=time_t, length_l=length_l, coeffs=zeros, rates=zeros)


class GridState(SchemaModel):
    """Collocated samples of ``u`` and ``u_t`` on a uniform grid.

    The grid includes both ends, ``x_j = j·l/(num_points - 1)``.
    """

    time_t: float = Field(default=0.0, allow_inf_nan=False)
    length_l: float = Field(gt=0, allow_inf_nan=False)
    u_values: VectorArray
    ut_values: VectorArray

    @model_validator(mode='after')
    def check_boundary(self) -> Self:
        """Check grid shape and the fixed-end conditions.

        Raises:
            ValueError: If shapes differ, fewer than two points are
                given, or ``u`` does not vanish exactly at both ends.
        """
        if self.u_values.shape != self.ut_values.shape:
            raise ValueError('displacement and velocity samples must have the same shape')
        if self.u_values.shape[0] < 2:  # noqa: PLR2004
            raise ValueError('at least two grid points are required')
        if np.any(self.u_values[0] != 0.0) or np.any(self.u_values[-1] != 0.0):
            raise ValueError('displacement must vanish at both fixed ends')

        return self

    @property
    def num_points(self) -> int:
        """Number of grid points including both ends."""
        return int(self.u_values.shape[0])

    @property
    def x_spacing(self) -> float:
        """Uniform grid spacing ``dx``."""
        return self.length_l / (self.num_points - 1)

    @property
    def nodes(self) -> np.ndarray:
        """Grid abscissae from 0 to ``l``."""
        return np.linspace(0.0, self.length_l, self.num_points)
