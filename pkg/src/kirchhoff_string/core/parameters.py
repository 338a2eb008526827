"""Physical constants and the derived wave-equation coefficients.

A string is described either by its physical constants or directly by
the quadruple ``(l, δ, a², b)`` that drives the vector Kirchhoff
equation

    u_tt + 2δ u_t = (a² + b ∫|u_x|² dx) u_xx,   0 < x < l.

Units are not enforced; all values are dimensionful reals in one
consistent unit system.
"""

from math import isfinite, pi, sqrt

from pydantic import Field, ValidationError

from kirchhoff_string.errors import ParameterDomainError
from kirchhoff_string.models import SchemaModel


class PhysicalString(SchemaModel):
    """Physical constants of a damped elastic string."""

    tension_T0: float = Field(
        gt=0, allow_inf_nan=False,
        title='Initial axial tension',
        description='Tension of the string at rest (force).',
    )
    density_rho: float = Field(
        gt=0, allow_inf_nan=False,
        title='Mass density',
        description='Mass per unit volume of the string material.',
    )
    area_A: float = Field(
        gt=0, allow_inf_nan=False,
        title='Cross-section area',
        description='Area of the string cross-section.',
    )
    youngs_E: float = Field(
        ge=0, allow_inf_nan=False,
        title="Young's modulus",
        description="Young's modulus; zero recovers the linear wave equation.",
    )
    length_l: float = Field(
        gt=0, allow_inf_nan=False,
        title='Length',
        description='Distance between the two fixed ends.',
    )
    damping_delta: float = Field(
        ge=0, allow_inf_nan=False,
        title='Damping coefficient',
        description=(
            'Viscous damping coefficient δ. Zero is admitted for '
            'conservation runs; the decay estimate needs δ > 0.'
        ),
    )


class WaveParameters(SchemaModel):
    """Coefficients ``(l, δ, a², b)`` of the vector Kirchhoff equation."""

    length_l: float = Field(
        gt=0, allow_inf_nan=False,
        title='Length',
        description='Distance between the two fixed ends.',
    )
    damping_delta: float = Field(
        default=0.0, ge=0, allow_inf_nan=False,
        title='Damping coefficient',
        description='Viscous damping coefficient δ.',
    )
    a_sq: float = Field(
        gt=0, allow_inf_nan=False,
        title='Wave speed squared',
        description='Linear wave speed squared, a² = T0/(ρA).',
    )
    b_coeff: float = Field(
        default=0.0, ge=0, allow_inf_nan=False,
        title='Kirchhoff coefficient',
        description='Nonlocal stiffening coefficient, b = E/(2ρl).',
    )

    @property
    def wave_speed(self) -> float:
        """Linear wave speed ``a``."""
        return sqrt(self.a_sq)

    @property
    def fundamental_rate(self) -> float:
        """Lowest modal angular frequency of the linear string, ``πa/l``."""
        return pi * self.wave_speed / self.length_l

    @property
    def dimensionless_damping(self) -> float:
        """Damping relative to the fundamental rate, ``δl/(πa)``."""
        return self.damping_delta / self.fundamental_rate


def derive_wave_parameters(phys: PhysicalString) -> WaveParameters:
    """Derive the wave-equation coefficients of a physical string.

    Uses ``a² = T0/(ρA)`` and ``b = E/(2ρl)``; length and damping are
    copied through.

    Args:
        phys: Physical constants.

    Returns:
        The coefficient quadruple.

    Raises:
        ParameterDomainError: If a constant is outside its domain or the
            derived coefficients are not finite.
    """
    constants = phys.model_dump()
    for name, value in constants.items():
        lower_bound_ok = value >= 0 if name in ('youngs_E', 'damping_delta') else value > 0
        if not isfinite(value) or not lower_bound_ok:
            raise ParameterDomainError(f'Physical constant {name!r} is out of domain: {value!r}')

    try:
        return WaveParameters(
            length_l=phys.length_l,
            damping_delta=phys.damping_delta,
            a_sq=phys.tension_T0 / (phys.density_rho * phys.area_A),
            b_coeff=phys.youngs_E / (2.0 * phys.density_rho * phys.length_l),
        )
    except ValidationError as base:
        raise ParameterDomainError('Derived wave parameters are out of domain') from base
