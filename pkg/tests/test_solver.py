"""Tests for the modal Galerkin solver."""

from math import cos, exp, pi, sin, sqrt

import numpy as np
import pytest
from pydantic import ValidationError

from kirchhoff_string.core import ModalState, WaveParameters
from kirchhoff_string.energy import energy
from kirchhoff_string.errors import DivergenceError
from kirchhoff_string.modal import (
    IntegratorConfig,
    default_time_step,
    integrate,
    modal_frequencies,
    modal_rhs,
)


def damped_oscillator(time_t: float, delta: float) -> tuple[float, float]:
    """Mode amplitude and rate of ``b̈ + 2δḃ + b = 0``, ``b(0) = 1``, ``ḃ(0) = 0``."""
    omega = sqrt(1.0 - delta ** 2)
    decay = exp(-delta * time_t)

    amplitude = decay * (cos(omega * time_t) + delta / omega * sin(omega * time_t))
    rate = -decay * sin(omega * time_t) / omega

    return amplitude, rate


@pytest.mark.parametrize('scheme, dt', (
    pytest.param('rk4', 1e-3, id='rk4'),
    pytest.param('adaptive', 0.05, id='adaptive'),
))
def test_linear_closed_form(scheme: str, dt: float,
                            linear_params: WaveParameters,
                            single_mode_state: ModalState) -> None:
    """Match the damped oscillator of a single linear mode at t = 5."""
    trajectory = integrate(single_mode_state, linear_params, IntegratorConfig(
        scheme=scheme,  # type: ignore[arg-type]
        dt=dt,
        t_end=5.0,
        sample_stride=1000 if scheme == 'rk4' else 1,
    ))

    amplitude, rate = damped_oscillator(5.0, linear_params.damping_delta)
    final = trajectory[-1]

    assert final.time_t == pytest.approx(5.0)
    assert final.coeffs[0, 0] == pytest.approx(amplitude, abs=1e-6)
    assert final.rates[0, 0] == pytest.approx(rate, abs=1e-6)
    assert energy(final, linear_params) == pytest.approx(pi / 4 * (amplitude ** 2 + rate ** 2), abs=1e-6)


def test_sample_instants(kirchhoff_params: WaveParameters, single_mode_state: ModalState) -> None:
    """Sample uniformly every stride and end exactly at the final time."""
    trajectory = integrate(single_mode_state, kirchhoff_params, IntegratorConfig(
        dt=0.013,
        t_end=1.0,
        sample_stride=7,
    ))

    times = np.array([state.time_t for state in trajectory])

    assert times[0] == 0.0
    assert times[-1] == pytest.approx(1.0, abs=1e-12)
    assert np.diff(times) == pytest.approx(np.full(len(times) - 1, times[1]))
    assert times[1] <= 7 * 0.013


def test_planar_motion_stays_planar(kirchhoff_params: WaveParameters) -> None:
    """Keep the second component identically zero for planar data."""
    coeffs = np.zeros((6, 2))
    coeffs[:, 0] = [1.0, -0.5, 0.25, 0.0, 0.1, 0.05]
    state = ModalState(length_l=pi, coeffs=coeffs, rates=np.roll(coeffs, 1, axis=0))

    trajectory = integrate(state, kirchhoff_params, IntegratorConfig(t_end=3.0, sample_stride=10))

    for sample in trajectory:
        assert not np.any(sample.coeffs[:, 1])
        assert not np.any(sample.rates[:, 1])


def test_damped_energy_decreases(kirchhoff_params: WaveParameters) -> None:
    """Let the energy of a damped string decrease between samples."""
    rng = np.random.default_rng(7)
    coeffs = rng.standard_normal((5, 2)) / np.arange(1, 6)[:, np.newaxis] ** 2
    state = ModalState(length_l=pi, coeffs=coeffs, rates=np.zeros((5, 2)))

    trajectory = integrate(state, kirchhoff_params, IntegratorConfig(
        scheme='adaptive', dt=0.05, t_end=10.0,
    ))
    energies = np.array([energy(sample, kirchhoff_params) for sample in trajectory])

    assert np.all(np.diff(energies) <= 1e-9 * energies[0])
    assert energies[-1] < energies[0]


@pytest.mark.slow
def test_undamped_energy_conserved(undamped_params: WaveParameters) -> None:
    """Conserve the energy of an undamped string with the adaptive scheme."""
    coeffs = np.zeros((8, 2))
    coeffs[0] = (1.0, 0.5)
    coeffs[2] = (-0.3, 0.2)
    state = ModalState(length_l=pi, coeffs=coeffs, rates=np.zeros((8, 2)))

    trajectory = integrate(state, undamped_params, IntegratorConfig(
        scheme='adaptive', dt=0.1, t_end=20.0, rtol=1e-10, atol=1e-12,
    ))

    e0 = energy(state, undamped_params)
    drift = max(abs(energy(sample, undamped_params) - e0) for sample in trajectory)

    assert drift / max(e0, 1.0) <= 1e-8


def test_modal_rhs(kirchhoff_params: WaveParameters, single_mode_state: ModalState) -> None:
    """Couple the modes through the Kirchhoff scalar."""
    derivative = modal_rhs(single_mode_state, kirchhoff_params)

    # S = π²/(2l) = π/2 for the first mode at unit amplitude
    stiffness = 1.0 + 0.5 * pi / 2

    assert not np.any(derivative.rates)
    assert derivative.accelerations[0, 0] == pytest.approx(-stiffness)
    assert not np.any(derivative.accelerations[1:])


def test_rest_state_is_equilibrium(kirchhoff_params: WaveParameters) -> None:
    """Keep the rest state at rest."""
    state = ModalState.zeros(4, pi)

    trajectory = integrate(state, kirchhoff_params, IntegratorConfig(t_end=1.0))

    assert not np.any(trajectory[-1].coeffs)


def test_default_time_step(kirchhoff_params: WaveParameters, single_mode_state: ModalState) -> None:
    """Resolve the fastest retained mode at the initial stiffness."""
    frequencies = modal_frequencies(single_mode_state, kirchhoff_params)

    assert frequencies[0] == pytest.approx(sqrt(1.0 + 0.5 * pi / 2))
    assert default_time_step(single_mode_state, kirchhoff_params) == pytest.approx(0.1 / frequencies[-1])


def test_time_step_beyond_horizon() -> None:
    """Reject a step longer than the integration horizon."""
    with pytest.raises(ValidationError, match='final time'):
        IntegratorConfig(dt=2.0, t_end=1.0)


def test_length_mismatch(kirchhoff_params: WaveParameters) -> None:
    """Reject states of a string of another length."""
    with pytest.raises(ValueError, match='different length'):
        integrate(ModalState.zeros(2, 1.0), kirchhoff_params, IntegratorConfig(t_end=1.0))


@pytest.mark.filterwarnings('ignore::RuntimeWarning')
def test_divergence_detected() -> None:
    """Report a state that blows up under an unstable fixed step."""
    params = WaveParameters(length_l=pi, a_sq=1.0, b_coeff=1.0, damping_delta=0.0)
    coeffs = np.zeros((2, 2))
    coeffs[0, 0] = 1e3

    with pytest.raises(DivergenceError) as error:
        integrate(ModalState(length_l=pi, coeffs=coeffs, rates=np.zeros((2, 2))), params, IntegratorConfig(
            dt=1.0, t_end=200.0,
        ))

    assert error.value.context is not None
    assert error.value.context.get('time_t') is not None
