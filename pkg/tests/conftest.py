"""Tests configurations and fixtures."""

import logging
from math import pi, sqrt
from textwrap import dedent
from typing import TYPE_CHECKING, Any

import numpy as np
import pytest

from kirchhoff_string.core import ModalState, WaveParameters
from kirchhoff_string.energy import EnergySample, InequalityMargins

if TYPE_CHECKING:
    from collections.abc import Callable, Iterator
    from pathlib import Path


@pytest.fixture(autouse=True)
def reset_logging() -> 'Iterator[None]':
    """Undo logging routing installed by CLI invocations."""
    yield

    logging.captureWarnings(False)
    for name in ('kirchhoff_string', 'py.warnings'):
        logger = logging.getLogger(name)
        logger.handlers.clear()
        logger.setLevel(logging.NOTSET)
        logger.propagate = True


@pytest.fixture
def linear_params() -> WaveParameters:
    """Damped linear string with ``πa/l = 1``."""
    return WaveParameters(length_l=pi, a_sq=1.0, b_coeff=0.0, damping_delta=0.1)


@pytest.fixture
def kirchhoff_params() -> WaveParameters:
    """Damped Kirchhoff string with ``πa/l = 1``."""
    return WaveParameters(length_l=pi, a_sq=1.0, b_coeff=0.5, damping_delta=0.1)


@pytest.fixture
def undamped_params() -> WaveParameters:
    """Conservative Kirchhoff string."""
    return WaveParameters(length_l=pi, a_sq=1.0, b_coeff=0.5, damping_delta=0.0)


@pytest.fixture
def optimal_params() -> WaveParameters:
    """String damped at ``δl/(πa) = 1/√2``."""
    return WaveParameters(length_l=pi, a_sq=1.0, b_coeff=0.0, damping_delta=1.0 / sqrt(2.0))


@pytest.fixture
def single_mode_state() -> ModalState:
    """First mode displaced by one, at rest, in four retained modes."""
    coeffs = np.zeros((4, 2))
    coeffs[0, 0] = 1.0

    return ModalState(length_l=pi, coeffs=coeffs, rates=np.zeros((4, 2)))


@pytest.fixture
def make_sample() -> 'Callable[..., EnergySample]':
    """Provide a factory of synthetic energy samples.

    Every functional other than the given ones defaults to zero, and
    margins are nonnegative unless overridden.
    """
    def make(time_t: float, energy_E: float, **fields: Any) -> EnergySample:  # noqa: N803
        margins = fields.pop('margins', {})

        return EnergySample(
            time_t=time_t,
            energy_E=energy_E,
            lyapunov_G=fields.pop('lyapunov_G', 0.0),
            lyapunov_V=fields.pop('lyapunov_V', energy_E),
            kinetic_term=fields.pop('kinetic_term', 0.0),
            grad_term=fields.pop('grad_term', 0.0),
            amp_sq_term=fields.pop('amp_sq_term', 0.0),
            cross_term=fields.pop('cross_term', 0.0),
            margins=InequalityMargins(**{
                'scheefer': 0.0,
                'schwarz': 0.0,
                'g_upper': 0.0,
                'g_lower': 0.0,
                'sandwich_lo': 0.0,
                'sandwich_hi': 0.0,
                **margins,
            }),
            **fields,
        )

    return make


@pytest.fixture
def write_document(tmp_path: 'Path') -> 'Callable[[str, str], Path]':
    """Provide a factory writing YAML documents into a temporary directory."""
    def write(content: str, name: str = 'run.yaml') -> 'Path':
        path = tmp_path / name
        path.write_text(dedent(content).lstrip(), encoding='utf-8')
        return path

    return write
