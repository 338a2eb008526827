"""Tests for run documents, initial-condition presets and the document parser."""

from math import pi
from pathlib import Path
from typing import TYPE_CHECKING

import numpy as np
import pytest
from pydantic import ValidationError

from kirchhoff_string.errors import ConfigError
from kirchhoff_string.harness import ConfigParser, parse_config
from kirchhoff_string.schema import ExplicitModes, PolynomialBump, RandomModes, RunConfig, SingleMode

if TYPE_CHECKING:
    from collections.abc import Callable

MINIMAL = '''
parameters:
  wave: {length_l: 3.141592653589793, a_sq: 1.0, b_coeff: 0.5, damping_delta: 0.1}
initial:
  preset: single_mode
'''


def test_parse_defaults() -> None:
    """Fill omitted sections with their defaults."""
    config = parse_config(MINIMAL)

    assert config.wave_parameters.b_coeff == 0.5
    assert isinstance(config.initial, SingleMode)
    assert config.initial.mode == 1
    assert config.solver.kind == 'modal'
    assert config.solver.num_modes == 32
    assert config.solver.scheme == 'rk4'
    assert config.solver.t_end is None
    assert config.monitor.epsilon == 'auto'
    assert config.monitor.tolerance == 1e-6
    assert config.output.csv is None


def test_parse_physical_parameters() -> None:
    """Derive coefficients from physical constants."""
    config = parse_config('''
        parameters:
          physical:
            tension_T0: 2.0
            density_rho: 1.0
            area_A: 2.0
            youngs_E: 4.0
            length_l: 2.0
            damping_delta: 0.3
        initial:
          preset: polynomial_bump
          amplitude: 0.1
    ''')

    params = config.wave_parameters

    assert params.a_sq == pytest.approx(1.0)
    assert params.b_coeff == pytest.approx(1.0)
    assert params.damping_delta == 0.3
    assert isinstance(config.initial, PolynomialBump)


def test_parse_full_document(write_document: 'Callable[..., Path]') -> None:
    """Read every section from a document file."""
    path = write_document('''
        title: Heavy damping
        parameters:
          wave: {length_l: 1.0, a_sq: 4.0, damping_delta: 0.5}
        initial:
          preset: random_modes
          count: 3
          seed: 11
        solver:
          kind: both
          num_modes: 8
          scheme: adaptive
          t_end: 2.0
          fd: {num_interior_points: 63}
        monitor:
          epsilon: 0.25
          tolerance: 1.0e-5
          tolerances: {dissipation: 1.0e-2}
        output:
          csv: out/run.csv
          report: out/report.yaml
    ''')

    parser = ConfigParser(str(path))
    config = parser.parse(parser.read(path))

    assert config.title == 'Heavy damping'
    assert config.solver.fd_settings.num_interior_points == 63
    assert config.monitor.epsilon == 0.25
    assert config.monitor.tolerances.dissipation == 1e-2
    assert config.output.csv == Path('out/run.csv')


@pytest.mark.parametrize('content, key_path', (
    pytest.param('''
        parameters:
          wave: {length_l: 1.0, a_sq: 1.0}
          physical: {tension_T0: 1.0, density_rho: 1.0, area_A: 1.0, youngs_E: 0.0,
                     length_l: 1.0, damping_delta: 0.0}
        initial: {preset: single_mode}
    ''', 'parameters', id='both sources'),
    pytest.param('''
        parameters: {}
        initial: {preset: single_mode}
    ''', 'parameters', id='no source'),
    pytest.param('''
        parameters:
          wave: {length_l: 1.0, a_sq: 1.0, damping_delta: 0.1}
        initial: {preset: single_mode}
        solver: {num_mode: 3}
    ''', 'solver.num_mode', id='unknown key'),
    pytest.param('''
        parameters:
          wave: {length_l: -1.0, a_sq: 1.0, damping_delta: 0.1}
        initial: {preset: single_mode}
    ''', 'parameters.wave.length_l', id='negative length'),
    pytest.param('''
        parameters:
          wave: {length_l: 1.0, a_sq: 1.0, damping_delta: 0.1}
        initial: {preset: triangle}
    ''', 'initial', id='unknown preset'),
))
def test_parse_invalid_key(content: str, key_path: str) -> None:
    """Name the offending key of an invalid document."""
    with pytest.raises(ConfigError) as error:
        parse_config(content, 'run.yaml')

    assert error.value.context is not None
    assert error.value.context.get('key_path') == key_path
    assert f'{key_path!r}' in error.value.message


@pytest.mark.parametrize('content, message', (
    pytest.param('''
        parameters:
          wave: {length_l: 3.141592653589793, a_sq: 1.0, damping_delta: 0.1}
        initial: {preset: single_mode, mode: 40}
    ''', 'excite mode 40', id='bandwidth'),
    pytest.param('''
        parameters:
          wave: {length_l: 3.141592653589793, a_sq: 1.0}
        initial: {preset: single_mode}
    ''', 't_end', id='undamped without horizon'),
    pytest.param('''
        parameters:
          wave: {length_l: 3.141592653589793, a_sq: 1.0, damping_delta: 2.0}
        initial: {preset: single_mode}
        monitor: {epsilon: 1.5}
    ''', 'below πa/l', id='epsilon above rate'),
    pytest.param('''
        parameters:
          wave: {length_l: 3.141592653589793, a_sq: 1.0, damping_delta: 0.1}
        initial: {preset: single_mode}
        monitor: {epsilon: -0.1}
    ''', 'positive', id='negative epsilon'),
    pytest.param('''
        parameters:
          wave: {length_l: 3.141592653589793, a_sq: 1.0, damping_delta: 0.1}
        initial: {preset: single_mode}
        solver: {fd: {num_interior_points: 31}}
    ''', 'kind: fd', id='fd settings for modal run'),
))
def test_parse_inconsistent(content: str, message: str) -> None:
    """Reject documents breaking cross-section invariants."""
    with pytest.raises(ConfigError, match=message):
        parse_config(content)


def test_bandwidth_ignored_for_oracle() -> None:
    """Allow high modes when only the oracle runs."""
    config = parse_config('''
        parameters:
          wave: {length_l: 3.141592653589793, a_sq: 1.0, damping_delta: 0.1}
        initial: {preset: single_mode, mode: 40}
        solver: {kind: fd}
    ''')

    assert config.solver.kind == 'fd'


def test_yaml_syntax_error() -> None:
    """Locate YAML syntax errors in the document."""
    with pytest.raises(ConfigError, match='Invalid YAML') as error:
        parse_config('parameters:\n  wave: {length_l: 1.0\ninitial: [\n', 'broken.yaml')

    assert error.value.context is not None
    assert error.value.context.get('filename') == 'broken.yaml'
    assert error.value.context.get('line_num') is not None


@pytest.mark.parametrize('content', (
    pytest.param('- parameters\n- initial\n', id='sequence'),
    pytest.param('just text', id='scalar'),
    pytest.param('', id='empty'),
))
def test_document_not_mapping(content: str) -> None:
    """Require a mapping of sections."""
    with pytest.raises(ConfigError, match='mapping'):
        parse_config(content)


def test_read_missing_file(tmp_path: Path) -> None:
    """Report unreadable documents as configuration errors."""
    with pytest.raises(ConfigError, match='Can not read'):
        ConfigParser.read(tmp_path / 'missing.yaml')


def test_with_overrides() -> None:
    """Apply command-line overrides and re-validate."""
    config = parse_config(MINIMAL)

    updated = config.with_overrides(out=Path('run.csv'), seed=5, modes=4, dt=0.01, t_end=3.0, kappa=0.5)

    assert updated.output.csv == Path('run.csv')
    assert updated.solver.num_modes == 4
    assert updated.solver.dt == 0.01
    assert updated.solver.t_end == 3.0
    assert updated.monitor.kappa == 0.5
    assert updated.initial == config.initial
    assert config.solver.num_modes == 32


def test_overrides_revalidated() -> None:
    """Reject overrides that break an invariant."""
    config = parse_config(MINIMAL.replace('preset: single_mode', 'preset: single_mode\n  mode: 3'))

    with pytest.raises(ValidationError):
        config.with_overrides(modes=2)


def test_seed_override() -> None:
    """Replace the seed of random initial data."""
    config = parse_config(MINIMAL.replace('single_mode', 'random_modes'))

    updated = config.with_overrides(seed=9)

    assert isinstance(updated.initial, RandomModes)
    assert updated.initial.seed == 9


def test_single_mode_preset() -> None:
    """Excite one mode in the requested component."""
    preset = SingleMode(preset='single_mode', mode=2, component='w', amplitude=0.5, rate=-1.0)

    state = preset.modal_state(4, pi)

    assert state.coeffs[1].tolist() == [0.0, 0.5]
    assert state.rates[1].tolist() == [0.0, -1.0]
    assert np.count_nonzero(state.coeffs) == 1

    with pytest.raises(ValueError, match='retained'):
        preset.modal_state(1, pi)


def test_random_modes_deterministic() -> None:
    """Draw the same coefficients for the same seed."""
    first = RandomModes(preset='random_modes', count=3, seed=42)
    second = RandomModes(preset='random_modes', count=3, seed=42)
    other = RandomModes(preset='random_modes', count=3, seed=43)

    assert np.array_equal(first.modal_state(5, 1.0).coeffs, second.modal_state(5, 1.0).coeffs)
    assert not np.array_equal(first.modal_state(5, 1.0).coeffs, other.modal_state(5, 1.0).coeffs)
    assert not np.any(first.modal_state(5, 1.0).coeffs[3:])


def test_explicit_modes() -> None:
    """Scale listed coefficients by the amplitude."""
    preset = ExplicitModes(
        preset='modes',
        amplitude=2.0,
        displacement=[(1.0, 0.0), (0.0, 0.5)],
        velocity=[(0.0, 1.0)],
    )

    state = preset.modal_state(3, pi)

    assert preset.bandwidth == 2
    assert state.coeffs.tolist() == [[2.0, 0.0], [0.0, 1.0], [0.0, 0.0]]
    assert state.rates.tolist() == [[0.0, 2.0], [0.0, 0.0], [0.0, 0.0]]


def test_polynomial_bump_views() -> None:
    """Sample the bump with fixed ends and project it onto odd modes."""
    preset = PolynomialBump(preset='polynomial_bump', amplitude=0.5)

    grid_state = preset.grid_state(33, 2.0)
    modal_state = preset.modal_state(4, 2.0)

    assert preset.bandwidth is None
    assert grid_state.u_values[[0, -1], 0].tolist() == [0.0, 0.0]
    assert grid_state.u_values[16, 0] == pytest.approx(0.5)
    assert modal_state.coeffs[0, 0] == pytest.approx(16.0 / pi ** 3, abs=1e-9)
    assert modal_state.coeffs[1, 0] == pytest.approx(0.0, abs=1e-9)
