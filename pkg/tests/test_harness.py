"""Tests for run execution, CSV time series and run reports."""

from math import cos, exp, pi, sin, sqrt
from typing import TYPE_CHECKING, Any

import pandas as pd
import pytest
from yaml import safe_load

from kirchhoff_string.certificate import CAP_RATIO, derive_constants
from kirchhoff_string.core import WaveParameters
from kirchhoff_string.errors import NoCertificateError
from kirchhoff_string.harness import (
    CSV_HEADER,
    DISCREPANCY_HEADER,
    plan_sampling,
    print_constants,
    run_certify,
    run_simulate,
    simulate,
    summary_mapping,
)
from kirchhoff_string.harness.runner import SAMPLES_PER_DECAY, UNDAMPED_NOTE
from kirchhoff_string.schema import RunConfig
from kirchhoff_string.settings import HarnessSettings

if TYPE_CHECKING:
    from pathlib import Path


def run_config(*, damping: float = 0.1, b_coeff: float = 0.0, **sections: Any) -> RunConfig:
    """Single-mode run document over a string with ``πa/l = 1``."""
    return RunConfig.model_validate({
        'parameters': {'wave': {'length_l': pi, 'a_sq': 1.0, 'b_coeff': b_coeff, 'damping_delta': damping}},
        'initial': {'preset': 'single_mode'},
        'solver': {'num_modes': 4, 'dt': 1e-3, 't_end': 5.0, 'sample_stride': 10},
        **sections,
    })


@pytest.mark.parametrize('kwargs, intervals, modal_stride, fd_stride', (
    pytest.param({'modal_dt': 1e-3}, 5000, 1, None, id='every step'),
    pytest.param({'modal_dt': 1e-3, 'stride': 10}, 500, 10, None, id='stride'),
    pytest.param({'modal_dt': 1e-3, 'fd_dt': 3e-3, 'stride': 10}, 500, 10, 4, id='both solvers'),
    pytest.param({'fd_dt': 0.02, 'stride': 5}, 50, None, 5, id='oracle only'),
))
def test_plan_sampling(kwargs: dict[str, Any], intervals: int,
                       modal_stride: int | None, fd_stride: int | None) -> None:
    """Fit whole solver steps into common sample intervals."""
    sampling = plan_sampling(5.0, None, **kwargs)

    assert sampling.intervals == intervals
    assert sampling.modal_stride == modal_stride
    assert sampling.fd_stride == fd_stride
    if fd_stride:
        assert sampling.fd_dt * fd_stride == pytest.approx(sampling.interval)  # type: ignore[operator]


def test_plan_sampling_per_decay_time(linear_params: WaveParameters) -> None:
    """Sample at least as often as the decay time requires."""
    constants = derive_constants(linear_params)

    sampling = plan_sampling(10.0, constants, modal_dt=0.5)

    assert sampling.interval <= 1.0 / (SAMPLES_PER_DECAY * constants.mu)
    assert sampling.modal_dt == pytest.approx(sampling.interval)

    with pytest.raises(ValueError, match='solver step'):
        plan_sampling(1.0, constants)


def test_linear_energy_closed_form(tmp_path: 'Path') -> None:
    """Write energies of a single linear mode matching the damped oscillator."""
    config = run_config(output={'csv': tmp_path / 'run.csv'})

    result = run_simulate(config, HarnessSettings())
    table = pd.read_csv(tmp_path / 'run.csv')

    omega = sqrt(1.0 - 0.1 ** 2)
    for time_t, energy in zip(table['t'], table['E'], strict=True):
        decay = exp(-0.1 * time_t)
        amplitude = decay * (cos(omega * time_t) + 0.1 / omega * sin(omega * time_t))
        rate = -decay * sin(omega * time_t) / omega
        assert energy == pytest.approx(pi / 4 * (amplitude ** 2 + rate ** 2), abs=1e-6)

    assert len(table) == len(result.samples) == 501
    assert table['t'].iloc[-1] == pytest.approx(5.0)
    assert result.passed


def test_timeseries_columns(tmp_path: 'Path') -> None:
    """Write the fixed header and leave derivative cells empty at window ends."""
    path = tmp_path / 'nested' / 'run.csv'

    run_simulate(run_config(output={'csv': path}), HarnessSettings())

    header, first, *_ = path.read_text(encoding='utf-8').splitlines()
    table = pd.read_csv(path)

    assert header == ','.join(CSV_HEADER)
    assert first.split(',')[CSV_HEADER.index('dE_residual')] == ''
    assert table['dE_residual'].isna().tolist() == [True] + [False] * (len(table) - 2) + [True]
    assert table['dE_residual'].max() < 1e-3
    assert (table['E'] <= table['bound_ME_exp']).all()
    assert (table['amp_sq'] <= table['amp_bound']).all()
    big_m = derive_constants(run_config().wave_parameters).big_M

    assert table['bound_ME_exp'].iloc[0] == pytest.approx(big_m * pi / 4)


def test_undamped_run(tmp_path: 'Path') -> None:
    """Simulate without certificate and leave bound cells empty."""
    config = run_config(damping=0.0, b_coeff=0.5, output={'csv': tmp_path / 'run.csv'})

    result = run_simulate(config, HarnessSettings())
    table = pd.read_csv(tmp_path / 'run.csv')

    assert result.report is None
    assert result.constants is None
    assert result.passed
    assert result.epsilon == pytest.approx(0.99)
    assert table['bound_ME_exp'].isna().all()
    assert table['amp_bound'].isna().all()
    assert table['E'].iloc[-1] == pytest.approx(table['E'].iloc[0], rel=1e-8)


def test_certify_requires_damping() -> None:
    """Refuse to certify an undamped string."""
    with pytest.raises(NoCertificateError, match='δ > 0'):
        run_certify(run_config(damping=0.0), HarnessSettings())


def test_both_solvers(tmp_path: 'Path') -> None:
    """Append the modal/FD discrepancy when both solvers run."""
    config = run_config(
        b_coeff=0.5,
        solver={'kind': 'both', 'num_modes': 4, 'dt': 2e-3, 't_end': 1.0, 'sample_stride': 50},
        output={'csv': tmp_path / 'run.csv', 'report': tmp_path / 'report.yaml'},
    )

    result = run_certify(config, HarnessSettings())
    table = pd.read_csv(tmp_path / 'run.csv')
    report = safe_load((tmp_path / 'report.yaml').read_text(encoding='utf-8'))

    assert tuple(table.columns) == CSV_HEADER + DISCREPANCY_HEADER
    assert result.discrepancy is not None
    assert table['u_max_diff'].iloc[0] == pytest.approx(0.0, abs=1e-12)
    assert table['u_max_diff'].max() < 1e-3
    assert report['certificate']['verdict'] == 'pass'
    assert report['discrepancy']['u_max_diff'] == pytest.approx(result.discrepancy.summary_max)


def test_oracle_only_run() -> None:
    """Monitor the finite-difference trajectory when the modal solver is off."""
    config = run_config(solver={'kind': 'fd', 't_end': 1.0, 'fd': {'num_interior_points': 31}})

    result = simulate(config, HarnessSettings())

    assert result.discrepancy is None
    assert result.sampling.modal_dt is None
    assert result.samples[-1].time_t == pytest.approx(1.0)
    assert result.passed


def test_summary_mapping(linear_params: WaveParameters) -> None:
    """Summarize parameters, constants, certificate and monitors."""
    config = run_config(solver={'num_modes': 4, 'dt': 1e-3, 't_end': 2.0, 'sample_stride': 5})

    result = simulate(config, HarnessSettings())

    summary = summary_mapping(result)

    assert list(summary) == ['run', 'parameters', 'constants', 'certificate', 'monitors']
    assert summary['parameters']['damping_delta'] == linear_params.damping_delta
    assert summary['constants']['epsilon'] == pytest.approx(0.1)
    assert 'note' not in summary['constants']
    assert summary['certificate']['amplitude']['verdict'] == 'pass'
    assert summary['monitors'] == {'violations': {}}
    assert summary['run']['samples'] == len(result.samples)


def test_reproducible_output(tmp_path: 'Path') -> None:
    """Write byte-identical time series for repeated runs."""
    contents = []
    for name in ('first.csv', 'second.csv'):
        config = run_config(
            b_coeff=0.5,
            initial={'preset': 'random_modes', 'count': 3, 'seed': 7},
            output={'csv': tmp_path / name},
        )
        run_simulate(config, HarnessSettings())
        contents.append((tmp_path / name).read_bytes())

    assert contents[0] == contents[1]


def test_print_constants(optimal_params: WaveParameters) -> None:
    """Evaluate the optimal-damping constants without simulating."""
    table = print_constants(optimal_params, settings=HarnessSettings())

    assert table.fundamental_rate == pytest.approx(1.0)
    assert table.big_M == pytest.approx(9.242640687, abs=1e-9)
    assert table.mu == pytest.approx(CAP_RATIO)
    assert table.mu_max == pytest.approx(table.mu_max_cap)
    assert table.note is None


def test_print_constants_heavy_damping() -> None:
    """Carry the regime note for damping above πa/l."""
    params = WaveParameters(length_l=pi, a_sq=1.0, damping_delta=3.0)

    with pytest.warns(UserWarning):
        table = print_constants(params, kappa=0.5, settings=HarnessSettings())

    assert table.epsilon == pytest.approx(0.5)
    assert table.note is not None


def test_print_constants_undamped(undamped_params: WaveParameters) -> None:
    """Report a zero rate and the overshoot of the monitor's ε for δ = 0."""
    table = print_constants(undamped_params, kappa=0.5, settings=HarnessSettings())

    assert table.mu == 0.0
    assert table.mu_max == 0.0
    assert table.mu0 == pytest.approx(1.0)
    assert table.epsilon == pytest.approx(0.5)
    assert table.big_M == pytest.approx(3.0)
    assert table.note == UNDAMPED_NOTE
