"""CSV tables of run time series and sweep aggregates.

Numbers are written with a fixed count of significant digits (17 by
default, enough for a lossless round trip of doubles); missing values
such as the dissipation residual at window ends or certificate bounds
of undamped runs are written as empty cells.
"""

import logging
from typing import TYPE_CHECKING, Any

import numpy as np
import pandas as pd

from kirchhoff_string.certificate import amplitude_bound, energy_bound
from kirchhoff_string.errors import AlignmentError

if TYPE_CHECKING:
    from collections.abc import Mapping, Sequence
    from pathlib import Path

    from .runner import RunResult

logger = logging.getLogger(__name__)

#: Columns of every time-series CSV, in order.
CSV_HEADER = (
    't',
    'E',
    'G',
    'V',
    'kinetic',
    'grad_sq',
    'amp_sq',
    'dE_residual',
    'scheefer_margin',
    'sandwich_lo',
    'sandwich_hi',
    'bound_ME_exp',
    'amp_bound',
)

#: Columns appended when both solvers ran.
DISCREPANCY_HEADER = ('u_max_diff', 'u_l2_diff')


def _optional(value: float | None) -> float:
    return np.nan if value is None else value


def timeseries_frame(result: 'RunResult') -> pd.DataFrame:
    """Build the time-series table of a run, one row per sample.

    Certificate bounds are evaluated at the elapsed time ``t − t0`` and
    left empty when the run carries no decay constants.

    Raises:
        AlignmentError: If the discrepancy report does not cover every sample.
    """
    samples = result.samples
    t0 = samples[0].time_t
    e0 = result.initial_energy
    constants = result.constants

    columns: dict[str, list[float]] = {name: [] for name in CSV_HEADER}
    for sample in samples:
        elapsed = sample.time_t - t0
        columns['t'].append(sample.time_t)
        columns['E'].append(sample.energy_E)
        columns['G'].append(sample.lyapunov_G)
        columns['V'].append(sample.lyapunov_V)
        columns['kinetic'].append(sample.kinetic_term)
        columns['grad_sq'].append(sample.grad_term)
        columns['amp_sq'].append(sample.amp_sq_term)
        columns['dE_residual'].append(_optional(sample.dissipation_residual))
        columns['scheefer_margin'].append(sample.margins.scheefer)
        columns['sandwich_lo'].append(sample.margins.sandwich_lo)
        columns['sandwich_hi'].append(sample.margins.sandwich_hi)
        if constants is None:
            columns['bound_ME_exp'].append(np.nan)
            columns['amp_bound'].append(np.nan)
        else:
            columns['bound_ME_exp'].append(energy_bound(elapsed, constants, e0))
            columns['amp_bound'].append(amplitude_bound(elapsed, constants, result.params, e0))

    frame = pd.DataFrame(columns, columns=list(CSV_HEADER))

    if (discrepancy := result.discrepancy) is not None:
        if len(discrepancy.times) != len(samples):
            raise AlignmentError(
                f'Discrepancy report covers {len(discrepancy.times)} of {len(samples)} samples',
            )
        for name, column in zip(DISCREPANCY_HEADER, (discrepancy.max_diff, discrepancy.l2_diff), strict=True):
            frame[name] = column

    return frame


def write_table(path: 'Path', frame: pd.DataFrame, digits: int = 17) -> None:
    """Write a table as CSV without index, creating parent directories."""
    path.parent.mkdir(parents=True, exist_ok=True)
    frame.to_csv(
        path,
        index=False,
        float_format=f'%.{digits}g',
        na_rep='',
        lineterminator='\n',
    )
    logger.info('Wrote %d rows to %s', len(frame), path)


def write_timeseries(path: 'Path', result: 'RunResult', digits: int = 17) -> None:
    """Write the time-series CSV of a run.

    Raises:
        AlignmentError: If the discrepancy report does not cover every sample.
    """
    write_table(path, timeseries_frame(result), digits)


def records_frame(records: 'Sequence[Mapping[str, Any]]', columns: 'Sequence[str]') -> pd.DataFrame:
    """Build a table from row mappings with a fixed column order."""
    return pd.DataFrame(list(records), columns=list(columns))
