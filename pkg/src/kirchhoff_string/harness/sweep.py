"""Parameter sweeps over a run template.

Cells are certified independently, in a process pool when more than
one worker is requested. Rows are collected in grid order whatever the
pool width, so the aggregate CSV only depends on the sweep document.
"""

import logging
from concurrent.futures import ProcessPoolExecutor
from functools import partial
from typing import TYPE_CHECKING, Literal

from pydantic import Field, ValidationError

from kirchhoff_string.errors import CertificateError, ConfigError, KirchhoffError
from kirchhoff_string.models import SchemaModel
from kirchhoff_string.settings import HarnessSettings

from .collector import SweepCollector
from .csvio import records_frame, write_table
from .runner import run_certify

if TYPE_CHECKING:
    from kirchhoff_string.schema import SweepCell, SweepConfig

logger = logging.getLogger(__name__)

type CellStatus = Literal['pass', 'fail', 'error']


class SweepRow(SchemaModel):
    """Aggregate CSV row of one sweep cell.

    Parameter and result fields stay empty when the cell could not be
    configured or simulated.
    """

    index: int = Field(ge=0)
    status: CellStatus
    length_l: float | None = None
    a_sq: float | None = None
    b_coeff: float | None = None
    damping_delta: float | None = None
    amplitude: float | None = None
    seed: int | None = None
    dimensionless_damping: float | None = None
    epsilon: float | None = None
    mu0: float | None = None
    mu: float | None = None
    big_M: float | None = None  # noqa: N815
    initial_energy: float | None = None
    max_ratio: float | None = None
    verdict: str | None = None
    amplitude_verdict: str | None = None
    lyapunov_verdict: str | None = None
    note: str | None = None
    error: str | None = None


#: Columns of the aggregate sweep CSV, in order.
SWEEP_HEADER = tuple(SweepRow.model_fields)


class SweepResult(SchemaModel):
    """Rows of an executed sweep in grid order."""

    rows: tuple[SweepRow, ...]

    @property
    def passed(self) -> int:
        return sum(row.status == 'pass' for row in self.rows)

    @property
    def all_passed(self) -> bool:
        """Whether every cell passed its certificate."""
        return self.passed == len(self.rows)


def run_cell(sweep: 'SweepConfig', settings: HarnessSettings, cell: 'SweepCell') -> SweepRow:
    """Certify one cell, turning every failure into a row.

    Args:
        sweep: Sweep document.
        settings: Harness defaults.
        cell: Cell to execute.

    Returns:
        The row of the cell.
    """
    logger.info('Running %s', cell.title)

    row = SweepRow(index=cell.index, status='error', amplitude=cell.amplitude, seed=cell.seed)

    try:
        cfg = sweep.config_for(cell)
        params = cfg.wave_parameters
        row = row.model_copy(update={
            'length_l': params.length_l,
            'a_sq': params.a_sq,
            'b_coeff': params.b_coeff,
            'damping_delta': params.damping_delta,
            'dimensionless_damping': params.dimensionless_damping,
        })
        result = run_certify(cfg, settings)

    except ValidationError as base:
        error = ConfigError.from_pydantic_error(base, prefix='template')
        return row.model_copy(update={'error': error.message})

    except CertificateError as error:
        return row.model_copy(update={'status': 'fail', 'error': error.message})

    except KirchhoffError as error:
        return row.model_copy(update={'error': error.message})

    except Exception as error:
        logger.exception('Unexpected failure in %s', cell.title)
        return row.model_copy(update={'error': f'{type(error).__name__}: {error}'})

    report = result.report
    constants = result.constants

    return row.model_copy(update={
        'status': 'pass' if result.passed else 'fail',
        'epsilon': result.epsilon,
        'mu0': constants.mu0 if constants else None,
        'mu': constants.mu if constants else None,
        'big_M': constants.big_M if constants else None,
        'initial_energy': result.initial_energy,
        'max_ratio': report.max_normalized_ratio if report else None,
        'verdict': report.verdict if report else None,
        'amplitude_verdict': report.amplitude_verdict if report else None,
        'lyapunov_verdict': report.lyapunov.verdict if report and report.lyapunov else None,
        'note': constants.note if constants else None,
    })


def run_sweep(sweep: 'SweepConfig', settings: HarnessSettings | None = None,
              workers: int | None = None) -> SweepResult:
    """Certify every cell of a sweep and write the aggregate CSV.

    Args:
        sweep: Sweep document.
        settings: Harness defaults; resolved from the environment when omitted.
        workers: Pool width; the sweep's or the harness default when omitted.

    Returns:
        Rows of all cells in grid order.
    """
    settings = settings or HarnessSettings()
    workers = workers or sweep.workers or settings.workers

    cells = sweep.cells()
    task = partial(run_cell, sweep, settings)
    logger.info('Sweeping %d cells with %d workers', len(cells), workers)

    if workers > 1 and len(cells) > 1:
        with ProcessPoolExecutor(max_workers=min(workers, len(cells))) as pool:
            rows = tuple(pool.map(task, cells))
    else:
        rows = tuple(map(task, cells))

    result = SweepResult(rows=rows)
    logger.info('%d of %d cells passed', result.passed, len(rows))

    if sweep.output.csv is not None:
        frame = records_frame([row.model_dump() for row in rows], SWEEP_HEADER)
        write_table(sweep.output.csv, frame, settings.csv_digits)

    return result


def collect(sweep: 'SweepConfig', result: SweepResult) -> SweepCollector:
    """Summarize executed cells for the terminal."""
    collector = SweepCollector()

    for cell, row in zip(sweep.cells(), result.rows, strict=True):
        collector.add(cell.title, row.status, row.error)

    return collector
