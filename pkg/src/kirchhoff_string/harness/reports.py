"""Key-value summaries of runs and constant tables.

The same mapping is echoed to the terminal as highlighted YAML and
written to the report file of a run document.
"""

from typing import TYPE_CHECKING, Any

from yaml import safe_dump

from kirchhoff_string.io import SNIPPET_INDENT, TerminalWriter

from .csvio import DISCREPANCY_HEADER

if TYPE_CHECKING:
    from pathlib import Path

    from kirchhoff_string.certificate import BoundCheck

    from .runner import ConstantsTable, RunResult


def _bound_check(check: 'BoundCheck | None') -> dict[str, Any] | None:
    if check is None:
        return None

    return check.model_dump()


def summary_mapping(result: 'RunResult') -> dict[str, Any]:
    """Plain mapping summarizing a run.

    Sections: ``run`` (sampling and E(0)), ``parameters``, ``constants``
    and ``certificate`` for damped runs, ``monitors`` with the count of
    tolerance violations per margin, and ``discrepancy`` when both
    solvers ran.
    """
    params = result.params
    sampling = result.sampling

    summary: dict[str, Any] = {
        'run': {
            't_end': sampling.t_end,
            'samples': len(result.samples),
            'interval': sampling.interval,
            'epsilon': result.epsilon,
            'initial_energy': result.initial_energy,
        },
        'parameters': {
            'length_l': params.length_l,
            'damping_delta': params.damping_delta,
            'a_sq': params.a_sq,
            'b_coeff': params.b_coeff,
            'dimensionless_damping': params.dimensionless_damping,
        },
    }

    if (constants := result.constants) is not None:
        summary['constants'] = constants.model_dump(exclude_none=True)

    if (report := result.report) is not None:
        summary['certificate'] = {
            'verdict': report.verdict,
            'max_normalized_ratio': report.max_normalized_ratio,
            'worst_sample_time': report.worst_sample_time,
            'tolerance': report.tolerance,
            'amplitude': _bound_check(report.amplitude),
            'lyapunov': _bound_check(report.lyapunov),
        }

    summary['monitors'] = {'violations': dict(result.violations)}

    if (discrepancy := result.discrepancy) is not None:
        summary['discrepancy'] = dict(zip(
            DISCREPANCY_HEADER, (discrepancy.summary_max, discrepancy.summary_l2), strict=True,
        ))

    return summary


def render_summary(result: 'RunResult', isatty: bool = False) -> str:
    """Render the run summary followed by the overall verdict line."""
    writer = TerminalWriter(isatty)
    writer.mapping(summary_mapping(result))

    if result.report is None:
        writer.line('no certificate (undamped string)', yellow=True)
    elif result.passed:
        writer.line('certificate: pass', green=True, bold=True)
    else:
        writer.line('certificate: fail', red=True, bold=True)

    return writer.content()


def render_constants(table: 'ConstantsTable', isatty: bool = False) -> str:
    """Render the decay constants as a two-column table."""
    writer = TerminalWriter(isatty)

    writer.table(
        ('quantity', 'value'),
        [
            (name, f'{value:.12g}')
            for name, value in table.model_dump(exclude={'note'}).items()
        ],
    )
    if table.note:
        writer.line(table.note, yellow=True)

    return writer.content()


def write_report(path: 'Path', result: 'RunResult') -> None:
    """Write the run summary as a YAML document."""
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(
        safe_dump(summary_mapping(result), indent=SNIPPET_INDENT, sort_keys=False, allow_unicode=True),
        encoding='utf-8',
    )
