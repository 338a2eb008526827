"""Execution of run and sweep documents.

Parses documents, runs the solvers, certifies decay and writes CSV
time series, YAML reports and sweep aggregates.
"""

from .collector import SweepCollector
from .csvio import CSV_HEADER, DISCREPANCY_HEADER, timeseries_frame, write_table, write_timeseries
from .parser import ConfigParser, parse_config
from .reports import render_constants, render_summary, summary_mapping, write_report
from .runner import (
    ConstantsTable,
    RunResult,
    Sampling,
    plan_sampling,
    print_constants,
    resolve_epsilon,
    run_certify,
    run_simulate,
    simulate,
)
from .sweep import SWEEP_HEADER, CellStatus, SweepResult, SweepRow, collect, run_cell, run_sweep

__all__ = (
    'CSV_HEADER',
    'DISCREPANCY_HEADER',
    'SWEEP_HEADER',
    'CellStatus',
    'ConfigParser',
    'ConstantsTable',
    'RunResult',
    'Sampling',
    'SweepCollector',
    'SweepResult',
    'SweepRow',
    'collect',
    'parse_config',
    'plan_sampling',
    'print_constants',
    'render_constants',
    'render_summary',
    'resolve_epsilon',
    'run_cell',
    'run_certify',
    'run_simulate',
    'run_sweep',
    'simulate',
    'summary_mapping',
    'timeseries_frame',
    'write_report',
    'write_table',
    'write_timeseries',
)
