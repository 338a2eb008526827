"""Run and sweep documents.

Immutable pydantic models describing what to simulate: the string,
its initial data, the solvers, the certificate policy and the output
files. Sweeps expand a grid of overrides over a run template.
"""

from .initial import (
    BasePreset,
    ExplicitModes,
    InitialCondition,
    PolynomialBump,
    RandomModes,
    SingleMode,
)
from .run import (
    FdSection,
    MonitorSection,
    OutputSection,
    ParametersSection,
    RunConfig,
    SolverKind,
    SolverSection,
)
from .sweep import SweepCell, SweepConfig, SweepGrid, SweepOutput

__all__ = (
    'BasePreset',
    'ExplicitModes',
    'FdSection',
    'InitialCondition',
    'MonitorSection',
    'OutputSection',
    'ParametersSection',
    'PolynomialBump',
    'RandomModes',
    'RunConfig',
    'SingleMode',
    'SolverKind',
    'SolverSection',
    'SweepCell',
    'SweepConfig',
    'SweepGrid',
    'SweepOutput',
)
