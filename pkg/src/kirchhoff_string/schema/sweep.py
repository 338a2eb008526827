"""Sweep documents: a grid of parameter overrides over a run template."""

from itertools import product
from pathlib import Path
from typing import Any, Self

from pydantic import Field, model_validator

from kirchhoff_string.models import DescribedMixin, SchemaModel

from .initial import RandomModes
from .run import RunConfig


class SweepGrid(SchemaModel):
    """Axes of the sweep grid; every given axis must be non-empty."""

    damping_delta: list[float] | None = Field(default=None, min_length=1, title='Damping values δ')
    b_coeff: list[float] | None = Field(default=None, min_length=1, title='Kirchhoff coefficients b')
    amplitude: list[float] | None = Field(default=None, min_length=1, title='Initial amplitudes')
    seed: list[int] | None = Field(default=None, min_length=1, title='Random seeds')

    def axes(self) -> dict[str, list[Any]]:
        """Given axes in document order."""
        return {
            name: values
            for name, values in self.model_dump().items()
            if values is not None
        }


class SweepCell(SchemaModel):
    """Coordinates of one grid cell; axes that are not swept stay None."""

    index: int = Field(ge=0)
    damping_delta: float | None = None
    b_coeff: float | None = None
    amplitude: float | None = None
    seed: int | None = None

    @property
    def title(self) -> str:
        coordinates = ', '.join(
            f'{name}={value:g}'
            for name, value in self.model_dump(exclude={'index'}).items()
            if value is not None
        )
        return f'cell {self.index}' + (f' ({coordinates})' if coordinates else '')


class SweepOutput(SchemaModel):
    """Output file of a sweep."""

    csv: Path | None = Field(default=None, title='Aggregate CSV path')


class SweepConfig(DescribedMixin, SchemaModel):
    """A validated sweep document."""

    grid: SweepGrid = Field(default_factory=SweepGrid)
    template: RunConfig
    workers: int | None = Field(
        default=None, ge=1,
        title='Parallelism width',
        description='Worker processes; harness default when omitted.',
    )
    output: SweepOutput = Field(default_factory=SweepOutput)

    @model_validator(mode='after')
    def check_axes(self) -> Self:
        """Check that every axis can be applied to the template.

        Raises:
            ValueError: If an axis does not fit the template.
        """
        if self.grid.b_coeff is not None and self.template.parameters.wave is None:
            raise ValueError('a `b_coeff` axis requires `wave` parameters in the template')
        if self.grid.seed is not None and not isinstance(self.template.initial, RandomModes):
            raise ValueError('a `seed` axis requires the `random_modes` preset in the template')

        return self

    def cells(self) -> list[SweepCell]:
        """Expand the grid into cells, last axis varying fastest."""
        axes = self.grid.axes()
        names = list(axes)

        return [
            SweepCell(index=index, **dict(zip(names, values, strict=True)))
            for index, values in enumerate(product(*axes.values()))
        ]

    def config_for(self, cell: SweepCell) -> RunConfig:
        """Run document of one cell, without output files.

        Raises:
            pydantic.ValidationError: If the cell breaks a run invariant.
        """
        coordinates = cell.model_dump(exclude={'index'}, exclude_none=True)

        data = self.template.model_dump(exclude_unset=True)
        data['output'] = {}

        parameters = data['parameters']
        source = parameters['wave'] if 'wave' in parameters else parameters['physical']

        if 'damping_delta' in coordinates:
            source['damping_delta'] = coordinates['damping_delta']
        if 'b_coeff' in coordinates:
            source['b_coeff'] = coordinates['b_coeff']
        if 'amplitude' in coordinates:
            data['initial']['amplitude'] = coordinates['amplitude']
        if 'seed' in coordinates:
            data['initial']['seed'] = coordinates['seed']

        return RunConfig.model_validate(data)
