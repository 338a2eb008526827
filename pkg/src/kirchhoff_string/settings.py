"""Harness defaults resolved from the environment.

Values that describe how runs are executed rather than what is
simulated live here instead of in run documents. Every field can be
set through a ``KIRCHHOFF_``-prefixed environment variable, e.g.
``KIRCHHOFF_WORKERS=4``.
"""

from typing import Literal

from pydantic import Field
from pydantic_settings import SettingsConfigDict

from kirchhoff_string.models import SettingsModel

type LogLevel = Literal['DEBUG', 'INFO', 'WARNING', 'ERROR']


class HarnessSettings(SettingsModel):
    """Execution defaults of the command-line harness."""

    model_config = SettingsConfigDict(env_prefix='KIRCHHOFF_')

    workers: int = Field(
        default=1, ge=1,
        title='Sweep workers',
        description='Number of worker processes used by sweeps without an explicit width.',
    )
    kappa: float = Field(
        default=0.99, gt=0, lt=1,
        title='Default κ',
        description='Fraction of πa/l capping ε when a run document does not set one.',
    )
    csv_digits: int = Field(
        default=17, ge=1, le=17,
        title='CSV significant digits',
    )
    log_level: LogLevel = Field(
        default='WARNING',
        title='Log level',
        description='Level used when no -v flag is given.',
    )
