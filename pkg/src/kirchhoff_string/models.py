"""Base Pydantic models for domain values and settings.

This module defines the foundational model classes used by every
state, parameter, report and configuration type of the package.
It enforces immutability and strict schema validation so that values
can be shared freely between concurrent trajectory runs.

It also provides the annotated numpy array type used for modal
coefficients and grid samples: arrays of shape ``(n, 2)`` whose last
axis holds the ``(v, w)`` components of the transverse displacement.
"""

from typing import Annotated, Any

import numpy as np
from numpy.typing import NDArray
from pydantic import BaseModel, BeforeValidator, ConfigDict, Field, PlainSerializer
from pydantic_settings import BaseSettings, SettingsConfigDict

#: Number of vector components of the transverse displacement ``(v, w)``.
COMPONENTS = 2

type FloatArray = NDArray[np.float64]


def _as_vector_array(value: Any) -> FloatArray:  # noqa: ANN401
    """Coerce input into a read-only ``(n, 2)`` float array.

    Args:
        value: Array-like input (nested lists, tuples or numpy arrays).

    Returns:
        A float64 array that can not be modified in place.

    Raises:
        ValueError: If the shape is not ``(n, 2)`` or entries are not finite.
    """
    array = np.array(value, dtype=np.float64)

    if array.ndim != 2 or array.shape[1] != COMPONENTS:  # noqa: PLR2004
        raise ValueError(f'expected an array of shape (n, 2), got {array.shape}')

    if not np.all(np.isfinite(array)):
        raise ValueError('array entries must be finite')

    array.setflags(write=False)

    return array


#: Immutable ``(n, 2)`` array of vector samples; serialized as nested lists.
VectorArray = Annotated[
    FloatArray,
    BeforeValidator(_as_vector_array),
    PlainSerializer(lambda array: array.tolist(), return_type=list[list[float]]),
]


class SchemaModel(BaseModel):
    """Base immutable model for all domain values.

    Design principles enforced by this model:
        - Immutability: values can not be modified after creation.
          States and reports are therefore safe to copy and share.
        - Strict schema validation: unknown or extra fields are rejected
          to avoid silent errors caused by typos in run documents.

    All domain and configuration models must inherit from this class.
    """

    model_config = ConfigDict(
        arbitrary_types_allowed=True,
        frozen=True,
        extra='forbid',
    )


class DescribedMixin(SchemaModel):
    """Mixin providing run self-documentation.

    The fields defined in this model do not affect numerical results
    and are used purely for reports and sweep summaries.
    """

    title: str | None = Field(
        default=None,
        title='Title',
        description='Short human-readable title of the run.',
    )

    description: str | None = Field(
        default=None,
        title='Description',
        description='Detailed human-readable description of the run.',
    )


class SettingsModel(BaseSettings):
    """Base immutable model for harness runtime settings.

    Settings are resolved from environment variables. Unknown variables
    are ignored so that the surrounding environment can contain
    unrelated values without breaking resolution.
    """

    model_config = SettingsConfigDict(
        frozen=True,
        extra='ignore',
    )
