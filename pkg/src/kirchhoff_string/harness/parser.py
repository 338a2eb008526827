"""YAML run and sweep document parser.

Documents are loaded with the safe YAML loader and validated against
the run or sweep schema. YAML syntax errors and schema violations are
both reported as `ConfigError` carrying the document location or the
dotted key path of the offending field.
"""

from typing import TYPE_CHECKING

from pydantic import ValidationError
from yaml import safe_load
from yaml.error import MarkedYAMLError, YAMLError

from kirchhoff_string.errors import ConfigError, KirchhoffError
from kirchhoff_string.schema import RunConfig, SweepConfig

if TYPE_CHECKING:
    from io import TextIOBase
    from pathlib import Path

    from pydantic import BaseModel


class ConfigParser:
    """Parser of run and sweep documents."""

    def __init__(self, filename: str | None = None) -> None:
        """Initialize the parser.

        Args:
            filename: Name of the parsed document, used in error locations.
        """
        self.filename = filename

    @staticmethod
    def read(path: 'Path') -> str:
        """Read a document file.

        Raises:
            ConfigError: If the file can not be read.
        """
        try:
            content = path.read_text(encoding='utf-8')
        except OSError as base:
            raise ConfigError(f'Can not read document: {base}') from base

        return content

    def load(self, content: 'TextIOBase | str') -> dict:
        """Load a YAML document into a mapping.

        Args:
            content: YAML content as a string or file-like object.

        Returns:
            The top-level mapping.

        Raises:
            ConfigError: If YAML parsing fails or the document is not a mapping.
        """
        try:
            document = safe_load(content)

        except MarkedYAMLError as base:
            raise ConfigError.from_yaml_error(base, self.filename) from base

        except YAMLError as base:
            raise ConfigError(f'Invalid YAML: {base}') from base

        if not isinstance(document, dict):
            raise ConfigError('Document must be a mapping of sections')

        return document

    def _validate[T: BaseModel](self, model: type[T], document: dict) -> T:
        try:
            return model.model_validate(document)

        except ValidationError as base:
            raise ConfigError.from_pydantic_error(
                base,
                data=document,
                filename=self.filename,
            ) from base

        except KirchhoffError:
            raise

        except Exception as base:
            raise ConfigError('Unexpected error') from base

    def parse(self, content: 'TextIOBase | str') -> RunConfig:
        """Parse and validate a run document.

        Args:
            content: YAML content as a string or file-like object.

        Returns:
            The validated run configuration with defaults filled in.

        Raises:
            ConfigError: If YAML parsing or validation fails.
        """
        return self._validate(RunConfig, self.load(content))

    def parse_sweep(self, content: 'TextIOBase | str') -> SweepConfig:
        """Parse and validate a sweep document.

        Raises:
            ConfigError: If YAML parsing or validation fails.
        """
        return self._validate(SweepConfig, self.load(content))


def parse_config(text: str, filename: str | None = None) -> RunConfig:
    """Parse a run document from text.

    Raises:
        ConfigError: If YAML parsing or validation fails.
    """
    return ConfigParser(filename).parse(text)
