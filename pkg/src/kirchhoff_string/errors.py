"""Core exception hierarchy.

This module defines the base error and warning types used across the
library to report parameter-domain violations, malformed run documents,
numerical breakdowns of the solvers and certificate failures in a
structured way. The command-line front door maps each family onto a
dedicated exit code.
"""

from os import linesep, path
from typing import TYPE_CHECKING, Any, TypedDict

from yaml import safe_dump

from kirchhoff_string.io import SNIPPET_INDENT, TerminalWriter

if TYPE_CHECKING:
    from typing import Self

if TYPE_CHECKING:
    from pydantic_core import ValidationError
    from yaml.error import MarkedYAMLError


FORMAT_FILENAME = '<unicode string>'
FORMAT_INDENT = 4


class ErrorContext(TypedDict, total=False):
    """Container describing contextual information for error formatting.

    All fields are optional; the formatter adapts output based on
    provided values.
    """

    #: Name of the run document where the error occurred.
    filename: str | None

    #: Line number in the document (zero-based).
    line_num: int | None
    #: Column number in the document (zero-based).
    column_num: int | None

    #: Dotted path of the offending configuration key.
    key_path: str | None

    #: Simulation time at which a numerical failure was detected.
    time_t: float | None

    #: Underlying exception that triggered formatting.
    error: Exception | None

    #: Offending element rendered as a YAML snippet.
    element: Any


class ErrorFormatter:
    """Utility class for formatting errors for terminal display.

    Produces human-readable messages with an optional location header
    and a YAML snippet of the offending element.
    """

    @classmethod
    def with_longrepr(cls, message: str,
                      context: ErrorContext | None = None,
                      isatty: bool = False,
                      verbosity: int = 0) -> str:
        """Extend a message string with formatted long representation.

        Args:
            message: Base human-readable error message.
            context: Optional error context with location and data.
            isatty: Is a TTY.
            verbosity: Verbosity level; snippets are shown from 1 up.

        Returns:
            Fully formatted error message suitable for display.
        """
        writer = TerminalWriter(isatty)

        if context:
            writer.write(cls.get_location_string(context), bold=True, red=True)
            writer.line(f' {cls.__name__}')

            if verbosity > 0 and (snippet := cls.get_snippet(context)):
                writer.source(snippet)

        writer.lines(message)

        return writer.content()

    @classmethod
    def get_location_string(cls, context: ErrorContext) -> str:
        """Format document and simulation location information.

        Args:
            context: Error context containing location metadata.

        Returns:
            A formatted location string including filename, line,
            column, key path and simulation time when available.
        """
        filename = context.get('filename') or FORMAT_FILENAME

        message = path.relpath(filename).replace('\\', '/') if filename != FORMAT_FILENAME else filename

        if (line_num := context.get('line_num')) is not None:
            message += f':{line_num + 1}'
            if (column_num := context.get('column_num')) is not None:
                message += f':{column_num + 1}'

        if key_path := context.get('key_path'):
            message += f' [{key_path}]'

        if (time_t := context.get('time_t')) is not None:
            message += f' @ t={time_t:.6g}'

        message += ':'

        return message

    @classmethod
    def get_snippet(cls, context: ErrorContext) -> str:
        """Return an indented YAML snippet of the offending element.

        Args:
            context: Error context containing the element.

        Returns:
            A formatted YAML snippet or an empty string if no data is available.
        """
        element = context.get('element')
        if element is None:
            return ''

        data = safe_dump(element, indent=SNIPPET_INDENT, sort_keys=False)

        return linesep.join(
            f'{" " * FORMAT_INDENT}{line}'
            for line in data.splitlines()
            if line.strip()
        )


class RemarkWarning(UserWarning):
    """Warning emitted when damping falls outside the optimization regime.

    The decay constants stay computable for ``δ > πa/l``; the warning
    records that a decay rate of ``πa/l`` is what the estimate supports.
    """


class KirchhoffError(Exception, ErrorFormatter):
    """Base exception for all kirchhoff-string errors.

    All custom exceptions raised by the library inherit from this
    class to allow unified error handling by callers.
    """

    def __init__(self, message: str, *,
                 context: ErrorContext | None = None) -> None:
        """Initialize an error.

        Args:
            message: Human-readable error description.
            context: Error context containing optional location values.
        """
        self.message = message
        self.context = context

        super().__init__(message)

    def repr(self, isatty: bool = False, verbosity: int = 0) -> str:
        """Return formatted error representation.

        Args:
            isatty: Whether output supports ANSI markup.
            verbosity: Verbosity level controlling snippet inclusion.

        Returns:
            A formatted terminal-ready representation of the error.
        """
        return self.with_longrepr(
            self.message,
            self.context,
            isatty,
            verbosity,
        )


class ParameterDomainError(KirchhoffError, ValueError):
    """Error raised for physical or model constants outside their domain."""


class ConfigError(KirchhoffError):
    """Error raised for malformed or invalid run documents."""

    @classmethod
    def from_yaml_error(cls, error: 'MarkedYAMLError',
                        filename: str | None = None) -> 'Self':
        """Create a configuration error from a YAML parsing failure.

        Args:
            error: Exception raised by the YAML parser.
            filename: Name of the parsed document, if known.

        Returns:
            ConfigError carrying the problem position.
        """
        mark = error.problem_mark or error.context_mark

        error_context = ErrorContext(
            filename=filename,
            line_num=mark.line if mark else None,
            column_num=mark.column if mark else None,
            error=error,
        )

        message = 'Invalid YAML'
        if error.problem:
            message += f': {error.problem}'

        return cls(message, context=error_context)

    @classmethod
    def from_pydantic_error(cls, error: 'ValidationError', *,
                            data: Any = None,  # noqa: ANN401
                            filename: str | None = None,
                            prefix: str | None = None) -> 'Self':
        """Create a configuration error from a Pydantic validation failure.

        The message names the first failing key as a dotted path, e.g.
        ``parameters.damping_delta``.

        Args:
            error: ValidationError raised by Pydantic.
            data: Document data being validated.
            filename: Name of the parsed document, if known.
            prefix: Key path of the validated section inside the document.

        Returns:
            ConfigError representing the validation failure.
        """
        details = error.errors()
        first = details[0] if details else {}

        location = [str(item) for item in first.get('loc', ())]
        if prefix:
            location.insert(0, prefix)
        key_path = '.'.join(location) or None

        error_context = ErrorContext(
            filename=filename,
            key_path=key_path,
            error=error,
            element=data if isinstance(data, dict) else None,
        )

        reason = first.get('msg', 'validation failed')
        message = f'Invalid configuration: {reason}'
        if key_path:
            message = f'Invalid configuration at {key_path!r}: {reason}'

        return cls(message, context=error_context)


class BoundaryConditionError(KirchhoffError, ValueError):
    """Error raised when initial data do not vanish at the fixed ends."""


class NumericalError(KirchhoffError):
    """Base error for numerical breakdowns of a solver."""

    @classmethod
    def at_time(cls, message: str, time_t: float) -> 'Self':
        """Create a numerical error located at a simulation time.

        Args:
            message: Human-readable error description.
            time_t: Simulation time of the failure.

        Returns:
            Error instance with time context.
        """
        return cls(message, context=ErrorContext(time_t=time_t))


class DivergenceError(NumericalError):
    """Error raised when a state becomes non-finite."""


class StiffnessError(NumericalError):
    """Error raised when the adaptive step size underflows."""


class StabilityError(NumericalError):
    """Error raised when an explicit step violates the CFL constraint."""


class AlignmentError(KirchhoffError, ValueError):
    """Error raised for mismatched or non-uniform sample times."""


class CertificateError(KirchhoffError):
    """Base error for decay certification failures."""


class NoCertificateError(CertificateError):
    """Error raised when the decay estimate can not be certified at all.

    The estimate requires strictly positive damping.
    """


class InconsistentTrajectoryError(CertificateError):
    """Error raised when a trajectory gains energy from a zero start."""
