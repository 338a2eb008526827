"""Command-line harness of kirchhoff-string.

Every command reads a YAML run (or sweep) document. Exit codes:
``0`` every verdict passed, ``1`` a certificate failed, ``2`` the
document or its parameters are invalid, ``3`` a solver diverged.
"""

import logging
import sys
from contextlib import contextmanager
from json import dumps
from pathlib import Path
from typing import TYPE_CHECKING, Any, NamedTuple, override

from click import Context, argument, echo, group, option, pass_context, types
from pydantic import ValidationError

from kirchhoff_string.errors import (
    AlignmentError,
    BoundaryConditionError,
    ConfigError,
    KirchhoffError,
    NoCertificateError,
    NumericalError,
    ParameterDomainError,
)
from kirchhoff_string.harness import (
    ConfigParser,
    collect,
    print_constants,
    render_constants,
    render_summary,
    run_certify,
    run_simulate,
    run_sweep,
)
from kirchhoff_string.schema import RunConfig, SweepConfig, SweepOutput
from kirchhoff_string.settings import HarnessSettings

if TYPE_CHECKING:
    from collections.abc import Callable, Iterator

EXIT_OK = 0
EXIT_FAILURE = 1
EXIT_CONFIG = 2
EXIT_DIVERGENCE = 3

LOG_FORMAT = '%(levelname)s %(name)s: %(message)s'

ConfigFilepath = types.Path(
    exists=True,
    dir_okay=False,
    readable=True,
    path_type=Path,  # type: ignore[type-var]
)

OutputFilepath = types.Path(
    dir_okay=False,
    writable=True,
    path_type=Path,  # type: ignore[type-var]
)

PositiveFloat = types.FloatRange(min=0.0, min_open=True)


class HarnessState(NamedTuple):
    """Objects shared by all commands."""

    settings: HarnessSettings
    verbosity: int


class EchoHandler(logging.Handler):
    """Logging handler writing records to the current standard error."""

    @override
    def emit(self, record: logging.LogRecord) -> None:
        try:
            echo(self.format(record), err=True)
        except Exception:
            self.handleError(record)


def configure_logging(verbosity: int, settings: HarnessSettings) -> None:
    """Route package logs and warnings to standard error.

    Args:
        verbosity: Count of ``-v`` flags; one selects INFO, two DEBUG.
        settings: Harness defaults supplying the level without flags.
    """
    level: int | str = settings.log_level
    if verbosity == 1:
        level = logging.INFO
    elif verbosity > 1:
        level = logging.DEBUG

    handler = EchoHandler()
    handler.setFormatter(logging.Formatter(LOG_FORMAT))

    logging.captureWarnings(True)
    for name in ('kirchhoff_string', 'py.warnings'):
        logger = logging.getLogger(name)
        logger.handlers[:] = [handler]
        logger.setLevel(level)
        logger.propagate = False


def exit_code(error: KirchhoffError) -> int:
    """Exit code of a library error."""
    match error:
        case ConfigError() | ParameterDomainError() | NoCertificateError() | BoundaryConditionError():
            return EXIT_CONFIG
        case NumericalError() | AlignmentError():
            return EXIT_DIVERGENCE
        case _:
            return EXIT_FAILURE


@contextmanager
def handle_errors(ctx: Context) -> 'Iterator[None]':
    """Report library errors on standard error and exit with their code."""
    verbosity = ctx.obj.verbosity if ctx.obj else 0

    try:
        yield

    except ValidationError as base:
        error: KirchhoffError = ConfigError.from_pydantic_error(base)
        echo(error.repr(sys.stderr.isatty(), verbosity), err=True, nl=False)
        ctx.exit(EXIT_CONFIG)

    except KirchhoffError as error:
        echo(error.repr(sys.stderr.isatty(), verbosity), err=True, nl=False)
        ctx.exit(exit_code(error))


def load_run(path: Path) -> RunConfig:
    """Read and validate a run document.

    Raises:
        ConfigError: If the file can not be read or is invalid.
    """
    parser = ConfigParser(str(path))

    return parser.parse(parser.read(path))


def run_options[F: Callable[..., Any]](func: F) -> F:
    """Attach the run override options to a command."""
    decorators = (
        option('-o', '--out', type=OutputFilepath, help='Time-series CSV path.'),
        option('--seed', type=int, help='Seed of the random_modes preset.'),
        option('--modes', type=types.IntRange(min=1), help='Number of retained modes N.'),
        option('--dt', type=PositiveFloat, help='Modal time step.'),
        option('--t-end', 't_end', type=PositiveFloat, help='Final time.'),
        option(
            '--kappa',
            type=types.FloatRange(min=0.0, max=1.0, min_open=True, max_open=True),
            help='Fraction of πa/l capping an automatic ε.',
        ),
    )
    for decorator in reversed(decorators):
        func = decorator(func)

    return func


@group(help='Simulate the damped Kirchhoff string and certify its energy decay.')
@option('-v', '--verbose', count=True, help='Increase log verbosity (-v info, -vv debug).')
@pass_context
def cli(ctx: Context, verbose: int) -> None:
    """Root CLI group for kirchhoff-string tools."""
    with handle_errors(ctx):
        settings = HarnessSettings()

    configure_logging(verbose, settings)
    ctx.obj = HarnessState(settings, verbose)


@cli.command(
    name='simulate',
    help='Integrate a run document and write its CSV time series and summary.',
)
@argument('config', type=ConfigFilepath)
@run_options
@pass_context
def simulate_command(ctx: Context, config: Path, **overrides: Any) -> None:
    """Simulate a run; the exit code reflects the certificate when damped."""
    state: HarnessState = ctx.obj

    with handle_errors(ctx):
        cfg = load_run(config).with_overrides(**overrides)
        result = run_simulate(cfg, state.settings)

    echo(render_summary(result, sys.stdout.isatty()), nl=False)
    ctx.exit(EXIT_OK if result.passed else EXIT_FAILURE)


@cli.command(
    name='certify',
    help='Simulate a damped run and check the exponential decay certificate.',
)
@argument('config', type=ConfigFilepath)
@run_options
@pass_context
def certify_command(ctx: Context, config: Path, **overrides: Any) -> None:
    """Certify a damped run."""
    state: HarnessState = ctx.obj

    with handle_errors(ctx):
        cfg = load_run(config).with_overrides(**overrides)
        result = run_certify(cfg, state.settings)

    echo(render_summary(result, sys.stdout.isatty()), nl=False)
    ctx.exit(EXIT_OK if result.passed else EXIT_FAILURE)


@cli.command(
    name='sweep',
    help='Certify every cell of a sweep document and write the aggregate CSV.',
)
@argument('config', type=ConfigFilepath)
@option('-o', '--out', type=OutputFilepath, help='Aggregate CSV path.')
@option('-w', '--workers', type=types.IntRange(min=1), help='Worker processes.')
@pass_context
def sweep_command(ctx: Context, config: Path, out: Path | None, workers: int | None) -> None:
    """Run a parameter sweep; fails unless every cell passes."""
    state: HarnessState = ctx.obj

    with handle_errors(ctx):
        parser = ConfigParser(str(config))
        sweep = parser.parse_sweep(parser.read(config))
        if out is not None:
            sweep = sweep.model_copy(update={'output': SweepOutput(csv=out)})

        result = run_sweep(sweep, state.settings, workers)

    echo(collect(sweep, result).get_content(sys.stdout.isatty()), nl=False)
    ctx.exit(EXIT_OK if result.all_passed else EXIT_FAILURE)


@cli.command(
    name='constants',
    help='Print the decay constants of a run document without simulating.',
)
@argument('config', type=ConfigFilepath)
@option(
    '--kappa',
    type=types.FloatRange(min=0.0, max=1.0, min_open=True, max_open=True),
    help='Fraction of πa/l capping an automatic ε.',
)
@pass_context
def constants_command(ctx: Context, config: Path, kappa: float | None) -> None:
    """Evaluate ε, μ₀, μ, M and the rate cap."""
    state: HarnessState = ctx.obj

    with handle_errors(ctx):
        cfg = load_run(config)
        explicit = None if cfg.monitor.epsilon == 'auto' else cfg.monitor.epsilon
        table = print_constants(
            cfg.wave_parameters,
            kappa or cfg.monitor.kappa,
            state.settings,
            explicit,
        )

    echo(render_constants(table, sys.stdout.isatty()), nl=False)


@cli.command(
    name='schema',
    help='Print the JSON Schema of run documents to standard output.',
)
@option('--sweep', 'sweep', is_flag=True, help='Print the sweep document schema instead.')
def print_schema(sweep: bool) -> None:
    """Generate and print the JSON Schema of run or sweep documents."""
    model = SweepConfig if sweep else RunConfig

    echo(dumps(model.model_json_schema(), ensure_ascii=False, indent=2))


if __name__ == '__main__':
    cli()
