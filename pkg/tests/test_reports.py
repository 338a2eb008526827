"""Test for reports aggregation and terminal rendering."""

import pytest

from kirchhoff_string.harness import ConstantsTable, SweepCollector, render_constants
from kirchhoff_string.io import TerminalWriter


@pytest.fixture(autouse=True)
def plain_terminal(monkeypatch: pytest.MonkeyPatch) -> None:
    """Disable forced terminal markup."""
    monkeypatch.delenv('PY_COLORS', raising=False)
    monkeypatch.delenv('FORCE_COLOR', raising=False)


def test_sweep_collector() -> None:
    """Collect cell outcomes."""
    collector = SweepCollector()

    collector.add('cell 0 (damping_delta=0.1)', 'pass')
    collector.add('cell 1 (damping_delta=0)', 'fail', 'no damping')
    collector.add('cell 2 (damping_delta=-1)', 'error')

    expected = (
        '+ cell 0 (damping_delta=0.1)\n'
        '- cell 1 (damping_delta=0): no damping\n'
        '! cell 2 (damping_delta=-1)\n'
        '\n'
        '1/3 passed, 1 failed, 1 errors\n'
    )

    assert collector.total == 3
    assert collector.counts == {'pass': 1, 'fail': 1, 'error': 1}
    assert expected == collector.get_content(isatty=False)


def test_sweep_collector_markup(monkeypatch: pytest.MonkeyPatch) -> None:
    """Color passing cells green and the rest red."""
    monkeypatch.setenv('PY_COLORS', '1')
    collector = SweepCollector()

    collector.add('cell 0', 'pass')

    assert collector.get_content(isatty=True) == (
        '\x1b[32m+ cell 0\n\x1b[0m'
        '\n'
        '\x1b[1m\x1b[32m1/1 passed, 0 failed, 0 errors\n\x1b[0m'
    )


@pytest.mark.parametrize('env, isatty, marked', (
    pytest.param({}, False, False, id='not a tty'),
    pytest.param({'TERM': 'xterm'}, True, True, id='tty'),
    pytest.param({'TERM': 'dumb'}, True, False, id='dumb terminal'),
    pytest.param({'NO_COLOR': '1'}, True, False, id='no color'),
    pytest.param({'PY_COLORS': '0', 'FORCE_COLOR': '1'}, True, False, id='colors disabled'),
    pytest.param({'FORCE_COLOR': '1'}, False, True, id='forced'),
))
def test_terminal_markup(env: dict[str, str], isatty: bool, marked: bool,
                         monkeypatch: pytest.MonkeyPatch) -> None:
    """Honor color environment variables before TTY detection."""
    monkeypatch.delenv('NO_COLOR', raising=False)
    monkeypatch.setenv('TERM', 'xterm')
    for name, value in env.items():
        monkeypatch.setenv(name, value)

    writer = TerminalWriter(isatty)

    assert writer.has_markup is marked
    assert (writer.markup('text', red=True) != 'text') is marked


def test_terminal_table() -> None:
    """Align table columns to their widest cell."""
    writer = TerminalWriter()

    writer.table(('quantity', 'value'), [('mu', '0.5'), ('big_M', '9.24')])

    assert writer.content() == (
        'quantity  value\n'
        'mu        0.5\n'
        'big_M     9.24\n'
    )


def test_terminal_mapping() -> None:
    """Write mappings as YAML in insertion order."""
    writer = TerminalWriter()

    writer.mapping({'run': {'t_end': 2.0, 'samples': 3}, 'verdict': 'pass'})

    assert writer.content() == (
        'run:\n'
        '  t_end: 2.0\n'
        '  samples: 3\n'
        'verdict: pass\n'
    )


def test_render_constants() -> None:
    """Render every constant with twelve significant digits and the note."""
    table = ConstantsTable(
        fundamental_rate=1.0,
        dimensionless_damping=1.5,
        mu0=4.0,
        epsilon=0.99,
        mu=0.4,
        big_M=494.0,
        mu_max=0.42857142857142855,
        mu_max_cap=0.5224077499274833,
        note='heavy damping',
    )

    lines = render_constants(table).splitlines()

    assert lines[0].split() == ['quantity', 'value']
    assert lines[1].split() == ['fundamental_rate', '1']
    assert lines[7].split() == ['mu_max', '0.428571428571']
    assert lines[-1] == 'heavy damping'
    assert len(lines) == 10
