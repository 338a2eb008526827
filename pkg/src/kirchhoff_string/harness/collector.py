"""Pass/fail summary of sweep cells."""

import types
from collections import deque
from typing import TYPE_CHECKING

from kirchhoff_string.io import TerminalWriter

if TYPE_CHECKING:
    from .sweep import CellStatus


class SweepCollector:
    """Simple sweep results collector.

    Every cell gets one line: ``+`` for a passing certificate, ``-`` for
    a failing one and ``!`` for a cell that raised.
    """

    MARKS = types.MappingProxyType({
        'pass': '+',
        'fail': '-',
        'error': '!',
    })

    def __init__(self) -> None:
        """Init a new collector."""
        self._lines: deque[tuple[bool, str]] = deque()
        self.counts: dict[CellStatus, int] = {'pass': 0, 'fail': 0, 'error': 0}

    def add(self, title: str, status: 'CellStatus', message: str | None = None) -> None:
        """Record the outcome of one cell.

        Args:
            title: Cell title.
            status: Cell outcome.
            message: Failure or error description, if any.
        """
        self.counts[status] += 1

        line = f'{self.MARKS[status]} {title}'
        if message:
            line += f': {message}'

        self._lines.append((status != 'pass', line))

    @property
    def total(self) -> int:
        return sum(self.counts.values())

    def get_content(self, isatty: bool = False) -> str:
        """Get content.

        Args:
            isatty: Is a TTY.

        Returns:
            One line per cell followed by the totals line.
        """
        writer = TerminalWriter(isatty)

        for error, line in self._lines:
            writer.line(line, red=error, green=not error)

        passed = self.counts['pass']
        writer.line()
        writer.line(
            f'{passed}/{self.total} passed, {self.counts["fail"]} failed, {self.counts["error"]} errors',
            bold=True,
            green=passed == self.total,
            red=passed != self.total,
        )

        return writer.content()
