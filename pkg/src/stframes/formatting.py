"""Report line formatting and rendering.

Reports are lists of key=value lines with a style hint, rendered either as
plain text (the machine-parsable standard output) or with ANSI colors for the
human-readable part printed under -v.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import TYPE_CHECKING

from .numeric import SignedRoot, render_rational

if TYPE_CHECKING:
    from .analysis import VerificationReport
    from .blocks import BlockStructure, EigenvalueSpec
    from .tetris import CursorTrace, Entry, SynthesisMatrix

COLORS: dict[str, int] = {
    'red': 31,
    'green': 32,
    'yellow': 33,
    'cyan': 36,
    'default': 39,
    'dark gray': 90,
}
ESC = '\033'


def with_color(color: str, m: str) -> str:
    return f'{ESC}[{COLORS[color]}m{m}{ESC}[{COLORS["default"]}m'


def inactive(m: str) -> str:
    return with_color('dark gray', m)


def danger(m: str) -> str:
    return with_color('red', m)


def good(m: str) -> str:
    return with_color('green', m)


def emphasis(m: str) -> str:
    return with_color('cyan', m)


@dataclass
class ReportLine:
    """One key=value line of a report."""

    key: str
    value: str
    style: str  # 'normal', 'good', 'danger'


def flag(ok: bool) -> str:
    return 'true' if ok else 'false'


def _check(key: str, ok: bool) -> ReportLine:
    return ReportLine(key, flag(ok), 'good' if ok else 'danger')


def _rationals(values) -> str:
    return ','.join(render_rational(v) if isinstance(v, Fraction) else repr(v) for v in values)


def _integers(values) -> str:
    return ','.join(str(v) for v in values)


def generate_lines(mu: int, sparsity: int, bound: int) -> list[ReportLine]:
    return [
        ReportLine('mu', str(mu), 'normal'),
        ReportLine('sparsity', str(sparsity), 'normal'),
        ReportLine('bound', str(bound), 'normal'),
        _check('optimal', sparsity == bound),
    ]


def mu_lines(structure: BlockStructure) -> list[ReportLine]:
    return [
        ReportLine('mu', str(structure.mu), 'normal'),
        ReportLine('ordering', _rationals(structure.ordering), 'normal'),
        ReportLine('rows', _integers(structure.row_bounds), 'normal'),
        ReportLine('columns', _integers(structure.column_bounds), 'normal'),
    ]


def bound_lines(spec: EigenvalueSpec, mu: int, bound: int) -> list[ReportLine]:
    return [
        ReportLine('n', str(spec.dim), 'normal'),
        ReportLine('N', str(spec.count), 'normal'),
        ReportLine('mu', str(mu), 'normal'),
        ReportLine('bound', str(bound), 'normal'),
    ]


def verification_lines(report: VerificationReport) -> list[ReportLine]:
    return [
        _check('unit_norm_ok', report.unit_norm_ok),
        _check('rows_orthogonal_ok', report.rows_orthogonal_ok),
        ReportLine('row_sums', _rationals(report.row_sums), 'normal'),
        _check('spectrum_matches', report.spectrum_matches),
        ReportLine('sparsity', str(report.sparsity), 'normal'),
        ReportLine('sparsity_bound', str(report.sparsity_bound), 'normal'),
        _check('optimal', report.optimal),
        ReportLine('block_order', str(report.block_order), 'normal' if report.block_order <= report.mu else 'danger'),
        ReportLine('mu', str(report.mu), 'normal'),
        _check('passed', report.passed),
    ]


def render_line_plain(line: ReportLine) -> str:
    return f'{line.key}={line.value}'


def render_line_ansi(line: ReportLine) -> str:
    match line.style:
        case 'good':
            value = good(line.value)
        case 'danger':
            value = danger(line.value)
        case _:
            value = line.value
    return f'{emphasis(line.key)}={value}'


def entry_text(value: Entry | None) -> str:
    """An entry as the square root of its square, e.g. -sqrt(2/3); 0 for missing entries."""
    if value is None:
        return '0'
    if isinstance(value, SignedRoot):
        square = value.square()
        sign = '-' if value.sign < 0 else ''
        return f'{sign}1' if square == 1 else f'{sign}sqrt({render_rational(square)})'
    return f'{value:.6g}'


def format_matrix(matrix: SynthesisMatrix) -> list[str]:
    """The matrix as aligned rows, zeros dimmed."""
    cells = [[entry_text(matrix.row(row).get(col)) for col in range(matrix.n_cols)] for row in range(matrix.n_rows)]
    widths = [max((len(cells[row][col]) for row in range(matrix.n_rows)), default=1) for col in range(matrix.n_cols)]
    lines = []
    for row in cells:
        parts = []
        for cell, width in zip(row, widths, strict=True):
            text = cell.rjust(width)
            parts.append(inactive(text) if cell == '0' else text)
        lines.append('[ ' + '  '.join(parts) + ' ]')
    return lines


def format_trace(trace: CursorTrace) -> list[str]:
    return [
        f'({step.row + 1}, {step.col + 1}) {step.case.value:<9} lambda={render_rational(step.remaining)}'
        for step in trace
    ]


def format_blocks(structure: BlockStructure) -> list[str]:
    return [f'block {i}: {_rationals(block)}' for i, block in enumerate(structure.blocks, start=1)]
