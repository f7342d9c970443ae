from stframes.analysis import verify
from stframes.blocks import maximal_block_number
from stframes.formatting import (
    ReportLine,
    danger,
    entry_text,
    format_blocks,
    format_matrix,
    format_trace,
    generate_lines,
    inactive,
    mu_lines,
    render_line_ansi,
    render_line_plain,
    verification_lines,
)
from stframes.numeric import ONE
from stframes.tetris import SynthesisMatrix, spectral_tetris

from .conftest import root


class TestRenderLine:
    def test_plain(self):
        assert render_line_plain(ReportLine('mu', '2', 'normal')) == 'mu=2'

    def test_ansi_styles_only_the_value(self):
        text = render_line_ansi(ReportLine('optimal', 'false', 'danger'))
        assert text.endswith('=' + danger('false'))
        assert 'optimal' in text


class TestEntryText:
    def test_exact(self):
        assert entry_text(ONE) == '1'
        assert entry_text(-ONE) == '-1'
        assert entry_text(root('1/3')) == 'sqrt(1/3)'
        assert entry_text(root('2/3', -1)) == '-sqrt(2/3)'
        assert entry_text(None) == '0'

    def test_float(self):
        assert entry_text(0.5773502691896258) == '0.57735'
        assert entry_text(-1.0) == '-1'


def test_format_matrix():
    matrix = SynthesisMatrix(2, 2, {(0, 0): ONE, (0, 1): root('1/2'), (1, 1): root('1/2', -1)})
    assert format_matrix(matrix) == [
        '[ 1  ' + ' sqrt(1/2)' + ' ]',
        '[ ' + inactive('0') + '  -sqrt(1/2) ]',
    ]


def test_format_trace(cursor_spec):
    _, trace = spectral_tetris(cursor_spec, cursor_spec.lambdas)
    lines = format_trace(trace)
    assert lines[0] == '(1, 1) one       lambda=8/3'
    assert lines[2] == '(1, 3) block     lambda=2/3'
    assert lines[5] == '(3, 8) final-one lambda=1'


def test_generate_lines():
    lines = generate_lines(3, 13, 11)
    assert [render_line_plain(line) for line in lines] == ['mu=3', 'sparsity=13', 'bound=11', 'optimal=false']
    assert lines[-1].style == 'danger'


def test_mu_lines_and_blocks(cursor_spec):
    structure = maximal_block_number(cursor_spec)
    assert [render_line_plain(line) for line in mu_lines(structure)] == [
        'mu=2',
        'ordering=8/3,8/3,8/3,2',
        'rows=3,4',
        'columns=8,10',
    ]
    assert format_blocks(structure) == ['block 1: 8/3,8/3,8/3', 'block 2: 2']


def test_verification_lines(cursor_matrix, cursor_spec):
    lines = verification_lines(verify(cursor_matrix, cursor_spec))
    assert [render_line_plain(line) for line in lines] == [
        'unit_norm_ok=true',
        'rows_orthogonal_ok=true',
        'row_sums=8/3,8/3,8/3,2',
        'spectrum_matches=true',
        'sparsity=14',
        'sparsity_bound=14',
        'optimal=true',
        'block_order=2',
        'mu=2',
        'passed=true',
    ]
    assert all(line.style != 'danger' for line in lines)
