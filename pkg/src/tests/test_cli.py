import json
import logging

import pytest

from stframes import __version__
from stframes.blocks import SEARCH_LIMIT_ENV
from stframes.cli import stframes
from stframes.formatting import danger, good

CURSOR = ['-n', '4', '-N', '10', '-e', '8/3,8/3,8/3,2']
TIGHT = ['-n', '4', '-N', '9', '--tight']


def run(capsys, *argv: str) -> tuple[int, list[str], str]:
    code = stframes(list(argv))
    captured = capsys.readouterr()
    return code, captured.out.splitlines(), captured.err


class TestGenerate:
    def test_cursor_example(self, capsys):
        code, out, _ = run(capsys, 'generate', *CURSOR)
        assert code == 0
        assert out == ['mu=2', 'sparsity=14', 'bound=14', 'optimal=true']

    def test_tight(self, capsys):
        code, out, _ = run(capsys, 'gen', *TIGHT)
        assert code == 0
        assert 'sparsity=15' in out
        assert 'optimal=true' in out

    def test_eigenvalue_below_two(self, capsys):
        code, _, err = run(capsys, 'generate', '-n', '3', '-N', '5', '-e', '1,2,2')
        assert code == 2  # noqa: PLR2004
        assert 'at least 2' in err

    def test_tight_and_eigenvalues(self, capsys):
        code, _, _ = run(capsys, 'generate', *CURSOR, '--tight')
        assert code == 2  # noqa: PLR2004

    def test_as_given_ordering(self, capsys):
        code, out, _ = run(capsys, 'generate', '-n', '4', '-N', '9', '-e', '5/2,2,5/2,2', '--ordering', 'as-given')
        assert code == 0
        assert out == ['mu=3', 'sparsity=13', 'bound=11', 'optimal=false']

    def test_verbose(self, capsys):
        code, out, _ = run(capsys, 'generate', *CURSOR, '-v')
        assert code == 0
        assert out[:4] == ['mu=2', 'sparsity=14', 'bound=14', 'optimal=true']
        assert any('sqrt(2/3)' in line for line in out)
        assert any('final-one' in line for line in out)

    def test_output_to_stdout_refused(self, capsys):
        code, _, _ = run(capsys, 'generate', *CURSOR, '-o', '-')
        assert code == 2  # noqa: PLR2004

    def test_deterministic(self, capsys, tmp_path):
        first, second = tmp_path / 'a.json', tmp_path / 'b.json'
        assert run(capsys, 'generate', *CURSOR, '-o', str(first))[0] == 0
        assert run(capsys, 'generate', *CURSOR, '-o', str(second))[0] == 0
        assert first.read_bytes() == second.read_bytes()


class TestVerify:
    def test_generated_document(self, capsys, tmp_path):
        path = tmp_path / 'frame.json'
        assert run(capsys, 'generate', *CURSOR, '-o', str(path))[0] == 0
        code, out, _ = run(capsys, 'verify', str(path))
        assert code == 0
        assert 'passed=true' in out
        assert 'row_sums=8/3,8/3,8/3,2' in out

    def test_flipped_sign(self, capsys, tmp_path):
        path = tmp_path / 'frame.json'
        assert run(capsys, 'generate', *CURSOR, '-o', str(path))[0] == 0
        payload = json.loads(path.read_text())
        entry = next(entry for entry in payload['entries'] if entry['sign'] == -1)
        entry['sign'] = 1
        entry['value'] = -entry['value']
        path.write_text(json.dumps(payload, indent=2))

        code, out, err = run(capsys, 'verify', str(path))
        assert code == 4  # noqa: PLR2004
        assert 'rows_orthogonal_ok=false' in out
        assert 'passed=false' in out
        assert 'rows_orthogonal_ok' in err

        _, out, _ = run(capsys, 'verify', str(path), '-v')
        checks = out[out.index('') + 2 :]
        assert any(line.endswith('=' + danger('false')) and 'rows_orthogonal_ok' in line for line in checks)
        assert any(line.endswith('=' + good('true')) and 'unit_norm_ok' in line for line in checks)

    def test_csv(self, capsys, tmp_path):
        path = tmp_path / 'frame.csv'
        assert run(capsys, 'generate', *TIGHT, '-f', 'csv', '-o', str(path))[0] == 0
        code, out, _ = run(capsys, 'verify', str(path), '-f', 'csv', *TIGHT)
        assert code == 0
        assert 'passed=true' in out

        code, _, err = run(capsys, 'verify', str(path), '-f', 'csv', '--exact', *TIGHT)
        assert code == 5  # noqa: PLR2004
        assert 'exact' in err

    def test_csv_needs_a_spectrum(self, capsys, tmp_path):
        path = tmp_path / 'frame.csv'
        assert run(capsys, 'generate', *TIGHT, '-f', 'csv', '-o', str(path))[0] == 0
        assert run(capsys, 'verify', str(path), '-f', 'csv')[0] == 2  # noqa: PLR2004

    def test_matrix_market(self, capsys, tmp_path):
        path = tmp_path / 'frame.mtx'
        assert run(capsys, 'generate', *CURSOR, '-f', 'matrix-market', '-o', str(path))[0] == 0
        code, out, _ = run(capsys, 'verify', str(path), '-f', 'matrix-market', *CURSOR)
        assert code == 0
        assert 'sparsity=14' in out

    def test_spectrum_mismatch(self, capsys, tmp_path):
        path = tmp_path / 'frame.json'
        assert run(capsys, 'generate', *CURSOR, '-o', str(path))[0] == 0
        assert run(capsys, 'verify', str(path), *TIGHT)[0] == 2  # noqa: PLR2004

    def test_missing_file(self, capsys, tmp_path):
        code, _, err = run(capsys, 'verify', str(tmp_path / 'missing.json'))
        assert code == 1
        assert err

    def test_malformed_document(self, capsys, tmp_path):
        path = tmp_path / 'frame.json'
        path.write_text('{"format": ')
        code, _, err = run(capsys, 'verify', str(path))
        assert code == 1
        assert 'line 1' in err


class TestMu:
    def test_cursor_example(self, capsys):
        code, out, _ = run(capsys, 'mu', *CURSOR)
        assert code == 0
        assert out == ['mu=2', 'ordering=8/3,8/3,8/3,2', 'rows=3,4', 'columns=8,10']

    def test_integers(self, capsys):
        code, out, _ = run(capsys, 'mu', '-n', '3', '-N', '6', '-e', '2,2,2')
        assert code == 0
        assert out[0] == 'mu=3'

    def test_tight(self, capsys):
        _, out, _ = run(capsys, 'mu', *TIGHT)
        assert out[:2] == ['mu=1', 'ordering=9/4,9/4,9/4,9/4']

    def test_search_limit(self, capsys):
        code, _, err = run(capsys, 'mu', '-n', '4', '-N', '10', '--tight', '--search-limit', '2')
        assert code == 3  # noqa: PLR2004
        assert 'search limit' in err

    def test_search_limit_from_env(self, capsys, monkeypatch):
        monkeypatch.setenv(SEARCH_LIMIT_ENV, '2')
        assert run(capsys, 'mu', '-n', '4', '-N', '10', '--tight')[0] == 3  # noqa: PLR2004
        assert run(capsys, 'mu', '-n', '4', '-N', '10', '--tight', '--search-limit', '4')[0] == 0


def test_bound(capsys):
    code, out, _ = run(capsys, 'bound', *TIGHT)
    assert code == 0
    assert out == ['n=4', 'N=9', 'mu=1', 'bound=15']


def test_missing_spectrum_flags(capsys):
    assert run(capsys, 'bound', '-n', '4', '-e', '2,2,2,2')[0] == 2  # noqa: PLR2004


def test_version(capsys):
    code, out, _ = run(capsys, 'version')
    assert code == 0
    assert out == [__version__]


def test_no_command():
    with pytest.raises(SystemExit):
        stframes([])


def test_debug_flag_on_repeated_calls(capsys, caplog):
    assert stframes(['bound', *TIGHT]) == 0
    assert logging.getLogger().level == logging.WARNING
    assert stframes(['generate', *TIGHT, '-g']) == 0
    assert logging.getLogger().level == logging.DEBUG
    assert any(message.startswith('cursor') for message in caplog.messages)
    assert stframes(['version']) == 0
    assert logging.getLogger().level == logging.WARNING
    capsys.readouterr()
