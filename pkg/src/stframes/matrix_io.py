"""Reading and writing synthesis matrices.

Formats:
  exact-json     exact entries plus metadata; each entry is sign*sqrt(num/den)
  matrix-market  "%%MatrixMarket matrix coordinate real general", 17 significant digits
  csv            dense n x N grid, comma separated, no header, row-major

Indices are 1-based in every format. Matrices read from the float formats are
flagged inexact. MatrixMarket keeps the basis label in a "%basis=..." comment;
csv has no room for it and reads back as the standard basis.
"""

from __future__ import annotations

import io
import json
import logging
from dataclasses import dataclass
from enum import StrEnum
from fractions import Fraction

import numpy as np
from scipy.io import mmread, mmwrite
from scipy.sparse import coo_matrix, issparse

from .error import DimensionError, InexactMatrixError, InvalidSpecError, MatrixFormatError
from .numeric import rational_parse, render_rational, signed_root_of
from .tetris import STANDARD_BASIS, DenseFrame, SynthesisMatrix

DOCUMENT_FORMAT = 'stframes-exact'
DOCUMENT_VERSION = 1
FLOAT_FORMAT = '%.17g'


class MatrixFormat(StrEnum):
    EXACT_JSON = 'exact-json'
    MATRIX_MARKET = 'matrix-market'
    CSV = 'csv'


@dataclass(frozen=True)
class MatrixDocument:
    matrix: SynthesisMatrix
    spectrum: tuple[Fraction, ...] | None = None
    mu: int | None = None


def _column_major(matrix: SynthesisMatrix) -> list[tuple[int, int]]:
    return sorted(matrix.entries, key=lambda position: (position[1], position[0]))


# region exact-json


def _render_exact_json(doc: MatrixDocument) -> bytes:
    matrix = doc.matrix
    if not matrix.exact:
        raise InexactMatrixError('exact-json export')
    entries = []
    for row, col in _column_major(matrix):
        value = matrix.entries[row, col]
        square = value.square()
        entries.append(
            {
                'row': row + 1,
                'col': col + 1,
                'sign': value.sign,
                'num': square.numerator,
                'den': square.denominator,
                'value': float(value),
            }
        )
    payload = {
        'format': DOCUMENT_FORMAT,
        'version': DOCUMENT_VERSION,
        'n': matrix.n_rows,
        'N': matrix.n_cols,
        'basis': matrix.basis_label,
        'spectrum': None if doc.spectrum is None else [render_rational(lam) for lam in doc.spectrum],
        'mu': doc.mu,
        'sparsity': matrix.nonzeros,
        'entries': entries,
    }
    return (json.dumps(payload, indent=2) + '\n').encode()


def _integer(record: dict, key: str, minimum: int) -> int:
    value = record[key]
    if not isinstance(value, int) or isinstance(value, bool) or value < minimum:
        raise MatrixFormatError(f'field {key!r} must be an integer >= {minimum}, got {value!r}')
    return value


def _parse_exact_json(data: bytes) -> MatrixDocument:
    try:
        payload = json.loads(data)
    except json.JSONDecodeError as e:
        raise MatrixFormatError(f'line {e.lineno}, column {e.colno}: {e.msg}') from e
    except UnicodeDecodeError as e:
        raise MatrixFormatError(f'not a text document: {e.reason}') from e
    if not isinstance(payload, dict) or payload.get('format') != DOCUMENT_FORMAT:
        raise MatrixFormatError(f'not a {DOCUMENT_FORMAT} document')
    if payload.get('version') != DOCUMENT_VERSION:
        raise MatrixFormatError(f'unsupported document version {payload.get("version")!r}')

    try:
        n = _integer(payload, 'n', 1)
        count = _integer(payload, 'N', 1)
        basis = payload['basis']
        spectrum = payload['spectrum']
        mu = payload['mu']
        declared = _integer(payload, 'sparsity', 0)
        records = payload['entries']
        entries = {}
        for i, record in enumerate(records, start=1):
            position = (_integer(record, 'row', 1) - 1, _integer(record, 'col', 1) - 1)
            sign = record['sign']
            if sign not in (1, -1):
                raise MatrixFormatError(f'entry {i}: sign must be 1 or -1, got {sign!r}')
            if position in entries:
                raise MatrixFormatError(f'entry {i}: duplicate position ({position[0] + 1}, {position[1] + 1})')
            entries[position] = signed_root_of(sign, Fraction(_integer(record, 'num', 1), _integer(record, 'den', 1)))
    except (KeyError, TypeError) as e:
        raise MatrixFormatError(f'missing or malformed field: {e}') from e

    if declared != len(entries):
        raise MatrixFormatError(f'header declares {declared} entries, found {len(entries)}')
    if mu is not None and (not isinstance(mu, int) or mu < 1):
        raise MatrixFormatError(f'field "mu" must be a positive integer or null, got {mu!r}')
    try:
        lambdas = None if spectrum is None else tuple(rational_parse(str(lam)) for lam in spectrum)
    except (InvalidSpecError, TypeError) as e:
        raise MatrixFormatError(f'malformed spectrum: {e}') from e
    if lambdas is not None and len(lambdas) != n:
        raise MatrixFormatError(f'spectrum has {len(lambdas)} eigenvalues for {n} rows')
    try:
        matrix = SynthesisMatrix(n, count, entries, basis_label=str(basis))
    except DimensionError as e:
        raise MatrixFormatError(str(e)) from e
    return MatrixDocument(matrix, lambdas, mu)


# endregion exact-json

# region float formats


def _render_matrix_market(doc: MatrixDocument) -> bytes:
    matrix = doc.matrix
    positions = _column_major(matrix)
    rows = np.array([row for row, _ in positions], dtype=int)
    cols = np.array([col for _, col in positions], dtype=int)
    data = np.array([float(matrix.entries[position]) for position in positions])
    buffer = io.BytesIO()
    mmwrite(
        buffer,
        coo_matrix((data, (rows, cols)), shape=(matrix.n_rows, matrix.n_cols)),
        comment=f'basis={matrix.basis_label}',
        field='real',
        precision=17,
        symmetry='general',
    )
    return buffer.getvalue()


def _comment_basis(data: bytes) -> str:
    for line in data.decode(errors='replace').splitlines():
        if not line.startswith('%'):
            break
        key, sep, value = line.lstrip('%').strip().partition('=')
        if sep and key.strip() == 'basis' and value.strip():
            return value.strip()
    return STANDARD_BASIS


def _parse_matrix_market(data: bytes) -> MatrixDocument:
    try:
        loaded = mmread(io.BytesIO(data))
    except (ValueError, RuntimeError, OSError, IndexError, EOFError) as e:
        raise MatrixFormatError(f'invalid MatrixMarket document: {e}') from e
    if not issparse(loaded):
        raise MatrixFormatError('expected a coordinate MatrixMarket document')
    coo = coo_matrix(loaded)
    entries = {
        (int(row), int(col)): float(value) for row, col, value in zip(coo.row, coo.col, coo.data, strict=True) if value
    }
    n, count = coo.shape
    return MatrixDocument(SynthesisMatrix(n, count, entries, basis_label=_comment_basis(data), exact=False))


def _render_csv(doc: MatrixDocument) -> bytes:
    buffer = io.StringIO()
    np.savetxt(buffer, doc.matrix.to_dense(), fmt=FLOAT_FORMAT, delimiter=',')
    return buffer.getvalue().encode()


def _parse_csv(data: bytes) -> MatrixDocument:
    try:
        grid = np.loadtxt(io.StringIO(data.decode()), delimiter=',', ndmin=2, dtype=float)
    except (ValueError, UnicodeDecodeError) as e:
        raise MatrixFormatError(f'invalid csv document: {e}') from e
    if not grid.size:
        raise MatrixFormatError('empty csv document')
    entries = {(int(row), int(col)): float(grid[row, col]) for row, col in zip(*np.nonzero(grid), strict=True)}
    n, count = grid.shape
    return MatrixDocument(SynthesisMatrix(n, count, entries, exact=False))


# endregion float formats

_RENDERERS = {
    MatrixFormat.EXACT_JSON: _render_exact_json,
    MatrixFormat.MATRIX_MARKET: _render_matrix_market,
    MatrixFormat.CSV: _render_csv,
}

_PARSERS = {
    MatrixFormat.EXACT_JSON: _parse_exact_json,
    MatrixFormat.MATRIX_MARKET: _parse_matrix_market,
    MatrixFormat.CSV: _parse_csv,
}


def _format(fmt: str) -> MatrixFormat:
    try:
        return MatrixFormat(fmt)
    except ValueError as e:
        raise InvalidSpecError(f'unknown matrix format {fmt!r}') from e


def render_document(doc: MatrixDocument, fmt: str) -> bytes:
    data = _RENDERERS[_format(fmt)](doc)
    logging.debug('rendered %d entries as %s (%d bytes)', doc.matrix.nonzeros, fmt, len(data))
    return data


def parse_document(data: bytes, fmt: str) -> MatrixDocument:
    doc = _PARSERS[_format(fmt)](data)
    logging.debug('parsed %s document: %dx%d, %d entries', fmt, doc.matrix.n_rows, doc.matrix.n_cols,
                  doc.matrix.nonzeros)
    return doc


def export_matrix(
    matrix: SynthesisMatrix,
    fmt: str,
    spectrum: tuple[Fraction, ...] | None = None,
    mu: int | None = None,
) -> bytes:
    return render_document(MatrixDocument(matrix, spectrum, mu), fmt)


def import_matrix(data: bytes, fmt: str) -> SynthesisMatrix:
    return parse_document(data, fmt).matrix



def frame_matrix(frame: DenseFrame) -> SynthesisMatrix:
    """The nonzero entries of a dense frame as an inexact matrix carrying the frame's basis label."""
    values = np.asarray(frame.values, dtype=float)
    entries = {(int(row), int(col)): float(values[row, col]) for row, col in zip(*np.nonzero(values), strict=True)}
    n, count = values.shape
    return SynthesisMatrix(n, count, entries, basis_label=frame.basis_label, exact=False)


def export_frame(
    frame: DenseFrame,
    fmt: str,
    spectrum: tuple[Fraction, ...] | None = None,
    mu: int | None = None,
) -> bytes:
    """Export a frame expressed in another basis; only the float formats accept it."""
    return render_document(MatrixDocument(frame_matrix(frame), spectrum, mu), fmt)
