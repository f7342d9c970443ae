"""Frame operators, sparsity measures and verification of constructed frames.

Exact checks (unit norm, row orthogonality, spectrum) have no tolerance and
refuse matrices read from float formats. Float operators work on dense
n x N arrays whose columns are the frame vectors.
"""

from __future__ import annotations

import logging
from collections import defaultdict
from dataclasses import dataclass
from fractions import Fraction
from typing import TYPE_CHECKING

import numpy as np
from scipy.linalg import LinAlgError, cho_factor, cho_solve, eigvalsh
from scipy.sparse import coo_matrix
from scipy.sparse.csgraph import connected_components

from .blocks import DEFAULT_SEARCH_LIMIT, BlockStructure, EigenvalueSpec, maximal_block_number
from .error import DimensionError, InexactMatrixError, NotAFrameError, ZeroColumnError
from .numeric import RadicalSum

if TYPE_CHECKING:
    from .tetris import SynthesisMatrix

FLOAT_TOLERANCE = 1e-10
RANK_TOLERANCE = 1e-12


@dataclass(frozen=True)
class FrameBounds:
    lower: float
    upper: float

    @property
    def is_tight(self) -> bool:
        return abs(self.upper - self.lower) <= FLOAT_TOLERANCE


@dataclass(frozen=True)
class VerificationReport:
    unit_norm_ok: bool
    rows_orthogonal_ok: bool
    row_sums: tuple[Fraction | float, ...]
    spectrum_matches: bool
    sparsity: int
    sparsity_bound: int
    optimal: bool
    block_order: int
    mu: int

    @property
    def passed(self) -> bool:
        return (
            self.unit_norm_ok
            and self.rows_orthogonal_ok
            and self.spectrum_matches
            and self.optimal
            and self.block_order <= self.mu
        )


def sparsity(matrix: SynthesisMatrix) -> int:
    """Total size of the supports of all frame vectors."""
    return matrix.nonzeros


def local_sparsity(matrix: SynthesisMatrix) -> int:
    """Largest support of a single frame vector."""
    return max((len(matrix.column_support(col)) for col in range(matrix.n_cols)), default=0)


def sparsity_bound(
    spec: EigenvalueSpec, limit: int = DEFAULT_SEARCH_LIMIT, structure: BlockStructure | None = None
) -> int:
    """N + 2(n - mu), the least sparsity of a unit norm frame with this spectrum."""
    if structure is None:
        structure = maximal_block_number(spec, limit)
    return spec.count + 2 * (spec.dim - structure.mu)


def _support_components(matrix: SynthesisMatrix) -> list[list[int]]:
    """Group the nonzero columns by connectivity through shared support rows."""
    n, count = matrix.n_rows, matrix.n_cols
    positions = np.array(sorted(matrix.entries), dtype=int).reshape(-1, 2)
    # columns are nodes 0..N-1, rows are nodes N..N+n-1
    graph = coo_matrix(
        (np.ones(len(positions)), (positions[:, 1], count + positions[:, 0])),
        shape=(count + n, count + n),
    )
    _, labels = connected_components(graph, directed=False)
    groups: dict[int, list[int]] = defaultdict(list)
    for col in range(count):
        if matrix.column_support(col):
            groups[int(labels[col])].append(col)
    return sorted(groups.values(), key=lambda group: group[0])


def block_decomposition(matrix: SynthesisMatrix) -> tuple[int, list[list[int]]]:
    """The finest partition of the columns into groups with pairwise disjoint supports."""
    for col in range(matrix.n_cols):
        if not matrix.column_support(col):
            raise ZeroColumnError(f'column {col + 1} is zero')
    partition = _support_components(matrix)
    return len(partition), partition


def row_overlaps(matrix: SynthesisMatrix) -> list[int]:
    """Size of the common support of each pair of consecutive rows."""
    return [len(matrix.row_support(row) & matrix.row_support(row + 1)) for row in range(matrix.n_rows - 1)]


def frame_operator_exact(matrix: SynthesisMatrix) -> tuple[tuple[RadicalSum, ...], ...]:
    """S = T*T with entries the exact inner products of the rows."""
    if not matrix.exact:
        raise InexactMatrixError('the exact frame operator')
    n = matrix.n_rows
    operator = [[RadicalSum() for _ in range(n)] for _ in range(n)]
    for col in range(matrix.n_cols):
        column = matrix.column(col).items()
        for a, x in column:
            for b, y in column:
                operator[a][b] = operator[a][b].add(x * y)
    return tuple(tuple(row) for row in operator)


def frame_operator_float(values: np.ndarray) -> np.ndarray:
    values = np.asarray(values, dtype=float)
    return values @ values.T


def frame_bounds_float(values: np.ndarray) -> FrameBounds:
    """Optimal frame bounds: the extreme eigenvalues of the frame operator."""
    eigenvalues = eigvalsh(frame_operator_float(values))
    lower, upper = float(eigenvalues[0]), float(eigenvalues[-1])
    if upper <= 0 or lower <= RANK_TOLERANCE * upper:
        raise NotAFrameError('the vectors do not span the space: the lower frame bound is 0')
    return FrameBounds(lower, upper)


def _check_signal(values: np.ndarray, x: np.ndarray, length: int, what: str) -> np.ndarray:
    x = np.asarray(x, dtype=float)
    if x.shape != (length,):
        raise DimensionError(f'expected {what} of length {length}, got shape {x.shape}')
    return x


def analyze_signal(values: np.ndarray, x: np.ndarray) -> np.ndarray:
    """Frame coefficients <x, phi_i>."""
    values = np.asarray(values, dtype=float)
    return values.T @ _check_signal(values, x, values.shape[0], 'a signal')


def synthesize(values: np.ndarray, coefficients: np.ndarray) -> np.ndarray:
    """sum_i c_i phi_i."""
    values = np.asarray(values, dtype=float)
    return values @ _check_signal(values, coefficients, values.shape[1], 'coefficients')


def _factor_frame_operator(values: np.ndarray):
    try:
        return cho_factor(frame_operator_float(values))
    except LinAlgError as e:
        raise NotAFrameError('the frame operator is singular: the vectors do not span the space') from e


def canonical_dual(values: np.ndarray) -> np.ndarray:
    """Columns S^-1 phi_i of the canonical dual frame."""
    values = np.asarray(values, dtype=float)
    return cho_solve(_factor_frame_operator(values), values)


def reconstruct(values: np.ndarray, x: np.ndarray) -> np.ndarray:
    """x = sum_i <x, S^-1 phi_i> phi_i."""
    values = np.asarray(values, dtype=float)
    x = _check_signal(values, x, values.shape[0], 'a signal')
    y = cho_solve(_factor_frame_operator(values), x)
    return synthesize(values, analyze_signal(values, y))


def _check_shape(matrix: SynthesisMatrix, spec: EigenvalueSpec) -> None:
    if (matrix.n_rows, matrix.n_cols) != (spec.dim, spec.count):
        raise DimensionError(
            f'a {matrix.n_rows}x{matrix.n_cols} matrix cannot carry a spectrum of {spec.dim} eigenvalues '
            f'summing to {spec.count}'
        )


def verify(matrix: SynthesisMatrix, spec: EigenvalueSpec, limit: int = DEFAULT_SEARCH_LIMIT) -> VerificationReport:
    """Exact check that the matrix is an optimally sparse unit norm frame with the given spectrum."""
    if not matrix.exact:
        raise InexactMatrixError('exact verification')
    _check_shape(matrix, spec)
    operator = frame_operator_exact(matrix)
    n = matrix.n_rows

    unit_norm_ok = all(
        sum((value.square() for value in matrix.column(col).values()), Fraction(0)) == 1
        for col in range(matrix.n_cols)
    )
    rows_orthogonal_ok = all(operator[a][b].is_zero for a in range(n) for b in range(n) if a != b)
    row_sums = tuple(operator[a][a].rational_value() for a in range(n))
    structure = maximal_block_number(spec, limit)
    bound = sparsity_bound(spec, structure=structure)
    report = VerificationReport(
        unit_norm_ok=unit_norm_ok,
        rows_orthogonal_ok=rows_orthogonal_ok,
        row_sums=row_sums,
        spectrum_matches=sorted(row_sums) == sorted(spec.lambdas),
        sparsity=sparsity(matrix),
        sparsity_bound=bound,
        optimal=sparsity(matrix) == bound,
        block_order=len(_support_components(matrix)),
        mu=structure.mu,
    )
    logging.debug('exact verification: %s', report)
    return report


def verify_float(
    matrix: SynthesisMatrix, spec: EigenvalueSpec, limit: int = DEFAULT_SEARCH_LIMIT
) -> VerificationReport:
    """Counterpart of verify for matrices read from float formats, with absolute tolerance 1e-10."""
    _check_shape(matrix, spec)
    values = matrix.to_dense()
    operator = frame_operator_float(values)
    diagonal = np.diag(operator)
    off_diagonal = operator - np.diag(diagonal)
    row_sums = tuple(float(v) for v in diagonal)
    expected = np.array(sorted(float(lam) for lam in spec.lambdas))

    structure = maximal_block_number(spec, limit)
    bound = sparsity_bound(spec, structure=structure)
    report = VerificationReport(
        unit_norm_ok=bool(np.all(np.abs((values**2).sum(axis=0) - 1) <= FLOAT_TOLERANCE)),
        rows_orthogonal_ok=bool(np.all(np.abs(off_diagonal) <= FLOAT_TOLERANCE)),
        row_sums=row_sums,
        spectrum_matches=bool(np.all(np.abs(np.sort(diagonal) - expected) <= FLOAT_TOLERANCE)),
        sparsity=sparsity(matrix),
        sparsity_bound=bound,
        optimal=sparsity(matrix) == bound,
        block_order=len(_support_components(matrix)),
        mu=structure.mu,
    )
    logging.debug('float verification: %s', report)
    return report
