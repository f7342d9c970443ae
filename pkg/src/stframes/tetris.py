"""Spectral Tetris for Frames.

A cursor walks the synthesis matrix row by row. With working eigenvalue lam
for the current row it either places a single 1 (lam >= 1) or a 2x2 block
spanning the current and the next row (lam < 1), until the row is used up.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from functools import cached_property
from typing import TYPE_CHECKING

import numpy as np

from .blocks import DEFAULT_SEARCH_LIMIT, BlockStructure, EigenvalueSpec, maximal_block_number
from .error import ConstructionError, DimensionError, InvalidSpecError, NotOrthonormalError
from .numeric import ONE, SignedRoot, signed_root_of

if TYPE_CHECKING:
    from collections.abc import Sequence

STANDARD_BASIS = 'standard'
ORTHONORMAL_TOLERANCE = 1e-10

type Entry = SignedRoot | float


class CursorCase(Enum):
    ONE = 'one'
    BLOCK = 'block'
    FINAL_ONE = 'final-one'


@dataclass(frozen=True)
class CursorStep:
    row: int
    col: int
    case: CursorCase
    remaining: Fraction  # working eigenvalue of the row before the step


type CursorTrace = tuple[CursorStep, ...]


@dataclass(frozen=True)
class SynthesisMatrix:
    """An n x N matrix with the frame vectors as columns, stored by its nonzero entries.

    Exact matrices hold SignedRoots; matrices read from float formats hold floats
    and have exact=False.
    """

    n_rows: int
    n_cols: int
    entries: dict[tuple[int, int], Entry]
    basis_label: str = STANDARD_BASIS
    exact: bool = True

    def __post_init__(self):
        for (row, col), value in self.entries.items():
            if not (0 <= row < self.n_rows and 0 <= col < self.n_cols):
                raise DimensionError(f'entry ({row + 1}, {col + 1}) outside a {self.n_rows}x{self.n_cols} matrix')
            if isinstance(value, SignedRoot) != self.exact:
                raise DimensionError(f'entry ({row + 1}, {col + 1}) does not match exact={self.exact}')
            if not value:
                raise DimensionError(f'entry ({row + 1}, {col + 1}) is zero')

    @cached_property
    def _columns(self) -> list[dict[int, Entry]]:
        columns: list[dict[int, Entry]] = [{} for _ in range(self.n_cols)]
        for (row, col), value in sorted(self.entries.items()):
            columns[col][row] = value
        return columns

    @cached_property
    def _rows(self) -> list[dict[int, Entry]]:
        rows: list[dict[int, Entry]] = [{} for _ in range(self.n_rows)]
        for (row, col), value in sorted(self.entries.items()):
            rows[row][col] = value
        return rows

    @property
    def nonzeros(self) -> int:
        return len(self.entries)

    def column(self, col: int) -> dict[int, Entry]:
        return self._columns[col]

    def row(self, row: int) -> dict[int, Entry]:
        return self._rows[row]

    def column_support(self, col: int) -> frozenset[int]:
        return frozenset(self._columns[col])

    def row_support(self, row: int) -> frozenset[int]:
        return frozenset(self._rows[row])

    def to_dense(self) -> np.ndarray:
        dense = np.zeros((self.n_rows, self.n_cols))
        for (row, col), value in self.entries.items():
            dense[row, col] = float(value)
        return dense


@dataclass(frozen=True)
class DenseFrame:
    values: np.ndarray
    basis_label: str


def spectral_tetris(spec: EigenvalueSpec, ordering: Sequence[Fraction]) -> tuple[SynthesisMatrix, CursorTrace]:
    """Run Spectral Tetris on the eigenvalues in the given order."""
    ordering = tuple(Fraction(lam) for lam in ordering)
    if sorted(ordering) != sorted(spec.lambdas):
        raise InvalidSpecError('the ordering is not a permutation of the spectrum')
    n, count = spec.dim, spec.count

    working = list(ordering)
    entries: dict[tuple[int, int], SignedRoot] = {}
    trace: list[CursorStep] = []
    col = 0
    for row in range(n):
        if working[row] <= 0:
            raise ConstructionError(f'row {row + 1} entered with working eigenvalue {working[row]}')
        while working[row] != 0:
            lam = working[row]
            if lam < 1:
                if row + 1 >= n or col + 1 >= count:
                    raise ConstructionError(f'a 2x2 block at ({row + 1}, {col + 1}) leaves the matrix')
                top = signed_root_of(1, lam / 2)
                bottom = signed_root_of(1, 1 - lam / 2)
                entries[row, col] = top
                entries[row, col + 1] = top
                entries[row + 1, col] = bottom
                entries[row + 1, col + 1] = -bottom
                trace.append(CursorStep(row, col, CursorCase.BLOCK, lam))
                working[row + 1] -= 2 - lam
                working[row] = Fraction(0)
                col += 2
            else:
                if col >= count:
                    raise ConstructionError(f'row {row + 1} needs more than {count} columns')
                entries[row, col] = ONE
                trace.append(CursorStep(row, col, CursorCase.FINAL_ONE if lam == 1 else CursorCase.ONE, lam))
                working[row] -= 1
                col += 1
            logging.debug('cursor %s at (%d, %d), working eigenvalue %s -> %s', trace[-1].case.value, row + 1,
                          trace[-1].col + 1, lam, working[row])
    if col != count:
        raise ConstructionError(f'the cursor consumed {col} of {count} columns')
    return SynthesisMatrix(n, count, entries), tuple(trace)


def construct_optimal(
    spec: EigenvalueSpec, limit: int = DEFAULT_SEARCH_LIMIT
) -> tuple[SynthesisMatrix, BlockStructure, CursorTrace]:
    """Spectral Tetris on the canonical blockwise ordering; N + 2(n - mu) nonzeros."""
    structure = maximal_block_number(spec, limit)
    matrix, trace = spectral_tetris(spec, structure.ordering)
    logging.debug('constructed %dx%d frame with %d nonzeros, mu=%d', spec.dim, spec.count, matrix.nonzeros,
                  structure.mu)
    return matrix, structure, trace


def row_budget_ok(trace: CursorTrace, ordering: Sequence[Fraction], count: int) -> bool:
    """Check that on entering each row the remaining weight equals the remaining columns."""
    seen: set[int] = set()
    for step in trace:
        if step.row in seen:
            continue
        seen.add(step.row)
        remaining = step.remaining + sum(ordering[step.row + 1 :], Fraction(0))
        if remaining != count - step.col:
            return False
    return len(seen) == len(ordering)


def apply_basis_change(matrix: SynthesisMatrix, basis: np.ndarray, label: str) -> DenseFrame:
    """Express the frame in another orthonormal basis: the columns of `basis` replace the unit vectors."""
    basis = np.asarray(basis, dtype=float)
    n = matrix.n_rows
    if basis.shape != (n, n):
        raise DimensionError(f'expected a {n}x{n} basis, got shape {basis.shape}')
    if not np.allclose(basis.T @ basis, np.eye(n), rtol=0, atol=ORTHONORMAL_TOLERANCE):
        raise NotOrthonormalError(f'basis {label!r} is not orthonormal')
    return DenseFrame(basis @ matrix.to_dense(), label)
