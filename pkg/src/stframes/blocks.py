"""Maximal block number and blockwise orderings of an eigenvalue sequence.

The maximal block number mu is the largest number of integer prefix sums any
ordering of the eigenvalues can have. Integer eigenvalues are always blocks of
their own; the non-integer ones are grouped by an exact subset search.
"""

from __future__ import annotations

import logging
import math
import os
from dataclasses import dataclass
from fractions import Fraction
from itertools import accumulate, pairwise, permutations
from typing import TYPE_CHECKING

from .error import InvalidSpecError, SearchLimitError
from .numeric import rational_parse

if TYPE_CHECKING:
    from collections.abc import Iterable, Sequence

DEFAULT_SEARCH_LIMIT = 16
BRUTEFORCE_LIMIT = 8
SEARCH_LIMIT_ENV = 'STFRAMES_SEARCH_LIMIT'


@dataclass(frozen=True)
class EigenvalueSpec:
    lambdas: tuple[Fraction, ...]
    count: int

    def __post_init__(self):
        if not self.lambdas:
            raise InvalidSpecError('at least one eigenvalue is required')
        for j, lam in enumerate(self.lambdas, start=1):
            if lam < 2:  # noqa: PLR2004
                raise InvalidSpecError(f'eigenvalue {j} is {lam}; every eigenvalue must be at least 2')
        total = sum(self.lambdas, Fraction(0))
        if total != self.count:
            raise InvalidSpecError(f'eigenvalues sum to {total}; the sum must equal the frame count {self.count}')

    @classmethod
    def create(cls, lambdas: Iterable[Fraction | int | str], count: int) -> EigenvalueSpec:
        return cls(tuple(rational_parse(x) if isinstance(x, str) else Fraction(x) for x in lambdas), count)

    @classmethod
    def tight(cls, count: int, dim: int) -> EigenvalueSpec:
        if dim < 1 or count < 2 * dim:
            raise InvalidSpecError(f'a tight spectrum needs count >= 2*dim >= 2, got count={count}, dim={dim}')
        return cls((Fraction(count, dim),) * dim, count)

    @property
    def dim(self) -> int:
        return len(self.lambdas)


@dataclass(frozen=True)
class BlockStructure:
    mu: int
    ordering: tuple[Fraction, ...]
    # cumulative row counts k_1 < ... < k_mu = n and column counts m_1 < ... < m_mu = N
    row_bounds: tuple[int, ...]
    column_bounds: tuple[int, ...]

    @property
    def blocks(self) -> list[tuple[Fraction, ...]]:
        return [self.ordering[a:b] for a, b in pairwise((0, *self.row_bounds))]


def parse_eigenvalues(text: str) -> tuple[Fraction, ...]:
    items = [item for item in text.split(',') if item.strip()]
    if not items:
        raise InvalidSpecError('no eigenvalues given')
    return tuple(rational_parse(item) for item in items)


def search_limit_from_env() -> int:
    value = os.getenv(SEARCH_LIMIT_ENV)
    if value is None:
        return DEFAULT_SEARCH_LIMIT
    try:
        limit = int(value)
    except ValueError as e:
        raise InvalidSpecError(f'{SEARCH_LIMIT_ENV} must be a positive integer, got {value!r}') from e
    if limit < 1:
        raise InvalidSpecError(f'{SEARCH_LIMIT_ENV} must be a positive integer, got {value!r}')
    return limit


def count_integer_prefix_sums(lambdas: Sequence[Fraction]) -> int:
    return sum(1 for total in accumulate(lambdas) if total.denominator == 1)


def _integer_sum_groups(values: Sequence[Fraction]) -> list[tuple[Fraction, ...]]:
    """Split values into the largest number of groups with integer sums.

    best[S] is the largest count of integer prefix sums over orderings of the
    subset S; it is attained by some last element x, so
    best[S] = [sum(S) is an integer] + max over x in S of best[S - x].
    """
    m = len(values)
    if not m:
        return []
    scale = math.lcm(*(v.denominator for v in values))
    residues = [v.numerator * (scale // v.denominator) % scale for v in values]
    size = 1 << m
    subset_residue = [0] * size
    best = [0] * size
    for mask in range(1, size):
        low = mask & -mask
        subset_residue[mask] = (subset_residue[mask ^ low] + residues[low.bit_length() - 1]) % scale
        rest = mask
        longest = 0
        while rest:
            bit = rest & -rest
            longest = max(longest, best[mask ^ bit])
            rest ^= bit
        best[mask] = longest + (subset_residue[mask] == 0)
    logging.debug('subset search over %d non-integer eigenvalues: %d blocks', m, best[size - 1])

    # walk back from the full set, peeling off the element placed last
    tail: list[Fraction] = []
    mask = size - 1
    while mask:
        target = best[mask] - (subset_residue[mask] == 0)
        for i in range(m):
            bit = 1 << i
            if mask & bit and best[mask ^ bit] == target:
                tail.append(values[i])
                mask ^= bit
                break
    ordering = tail[::-1]

    groups: list[tuple[Fraction, ...]] = []
    start = 0
    for end, total in enumerate(accumulate(ordering), start=1):
        if total.denominator == 1:
            groups.append(tuple(ordering[start:end]))
            start = end
    return groups


def _block_key(block: tuple[Fraction, ...]) -> tuple[int, tuple[Fraction, ...]]:
    return -len(block), tuple(sorted(block))


def maximal_block_number(spec: EigenvalueSpec, limit: int = DEFAULT_SEARCH_LIMIT) -> BlockStructure:
    """Compute mu and the canonical blockwise ordering of the spectrum.

    Blocks are sorted by descending size, then by their ascending sorted
    eigenvalues; eigenvalues inside a block are in descending order.
    """
    integers = [lam for lam in spec.lambdas if lam.denominator == 1]
    # sorted so that equal multisets give the same grouping
    fractional = sorted(lam for lam in spec.lambdas if lam.denominator != 1)
    if len(fractional) > limit:
        raise SearchLimitError(
            f'{len(fractional)} non-integer eigenvalues exceed the exact-search limit of {limit}; '
            'retry with a higher limit'
        )
    blocks = [(lam,) for lam in integers] + _integer_sum_groups(fractional)
    blocks = sorted((tuple(sorted(block, reverse=True)) for block in blocks), key=_block_key)

    ordering = tuple(lam for block in blocks for lam in block)
    row_bounds = tuple(accumulate(len(block) for block in blocks))
    column_bounds = tuple(int(total) for total in accumulate(sum(block, Fraction(0)) for block in blocks))
    return BlockStructure(mu=len(blocks), ordering=ordering, row_bounds=row_bounds, column_bounds=column_bounds)


def mu_bruteforce(lambdas: Sequence[Fraction]) -> int:
    """Maximum of count_integer_prefix_sums over every permutation."""
    if not lambdas:
        raise InvalidSpecError('at least one eigenvalue is required')
    if len(lambdas) > BRUTEFORCE_LIMIT:
        raise SearchLimitError(f'brute force handles at most {BRUTEFORCE_LIMIT} eigenvalues, got {len(lambdas)}')
    return max(count_integer_prefix_sums(p) for p in set(permutations(lambdas)))


def mu_tight(count: int, dim: int) -> int:
    if dim < 1 or count < 2 * dim:
        raise InvalidSpecError(f'expected count >= 2*dim >= 2, got count={count}, dim={dim}')
    return math.gcd(count, dim)
