"""Exact arithmetic for frame entries.

Eigenvalues and their running updates are rationals. Every entry produced by
Spectral Tetris is a signed square root of a rational, and inner products of
rows are finite sums of rational multiples of square roots of squarefree
integers. Square roots of distinct squarefree integers are linearly
independent over the rationals, so such a sum is zero exactly when all of its
coefficients are zero.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .error import InvalidSpecError

Rational = Fraction

_RATIONAL = re.compile(r'[+-]?(\d+(/\d+)?|\d+\.\d+)')
_SIGNED_ROOT = re.compile(r'(?P<coefficient>[+-]?\d+(/\d+)?)\*sqrt\((?P<radicand>\d+)\)')


def rational_parse(text: str) -> Fraction:
    """Parse "p", "p/q" or a terminating decimal into an exact rational."""
    stripped = text.strip()
    if not _RATIONAL.fullmatch(stripped):
        raise InvalidSpecError(f'malformed rational {text!r}')
    try:
        return Fraction(stripped)
    except ZeroDivisionError as e:
        raise InvalidSpecError(f'zero denominator in {text!r}') from e


def render_rational(value: Fraction) -> str:
    return str(value)


@lru_cache(maxsize=4096)
def squarefree_split(d: int) -> tuple[int, int]:
    """Return (s, f) with d = s**2 * f and f squarefree."""
    if d <= 0:
        raise ValueError(f'expected a positive integer, got {d}')
    square, free = 1, 1
    p = 2
    while p * p <= d:
        if d % p == 0:
            exponent = 0
            while d % p == 0:
                d //= p
                exponent += 1
            square *= p ** (exponent // 2)
            if exponent % 2:
                free *= p
        p += 1 if p == 2 else 2  # noqa: PLR2004
    return square, free * d


@dataclass(frozen=True, slots=True)
class SignedRoot:
    """The number coefficient * sqrt(radicand), radicand squarefree."""

    coefficient: Fraction
    radicand: int = 1

    @classmethod
    def create(cls, coefficient: Fraction | int, radicand: int = 1) -> SignedRoot:
        coefficient = Fraction(coefficient)
        if radicand < 0:
            raise ValueError(f'negative radicand {radicand}')
        if coefficient == 0 or radicand == 0:
            return ZERO
        square, free = squarefree_split(radicand)
        return cls(coefficient * square, free)

    @property
    def sign(self) -> int:
        return (self.coefficient > 0) - (self.coefficient < 0)

    @property
    def is_zero(self) -> bool:
        return self.coefficient == 0

    def __bool__(self) -> bool:
        return not self.is_zero

    def square(self) -> Fraction:
        return self.coefficient * self.coefficient * self.radicand

    def __neg__(self) -> SignedRoot:
        return SignedRoot(-self.coefficient, self.radicand)

    def __mul__(self, other: SignedRoot) -> SignedRoot:
        if not isinstance(other, SignedRoot):
            return NotImplemented
        if self.is_zero or other.is_zero:
            return ZERO
        # both radicands are squarefree: d1*d2 = g**2 * (d1/g) * (d2/g)
        g = math.gcd(self.radicand, other.radicand)
        return SignedRoot(
            self.coefficient * other.coefficient * g,
            (self.radicand // g) * (other.radicand // g),
        )

    def __float__(self) -> float:
        if self.is_zero:
            return 0.0
        return math.copysign(math.sqrt(float(self.square())), self.coefficient)

    def __str__(self) -> str:
        return f'{self.coefficient}*sqrt({self.radicand})'


ZERO = SignedRoot(Fraction(0), 1)
ONE = SignedRoot(Fraction(1), 1)


def signed_root_of(sign: int, value: Fraction | int) -> SignedRoot:
    """Return sign * sqrt(value) in canonical form."""
    if sign not in (1, -1):
        raise ValueError(f'sign must be 1 or -1, got {sign}')
    value = Fraction(value)
    if value < 0:
        raise ValueError(f'square root of negative value {value}')
    if value == 0:
        return ZERO
    # sqrt(p/q) = (s1/s2) * sqrt(f1/f2) = s1/(s2*f2) * sqrt(f1*f2); f1, f2 coprime
    s1, f1 = squarefree_split(value.numerator)
    s2, f2 = squarefree_split(value.denominator)
    return SignedRoot(Fraction(sign * s1, s2 * f2), f1 * f2)


def radical_mul(a: SignedRoot, b: SignedRoot) -> SignedRoot:
    return a * b


def parse_signed_root(text: str) -> SignedRoot:
    match = _SIGNED_ROOT.fullmatch(text.strip())
    if not match:
        raise InvalidSpecError(f'malformed signed root {text!r}')
    return SignedRoot.create(rational_parse(match['coefficient']), int(match['radicand']))


@dataclass(frozen=True, slots=True)
class RadicalSum:
    """A finite sum of SignedRoots, kept as (radicand, coefficient) pairs sorted by radicand."""

    terms: tuple[tuple[int, Fraction], ...] = ()

    @classmethod
    def of_rational(cls, value: Fraction | int) -> RadicalSum:
        value = Fraction(value)
        return cls(((1, value),)) if value else cls()

    @property
    def is_zero(self) -> bool:
        return not self.terms

    def as_dict(self) -> dict[int, Fraction]:
        return dict(self.terms)

    def add(self, term: SignedRoot) -> RadicalSum:
        if term.is_zero:
            return self
        return self._merged([(term.radicand, term.coefficient)])

    def __add__(self, other: RadicalSum | SignedRoot) -> RadicalSum:
        if isinstance(other, SignedRoot):
            return self.add(other)
        if isinstance(other, RadicalSum):
            return self._merged(other.terms)
        return NotImplemented

    def _merged(self, terms) -> RadicalSum:
        merged = dict(self.terms)
        for radicand, coefficient in terms:
            merged[radicand] = merged.get(radicand, Fraction(0)) + coefficient
        return RadicalSum(tuple(sorted((r, c) for r, c in merged.items() if c)))

    def rational_value(self) -> Fraction:
        """The sum as a rational; fails when an irrational term is present."""
        if not self.terms:
            return Fraction(0)
        if len(self.terms) == 1 and self.terms[0][0] == 1:
            return self.terms[0][1]
        raise ValueError(f'{self} is not rational')

    def __float__(self) -> float:
        return math.fsum(float(SignedRoot(c, r)) for r, c in self.terms)

    def __str__(self) -> str:
        if not self.terms:
            return '0'
        return ' + '.join(str(SignedRoot(c, r)) for r, c in self.terms)


def radical_sum_add(acc: RadicalSum, term: SignedRoot) -> RadicalSum:
    return acc.add(term)


def to_float(x: SignedRoot | RadicalSum | Fraction) -> float:
    """Floating approximation, for export and float checks only."""
    return float(x)
