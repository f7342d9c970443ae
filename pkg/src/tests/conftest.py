import random
from fractions import Fraction

import pytest

from stframes.blocks import EigenvalueSpec
from stframes.numeric import ONE, SignedRoot, signed_root_of
from stframes.tetris import SynthesisMatrix


def root(value: str, sign: int = 1) -> SignedRoot:
    return signed_root_of(sign, Fraction(value))


@pytest.fixture
def rng() -> random.Random:
    return random.Random(20100827)


@pytest.fixture
def random_spec(rng):
    """Factory for valid spectra: rationals >= 2 with bounded denominators and an integer total."""

    def make(max_dim: int, max_den: int) -> EigenvalueSpec:
        dim = rng.randint(1, max_dim)
        lambdas = []
        for _ in range(dim - 1):
            den = rng.randint(1, max_den)
            lambdas.append(2 + Fraction(rng.randint(0, 2 * den), den))
        head = sum(lambdas, Fraction(0))
        last = 2 + (-head) % 1 + rng.randint(0, 2)
        lambdas.append(last)
        rng.shuffle(lambdas)
        return EigenvalueSpec.create(lambdas, int(head + last))

    return make


@pytest.fixture
def cursor_spec() -> EigenvalueSpec:
    return EigenvalueSpec.create(['8/3', '8/3', '8/3', '2'], 10)


@pytest.fixture
def cursor_matrix() -> SynthesisMatrix:
    """The 4x10 matrix Spectral Tetris builds for eigenvalues 8/3, 8/3, 8/3, 2."""
    entries = {
        (0, 0): ONE,
        (0, 1): ONE,
        (0, 2): root('1/3'),
        (0, 3): root('1/3'),
        (1, 2): root('2/3'),
        (1, 3): root('2/3', -1),
        (1, 4): ONE,
        (1, 5): root('1/6'),
        (1, 6): root('1/6'),
        (2, 5): root('5/6'),
        (2, 6): root('5/6', -1),
        (2, 7): ONE,
        (3, 8): ONE,
        (3, 9): ONE,
    }
    return SynthesisMatrix(4, 10, entries)


@pytest.fixture
def tight_spec() -> EigenvalueSpec:
    return EigenvalueSpec.tight(9, 4)


@pytest.fixture
def tight_matrix() -> SynthesisMatrix:
    """The 4x9 tight frame Spectral Tetris builds for eigenvalue 9/4."""
    entries = {
        (0, 0): ONE,
        (0, 1): ONE,
        (0, 2): root('1/8'),
        (0, 3): root('1/8'),
        (1, 2): root('7/8'),
        (1, 3): root('7/8', -1),
        (1, 4): root('1/4'),
        (1, 5): root('1/4'),
        (2, 4): root('3/4'),
        (2, 5): root('3/4', -1),
        (2, 6): root('3/8'),
        (2, 7): root('3/8'),
        (3, 6): root('5/8'),
        (3, 7): root('5/8', -1),
        (3, 8): ONE,
    }
    return SynthesisMatrix(4, 9, entries)


@pytest.fixture
def other_tight_matrix() -> SynthesisMatrix:
    """A different optimally sparse tight frame with 9 vectors in dimension 4, not built by Spectral Tetris."""
    entries = {
        (0, 0): ONE,
        (0, 1): root('5/8'),
        (0, 2): root('5/8'),
        (1, 1): root('3/8'),
        (1, 2): root('3/8', -1),
        (1, 3): root('3/8'),
        (1, 4): root('3/8'),
        (1, 5): root('3/8'),
        (1, 6): root('3/8'),
        (2, 3): root('5/8'),
        (2, 4): root('5/8', -1),
        (2, 7): ONE,
        (3, 5): root('5/8'),
        (3, 6): root('5/8', -1),
        (3, 8): ONE,
    }
    return SynthesisMatrix(4, 9, entries)
