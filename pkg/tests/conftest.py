import random

import pytest
from hypothesis import strategies as st

import oracles
from wedgematroid.core import Matroid


@st.composite
def matroids(draw, max_n=7):
    n = draw(st.integers(0, max_n))
    rng = random.Random(draw(st.integers(0, 2**32 - 1)))
    _, lines = oracles.random_linear_space(rng, n)
    return Matroid(n, tuple(lines))


@pytest.fixture
def fano_m():
    return Matroid(7, ((0, 1, 2), (0, 3, 4), (0, 5, 6), (1, 3, 5), (1, 4, 6), (2, 3, 6), (2, 4, 5)))
