"""Random inputs for amalgamation tests."""

from __future__ import annotations

import random

import oracles
from wedgematroid.amalgam import AmalgamProblem
from wedgematroid.core import Matroid, relabel
from wedgematroid.enumeration import one_point_extensions


def random_matroid(rng: random.Random, n: int) -> Matroid:
    _, lines = oracles.random_linear_space(rng, n)
    return Matroid(n, tuple(lines))


def grow_over(rng: random.Random, m0: Matroid, size: int) -> tuple[Matroid, tuple[int, ...]]:
    """A random structure of ``size`` points containing ``m0`` as a closed
    subset; returns it with the (shuffled) embedding of ``m0``."""
    m = m0
    base = range(m0.n)
    while m.n < size:
        exts = [e for e in one_point_extensions(m, bound=size) if _base_closed(e, base)]
        m = rng.choice(exts)
    perm = list(range(m.n))
    rng.shuffle(perm)
    return relabel(m, perm), tuple(perm[x] for x in base)


def _base_closed(m: Matroid, base) -> bool:
    return oracles.closure(m.n, set(m.triples), base) == frozenset(base)


def random_problem(rng: random.Random, max_side: int = 7, max_base: int = 4) -> AmalgamProblem:
    m0 = random_matroid(rng, rng.randint(0, min(max_base, max_side)))
    m1, i1 = grow_over(rng, m0, rng.randint(m0.n, max_side))
    m2, i2 = grow_over(rng, m0, rng.randint(m0.n, max_side))
    return AmalgamProblem(m0, m1, m2, i1, i2)
