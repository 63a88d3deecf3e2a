import random
from itertools import combinations

import pytest

import oracles
from wedgematroid.amalgam import ALL
from wedgematroid.closure import Strength, closure_points, find_embedding
from wedgematroid.core import Matroid, join, meet
from wedgematroid.fraisse import build
from wedgematroid.projective import pg2_matroid
from wedgematroid.witnesses import (
    IndependenceQuery,
    build_mn,
    check_independence_axioms,
    independence,
    independent,
    parallel_condition,
    random_query,
    realize_independent_copy,
    same_type,
    verify_mn,
)


@pytest.fixture(scope="module")
def stage():
    return build(ALL, 40, k=4).s


def test_m0_shape():
    w = build_mn(0)
    assert w.m.n == 7
    assert w.m.lines == ((2, 3, 6), (4, 5, 6))
    assert verify_mn(w).ok


@pytest.mark.parametrize("n", [1, 2, 5, 12])
def test_mn_small(n):
    w = build_mn(n)
    rep = verify_mn(w)
    assert rep.ok, rep.to_json()
    assert w.m.n == n + 7
    l1, l2 = parallel_condition(w)
    assert meet(w.m, join(w.m, *l1), join(w.m, *l2)) is None


def test_mn_q_points_are_on_two_lines():
    # q_i lies on two lines when added and gains one more from q_(i+1)
    w = build_mn(8)
    assert [w.m.degree(w.q(i)) for i in range(9)] == [3] * 8 + [2]


def test_mn_has_no_small_plane():
    w = build_mn(12)
    for p in (2, 3):
        assert find_embedding(pg2_matroid(p), w.m, Strength.WEAK) is None


def test_mn_rejects_negative():
    with pytest.raises(ValueError):
        build_mn(-1)


def oracle_independent(host, a, b, c):
    n, t = host.n, set(host.triples)
    x = oracles.closure(n, t, a | c)
    y = oracles.closure(n, t, b | c)
    z = oracles.closure(n, t, c)
    w = oracles.closure(n, t, a | b | c)
    if x & y != z or w != x | y:
        return False
    want = {tr for tr in t if set(tr) <= x or set(tr) <= y}
    for p, q in combinations(sorted(z), 2):
        pts = oracles.line(n, t, p, q) & (x | y)
        want |= {tuple(sorted(s)) for s in combinations(pts, 3)}
    return want == {tr for tr in t if set(tr) <= w}


def test_independence_matches_oracle(stage):
    rng = random.Random(3)
    seen = {True: 0, False: 0}
    for _ in range(150):
        q = random_query(stage, rng, max_size=2)
        got = independent(q)
        assert got == oracle_independent(stage, set(q.a), set(q.b), set(q.c))
        seen[got] += 1
    assert seen[False] > 0 and seen[True] > 0


def test_independence_small_cases():
    line = Matroid(3, ((0, 1, 2),))
    # two points generate only themselves
    assert independent(IndependenceQuery.of(line, [0], [1], []))
    # a collinear triple is not a free amalgam of {0, 1} and {2}
    assert not independent(IndependenceQuery.of(line, [0, 1], [2], []))
    # one base point does not span the line, so 0, 1 are dependent over 2 ...
    assert not independent(IndependenceQuery.of(line, [0], [1], [2]))
    # ... but two base points do
    four = Matroid(4, ((0, 1, 2, 3),))
    assert independent(IndependenceQuery.of(four, [0], [3], [1, 2]))
    free = Matroid.free(2)
    assert independent(IndependenceQuery.of(free, [0], [1], []))
    r = independence(IndependenceQuery.of(line, [0], [0], []))
    assert not r and "meet" in r.reason


def test_same_type():
    line = Matroid(4, ((0, 1, 2),))
    assert same_type(line, [], [0, 1], [1, 2])
    assert same_type(line, [], [0, 3], [0, 1])
    assert not same_type(line, [], [0, 1, 3], [0, 1, 2])
    assert same_type(line, [2], [0], [1])
    assert not same_type(line, [1, 2], [0], [3])
    assert not same_type(line, [0], [0], [1])


def test_axioms_on_stage(stage):
    rng = random.Random(8)
    sample = [random_query(stage, rng) for _ in range(120)]
    extra = [frozenset(rng.sample(range(stage.n), 1)) for _ in range(4)]
    rep = check_independence_axioms(stage, sample, extra=extra)
    assert rep.ok, rep.to_json()
    assert rep.checked["symmetry"] == 120


def test_axioms_with_automorphisms():
    f = pg2_matroid(2)
    from wedgematroid.closure import automorphisms

    autos = automorphisms(f)[:10]
    rng = random.Random(1)
    sample = [random_query(f, rng) for _ in range(30)]
    rep = check_independence_axioms(f, sample, autos=autos)
    assert rep.ok and rep.checked["invariance"] == 300


def test_existence(stage):
    rng = random.Random(4)
    for _ in range(10):
        q = random_query(stage, rng)
        res = realize_independent_copy(stage, q.a, q.b, q.c)
        assert res.ok
        assert closure_points(res.grown, range(stage.n)) == frozenset(range(stage.n))
