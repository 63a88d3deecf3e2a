import random

import pytest

import oracles
from gen import random_problem
from wedgematroid.amalgam import (
    ALL,
    Amalgam,
    AmalgamProblem,
    canonical_amalgam,
    check_functoriality,
    check_omission_preservation,
    omits,
    omitting,
    verify_amalgam,
)
from wedgematroid.core import Matroid, StructureError, relabel, restrict


def oracle_amalgam_triples(p, a):
    """Collinear triples of the free amalgam computed from the lines of each side."""
    want = set()
    merged = {}
    for m, i, j in ((p.m1, p.i1, a.j1), (p.m2, p.i2, a.j2)):
        base = {y: x for x, y in enumerate(i)}
        for line in m.all_lines():
            img = frozenset(j[x] for x in line)
            on_base = frozenset(base[x] for x in line if x in base)
            if len(on_base) >= 2:
                merged.setdefault(on_base, set()).update(img)
            else:
                want |= oracles.triples_of([tuple(img)])
    for pts in merged.values():
        want |= oracles.triples_of([tuple(pts)])
    return want


def test_disjoint_union():
    line = Matroid(3, ((0, 1, 2),))
    p = AmalgamProblem(Matroid.free(0), line, line, (), ())
    a = canonical_amalgam(p)
    assert a.m3.n == 6
    assert set(a.m3.triples) == {(0, 1, 2), (3, 4, 5)}


def test_lines_through_base_pair_merge():
    # M0 = two points, each side puts one extra point on their line
    m0 = Matroid.free(2)
    side = Matroid(3, ((0, 1, 2),))
    a = canonical_amalgam(AmalgamProblem(m0, side, side, (0, 1), (0, 1)))
    assert a.m3.n == 4
    assert a.m3.lines == ((0, 1, 2, 3),)
    assert a.j2 == (0, 1, 3)


def test_amalgam_over_a_point_keeps_lines_separate():
    m0 = Matroid.free(1)
    side = Matroid(3, ((0, 1, 2),))
    a = canonical_amalgam(AmalgamProblem(m0, side, side, (0,), (0,)))
    assert set(a.m3.triples) == {(0, 1, 2), (0, 3, 4)}
    # two long lines through a base point: no new point appears
    assert a.m3.n == 5


def test_bad_inclusion_rejected(fano_m):
    # {1,2,3,4} is not closed in the Fano plane
    m0 = Matroid.free(4)
    with pytest.raises(StructureError):
        canonical_amalgam(AmalgamProblem(m0, fano_m, fano_m, (1, 2, 3, 5), (1, 2, 3, 5)))


def test_random_amalgams_are_free_amalgams():
    rng = random.Random(11)
    for _ in range(150):
        p = random_problem(rng, max_side=6)
        a = canonical_amalgam(p)
        assert verify_amalgam(a, p).ok
        assert oracles.exchange_ok(a.m3.n, a.m3.triples)
        assert set(a.m3.triples) == oracle_amalgam_triples(p, a)
        for m, j in ((p.m1, a.j1), (p.m2, a.j2)):
            assert oracles.is_weak(m.n, set(m.triples), a.m3.n, set(a.m3.triples), j)
            assert oracles.closure(a.m3.n, set(a.m3.triples), j) == frozenset(j)
        assert check_omission_preservation(p, a).ok


def test_verify_catches_wrong_triples():
    m0 = Matroid.free(1)
    side = Matroid(3, ((0, 1, 2),))
    p = AmalgamProblem(m0, side, side, (0,), (0,))
    good = canonical_amalgam(p)
    # drop the second line: j2 is no longer an embedding
    bad = Amalgam(Matroid(5, ((0, 1, 2),)), good.j1, good.j2)
    assert not verify_amalgam(bad, p).ok
    assert verify_amalgam(good, p).ok


def test_non_free_amalgam_is_an_amalgam_but_not_canonical():
    p = AmalgamProblem(Matroid.free(0), Matroid.free(2), Matroid.free(2), (), ())
    # a line across the two sides is allowed for some amalgam, not the free one
    other = Amalgam(Matroid(4, ((0, 1, 2),)), (0, 1), (2, 3))
    assert verify_amalgam(other, p, canonical=False).ok
    assert not verify_amalgam(other, p).ok


def test_functoriality_random_isos():
    rng = random.Random(5)
    for _ in range(40):
        p = random_problem(rng, max_side=6)
        g = list(range(p.m0.n))
        rng.shuffle(g)
        f1 = list(range(p.m1.n))
        f2 = list(range(p.m2.n))
        rng.shuffle(f1)
        rng.shuffle(f2)
        q1 = [0] * p.m0.n
        q2 = [0] * p.m0.n
        for x in range(p.m0.n):
            q1[g[x]] = f1[p.i1[x]]
            q2[g[x]] = f2[p.i2[x]]
        q = AmalgamProblem(relabel(p.m0, g), relabel(p.m1, f1), relabel(p.m2, f2), q1, q2)
        assert check_functoriality(p, q, f1, f2)


def test_functoriality_rejects_non_isos():
    line = Matroid(3, ((0, 1, 2),))
    p = AmalgamProblem(Matroid.free(0), line, line, (), ())
    with pytest.raises(StructureError):
        check_functoriality(p, p, (0, 0, 1), (0, 1, 2))


def test_omits(fano_m):
    assert not omits(fano_m, fano_m)
    assert omits(Matroid.free(7), fano_m)
    f = omitting(fano_m, "fano")
    assert f.admits(Matroid.free(3)) and not f.admits(fano_m)
    assert ALL.admits(fano_m)


def test_amalgam_over_a_line_omits_fano(fano_m):
    # two Fano planes minus a point, glued along a 3-point line
    sub, _ = restrict(fano_m, range(6))
    base = (0, 1, 2)
    p = AmalgamProblem(Matroid(3, ((0, 1, 2),)), sub, sub, base, base)
    a = canonical_amalgam(p)
    assert omits(a.m3, fano_m)
    assert check_omission_preservation(p, a).ok
