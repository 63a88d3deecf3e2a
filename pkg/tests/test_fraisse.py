import json

import pytest

from wedgematroid.amalgam import ALL, omits, omitting
from wedgematroid.closure import Strength, check_embedding, find_embedding, is_closed
from wedgematroid.core import Matroid, StructureError, restrict
from wedgematroid.fraisse import (
    BuildLog,
    ExtensionProblem,
    Stage,
    build,
    certified_prefix,
    extension_property_check,
    extensions_of,
    realize,
    schedule,
    stage_from_json,
)
from wedgematroid.projective import fano

FANO = fano()
NO_FANO = omitting(FANO, "fano")


def test_zero_rounds_is_empty():
    assert build(ALL, 0).s == Matroid.free(0)


def test_first_round_adds_a_point():
    st = build(ALL, 1, k=1)
    assert st.s.n == 1


def test_triangle_schedule_has_line_problem():
    st = Stage(Matroid.free(3), ALL, 4)
    probs = schedule(st)
    line = Matroid(3, ((0, 1, 2),))
    assert any(p.a.n == 2 and p.b == line for p in probs)
    assert all(p.b.n <= 4 for p in probs)
    # the triangle itself is already there
    assert not any(p.a.n == 0 and p.b == Matroid.free(3) for p in probs)


def test_filter_excludes_fano_extensions():
    # three independent points are closed in the Fano plane
    a = Matroid.free(3)
    with_fano = {b for b, _ in extensions_of(a, ALL, 7)}
    without = {b for b, _ in extensions_of(a, NO_FANO, 7)}
    assert any(not omits(b, FANO) for b in with_fano)
    assert all(omits(b, FANO) for b in without)


def test_realize_free_point():
    s = Matroid(3, ((0, 1, 2),))
    prob = ExtensionProblem(Matroid.free(0), Matroid.free(1), (), ())
    st = realize(Stage(s), prob)
    assert st.s.n == 4 and st.s.triples == s.triples
    assert st.history[-1].image == (3,)


def test_realize_fano_over_independent_triple():
    s = Matroid.free(3)
    prob = ExtensionProblem(Matroid.free(3), FANO, (1, 3, 6), (0, 1, 2))
    assert check_embedding(Matroid.free(3), FANO, (1, 3, 6), Strength.WEDGE)
    st = realize(Stage(s), prob)
    assert not omits(st.s, FANO)
    e = find_embedding(FANO, st.s, Strength.WEDGE, fixed={1: 0, 3: 1, 6: 2})
    assert e is not None


def test_ep_single_point():
    rep = extension_property_check(Matroid.free(1), 2)
    missing = {(p.anchor, p.b.n) for p in rep.unrealized}
    assert ((), 2) in missing and ((0,), 2) in missing


def test_ep_rejects_structure_outside_class():
    with pytest.raises(StructureError):
        extension_property_check(FANO, 3, NO_FANO)


def test_chain_monotone_and_history_sound():
    log = BuildLog()
    st = build(NO_FANO, 40, k=4, log=log)
    for prev, cur in zip(log.stages, log.stages[1:]):
        assert restrict(cur, range(prev.n))[0] == prev
        assert is_closed(cur, range(prev.n))
    for h in st.history:
        assert check_embedding(h.problem.b, st.s, h.image, Strength.WEDGE)
        for x in range(h.problem.a.n):
            assert h.image[h.problem.inclusion[x]] == h.problem.anchor[x]
    assert all(omits(m, FANO) for m in log.stages)


def test_certified_prefix_has_relative_ep():
    st = build(ALL, 60, k=3)
    base = certified_prefix(st)
    assert base >= 2
    rep = extension_property_check(st.s, 3, ALL, base=base)
    assert rep.empty and rep.checked > 0


def test_budget_sets_partial():
    st = build(ALL, 500, k=4, budget=25)
    assert st.partial and st.s.n <= 25


def test_stage_json_round_trip():
    st = build(NO_FANO, 15, k=4)
    data = json.loads(json.dumps(st.to_json()))
    back = stage_from_json(data, NO_FANO)
    assert back.s == st.s and back.cursor == st.cursor
    assert [h.image for h in back.history] == [h.image for h in st.history]


def test_build_deterministic():
    a = build(NO_FANO, 30, k=4).to_json()
    b = build(NO_FANO, 30, k=4).to_json()
    assert json.dumps(a, sort_keys=True) == json.dumps(b, sort_keys=True)
