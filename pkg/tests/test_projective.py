import pytest
from hypothesis import given, settings

from conftest import matroids
from wedgematroid.closure import is_isomorphic
from wedgematroid.core import Matroid, StructureError
from wedgematroid.projective import (
    PartialPlane,
    fano,
    fano_confinement,
    free_extend,
    free_extension_step,
    from_matroid,
    has_quadrilateral,
    is_projective_plane,
    pending_growth,
    pg2,
)

QUAD = Matroid.free(4)


@pytest.mark.parametrize("p", [2, 3, 5])
def test_pg2_parameters(p):
    plane = pg2(p)
    q = p * p + p + 1
    assert plane.points == q and len(plane.lines) == q
    assert all(len(l) == p + 1 for l in plane.lines)
    assert is_projective_plane(plane)
    assert free_extension_step(plane) == plane
    assert pending_growth(plane) == ("none", 0)


@pytest.mark.parametrize("p", [0, 1, 4, 6, 9])
def test_pg2_rejects_non_primes(p):
    with pytest.raises(StructureError):
        pg2(p)


def test_fano_shape(fano_m):
    f = fano()
    assert f.n == 7 and len(f.lines) == 7
    assert is_isomorphic(fano_m, f)


def test_not_planes():
    assert not is_projective_plane(QUAD)
    # a triangle: lines pairwise meet, but no quadrilateral
    assert not is_projective_plane(Matroid(3, ()))
    assert has_quadrilateral(QUAD)
    assert not has_quadrilateral(Matroid(4, ((0, 1, 2, 3),)))


def test_quadrilateral_one_stage():
    trace = free_extend(QUAD, 1)
    last = trace.stages[-1]
    assert last.points == 7
    assert len(last.lines) == 6
    assert [a.kind for a in trace.added[0]] == ["point"] * 3


def test_quadrilateral_later_stages():
    trace = free_extend(QUAD, 3)
    sizes = [(s.points, len(s.lines)) for s in trace.stages]
    # the six 3-point lines cover 18 of the 21 pairs; stage 2 joins the
    # three diagonal points pairwise
    assert sizes[:3] == [(4, 6), (7, 6), (7, 9)]
    for s in trace.stages:
        assert s.is_valid()


def test_budget_stops_point_steps():
    trace = free_extend(QUAD, 6, budget=20)
    assert trace.partial
    assert trace.stages[-1].points <= 20


def test_invalid_partial_plane():
    p = PartialPlane(4, ((0, 1, 2), (0, 1, 3)))
    assert not p.is_valid()
    with pytest.raises(StructureError):
        PartialPlane(3, ((0, 5),))


@settings(max_examples=40, deadline=None)
@given(matroids(max_n=6))
def test_extension_stages_stay_partial_planes(m):
    trace = free_extend(m, 3, budget=200)
    prev = None
    for s in trace.stages:
        assert s.is_valid()
        if prev is not None:
            # old incidences survive
            assert s.points >= prev.points
            for old, new in zip(prev.lines, s.lines):
                assert set(old) <= set(new)
        prev = s


def test_confinement_in_fano():
    f = from_matroid(fano())
    e = fano_confinement(f, 3)
    assert e is not None and 3 in e.map
    e = fano_confinement(f, (1, 2))
    assert e is not None and {1, 2} <= set(e.map)
    assert fano_confinement(QUAD, 0) is None


def test_trace_json_stages_are_matroids():
    from wedgematroid.jsonio import matroid_from_json

    trace = free_extend(QUAD, 2).to_json()
    for s in trace["stages"]:
        matroid_from_json(s)
        assert PartialPlane.from_json(s).is_valid()
