"""Canonical amalgamation of wedge-matroids and omission of a fixed configuration."""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations
from typing import Optional, Sequence

from .closure import Strength, check_embedding, find_embedding
from .core import Matroid, StructureError, exchange_violations


@dataclass(frozen=True)
class AmalgamProblem:
    """``m0`` wedge-embedded into ``m1`` by ``i1`` and into ``m2`` by ``i2``."""

    m0: Matroid
    m1: Matroid
    m2: Matroid
    i1: tuple[int, ...]
    i2: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "i1", tuple(self.i1))
        object.__setattr__(self, "i2", tuple(self.i2))

    def check(self) -> None:
        for name, m, i in (("i1", self.m1, self.i1), ("i2", self.m2, self.i2)):
            if not check_embedding(self.m0, m, i, Strength.WEDGE):
                raise StructureError(f"{name} is not a wedge-embedding of m0")

    def to_json(self) -> dict:
        from .jsonio import matroid_to_json

        return {
            "m0": matroid_to_json(self.m0),
            "m1": matroid_to_json(self.m1),
            "m2": matroid_to_json(self.m2),
            "i1": list(self.i1),
            "i2": list(self.i2),
        }


@dataclass(frozen=True)
class Amalgam:
    m3: Matroid
    j1: tuple[int, ...]
    j2: tuple[int, ...]

    def to_json(self) -> dict:
        from .jsonio import matroid_to_json

        return {**matroid_to_json(self.m3), "j1": list(self.j1), "j2": list(self.j2)}


@dataclass
class Report:
    ok: bool = True
    failures: list[str] = field(default_factory=list)

    def fail(self, msg: str) -> None:
        self.ok = False
        self.failures.append(msg)

    def __bool__(self) -> bool:
        return self.ok

    def to_json(self) -> dict:
        return {"ok": self.ok, "failures": list(self.failures)}


def _glue_map(p: AmalgamProblem) -> tuple[int, tuple[int, ...], tuple[int, ...]]:
    # M1 keeps its ids; points of M2 outside the copy of M0 follow in order
    n1 = p.m1.n
    j1 = tuple(range(n1))
    from_m0 = {y: p.i1[x] for x, y in enumerate(p.i2)}
    j2 = []
    nxt = n1
    for y in range(p.m2.n):
        if y in from_m0:
            j2.append(from_m0[y])
        else:
            j2.append(nxt)
            nxt += 1
    return nxt, j1, tuple(j2)


def canonical_amalgam(p: AmalgamProblem, check: bool = True) -> Amalgam:
    """The free amalgam of ``m1`` and ``m2`` over ``m0``.

    Lines of ``m1`` and ``m2`` that are spanned by two points of ``m0`` are
    merged; every other line keeps its points, and pairs across the two sides
    that are not on a merged line span 2-point lines.
    """
    if check:
        p.check()
    n3, j1, j2 = _glue_map(p)
    base = set(j1[x] for x in p.i1)  # the copy of M0 inside M3
    merged: dict[frozenset, set[int]] = {}
    kept = []
    for m, j in ((p.m1, j1), (p.m2, j2)):
        for line in m.lines:
            img = [j[x] for x in line]
            on_base = [x for x in img if x in base]
            if len(on_base) >= 2:
                # both sides trace the same M0 line, so its base points key the merge
                merged.setdefault(frozenset(on_base), set()).update(img)
            else:
                kept.append(tuple(img))
    lines = kept + [tuple(sorted(pts)) for _, pts in sorted(merged.items(), key=lambda kv: sorted(kv[0]))]
    m3 = Matroid(n3, tuple(lines))
    if __debug__ and check:
        viol = exchange_violations(n3, m3.triples)
        if viol:
            raise AssertionError(f"canonical amalgam broke the exchange axiom: {viol[:3]}")
    return Amalgam(m3, j1, j2)


def free_amalgam_triples(p: AmalgamProblem, a: Amalgam) -> frozenset[tuple[int, int, int]]:
    """Collinear triples of the amalgam predicted directly from the two sides:
    images of R on each side, plus triples lying on one line through two M0
    points."""
    out = set()
    for m, j in ((p.m1, a.j1), (p.m2, a.j2)):
        for t in m.triples:
            out.add(tuple(sorted(j[x] for x in t)))
    base = [a.j1[x] for x in p.i1]
    inv1 = {y: x for x, y in enumerate(a.j1)}
    inv2 = {y: x for x, y in enumerate(a.j2)}
    for u, v in combinations(base, 2):
        pts = {a.j1[x] for x in p.m1.line_through(inv1[u], inv1[v])}
        pts |= {a.j2[x] for x in p.m2.line_through(inv2[u], inv2[v])}
        out.update(combinations(sorted(pts), 3))
    return frozenset(out)


def verify_amalgam(a: Amalgam, p: AmalgamProblem, canonical: bool = True) -> Report:
    """Check that ``a`` is an amalgam of the problem: both j-maps are
    wedge-embeddings that agree on M0 and cover M3.  With ``canonical`` the
    collinear triples must also be exactly those of the canonical amalgam."""
    rep = Report()
    m3 = a.m3
    viol = exchange_violations(m3.n, m3.triples)
    if viol:
        rep.fail(f"m3 violates the exchange axiom ({len(viol)} pairs)")
    for name, m, j in (("j1", p.m1, a.j1), ("j2", p.m2, a.j2)):
        if len(j) != m.n or len(set(j)) != m.n or any(not 0 <= y < m3.n for y in j):
            rep.fail(f"{name} is not an injective map into m3")
            continue
        if not check_embedding(m, m3, j, Strength.WEAK):
            rep.fail(f"{name} does not preserve and reflect collinearity")
        elif not check_embedding(m, m3, j, Strength.WEDGE):
            rep.fail(f"{name} does not commute with wedge (image not closed)")
    if rep.ok:
        if any(a.j1[p.i1[x]] != a.j2[p.i2[x]] for x in range(p.m0.n)):
            rep.fail("j1 o i1 != j2 o i2")
        if set(a.j1) | set(a.j2) != set(range(m3.n)):
            rep.fail("m3 is not the union of the images of m1 and m2")
    if rep.ok and canonical and free_amalgam_triples(p, a) != m3.triples:
        rep.fail("collinear triples differ from the canonical amalgam")
    return rep


def _is_iso(src: Matroid, dst: Matroid, f: Sequence[int]) -> bool:
    return src.n == dst.n and check_embedding(src, dst, f, Strength.ISO)


def check_functoriality(
    p: AmalgamProblem, q: AmalgamProblem, f1: Sequence[int], f2: Sequence[int]
) -> bool:
    """Given isomorphisms ``f1: p.m1 -> q.m1`` and ``f2: p.m2 -> q.m2`` agreeing
    on the base, test that their union is an isomorphism of the two canonical
    amalgams."""
    if not _is_iso(p.m1, q.m1, f1) or not _is_iso(p.m2, q.m2, f2):
        raise StructureError("f1 and f2 must be isomorphisms")
    inv_q1 = {y: x for x, y in enumerate(q.i1)}
    inv_q2 = {y: x for x, y in enumerate(q.i2)}
    if p.m0.n != q.m0.n:
        raise StructureError("base sizes differ")
    for x in range(p.m0.n):
        a = inv_q1.get(f1[p.i1[x]])
        b = inv_q2.get(f2[p.i2[x]])
        if a is None or b is None or a != b:
            raise StructureError("f1 and f2 disagree on the base")
    am_p = canonical_amalgam(p)
    am_q = canonical_amalgam(q)
    f = [-1] * am_p.m3.n
    for x in range(p.m1.n):
        f[am_p.j1[x]] = am_q.j1[f1[x]]
    for y in range(p.m2.n):
        t = am_q.j2[f2[y]]
        if f[am_p.j2[y]] not in (-1, t):
            return False
        f[am_p.j2[y]] = t
    return _is_iso(am_p.m3, am_q.m3, f)


# -- omission ---------------------------------------------------------------------


@dataclass(frozen=True)
class ClassFilter:
    """Either every structure (``omit is None``) or those omitting ``omit``."""

    omit: Optional[Matroid] = None
    name: str = "all"

    def admits(self, m: Matroid) -> bool:
        return self.omit is None or omits(m, self.omit)

    def to_json(self) -> dict:
        return {"name": self.name}


ALL = ClassFilter()


def omitting(p: Matroid, name: str = "custom") -> ClassFilter:
    return ClassFilter(p, name)


def omits(m: Matroid, p: Matroid) -> bool:
    """True iff no injective map carries ``p`` isomorphically onto its image in ``m``."""
    return find_embedding(p, m, Strength.WEAK) is None


def check_omission_preservation(p: AmalgamProblem, a: Optional[Amalgam] = None) -> Report:
    """The two counting facts behind omission preservation:

    (i) a line of M1 or M2 not spanned by two M0 points has as many points in M3;
    (ii) a line of M3 meeting each side in at most one point has exactly two points.
    """
    if a is None:
        a = canonical_amalgam(p)
    rep = Report()
    for label, m, i, j in (("m1", p.m1, p.i1, a.j1), ("m2", p.m2, p.i2, a.j2)):
        base = set(i)
        for line in m.all_lines():
            if sum(1 for x in line if x in base) >= 2:
                continue
            got = len(a.m3.line_through(j[line[0]], j[line[1]]))
            if got != len(line):
                rep.fail(f"(i) line {list(line)} of {label} has {len(line)} points but {got} in m3")
    side1, side2 = set(a.j1), set(a.j2)
    for line in a.m3.all_lines():
        if sum(1 for x in line if x in side1) <= 1 and sum(1 for x in line if x in side2) <= 1:
            if len(line) != 2:
                rep.fail(f"(ii) line {list(line)} of m3 has {len(line)} points")
    return rep
