"""Wedge-closed subsets, induced structures, embeddings and canonical forms."""

from __future__ import annotations

import struct
from dataclasses import dataclass
from enum import Enum
from itertools import combinations
from typing import Iterable, Iterator, Mapping, Optional, Sequence

from .core import Matroid, StructureError, _wedge, line_meet_index, relabel, restrict


class Strength(str, Enum):
    WEAK = "weak"
    WEDGE = "wedge"
    ISO = "iso"


@dataclass(frozen=True)
class ClosedSubset:
    host: Matroid
    points: frozenset[int]

    def __len__(self):
        return len(self.points)

    def sorted(self) -> tuple[int, ...]:
        return tuple(sorted(self.points))


@dataclass(frozen=True)
class Embedding:
    source: Matroid
    target: Matroid
    map: tuple[int, ...]
    strength: Strength

    def __call__(self, p: int) -> int:
        return self.map[p]

    def image(self) -> frozenset[int]:
        return frozenset(self.map)

    def to_json(self) -> dict:
        return {"map": list(self.map), "strength": self.strength.value}


# -- closure ------------------------------------------------------------------


def _spanned_lines(m: Matroid, pts: set[int]) -> list[int]:
    count: dict[int, int] = {}
    for p in pts:
        for idx in m.point_lines[p]:
            count[idx] = count.get(idx, 0) + 1
    return sorted(idx for idx, c in count.items() if c >= 2)


def closure_points(m: Matroid, points: Iterable[int]) -> frozenset[int]:
    # only two long lines each spanned by members can meet in a new point
    pts = set(points)
    for p in pts:
        if not 0 <= p < m.n:
            raise StructureError(f"point {p} not in structure of size {m.n}")
    while True:
        spanned = _spanned_lines(m, pts)
        new = set()
        for i, j in combinations(spanned, 2):
            q = line_meet_index(m, i, j)
            if q is not None and q not in pts:
                new.add(q)
        if not new:
            return frozenset(pts)
        pts |= new


def generate(m: Matroid, points: Iterable[int]) -> ClosedSubset:
    """Least superset of ``points`` closed under the wedge function of ``m``."""
    return ClosedSubset(m, closure_points(m, points))


def is_closed(m: Matroid, points: Iterable[int]) -> bool:
    pts = set(points)
    spanned = _spanned_lines(m, pts)
    for i, j in combinations(spanned, 2):
        q = line_meet_index(m, i, j)
        if q is not None and q not in pts:
            return False
    return True


def induced(m: Matroid, subset: ClosedSubset | Iterable[int]) -> Matroid:
    """Structure induced on a closed subset, relabelled in increasing id order."""
    pts = subset.points if isinstance(subset, ClosedSubset) else frozenset(subset)
    if not is_closed(m, pts):
        raise StructureError("induced structure requested on a subset that is not wedge-closed")
    return restrict(m, pts)[0]


# -- embeddings -----------------------------------------------------------------


def _dominates(big: tuple[int, ...], small: tuple[int, ...]) -> bool:
    if len(big) < len(small):
        return False
    return all(b >= s for b, s in zip(big, small))


def _search_order(n: Matroid, fixed: Sequence[int]) -> list[int]:
    order = list(fixed)
    placed = set(order)
    rest = set(range(n.n)) - placed
    while rest:
        def key(x):
            # prefer points pinned down by long lines through placed points
            pinned = sum(1 for idx in n.point_lines[x] if len(n.line_set(idx) & placed) >= 2)
            touching = sum(1 for idx in n.point_lines[x] if n.line_set(idx) & placed)
            return (-pinned, -touching, -n.degree(x), x)
        x = min(rest, key=key)
        order.append(x)
        placed.add(x)
        rest.discard(x)
    return order


def iter_embeddings(
    n: Matroid,
    m: Matroid,
    strength: Strength | str = Strength.WEAK,
    fixed: Optional[Mapping[int, int]] = None,
    avoid: Iterable[int] = (),
) -> Iterator[Embedding]:
    """All embeddings of ``n`` into ``m`` of the given strength, in the
    deterministic search order.

    ``fixed`` pins some source points to target points; ``avoid`` lists target
    points that may not be used.
    """
    strength = Strength(strength)
    if n.n > m.n or (strength is Strength.ISO and n.n != m.n):
        return
    if strength is Strength.ISO and len(n.lines) != len(m.lines):
        return
    fixed = dict(fixed or {})
    if len(set(fixed.values())) != len(fixed):
        return
    forbidden = set(avoid)

    order = _search_order(n, sorted(fixed))
    pos = {x: i for i, x in enumerate(order)}
    m_profiles = m.profiles
    n_profiles = n.profiles
    if strength is Strength.ISO:
        compatible = lambda x, y: m_profiles[y] == n_profiles[x]
    else:
        compatible = lambda x, y: _dominates(m_profiles[y], n_profiles[x])
    by_degree = sorted(range(m.n), key=lambda y: (-m.degree(y), y))

    # for each source point: long lines pinning it through two earlier points,
    # and earlier points it shares an otherwise unplaced long line with
    earlier_pairs = []
    earlier_single = []
    for i, x in enumerate(order):
        pins, singles = [], []
        for idx in n.point_lines[x]:
            prev = [p for p in n.lines[idx] if pos[p] < i]
            if len(prev) >= 2:
                pins.append((prev[0], prev[1]))
            elif prev:
                singles.append(prev[0])
        earlier_pairs.append(pins)
        earlier_single.append(singles)

    f = [-1] * n.n
    used = set()

    def consistent(i: int, x: int, y: int) -> bool:
        for j in range(i):
            u = order[j]
            fu = f[u]
            for k in range(j + 1, i):
                v = order[k]
                if n.collinear(x, u, v) != m.collinear(y, fu, f[v]):
                    return False
        return True

    def candidates(i: int, x: int) -> Iterable[int]:
        if x in fixed:
            return (fixed[x],)
        pins = earlier_pairs[i]
        pool = None
        for u in earlier_single[i]:
            fu = f[u]
            reach = set()
            for idx in m.point_lines[fu]:
                reach |= m.line_set(idx)
            reach.discard(fu)
            pool = reach if pool is None else pool & reach
            if not pool:
                return ()
        if not pins and pool is None:
            return by_degree
        for u, v in pins:
            idx = m.line_index(f[u], f[v])
            if idx is None:
                return ()
            pts = m.line_set(idx)
            pool = set(pts) if pool is None else pool & pts
            if not pool:
                return ()
        return sorted(pool, key=lambda y: (-m.degree(y), y))

    def rec(i: int) -> Iterator[tuple[int, ...]]:
        if i == len(order):
            yield tuple(f)
            return
        x = order[i]
        for y in candidates(i, x):
            if y in used or y in forbidden or not compatible(x, y):
                continue
            if not consistent(i, x, y):
                continue
            f[x] = y
            used.add(y)
            yield from rec(i + 1)
            used.discard(y)
            f[x] = -1

    for mp in rec(0):
        if strength is Strength.WEDGE and not is_closed(m, mp):
            continue
        yield Embedding(n, m, mp, strength)


def find_embedding(
    n: Matroid,
    m: Matroid,
    strength: Strength | str = Strength.WEAK,
    fixed: Optional[Mapping[int, int]] = None,
) -> Optional[Embedding]:
    """First embedding of ``n`` into ``m`` of the requested strength, or None."""
    return next(iter_embeddings(n, m, strength, fixed), None)


def check_embedding(n: Matroid, m: Matroid, mp: Sequence[int], strength: Strength | str) -> bool:
    """Direct (non-search) check that ``mp`` is an embedding of the given strength."""
    strength = Strength(strength)
    mp = tuple(mp)
    if len(mp) != n.n or len(set(mp)) != n.n or any(not 0 <= y < m.n for y in mp):
        return False
    if strength is Strength.ISO and n.n != m.n:
        return False
    for a, b, c in combinations(range(n.n), 3):
        if n.collinear(a, b, c) != m.collinear(mp[a], mp[b], mp[c]):
            return False
    if strength is Strength.WEAK:
        return True
    return is_closed(m, mp)


def commutes_with_wedge(n: Matroid, m: Matroid, mp: Sequence[int]) -> bool:
    """Exhaustive check of f(wedge_N(a,b,c,d)) == wedge_M(f a, f b, f c, f d)."""
    pts = range(n.n)
    for a in pts:
        for b in pts:
            if a == b:
                continue
            for c in pts:
                for d in pts:
                    if c == d:
                        continue
                    if mp[_wedge(n, a, b, c, d)] != _wedge(m, mp[a], mp[b], mp[c], mp[d]):
                        return False
    return True


def is_isomorphic(m1: Matroid, m2: Matroid) -> bool:
    if m1.n != m2.n or len(m1.triples) != len(m2.triples):
        return False
    return find_embedding(m1, m2, Strength.ISO) is not None


def automorphisms(m: Matroid) -> list[tuple[int, ...]]:
    return [e.map for e in iter_embeddings(m, m, Strength.ISO)]


# -- canonical form ---------------------------------------------------------------


def _refined_colors(m: Matroid) -> list[int]:
    colors = [0] * m.n
    while True:
        sig = []
        for p in range(m.n):
            around = sorted(
                (len(m.lines[idx]), tuple(sorted(colors[q] for q in m.lines[idx] if q != p)))
                for idx in m.point_lines[p]
            )
            sig.append((colors[p], tuple(around)))
        ranks = {s: i for i, s in enumerate(sorted(set(sig)))}
        new = [ranks[s] for s in sig]
        if len(set(new)) == len(set(colors)):
            return new
        colors = new


def _twin_key(m: Matroid, p: int):
    # points on no long line, or on exactly one long line and nothing else,
    # can be swapped by an automorphism
    idxs = m.point_lines[p]
    if len(idxs) == 0:
        return ("free",)
    if len(idxs) == 1:
        return ("line", idxs[0])
    return ("self", p)


def canonical_labeling(m: Matroid) -> tuple[int, ...]:
    """Order of the original points realising the canonical form.

    Points are placed colour class by colour class; within that constraint the
    sequence of incidence rows is maximised lexicographically.
    """
    n = m.n
    if n == 0:
        return ()
    colors = _refined_colors(m)
    slots = sorted(colors)
    twins = [_twin_key(m, p) for p in range(n)]

    best_rows: list[tuple[int, ...]] = []
    best_order: list[int] = []
    rows: list[tuple[int, ...]] = []
    order: list[int] = []
    used = [False] * n

    def row(k: int, v: int) -> tuple[int, ...]:
        return tuple(
            1 if m.collinear(order[i], order[j], v) else 0
            for j in range(k)
            for i in range(j)
        )

    def rec(k: int):
        nonlocal best_rows, best_order
        if k == n:
            if not best_order or rows > best_rows:
                best_rows, best_order = list(rows), list(order)
            return
        seen = set()
        cands = []
        for v in range(n):
            if used[v] or colors[v] != slots[k]:
                continue
            if twins[v][0] != "self":
                if twins[v] in seen:
                    continue
                seen.add(twins[v])
            cands.append((row(k, v), v))
        cands.sort(key=lambda rv: (rv[0], -rv[1]), reverse=True)
        for r, v in cands:
            rows.append(r)
            if best_order and rows < best_rows[: k + 1]:
                rows.pop()
                continue
            order.append(v)
            used[v] = True
            rec(k + 1)
            used[v] = False
            order.pop()
            rows.pop()

    rec(0)
    return tuple(best_order)


def canonical_form(m: Matroid) -> bytes:
    """Byte string equal for two structures iff they are isomorphic."""
    order = canonical_labeling(m)
    pos = {p: i for i, p in enumerate(order)}
    triples = sorted(tuple(sorted(pos[p] for p in t)) for t in m.triples)
    head = struct.pack(">HI", m.n, len(triples))
    body = b"".join(struct.pack(">HHH", *t) for t in triples)
    return head + body


def canonical_matroid(m: Matroid) -> Matroid:
    order = canonical_labeling(m)
    pos = [0] * m.n
    for i, p in enumerate(order):
        pos[p] = i
    return relabel(m, pos)
