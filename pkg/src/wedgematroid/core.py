"""Simple matroids of rank at most 3, their linear spaces, and the partial
join/meet operations together with the 4-ary wedge function.

A structure on ``n`` points uses the ids ``0 .. n-1``.  Internally a
:class:`Matroid` stores only its *long* lines (three or more points); every
pair of points not covered by a long line spans an implicit two-point line.
The set of collinear triples ``R`` is derived from the long lines.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from itertools import combinations
from typing import Iterable, NamedTuple, Optional, Sequence

Triple = tuple[int, int, int]
LineId = tuple[int, int]


class StructureError(ValueError):
    """Malformed input: bad point ids, degenerate triples, overlapping lines."""


class ExchangeViolation(NamedTuple):
    first: Triple
    second: Triple
    missing: tuple[Triple, ...]


class ExchangeAxiomError(StructureError):
    def __init__(self, violations: list[ExchangeViolation]):
        self.violations = violations
        super().__init__(f"exchange axiom fails for {len(violations)} pair(s) of triples")


def _pair(a: int, b: int) -> tuple[int, int]:
    return (a, b) if a < b else (b, a)


@dataclass(frozen=True)
class Matroid:
    """A simple matroid of rank <= 3 on points ``0..n-1``.

    ``lines`` holds the long lines as sorted tuples, sorted.  Two structures
    compare equal iff they have the same point count and the same collinear
    triples.
    """

    n: int
    lines: tuple[tuple[int, ...], ...] = ()
    _pair_line: dict = field(init=False, repr=False, compare=False, hash=False)
    _line_sets: tuple = field(init=False, repr=False, compare=False, hash=False)

    def __post_init__(self):
        if self.n < 0:
            raise StructureError("point count must be non-negative")
        norm = []
        for line in self.lines:
            pts = tuple(sorted(set(line)))
            if len(pts) != len(line):
                raise StructureError(f"line {list(line)} repeats a point")
            if len(pts) < 3:
                raise StructureError(f"long line {list(line)} has fewer than 3 points")
            if pts[0] < 0 or pts[-1] >= self.n:
                raise StructureError(f"line {list(line)} has a point outside [0, {self.n})")
            norm.append(pts)
        norm.sort()
        pair_line = {}
        for idx, pts in enumerate(norm):
            for p in combinations(pts, 2):
                if p in pair_line:
                    raise StructureError(
                        f"lines {list(norm[pair_line[p]])} and {list(pts)} share two points"
                    )
                pair_line[p] = idx
        object.__setattr__(self, "lines", tuple(norm))
        object.__setattr__(self, "_pair_line", pair_line)
        object.__setattr__(self, "_line_sets", tuple(frozenset(l) for l in norm))

    # -- construction ------------------------------------------------------

    @classmethod
    def free(cls, n: int) -> "Matroid":
        return cls(n, ())

    @classmethod
    def from_triples(cls, n: int, triples: Iterable[Sequence[int]]) -> "Matroid":
        return validate_matroid(n, triples)

    # -- derived data ------------------------------------------------------

    @cached_property
    def triples(self) -> frozenset[Triple]:
        return frozenset(t for line in self.lines for t in combinations(line, 3))

    @cached_property
    def point_lines(self) -> tuple[tuple[int, ...], ...]:
        """Indices of the long lines through each point."""
        through: list[list[int]] = [[] for _ in range(self.n)]
        for idx, line in enumerate(self.lines):
            for p in line:
                through[p].append(idx)
        return tuple(tuple(t) for t in through)

    @cached_property
    def profiles(self) -> tuple[tuple[int, ...], ...]:
        """Sizes of the long lines through each point, largest first."""
        return tuple(
            tuple(sorted((len(self.lines[i]) for i in idxs), reverse=True))
            for idxs in self.point_lines
        )

    def degree(self, p: int) -> int:
        return len(self.point_lines[p])

    def line_index(self, a: int, b: int) -> Optional[int]:
        """Index of the long line through ``a`` and ``b``, or None for a 2-point line."""
        return self._pair_line.get(_pair(a, b))

    def collinear(self, a: int, b: int, c: int) -> bool:
        idx = self._pair_line.get(_pair(a, b))
        return idx is not None and c in self._line_sets[idx]

    def line_through(self, a: int, b: int) -> tuple[int, ...]:
        """All points of the line ``a v b`` (sorted)."""
        if a == b:
            raise StructureError("a line needs two distinct points")
        idx = self._pair_line.get(_pair(a, b))
        if idx is None:
            return _pair(a, b)
        return self.lines[idx]

    def line_set(self, idx: int) -> frozenset[int]:
        return self._line_sets[idx]

    def all_lines(self) -> list[tuple[int, ...]]:
        """Long lines followed by every implicit 2-point line, deterministic order."""
        out = list(self.lines)
        out.extend(p for p in combinations(range(self.n), 2) if p not in self._pair_line)
        return out

    def __len__(self) -> int:
        return self.n

    def __repr__(self) -> str:
        return f"Matroid(n={self.n}, lines={[list(l) for l in self.lines]})"


@dataclass(frozen=True)
class LinearSpace:
    """Points ``0..n-1`` and the lines with at least three points."""

    n: int
    long_lines: frozenset[frozenset[int]]

    def __post_init__(self):
        object.__setattr__(self, "long_lines", frozenset(frozenset(l) for l in self.long_lines))


# -- operations -------------------------------------------------------------


def exchange_violations(n: int, triples: Iterable[Sequence[int]]) -> list[ExchangeViolation]:
    """Every pair of triples ``{a,b,c}, {a,b,d}`` whose union is not an R-clique.

    Raises :class:`StructureError` for out-of-range ids, repeated points inside a
    triple, or a triple listed twice.
    """
    tset = _normalize_triples(n, triples)
    by_pair: dict[tuple[int, int], list[int]] = {}
    for t in tset:
        a, b, c = t
        by_pair.setdefault((a, b), []).append(c)
        by_pair.setdefault((a, c), []).append(b)
        by_pair.setdefault((b, c), []).append(a)
    found = {}
    for (a, b), thirds in by_pair.items():
        for c, d in combinations(sorted(thirds), 2):
            quad = (a, b, c, d)
            missing = tuple(
                t for t in (tuple(sorted(q)) for q in combinations(quad, 3)) if t not in tset
            )
            if missing:
                t1 = tuple(sorted((a, b, c)))
                t2 = tuple(sorted((a, b, d)))
                key = (t1, t2) if t1 < t2 else (t2, t1)
                found[key] = ExchangeViolation(key[0], key[1], tuple(sorted(missing)))
    return [found[k] for k in sorted(found)]


def _normalize_triples(n: int, triples: Iterable[Sequence[int]]) -> set[Triple]:
    if n < 0:
        raise StructureError("point count must be non-negative")
    out: set[Triple] = set()
    for raw in triples:
        t = tuple(sorted(int(x) for x in raw))
        if len(t) != 3:
            raise StructureError(f"triple {list(raw)} does not have three entries")
        if t[0] < 0 or t[2] >= n:
            raise StructureError(f"triple {list(raw)} has a point outside [0, {n})")
        if t[0] == t[1] or t[1] == t[2]:
            raise StructureError(f"degenerate triple {list(raw)}")
        if t in out:
            raise StructureError(f"duplicate triple {list(t)}")
        out.add(t)
    return out


def validate_matroid(n: int, triples: Iterable[Sequence[int]]) -> Matroid:
    """Build a :class:`Matroid` from collinear triples.

    Raises :class:`ExchangeAxiomError` (carrying all violations) when the
    exchange axiom fails.
    """
    tset = _normalize_triples(n, triples)
    violations = exchange_violations(n, tset)
    if violations:
        raise ExchangeAxiomError(violations)
    return Matroid(n, _lines_from_triples(tset))


def _lines_from_triples(tset: set[Triple]) -> list[tuple[int, ...]]:
    # valid triple sets: the line through a, b is {a, b} plus every c with R(a, b, c)
    thirds: dict[tuple[int, int], set[int]] = {}
    for a, b, c in tset:
        thirds.setdefault((a, b), set()).add(c)
        thirds.setdefault((a, c), set()).add(b)
        thirds.setdefault((b, c), set()).add(a)
    lines = set()
    for (a, b), cs in thirds.items():
        lines.add(tuple(sorted(cs | {a, b})))
    return sorted(lines)


def rank(m: Matroid) -> int:
    if m.n <= 2:
        return m.n
    if len(m.lines) == 1 and len(m.lines[0]) == m.n:
        return 2
    return 3


def to_linear_space(m: Matroid) -> LinearSpace:
    return LinearSpace(m.n, frozenset(frozenset(l) for l in m.lines))


def from_linear_space(p: LinearSpace) -> Matroid:
    return Matroid(p.n, tuple(tuple(sorted(l)) for l in p.long_lines))


def join(m: Matroid, a: int, b: int) -> LineId:
    """Canonical id (two smallest points) of the line through ``a`` and ``b``."""
    line = m.line_through(a, b)
    return (line[0], line[1])


def line_points(m: Matroid, line: LineId) -> tuple[int, ...]:
    a, b = line
    pts = m.line_through(a, b)
    if (pts[0], pts[1]) != _pair(a, b):
        raise StructureError(f"{line} is not the canonical id of a line")
    return pts


def meet(m: Matroid, l1: LineId, l2: LineId) -> Optional[int]:
    """Common point of two distinct lines, or None when they are parallel."""
    p1, p2 = line_points(m, l1), line_points(m, l2)
    if p1 == p2:
        raise StructureError("meet of a line with itself")
    common = set(p1).intersection(p2)
    return common.pop() if common else None


def wedge(m: Matroid, a: int, b: int, c: int, d: int) -> int:
    """The 4-ary wedge: the intersection of ``a v b`` and ``c v d`` when it is a
    point other than ``a, b, c, d`` on two distinct lines, else ``a``."""
    if a == b or c == d:
        raise StructureError("wedge needs a != b and c != d")
    return _wedge(m, a, b, c, d)


def _wedge(m: Matroid, a: int, b: int, c: int, d: int) -> int:
    # a 2-point line can only meet another line in one of its own endpoints
    l1 = m._pair_line.get(_pair(a, b))
    if l1 is None:
        return a
    l2 = m._pair_line.get(_pair(c, d))
    if l2 is None or l1 == l2:
        return a
    common = m._line_sets[l1] & m._line_sets[l2]
    if not common:
        return a
    (p,) = common
    if p == a or p == b or p == c or p == d:
        return a
    return p


def line_meet_index(m: Matroid, i: int, j: int) -> Optional[int]:
    common = m._line_sets[i] & m._line_sets[j]
    return next(iter(common)) if common else None


def relabel(m: Matroid, perm: Sequence[int], n: Optional[int] = None) -> Matroid:
    """Image of ``m`` under the injective map ``perm`` (point i goes to perm[i])."""
    size = m.n if n is None else n
    return Matroid(size, tuple(tuple(perm[p] for p in line) for line in m.lines))


def restrict(m: Matroid, points: Iterable[int]) -> tuple[Matroid, tuple[int, ...]]:
    """Plain (weak) restriction to ``points``; returns the relabelled structure
    and the sorted tuple of original ids (new id i is ``ids[i]``)."""
    ids = tuple(sorted(set(points)))
    pos = {p: i for i, p in enumerate(ids)}
    lines = []
    for line in m.lines:
        kept = [pos[p] for p in line if p in pos]
        if len(kept) >= 3:
            lines.append(tuple(kept))
    return Matroid(len(ids), tuple(lines)), ids
