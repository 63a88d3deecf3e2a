"""Projective planes over prime fields, partial planes, and finite stages of the
free projective extension.

A :class:`PartialPlane` lists every line explicitly, two-point lines included,
and may leave pairs of points unjoined.  One call of
:func:`free_extension_step` either joins every unjoined pair by a fresh line or,
when all pairs are joined, adds a fresh point for every pair of parallel lines.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations, product
from typing import Optional, Union

from .closure import Embedding, Strength, iter_embeddings
from .core import Matroid, StructureError


@dataclass(frozen=True)
class PartialPlane:
    points: int
    lines: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        norm = []
        for line in self.lines:
            pts = tuple(sorted(set(line)))
            if len(pts) != len(line) or len(pts) < 2:
                raise StructureError(f"bad line {list(line)}")
            if pts[0] < 0 or pts[-1] >= self.points:
                raise StructureError(f"line {list(line)} has a point outside [0, {self.points})")
            norm.append(pts)
        object.__setattr__(self, "lines", tuple(norm))

    def violations(self) -> list[str]:
        out = []
        seen: dict[tuple[int, int], int] = {}
        for i, line in enumerate(self.lines):
            for pair in combinations(line, 2):
                if pair in seen:
                    out.append(f"points {pair} lie on lines {seen[pair]} and {i}")
                else:
                    seen[pair] = i
        return out

    def is_valid(self) -> bool:
        return not self.violations()

    def joined_pairs(self) -> set[tuple[int, int]]:
        return {pair for line in self.lines for pair in combinations(line, 2)}

    def unjoined_pairs(self) -> list[tuple[int, int]]:
        joined = self.joined_pairs()
        return [p for p in combinations(range(self.points), 2) if p not in joined]

    def meeting_line_pairs(self) -> set[tuple[int, int]]:
        through: list[list[int]] = [[] for _ in range(self.points)]
        for i, line in enumerate(self.lines):
            for p in line:
                through[p].append(i)
        met = set()
        for idxs in through:
            met.update(combinations(idxs, 2))
        return met

    def unmet_line_pairs(self) -> list[tuple[int, int]]:
        met = self.meeting_line_pairs()
        return [p for p in combinations(range(len(self.lines)), 2) if p not in met]

    def to_matroid(self) -> Matroid:
        """Collinear triples of the plane; unjoined pairs become 2-point lines."""
        return Matroid(self.points, tuple(l for l in self.lines if len(l) >= 3))

    def to_json(self) -> dict:
        # readable as matroid JSON too; "lines" keeps the two-point lines
        return {
            "n": self.points,
            "long_lines": [list(l) for l in self.lines if len(l) >= 3],
            "lines": [list(l) for l in self.lines],
        }

    @classmethod
    def from_json(cls, data: dict) -> "PartialPlane":
        n = data["points"] if "points" in data else data["n"]
        return cls(int(n), tuple(tuple(int(p) for p in l) for l in data["lines"]))


def from_matroid(m: Matroid) -> PartialPlane:
    """Partial plane with the long lines and every implicit 2-point line made explicit."""
    return PartialPlane(m.n, tuple(m.all_lines()))


def is_projective_plane(p: Union[PartialPlane, Matroid]) -> bool:
    if isinstance(p, Matroid):
        p = from_matroid(p)
    if not p.is_valid():
        return False
    if p.unjoined_pairs() or p.unmet_line_pairs():
        return False
    return has_quadrilateral(p.to_matroid())


def has_quadrilateral(m: Matroid) -> bool:
    for quad in combinations(range(m.n), 4):
        if not any(m.collinear(*t) for t in combinations(quad, 3)):
            return True
    return False


def _is_prime(p: int) -> bool:
    return p >= 2 and all(p % d for d in range(2, int(p**0.5) + 1))


def pg2(p: int) -> PartialPlane:
    """PG(2, p) for a prime p: points and lines are the 1- and 2-dimensional
    subspaces of GF(p)^3, each given by a normalised vector."""
    if not _is_prime(p):
        raise StructureError(f"pg2 needs a prime field order, got {p}")
    vecs = [v for v in product(range(p), repeat=3) if any(v) and v[next(i for i in range(3) if v[i])] == 1]
    vecs.sort()
    lines = []
    for normal in vecs:
        lines.append(tuple(i for i, v in enumerate(vecs) if sum(a * b for a, b in zip(normal, v)) % p == 0))
    return PartialPlane(len(vecs), tuple(lines))


def fano() -> Matroid:
    return pg2(2).to_matroid()


def pg2_matroid(p: int) -> Matroid:
    return pg2(p).to_matroid()


# -- free extension -------------------------------------------------------------


@dataclass(frozen=True)
class Addition:
    kind: str  # "line" or "point"
    index: int
    incidences: tuple[int, int]

    def to_json(self) -> dict:
        return {"kind": self.kind, "index": self.index, "incidences": list(self.incidences)}


@dataclass
class ExtensionTrace:
    stages: list[PartialPlane] = field(default_factory=list)
    added: list[list[Addition]] = field(default_factory=list)
    partial: bool = False
    convention: str = "alternating: join all unjoined pairs, else meet all parallel line pairs"

    def to_json(self) -> dict:
        return {
            "convention": self.convention,
            "partial": self.partial,
            "stages": [s.to_json() for s in self.stages],
            "added": [[a.to_json() for a in step] for step in self.added],
        }


def _step(p: PartialPlane) -> tuple[PartialPlane, list[Addition]]:
    unjoined = p.unjoined_pairs()
    if unjoined:
        base = len(p.lines)
        adds = [Addition("line", base + i, pair) for i, pair in enumerate(unjoined)]
        return PartialPlane(p.points, p.lines + tuple(unjoined)), adds
    unmet = p.unmet_line_pairs()
    if not unmet:
        return p, []
    lines = [list(l) for l in p.lines]
    adds = []
    for k, (i, j) in enumerate(unmet):
        q = p.points + k
        lines[i].append(q)
        lines[j].append(q)
        adds.append(Addition("point", q, (i, j)))
    return PartialPlane(p.points + len(unmet), tuple(tuple(l) for l in lines)), adds


def free_extension_step(p: PartialPlane) -> PartialPlane:
    return _step(p)[0]


def pending_growth(p: PartialPlane) -> tuple[str, int]:
    """What the next step would add: ("line"|"point"|"none", count)."""
    unjoined = len(p.unjoined_pairs())
    if unjoined:
        return "line", unjoined
    unmet = len(p.unmet_line_pairs())
    return ("point", unmet) if unmet else ("none", 0)


def free_extend(m: Union[Matroid, PartialPlane], stages: int, budget: int = 500) -> ExtensionTrace:
    """Stages 0..``stages`` of the free extension; stops early, flagged
    partial, when the next stage would exceed ``budget`` points."""
    if stages < 0:
        raise ValueError("stages must be non-negative")
    plane = from_matroid(m) if isinstance(m, Matroid) else m
    trace = ExtensionTrace(stages=[plane], added=[])
    for _ in range(stages):
        kind, count = pending_growth(plane)
        if kind == "point" and plane.points + count > budget:
            trace.partial = True
            break
        plane, adds = _step(plane)
        trace.stages.append(plane)
        trace.added.append(adds)
    return trace


# -- Fano confinement --------------------------------------------------------------


def fano_confinement(
    structure: Union[PartialPlane, Matroid], element: Union[int, tuple[int, int]]
) -> Optional[Embedding]:
    """A weak embedding of the Fano plane whose image contains ``element``.

    ``element`` is a point id, or a line given by two of its points; a line
    counts as contained when two image points span it.
    """
    m = structure.to_matroid() if isinstance(structure, PartialPlane) else structure
    f = fano()
    if isinstance(element, int):
        if not 0 <= element < m.n:
            raise StructureError(f"point {element} not in structure")
        # the Fano plane is point-transitive
        return next(iter_embeddings(f, m, Strength.WEAK, fixed={0: element}), None)
    a, b = element
    if m.line_index(a, b) is None:
        return None  # Fano lines have three points
    pts = m.line_through(a, b)
    first_line = f.lines[0]
    # ... and 2-transitive on points, so pinning two points of one line suffices
    for x, y in combinations(pts, 2):
        for u, v in ((x, y), (y, x)):
            e = next(
                iter_embeddings(f, m, Strength.WEAK, fixed={first_line[0]: u, first_line[1]: v}),
                None,
            )
            if e is not None:
                return e
    return None
