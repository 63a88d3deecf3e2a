"""Finite stages of a Fraisse chain for wedge-matroids, optionally omitting a
fixed configuration.

Extension problems are anchored: a wedge-closed subset of the current stage
(the anchor), a catalog structure ``B`` and an inclusion of the anchored
structure into ``B``.  Anchors are visited first-in first-out: the empty
anchor, then every anchor whose largest point is 0, then 1, and so on, so
anchors created by growth are queued behind the existing ones.  A problem whose
extension already exists in the stage is skipped; otherwise it is realized by
canonical amalgamation of the stage and ``B`` over the anchor.
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace
from functools import lru_cache
from itertools import combinations
from typing import Iterator, Optional

from .amalgam import ALL, AmalgamProblem, ClassFilter, canonical_amalgam
from .closure import Strength, automorphisms, find_embedding, is_closed, iter_embeddings
from .core import Matroid, StructureError, restrict
from .enumeration import enumerate_unlabeled
from .jsonio import matroid_from_json, matroid_to_json

DEFAULT_K = 4
DEFAULT_BUDGET = 200


class FilterViolation(RuntimeError):
    """A realization produced a structure outside the class (should not happen)."""


@dataclass(frozen=True)
class ExtensionProblem:
    a: Matroid
    b: Matroid
    inclusion: tuple[int, ...]  # A -> B
    anchor: tuple[int, ...]  # A -> S

    def to_json(self) -> dict:
        return {
            "anchor": list(self.anchor),
            "b": matroid_to_json(self.b),
            "inclusion": list(self.inclusion),
        }


@dataclass(frozen=True)
class Realized:
    problem: ExtensionProblem
    image: tuple[int, ...]  # B -> S after realization

    def to_json(self) -> dict:
        return {**self.problem.to_json(), "image": list(self.image)}


# cursor: (largest anchor point or -1 for the empty anchor, anchor index, problem index)
Cursor = tuple[int, int, int]


@dataclass(frozen=True)
class Stage:
    s: Matroid
    filter: ClassFilter = ALL
    k: int = DEFAULT_K
    history: tuple[Realized, ...] = ()
    cursor: Cursor = (-1, 0, 0)
    partial: bool = False

    def to_json(self) -> dict:
        return {
            **matroid_to_json(self.s),
            "filter": self.filter.name,
            "k": self.k,
            "partial": self.partial,
            "cursor": list(self.cursor),
            "history": [h.to_json() for h in self.history],
        }


def stage_from_json(data: dict, filt: Optional[ClassFilter] = None) -> Stage:
    s = matroid_from_json(data)
    history = []
    for h in data.get("history", []):
        b = matroid_from_json(h["b"])
        anchor = tuple(h["anchor"])
        a = restrict(s, anchor)[0] if anchor else Matroid.free(0)
        # restrict sorts ids; anchors are stored sorted
        history.append(Realized(ExtensionProblem(a, b, tuple(h["inclusion"]), anchor), tuple(h["image"])))
    return Stage(
        s,
        filt if filt is not None else ALL,
        int(data.get("k", DEFAULT_K)),
        tuple(history),
        tuple(data.get("cursor", (-1, 0, 0))),
        bool(data.get("partial", False)),
    )


# -- problems ------------------------------------------------------------------


@lru_cache(maxsize=None)
def extensions_of(a: Matroid, filt: ClassFilter, k: int) -> tuple[tuple[Matroid, tuple[int, ...]], ...]:
    """Catalog structures ``B`` with ``|A| < |B| <= k`` together with every
    wedge-embedding ``A -> B`` up to automorphisms of ``B``."""
    out = []
    for size in range(a.n + 1, k + 1):
        for b in enumerate_unlabeled(size, filt, bound=max(k, size)):
            autos = automorphisms(b)
            reps = set()
            for e in iter_embeddings(a, b, Strength.WEDGE):
                rep = min(tuple(g[x] for x in e.map) for g in autos)
                reps.add(rep)
            out.extend((b, rep) for rep in sorted(reps))
    return tuple(out)


def anchors_at(s: Matroid, p: int, k: int) -> list[tuple[int, ...]]:
    """Closed anchors of size < k whose largest point is ``p`` (empty anchor for -1)."""
    if p < 0:
        return [()]
    out = []
    for r in range(0, k - 1):
        for rest in combinations(range(p), r):
            t = rest + (p,)
            if len(t) < 4 or is_closed(s, t):
                out.append(t)
    return out


def problem_for(s: Matroid, anchor: tuple[int, ...], b: Matroid, inclusion: tuple[int, ...]) -> ExtensionProblem:
    a = restrict(s, anchor)[0] if anchor else Matroid.free(0)
    return ExtensionProblem(a, b, inclusion, anchor)


def problems_at(s: Matroid, anchor: tuple[int, ...], filt: ClassFilter, k: int) -> list[ExtensionProblem]:
    a = restrict(s, anchor)[0] if anchor else Matroid.free(0)
    return [ExtensionProblem(a, b, inc, anchor) for b, inc in extensions_of(a, filt, k)]


def solution(s: Matroid, prob: ExtensionProblem) -> Optional[tuple[int, ...]]:
    """A wedge-embedding of ``B`` into ``s`` extending the anchor, if one exists."""
    fixed = {prob.inclusion[x]: prob.anchor[x] for x in range(prob.a.n)}
    e = find_embedding(prob.b, s, Strength.WEDGE, fixed=fixed)
    return None if e is None else e.map


def _iter_from(stage: Stage) -> Iterator[tuple[Cursor, ExtensionProblem]]:
    p, ai, pi = stage.cursor
    s = stage.s
    while p < s.n:
        anchors = anchors_at(s, p, stage.k)
        while ai < len(anchors):
            probs = problems_at(s, anchors[ai], stage.filter, stage.k)
            while pi < len(probs):
                yield (p, ai, pi), probs[pi]
                pi += 1
            ai, pi = ai + 1, 0
        p, ai, pi = p + 1, 0, 0
    yield (p, 0, 0), None  # type: ignore[misc]


def next_problem(stage: Stage) -> tuple[Cursor, Optional[ExtensionProblem]]:
    """First unsatisfied problem at or after the cursor (None when exhausted)."""
    for cur, prob in _iter_from(stage):
        if prob is None or solution(stage.s, prob) is None:
            return cur, prob
    raise AssertionError("unreachable")


def schedule(stage: Stage, k: Optional[int] = None, limit: Optional[int] = None) -> list[ExtensionProblem]:
    """Pending (unsatisfied) problems in queue order from the cursor onwards."""
    if k is not None and k != stage.k:
        stage = replace(stage, k=k)
    out = []
    for _, prob in _iter_from(stage):
        if prob is None:
            break
        if solution(stage.s, prob) is None:
            out.append(prob)
            if limit is not None and len(out) >= limit:
                break
    return out


def realize(stage: Stage, prob: ExtensionProblem, check_filter: bool = True) -> Stage:
    """Amalgamate ``B`` with the stage over the anchored structure."""
    am = canonical_amalgam(AmalgamProblem(prob.a, stage.s, prob.b, prob.anchor, prob.inclusion))
    if check_filter and not stage.filter.admits(am.m3):
        raise FilterViolation(f"realizing {prob.to_json()} left the class {stage.filter.name}")
    return replace(stage, s=am.m3, history=stage.history + (Realized(prob, am.j2),))


@dataclass
class BuildLog:
    stages: list[Matroid] = field(default_factory=list)


def build(
    filt: ClassFilter = ALL,
    rounds: int = 10,
    k: int = DEFAULT_K,
    budget: int = DEFAULT_BUDGET,
    log: Optional[BuildLog] = None,
) -> Stage:
    """Realize up to ``rounds`` problems in queue order.

    Stops early, with ``partial`` set, when the next realization would push the
    stage past ``budget`` points.
    """
    stage = Stage(Matroid.free(0), filt, k)
    if log is not None:
        log.stages.append(stage.s)
    done = 0
    while done < rounds:
        cur, prob = next_problem(stage)
        if prob is None:
            stage = replace(stage, cursor=cur)
            break
        if stage.s.n + prob.b.n - prob.a.n > budget:
            stage = replace(stage, cursor=cur, partial=True)
            break
        stage = realize(replace(stage, cursor=cur), prob)
        p, ai, pi = cur
        stage = replace(stage, cursor=(p, ai, pi + 1))
        done += 1
        if log is not None:
            log.stages.append(stage.s)
    return stage


@dataclass
class EPReport:
    k: int
    checked: int = 0
    unrealized: list[ExtensionProblem] = field(default_factory=list)

    @property
    def empty(self) -> bool:
        return not self.unrealized

    def to_json(self) -> dict:
        return {
            "k": self.k,
            "checked": self.checked,
            "empty": self.empty,
            "unrealized": [p.to_json() for p in self.unrealized],
        }


def extension_property_check(
    s: Matroid,
    k: int,
    filt: ClassFilter = ALL,
    base: Optional[int] = None,
    limit: Optional[int] = None,
) -> EPReport:
    """List every anchored problem with ``|B| <= k`` that has no solution in ``s``.

    Anchors range over the closed subsets of ``s`` of size below ``k``; with
    ``base`` only over subsets of the first ``base`` points (the relative
    property of an earlier stage of a chain inside ``s``).  An empty report
    certifies the level-k extension property.
    """
    if not filt.admits(s):
        raise StructureError(f"structure is not in the class {filt.name}")
    top = s.n if base is None else min(base, s.n)
    rep = EPReport(k)
    for p in range(-1, top):
        for anchor in anchors_at(s, p, k):
            for prob in problems_at(s, anchor, filt, k):
                rep.checked += 1
                if solution(s, prob) is None:
                    rep.unrealized.append(prob)
                    if limit is not None and len(rep.unrealized) >= limit:
                        return rep
    return rep


def certified_prefix(stage: Stage) -> int:
    """Largest m such that every problem anchored in points ``0..m-1`` is solved
    in the stage (read off the cursor: earlier anchors were all handled)."""
    return stage.cursor[0]
