"""Exhaustive generation of small simple rank <= 3 matroids.

Labeled structures are generated as families of long lines meeting pairwise in
at most one point; unlabeled ones by one-point extension of the previous size
followed by canonical-form deduplication.
"""

from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass, field
from functools import lru_cache
from itertools import combinations
from pathlib import Path
from typing import Iterator

from .amalgam import ALL, ClassFilter
from .closure import canonical_form, canonical_matroid
from .core import Matroid
from .jsonio import matroid_from_json, matroid_to_json

LABELED_BOUND = 7
UNLABELED_BOUND = 9


class BoundExceeded(ValueError):
    pass


def _line_families(n: int) -> Iterator[list[tuple[int, ...]]]:
    pairs = list(combinations(range(n), 2))
    covered: set[tuple[int, int]] = set()
    lines: list[tuple[int, ...]] = []

    def free_partners(a: int, b: int) -> list[int]:
        return [
            c
            for c in range(b + 1, n)
            if (a, c) not in covered and (b, c) not in covered
        ]

    def extend(idx: int) -> Iterator[list[tuple[int, ...]]]:
        while idx < len(pairs) and pairs[idx] in covered:
            idx += 1
        if idx == len(pairs):
            yield list(lines)
            return
        a, b = pairs[idx]
        # the first undecided pair either spans a 2-point line ...
        covered.add((a, b))
        yield from extend(idx + 1)
        covered.discard((a, b))
        # ... or a long line {a, b} + S with S pairwise uncovered
        partners = free_partners(a, b)

        def grow(start: int, chosen: list[int]) -> Iterator[list[tuple[int, ...]]]:
            if chosen:
                line = (a, b, *chosen)
                new = [p for p in combinations(line, 2)]
                covered.update(new)
                lines.append(line)
                yield from extend(idx + 1)
                lines.pop()
                covered.difference_update(new)
            for k in range(start, len(partners)):
                c = partners[k]
                if all((d, c) not in covered for d in chosen):
                    chosen.append(c)
                    yield from grow(k + 1, chosen)
                    chosen.pop()

        yield from grow(0, [])

    yield from extend(0)


def enumerate_labeled(n: int, filt: ClassFilter = ALL, bound: int = LABELED_BOUND) -> list[Matroid]:
    """Every matroid on the labeled points ``0..n-1`` admitted by ``filt``."""
    if n > bound:
        raise BoundExceeded(f"n={n} exceeds the labeled bound {bound}")
    out = []
    for fam in _line_families(n):
        m = Matroid(n, tuple(fam))
        if filt.admits(m):
            out.append(m)
    return out


def one_point_extensions(m: Matroid, filt: ClassFilter = ALL, bound: int = UNLABELED_BOUND) -> list[Matroid]:
    """All ways to add point ``m.n``: put it on a set of pairwise disjoint lines
    of ``m`` (2-point lines included) and on 2-point lines otherwise."""
    if m.n + 1 > bound:
        raise BoundExceeded(f"extension to {m.n + 1} points exceeds the bound {bound}")
    lines = m.all_lines()
    x = m.n
    out = []
    chosen: list[int] = []
    used: set[int] = set()

    def rec(start: int):
        new_lines = []
        picked = set(chosen)
        for i, line in enumerate(lines):
            if i in picked:
                new_lines.append(line + (x,))
            elif len(line) >= 3:
                new_lines.append(line)
        cand = Matroid(m.n + 1, tuple(new_lines))
        if filt.admits(cand):
            out.append(cand)
        for i in range(start, len(lines)):
            if used.isdisjoint(lines[i]):
                chosen.append(i)
                used.update(lines[i])
                rec(i + 1)
                used.difference_update(lines[i])
                chosen.pop()

    rec(0)
    return out


@lru_cache(maxsize=None)
def _unlabeled_level(n: int, filt: ClassFilter) -> tuple[Matroid, ...]:
    if n == 0:
        return (Matroid.free(0),)
    seen: dict[bytes, Matroid] = {}
    for m in _unlabeled_level(n - 1, filt):
        for ext in one_point_extensions(m, filt, bound=n):
            key = canonical_form(ext)
            if key not in seen:
                seen[key] = canonical_matroid(ext)
    return tuple(seen[k] for k in sorted(seen))


def enumerate_unlabeled(n: int, filt: ClassFilter = ALL, bound: int = UNLABELED_BOUND) -> list[Matroid]:
    """One canonical representative per isomorphism class on ``n`` points."""
    if n > bound:
        raise BoundExceeded(f"n={n} exceeds the unlabeled bound {bound}")
    return list(_unlabeled_level(n, filt))


@dataclass
class AgeCatalog:
    """Pairwise non-isomorphic structures per size, keyed by canonical form."""

    filter: ClassFilter = ALL
    by_size: dict[int, list[bytes]] = field(default_factory=dict)
    structures: dict[bytes, Matroid] = field(default_factory=dict)

    @classmethod
    def build(cls, max_size: int, filt: ClassFilter = ALL) -> "AgeCatalog":
        cat = cls(filt)
        for n in range(max_size + 1):
            cat.by_size[n] = []
            for m in enumerate_unlabeled(n, filt, bound=max(max_size, UNLABELED_BOUND)):
                key = canonical_form(m)
                cat.by_size[n].append(key)
                cat.structures[key] = m
        return cat

    @property
    def max_size(self) -> int:
        return max(self.by_size, default=-1)

    def of_size(self, n: int) -> list[Matroid]:
        if n not in self.by_size:
            raise KeyError(f"catalog has no entries computed for size {n}")
        return [self.structures[k] for k in self.by_size[n]]

    def save(self, directory: str | Path) -> None:
        d = Path(directory)
        d.mkdir(parents=True, exist_ok=True)
        index = {"filter": self.filter.name, "sizes": {}}
        for n, keys in sorted(self.by_size.items()):
            names = []
            for key in keys:
                name = hashlib.sha256(key).hexdigest()[:16]
                (d / f"{name}.json").write_text(json.dumps(matroid_to_json(self.structures[key]), sort_keys=True))
                names.append(name)
            index["sizes"][str(n)] = names
        (d / "index.json").write_text(json.dumps(index, sort_keys=True, indent=1))

    @classmethod
    def load(cls, directory: str | Path, filt: ClassFilter = ALL) -> "AgeCatalog":
        d = Path(directory)
        index = json.loads((d / "index.json").read_text())
        cat = cls(filt)
        for n, names in index["sizes"].items():
            cat.by_size[int(n)] = []
            for name in names:
                m = matroid_from_json(json.loads((d / f"{name}.json").read_text()))
                key = canonical_form(m)
                cat.by_size[int(n)].append(key)
                cat.structures[key] = m
        return cat
