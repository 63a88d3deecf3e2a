"""The family M(n) of structures generated by six points, and the free-amalgam
independence relation with finite checks of its axioms."""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from itertools import combinations, permutations
from typing import Iterable, Optional, Sequence

from .amalgam import AmalgamProblem, canonical_amalgam
from .closure import Strength, check_embedding, closure_points, find_embedding
from .core import Matroid, join, meet, restrict

P_NAMES = ("p1-", "p2-", "p1+", "p2+", "p1*", "p2*")


@dataclass(frozen=True)
class MnStructure:
    n: int
    m: Matroid
    names: dict

    def q(self, i: int) -> int:
        return self.names[f"q{i}"]

    def p_points(self) -> tuple[int, ...]:
        return tuple(self.names[x] for x in P_NAMES)

    def to_json(self) -> dict:
        from .jsonio import matroid_to_json

        return {**matroid_to_json(self.m), "index": self.n, "names": dict(self.names)}


def _add_on_lines(m: Matroid, l1: tuple[int, int], l2: tuple[int, int]) -> Matroid:
    """Add point ``m.n`` on exactly the two (parallel) lines through the given pairs."""
    a, b = m.line_through(*l1), m.line_through(*l2)
    if set(a) & set(b):
        raise ValueError(f"lines {a} and {b} are not parallel")
    x = m.n
    lines = [l for l in m.lines if l not in (a, b)]
    lines += [a + (x,), b + (x,)]
    return Matroid(m.n + 1, tuple(lines))


def _pair_for(i: int, ids: dict) -> tuple[tuple[int, int], tuple[int, int]]:
    # the two lines the point q_i is added on
    if i == 0:
        return (ids["p1+"], ids["p2+"]), (ids["p1*"], ids["p2*"])
    if i % 2 == 1:
        return (ids["p1-"], ids[f"q{i - 1}"]), (ids["p2-"], ids["p1*"])
    return (ids["p1+"], ids[f"q{i - 1}"]), (ids["p2+"], ids["p2*"])


def build_mn(n: int) -> MnStructure:
    if n < 0:
        raise ValueError("n must be non-negative")
    ids = {name: i for i, name in enumerate(P_NAMES)}
    m = Matroid.free(6)
    for i in range(n + 1):
        l1, l2 = _pair_for(i, ids)
        m = _add_on_lines(m, l1, l2)
        ids[f"q{i}"] = m.n - 1
    return MnStructure(n, m, ids)


def parallel_condition(w: MnStructure) -> tuple[tuple[int, int], tuple[int, int]]:
    """The pair of lines required to be parallel in M(n)."""
    ids, n = w.names, w.n
    if n % 2 == 0:
        return (ids["p1-"], ids[f"q{n}"]), (ids["p2-"], ids["p1*"])
    return (ids["p1+"], ids[f"q{n}"]), (ids["p2+"], ids["p2*"])


def _primes_upto(x: int) -> list[int]:
    return [p for p in range(2, x + 1) if all(p % d for d in range(2, int(p**0.5) + 1))]


@dataclass
class MnReport:
    size_ok: bool
    parallel_ok: bool
    generated_ok: bool
    planes_checked: list[int] = field(default_factory=list)
    planes_found: list[int] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return self.size_ok and self.parallel_ok and self.generated_ok and not self.planes_found

    def to_json(self) -> dict:
        return {
            "ok": self.ok,
            "size_ok": self.size_ok,
            "parallel_ok": self.parallel_ok,
            "generated_ok": self.generated_ok,
            "planes_checked": self.planes_checked,
            "planes_found": self.planes_found,
        }


def verify_mn(w: MnStructure) -> MnReport:
    from .projective import pg2_matroid

    m = w.m
    l1, l2 = parallel_condition(w)
    try:
        par = meet(m, join(m, *l1), join(m, *l2)) is None
    except ValueError:
        par = False
    gen = closure_points(m, w.p_points()) == frozenset(range(m.n))
    rep = MnReport(m.n == w.n + 7, par, gen)
    for q in _primes_upto(m.n):
        if q * q + q + 1 > m.n:
            break
        rep.planes_checked.append(q)
        if find_embedding(pg2_matroid(q), m, Strength.WEAK) is not None:
            rep.planes_found.append(q)
    return rep


# -- independence -----------------------------------------------------------------


@dataclass(frozen=True)
class IndependenceQuery:
    host: Matroid
    a: frozenset[int]
    b: frozenset[int]
    c: frozenset[int]

    @classmethod
    def of(cls, host: Matroid, a: Iterable[int], b: Iterable[int], c: Iterable[int]) -> "IndependenceQuery":
        return cls(host, frozenset(a), frozenset(b), frozenset(c))


@dataclass(frozen=True)
class IndependenceResult:
    independent: bool
    reason: str

    def __bool__(self) -> bool:
        return self.independent


def independence(q: IndependenceQuery) -> IndependenceResult:
    """Decide whether <A,B,C> is the canonical amalgam of <A,C> and <B,C> over <C>.

    The only candidate isomorphism fixes both sides pointwise, so this amounts
    to <A,B,C> = <A,C> u <B,C> with exactly the amalgam's collinear triples.
    """
    h = q.host
    x = closure_points(h, q.a | q.c)
    y = closure_points(h, q.b | q.c)
    z = closure_points(h, q.c)
    w = closure_points(h, q.a | q.b | q.c)
    if x & y != z:
        return IndependenceResult(False, "<A,C> and <B,C> meet outside <C>")
    if w != x | y:
        return IndependenceResult(False, "<A,B,C> is larger than <A,C> u <B,C>")
    m0, zs = restrict(h, z)
    m1, xs = restrict(h, x)
    m2, ys = restrict(h, y)
    xpos = {p: i for i, p in enumerate(xs)}
    ypos = {p: i for i, p in enumerate(ys)}
    am = canonical_amalgam(AmalgamProblem(m0, m1, m2, [xpos[p] for p in zs], [ypos[p] for p in zs]))
    # amalgam point -> host point
    back = [-1] * am.m3.n
    for i, p in enumerate(xs):
        back[am.j1[i]] = p
    for i, p in enumerate(ys):
        back[am.j2[i]] = p
    got = {tuple(sorted(back[v] for v in t)) for t in am.m3.triples}
    want = {t for t in h.triples if t[0] in w and t[1] in w and t[2] in w}
    if got != want:
        return IndependenceResult(False, "collinearity on <A,B,C> differs from the amalgam")
    return IndependenceResult(True, "free amalgam")


def independent(q: IndependenceQuery) -> bool:
    return independence(q).independent


# -- axiom checks -------------------------------------------------------------------


def same_type(host: Matroid, base: Iterable[int], t1: Sequence[int], t2: Sequence[int]) -> bool:
    """Whether the tuples have the same quantifier-free type over ``base``: the
    map fixing ``base`` and sending t1 to t2 extends to an isomorphism of the
    generated substructures."""
    base = tuple(sorted(set(base)))
    if len(t1) != len(t2):
        return False
    src = {}
    for u, v in list(zip(base, base)) + list(zip(t1, t2)):
        if src.get(u, v) != v:
            return False
        src[u] = v
    if len(set(src.values())) != len(src):
        return False
    g1 = closure_points(host, src.keys())
    g2 = closure_points(host, src.values())
    if len(g1) != len(g2):
        return False
    m1, ids1 = restrict(host, g1)
    m2, ids2 = restrict(host, g2)
    pos1 = {p: i for i, p in enumerate(ids1)}
    pos2 = {p: i for i, p in enumerate(ids2)}
    fixed = {pos1[u]: pos2[v] for u, v in src.items()}
    return find_embedding(m1, m2, Strength.ISO, fixed=fixed) is not None


@dataclass
class AxiomReport:
    checked: dict = field(default_factory=dict)
    failures: dict = field(default_factory=dict)
    notes: list[str] = field(default_factory=list)

    def count(self, axiom: str, ok: bool, detail: object = None) -> None:
        self.checked[axiom] = self.checked.get(axiom, 0) + 1
        if not ok:
            self.failures.setdefault(axiom, []).append(detail)

    @property
    def ok(self) -> bool:
        return not self.failures

    def to_json(self) -> dict:
        return {
            "ok": self.ok,
            "checked": self.checked,
            "failures": {k: [str(d) for d in v] for k, v in self.failures.items()},
            "notes": self.notes,
        }


def _gen(host: Matroid, pts) -> frozenset[int]:
    return closure_points(host, pts)


def check_independence_axioms(
    host: Matroid,
    sample: Sequence[IndependenceQuery],
    autos: Sequence[Sequence[int]] = (),
    extra: Sequence[frozenset[int]] = (),
    stationarity: bool = True,
) -> AxiomReport:
    """Check invariance, symmetry, monotonicity and stationarity on ``sample``.

    Monotonicity pairs each query (A, B, C) with each set D in ``extra``.
    Existence needs room to grow and is checked by :func:`check_existence`.
    """
    rep = AxiomReport()
    for f in autos:
        if not check_embedding(host, host, f, Strength.ISO):
            raise ValueError("supplied map is not an automorphism of the host")
    for q in sample:
        base = independent(q)
        for f in autos:
            img = IndependenceQuery(host, frozenset(f[p] for p in q.a), frozenset(f[p] for p in q.b), frozenset(f[p] for p in q.c))
            rep.count("invariance", independent(img) == base, (q, f))
        sym = independent(IndependenceQuery(host, q.b, q.a, q.c))
        rep.count("symmetry", sym == base, q)
        for d in extra:
            # A | C <BD> and A | C B  =>  A | <BC> D
            if not base:
                continue
            bd = _gen(host, q.b | d)
            if independent(IndependenceQuery(host, q.a, bd, q.c)):
                ok = independent(IndependenceQuery(host, q.a, d, _gen(host, q.b | q.c)))
                rep.count("monotonicity", ok, (q, d))
    if stationarity:
        _check_stationarity(host, sample, rep)
    return rep


def _check_stationarity(host: Matroid, sample: Sequence[IndependenceQuery], rep: AxiomReport) -> None:
    # group independent queries by (B, C); compare tuples A of equal type over C
    groups: dict = {}
    for q in sample:
        if independent(q):
            groups.setdefault((q.b, q.c), []).append(tuple(sorted(q.a)))
    for (b, c), tuples in groups.items():
        bc = _gen(host, b | c)
        for t1, t2 in combinations(sorted(set(tuples)), 2):
            if len(t1) != len(t2):
                continue
            for perm in set(permutations(t2)):
                if same_type(host, c, t1, perm):
                    rep.count("stationarity", same_type(host, bc, t1, perm), (t1, perm, b, c))


@dataclass
class ExistenceResult:
    grown: Matroid
    copy: tuple[int, ...]
    same_type: bool
    independent: bool

    @property
    def ok(self) -> bool:
        return self.same_type and self.independent


def realize_independent_copy(host: Matroid, a: Iterable[int], b: Iterable[int], c: Iterable[int]) -> ExistenceResult:
    """Grow ``host`` by amalgamating a fresh copy of <A,B> over <B>; the copy A'
    of A has A' = A over B and should satisfy A' | B C."""
    a, b, c = tuple(sorted(set(a))), frozenset(b), frozenset(c)
    gb = _gen(host, b)
    gab = _gen(host, set(a) | b)
    m0, zs = restrict(host, gb)
    m2, ys = restrict(host, gab)
    ypos = {p: i for i, p in enumerate(ys)}
    am = canonical_amalgam(AmalgamProblem(m0, host, m2, zs, [ypos[p] for p in zs]))
    grown = am.m3
    copy = tuple(am.j2[ypos[p]] for p in a)
    st = same_type(grown, gb, a, copy)
    ind = independent(IndependenceQuery(grown, frozenset(copy), c, b))
    return ExistenceResult(grown, copy, st, ind)


def random_query(host: Matroid, rng: random.Random, max_size: int = 2) -> IndependenceQuery:
    pts = range(host.n)

    def pick():
        return frozenset(rng.sample(pts, rng.randint(0, max_size)))

    return IndependenceQuery(host, pick(), pick(), pick())
