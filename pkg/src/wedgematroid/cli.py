"""Command line entry point.

Every verb reads JSON from ``--in`` (or stdin) and writes JSON to ``--out`` (or
stdout).  Exit status: 0 success, 1 domain error (a JSON object with ``error``
and ``message`` goes to stderr), 2 usage error.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path
from typing import Optional, Sequence

from . import amalgam, closure, core, enumeration, fraisse, jsonio, projective, witnesses
from .dot import levi_dot


class CliError(Exception):
    def __init__(self, code: str, message: str, payload: Optional[dict] = None):
        super().__init__(message)
        self.code = code
        self.message = message
        self.payload = payload or {}


def _read_json(path: Optional[str]) -> object:
    try:
        text = sys.stdin.read() if path in (None, "-") else Path(path).read_text()
    except OSError as exc:
        raise CliError("unreadable-file", str(exc)) from exc
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise CliError("malformed-json", f"{path or 'stdin'}: {exc}") from exc


def _read_matroid(path: Optional[str]) -> core.Matroid:
    data = _read_json(path)
    try:
        return jsonio.matroid_from_json(data)
    except core.ExchangeAxiomError as exc:
        raise CliError("exchange-axiom", str(exc), {"violations": _violations_json(exc.violations)}) from exc
    except core.StructureError as exc:
        raise CliError("invalid-structure", str(exc)) from exc


def _violations_json(violations) -> list:
    return [{"triples": [list(v.first), list(v.second)], "missing": [list(t) for t in v.missing]} for v in violations]


def _write(obj: object, out: Optional[str]) -> None:
    text = obj if isinstance(obj, str) else json.dumps(obj, sort_keys=True) + "\n"
    if out in (None, "-"):
        sys.stdout.write(text)
    else:
        Path(out).write_text(text)


def _filter(name: Optional[str]) -> amalgam.ClassFilter:
    if name in (None, "none", "all"):
        return amalgam.ALL
    if name == "fano":
        return amalgam.omitting(projective.fano(), "fano")
    if name in ("pg2-3", "pg3"):
        return amalgam.omitting(projective.pg2_matroid(3), "pg2-3")
    return amalgam.omitting(_read_matroid(name), name)


def _ids(text: str, n: int) -> list[int]:
    try:
        ids = [int(x) for x in text.split(",") if x.strip()] if text else []
    except ValueError as exc:
        raise CliError("invalid-argument", f"expected comma-separated point ids, got {text!r}") from exc
    bad = [p for p in ids if not 0 <= p < n]
    if bad:
        raise CliError("invalid-argument", f"points {bad} are outside [0, {n})")
    return ids


# -- verbs ---------------------------------------------------------------------------


def cmd_validate(args) -> int:
    data = _read_json(args.inp)
    try:
        m = jsonio.matroid_from_json(data)
    except core.ExchangeAxiomError as exc:
        _write({"valid": False, "violations": _violations_json(exc.violations)}, args.out)
        raise CliError("exchange-axiom", str(exc))
    except core.StructureError as exc:
        raise CliError("invalid-structure", str(exc))
    r = core.rank(m)
    _write({"valid": True, "n": m.n, "rank": r, "summary": f"valid, rank {r}"}, args.out)
    return 0


def cmd_convert(args) -> int:
    m = _read_matroid(args.inp)
    if args.to == "triples":
        _write(jsonio.matroid_to_triples_json(m), args.out)
    else:
        _write(jsonio.matroid_to_json(m), args.out)
    return 0


def cmd_enumerate(args) -> int:
    filt = _filter(args.omit)
    try:
        if args.labeled:
            ms = enumeration.enumerate_labeled(args.n, filt)
        else:
            ms = enumeration.enumerate_unlabeled(args.n, filt)
    except enumeration.BoundExceeded as exc:
        raise CliError("bound-exceeded", str(exc)) from exc
    if args.out_dir:
        if args.labeled:
            raise CliError("usage", "--out-dir stores an unlabeled catalog; drop --labeled")
        cat = enumeration.AgeCatalog.build(args.n, filt)
        cat.save(args.out_dir)
    _write({"n": args.n, "filter": filt.name, "labeled": args.labeled, "count": len(ms),
            "structures": [jsonio.matroid_to_json(m) for m in ms]}, args.out)
    return 0


def cmd_amalgamate(args) -> int:
    data = _read_json(args.inp)
    try:
        prob = amalgam.AmalgamProblem(
            jsonio.matroid_from_json(data["m0"]),
            jsonio.matroid_from_json(data["m1"]),
            jsonio.matroid_from_json(data["m2"]),
            tuple(data["i1"]),
            tuple(data["i2"]),
        )
        am = amalgam.canonical_amalgam(prob)
    except (KeyError, TypeError) as exc:
        raise CliError("malformed-json", f"amalgam problem needs m0, m1, m2, i1, i2: {exc}") from exc
    except core.StructureError as exc:
        raise CliError("invalid-structure", str(exc)) from exc
    _write(am.to_json(), args.out)
    return 0


def cmd_embed(args) -> int:
    sub = _read_matroid(args.sub)
    host = _read_matroid(args.host)
    e = closure.find_embedding(sub, host, args.strength)
    if e is None:
        _write({"result": "none", "strength": args.strength}, args.out)
    else:
        _write({"result": "found", **e.to_json()}, args.out)
    return 0


def cmd_grow(args) -> int:
    filt = _filter(args.omit)
    stage = fraisse.build(filt, args.rounds, args.k, args.budget)
    _write(stage.to_json(), args.out)
    if stage.partial and not args.allow_partial:
        raise CliError("budget-exceeded", f"stage reached the {args.budget}-point budget; result is partial",
                       {"points": stage.s.n, "realized": len(stage.history)})
    return 0


def cmd_check_ep(args) -> int:
    data = _read_json(args.inp)
    filt = _filter(args.omit)
    try:
        stage = fraisse.stage_from_json(data, filt)
        base = args.base
        if args.certified:
            base = fraisse.certified_prefix(stage)
        rep = fraisse.extension_property_check(stage.s, args.k, filt, base=base, limit=args.limit)
    except core.StructureError as exc:
        raise CliError("invalid-structure", str(exc)) from exc
    _write({**rep.to_json(), "base": base}, args.out)
    return 0


def cmd_mn(args) -> int:
    if args.n < 0:
        raise CliError("invalid-argument", "--n must be non-negative")
    w = witnesses.build_mn(args.n)
    out = {**w.to_json(), "size": w.m.n}
    if args.verify:
        rep = witnesses.verify_mn(w)
        out["verify"] = rep.to_json()
        _write(out, args.out)
        if not rep.ok:
            raise CliError("verification-failed", f"M({args.n}) failed verification")
        return 0
    _write(out, args.out)
    return 0


def cmd_indep(args) -> int:
    host = _read_matroid(args.host)
    try:
        q = witnesses.IndependenceQuery.of(host, _ids(args.a, host.n), _ids(args.b, host.n), _ids(args.c, host.n))
        res = witnesses.independence(q)
    except core.StructureError as exc:
        raise CliError("invalid-structure", str(exc)) from exc
    _write({"independent": res.independent, "reason": res.reason}, args.out)
    return 0


def cmd_pg(args) -> int:
    try:
        plane = projective.pg2(args.p)
    except core.StructureError as exc:
        raise CliError("invalid-argument", str(exc)) from exc
    if args.matroid:
        _write(jsonio.matroid_to_json(plane.to_matroid()), args.out)
    else:
        _write(plane.to_json(), args.out)
    return 0


def cmd_free_extend(args) -> int:
    m = _read_matroid(args.inp)
    trace = projective.free_extend(m, args.stages, args.budget)
    _write(trace.to_json(), args.out)
    if trace.partial and not args.allow_partial:
        raise CliError("budget-exceeded", f"free extension reached the {args.budget}-point budget")
    return 0


def cmd_export_dot(args) -> int:
    data = _read_json(args.inp)
    if isinstance(data, dict) and "stages" in data:
        stages = data["stages"]
        idx = args.stage if args.stage is not None else len(stages) - 1
        if not -len(stages) <= idx < len(stages):
            raise CliError("invalid-argument", f"trace has {len(stages)} stages")
        structure = projective.PartialPlane.from_json(stages[idx])
    elif isinstance(data, dict) and "lines" in data:
        structure = projective.PartialPlane.from_json(data)
    else:
        try:
            structure = jsonio.matroid_from_json(data)
        except core.StructureError as exc:
            raise CliError("invalid-structure", str(exc)) from exc
    _write(levi_dot(structure), args.out)
    return 0


def make_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="wedgematroid", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="verb", required=True)

    def verb(name, func, help, inp=True):
        p = sub.add_parser(name, help=help)
        if inp:
            p.add_argument("--in", dest="inp", help="input JSON file (default stdin)")
        p.add_argument("--out", help="output file (default stdout)")
        p.set_defaults(func=func)
        return p

    verb("validate", cmd_validate, "check the exchange axiom and report the rank")

    p = verb("convert", cmd_convert, "convert between long-line and triple JSON")
    p.add_argument("--to", choices=["lines", "triples"], default="lines")

    p = verb("enumerate", cmd_enumerate, "list all structures on n points", inp=False)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--omit", help="fano, pg2-3, or a matroid JSON file")
    p.add_argument("--labeled", action="store_true")
    p.add_argument("--out-dir", help="also store the catalog for sizes <= n here")

    verb("amalgamate", cmd_amalgamate, "canonical amalgam of {m0,m1,m2,i1,i2}")

    p = verb("embed", cmd_embed, "search for an embedding", inp=False)
    p.add_argument("--sub", required=True)
    p.add_argument("--host", required=True)
    p.add_argument("--strength", choices=[s.value for s in closure.Strength], default="weak")

    p = verb("grow", cmd_grow, "build a stage of the Fraisse chain", inp=False)
    p.add_argument("--omit")
    p.add_argument("--rounds", type=int, default=10)
    p.add_argument("--k", type=int, default=fraisse.DEFAULT_K)
    p.add_argument("--budget", type=int, default=fraisse.DEFAULT_BUDGET)
    p.add_argument("--allow-partial", action="store_true", help="exit 0 when the budget stops the build")

    p = verb("check-ep", cmd_check_ep, "list unrealized extension problems of a stage")
    p.add_argument("--k", type=int, default=3)
    p.add_argument("--omit")
    group = p.add_mutually_exclusive_group()
    group.add_argument("--base", type=int, help="only anchors inside the first BASE points")
    group.add_argument("--certified", action="store_true", help="use the stage's certified prefix as base")
    p.add_argument("--limit", type=int)

    p = verb("mn", cmd_mn, "build M(n)", inp=False)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--verify", action="store_true")

    p = verb("indep", cmd_indep, "test A independent from B over C", inp=False)
    p.add_argument("--host", required=True)
    p.add_argument("--a", default="")
    p.add_argument("--b", default="")
    p.add_argument("--c", default="")

    p = verb("pg", cmd_pg, "the plane PG(2,p) for a prime p", inp=False)
    p.add_argument("--p", type=int, required=True)
    p.add_argument("--matroid", action="store_true", help="emit matroid JSON instead of the plane")

    p = verb("free-extend", cmd_free_extend, "stages of the free projective extension")
    p.add_argument("--stages", type=int, default=1)
    p.add_argument("--budget", type=int, default=500)
    p.add_argument("--allow-partial", action="store_true")

    p = verb("export-dot", cmd_export_dot, "Levi graph of a matroid, plane, or trace stage")
    p.add_argument("--stage", type=int)
    return parser


def run(argv: Optional[Sequence[str]] = None) -> int:
    parser = make_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args)
    except CliError as exc:
        err = {"error": exc.code, "message": exc.message, **exc.payload}
        sys.stderr.write(json.dumps(err, sort_keys=True) + "\n")
        return 2 if exc.code == "usage" else 1


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
