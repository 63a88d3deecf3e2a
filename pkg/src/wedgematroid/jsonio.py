"""JSON interchange: ``{"n": int, "long_lines": [[int, ...], ...]}``.

Readers also accept ``{"n": int, "triples": [[a, b, c], ...]}``, which is the
only form able to express an exchange-axiom violation.
"""

from __future__ import annotations

import json
from typing import Any

from .core import Matroid, StructureError, validate_matroid


def matroid_to_json(m: Matroid) -> dict:
    return {"n": m.n, "long_lines": [list(l) for l in m.lines]}


def matroid_to_triples_json(m: Matroid) -> dict:
    return {"n": m.n, "triples": [list(t) for t in sorted(m.triples)]}


def matroid_from_json(data: Any) -> Matroid:
    if not isinstance(data, dict) or "n" not in data:
        raise StructureError('matroid JSON needs an object with key "n"')
    try:
        n = int(data["n"])
        if "triples" in data:
            return validate_matroid(n, [tuple(int(x) for x in t) for t in data["triples"]])
        lines = data.get("long_lines", [])
        return Matroid(n, tuple(tuple(int(x) for x in l) for l in lines))
    except (TypeError, ValueError) as exc:
        if isinstance(exc, StructureError):
            raise
        raise StructureError(f"malformed matroid JSON: {exc}") from exc


def dumps(obj: Any) -> str:
    return json.dumps(obj, sort_keys=True, separators=(",", ":"))
