"""Graphviz text for the point/line incidence (Levi) graph."""

from __future__ import annotations

from typing import Union

from .core import Matroid
from .projective import PartialPlane


def levi_dot(structure: Union[Matroid, PartialPlane], name: str = "levi") -> str:
    """Points become circles, lines squares.  For a matroid only the long
    lines are drawn; a partial plane draws every explicit line."""
    if isinstance(structure, Matroid):
        n, lines = structure.n, structure.lines
    else:
        n, lines = structure.points, structure.lines
    out = [f"graph {name} {{"]
    out.append("  node [shape=circle];")
    for p in range(n):
        out.append(f'  p{p} [label="{p}"];')
    out.append("  node [shape=square];")
    for i, line in enumerate(lines):
        out.append(f'  l{i} [label="L{i}"];')
    for i, line in enumerate(lines):
        for p in line:
            out.append(f"  p{p} -- l{i};")
    out.append("}")
    return "\n".join(out) + "\n"
