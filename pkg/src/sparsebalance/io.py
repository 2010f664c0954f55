"""Edge-list and dense-matrix text formats.

Edge lists::

    # comment
    n 3
    signed
    1 2 +1
    2 3 -1
    vertex 5

Signed files carry a third column; unsigned files omit it. Mixing the two is
a parse error. The optional ``signed`` line marks a file as signed even when it
has no edges; the writer always emits it for signed graphs. Dense matrices are written as the side length on the first
line followed by one row per line; rational entries use ``p/q``.
"""
from __future__ import annotations

from fractions import Fraction
from pathlib import Path
from typing import List, Tuple, Union

import numpy as np

from .graphs import GraphError, SignedGraph, UnsignedGraph

AnyGraph = Union[SignedGraph, UnsignedGraph]


class ParseError(ValueError):
    pass


def parse_edge_list(text: str) -> AnyGraph:
    n_bits = None
    declared_signed = False
    isolated: List[int] = []
    pairs: List[Tuple[int, int]] = []
    triples: List[Tuple[int, int, int]] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        try:
            if parts[0] == "n":
                if n_bits is not None or len(parts) != 2:
                    raise ParseError(f"line {lineno}: bad or repeated header")
                n_bits = int(parts[1])
            elif parts == ["signed"]:
                declared_signed = True
            elif parts[0] == "vertex":
                if len(parts) != 2:
                    raise ParseError(f"line {lineno}: expected 'vertex <id>'")
                isolated.append(int(parts[1]))
            elif len(parts) == 2:
                pairs.append((int(parts[0]), int(parts[1])))
            elif len(parts) == 3:
                s = int(parts[2])
                if s not in (-1, 1):
                    raise ParseError(f"line {lineno}: sign must be +1 or -1, got {parts[2]}")
                triples.append((int(parts[0]), int(parts[1]), s))
            else:
                raise ParseError(f"line {lineno}: cannot parse {raw!r}")
        except ValueError as exc:
            if isinstance(exc, ParseError):
                raise
            raise ParseError(f"line {lineno}: {exc}") from None
    if n_bits is None:
        raise ParseError("missing header line 'n <n_bits>'")
    if pairs and (triples or declared_signed):
        raise ParseError("file mixes signed and unsigned edge lines")
    try:
        if triples or declared_signed:
            seen = set()
            for u, v, _ in triples:
                key = (min(u, v), max(u, v))
                if key in seen:
                    raise ParseError(f"duplicate edge {key}")
                seen.add(key)
            return SignedGraph.from_signed_edges(triples, isolated, n_bits)
        return UnsignedGraph(n_bits, isolated, pairs)
    except GraphError as exc:
        raise ParseError(str(exc)) from None


def read_graph(path: Union[str, Path]) -> AnyGraph:
    return parse_edge_list(Path(path).read_text(encoding="utf-8"))


def format_edge_list(g: AnyGraph) -> str:
    lines = [f"n {g.n_bits}"]
    if isinstance(g, SignedGraph):
        lines.append("signed")
        lines += [f"{u} {v} {s:+d}" for (u, v), s in sorted(g.sign.items())]
        touched = {x for e in g.edges for x in e}
    else:
        lines += [f"{u} {v}" for u, v in sorted(g.edges)]
        touched = {x for e in g.edges for x in e}
    lines += [f"vertex {v}" for v in sorted(g.vertices - touched)]
    return "\n".join(lines) + "\n"


def write_graph(g: AnyGraph, path: Union[str, Path]) -> None:
    Path(path).write_text(format_edge_list(g), encoding="utf-8", newline="\n")


def _fmt_entry(x) -> str:
    x = Fraction(x)
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def format_dense(rows) -> str:
    rows = [list(r) for r in rows]
    out = [str(len(rows))]
    out += [" ".join(_fmt_entry(x) for x in r) for r in rows]
    return "\n".join(out) + "\n"


def parse_dense(text: str) -> np.ndarray:
    lines = [ln for ln in text.splitlines() if ln.strip()]
    if not lines:
        raise ParseError("empty matrix file")
    side = int(lines[0])
    if len(lines) - 1 != side:
        raise ParseError(f"expected {side} rows, found {len(lines) - 1}")
    rows = [[Fraction(tok) for tok in ln.split()] for ln in lines[1:]]
    if any(len(r) != side for r in rows):
        raise ParseError("ragged matrix rows")
    return np.array(rows, dtype=object).reshape(side, side)
