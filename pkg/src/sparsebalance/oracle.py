"""Implicit graphs given by adjacency/sign oracles (marked and traditional sparse access).

An oracle is a pair of pure functions over the index square
``[0, 2**n_bits) x [0, S)``. In *marked* mode any index that is not a vertex
returns the row ``[0, 1, ..., S-1]``; vertex rows are neighbor lists padded
with 0. *Traditional* mode additionally fixes the vertex set to ``{1..N}``.
"""
from __future__ import annotations

import random
import threading
from collections import Counter
from dataclasses import dataclass, field
from typing import Callable, Dict, Iterable, List, Optional, Tuple, Union

from .graphs import SignedGraph, UnsignedGraph

MARKED = "marked"
TRADITIONAL = "traditional"

DEFAULT_INDEX_BUDGET = 1 << 16


class OracleError(ValueError):
    pass


class DegreeOverflow(OracleError):
    pass


class AsymmetryError(OracleError):
    pass


class _CallCounter:
    def __init__(self):
        self._lock = threading.Lock()
        self.counts: Counter = Counter()

    def bump(self, key: str) -> None:
        with self._lock:
            self.counts[key] += 1

    def snapshot(self) -> Dict[str, int]:
        with self._lock:
            return {"adj": self.counts["adj"], "sign": self.counts["sign"]}

    def reset(self) -> None:
        with self._lock:
            self.counts.clear()


@dataclass(frozen=True)
class SparseAccess:
    """Handle to an implicit graph.

    ``adj_fn`` and ``sign_fn`` are the raw oracles; call them through
    :meth:`adj` and :meth:`sign` so that queries are range-checked and counted.
    """

    n_bits: int
    S: int
    mode: str
    adj_fn: Callable[[int, int], int]
    sign_fn: Optional[Callable[[int, int], int]] = None
    name: str = "oracle"
    counter: _CallCounter = field(default_factory=_CallCounter, compare=False, repr=False)

    def __post_init__(self):
        if self.mode not in (MARKED, TRADITIONAL):
            raise OracleError(f"unknown mode {self.mode!r}")

    @property
    def signed(self) -> bool:
        return self.sign_fn is not None

    @property
    def size(self) -> int:
        return 1 << self.n_bits

    def _check(self, i: int, ell: int) -> None:
        if not (0 <= i < self.size and 0 <= ell < self.S):
            raise IndexError(f"query ({i}, {ell}) outside [0,{self.size}) x [0,{self.S})")

    def adj(self, i: int, ell: int) -> int:
        self._check(i, ell)
        self.counter.bump("adj")
        return self.adj_fn(i, ell)

    def sign(self, i: int, ell: int) -> int:
        if self.sign_fn is None:
            raise OracleError("unsigned oracle has no sign function")
        self._check(i, ell)
        self.counter.bump("sign")
        return self.sign_fn(i, ell)

    def row(self, i: int) -> List[int]:
        return [self.adj(i, ell) for ell in range(self.S)]

    def is_marked_row(self, i: int) -> bool:
        """The two-query non-vertex detector; requires ``S >= 2``."""
        return i == 0 or (self.adj(i, 0) == 0 and self.adj(i, 1) != 0)

    def degree_counts(self, i: int) -> Tuple[int, int]:
        """``(entries with nonzero adj, entries with nonzero sign)`` for a vertex row."""
        adj_nz = sign_nz = 0
        for ell in range(self.S):
            j = self.adj(i, ell)
            if j != 0:
                adj_nz += 1
                if self.sign_fn is None or self.sign(i, ell) != 0:
                    sign_nz += 1
        return adj_nz, sign_nz

    @property
    def calls(self) -> Dict[str, int]:
        return self.counter.snapshot()

    def reset_calls(self) -> None:
        self.counter.reset()


def from_explicit(g: Union[SignedGraph, UnsignedGraph], mode: str = MARKED, S: Optional[int] = None,
                  n_bits: Optional[int] = None) -> SparseAccess:
    """Sparse access for an explicit graph; neighbor lists are sorted then zero-padded."""
    base = g.base if isinstance(g, SignedGraph) else g
    if S is None:
        S = max(2, base.max_degree)
    if S < 2:
        raise OracleError("degree bound S must be at least 2")
    if base.max_degree > S:
        raise DegreeOverflow(f"max degree {base.max_degree} exceeds S={S}")
    n_bits = base.n_bits if n_bits is None else n_bits
    if max(base.vertices, default=0) >= 1 << n_bits:
        raise OracleError(f"vertex ids do not fit in {n_bits} bits")
    if mode == TRADITIONAL and base.vertices != set(range(1, len(base.vertices) + 1)):
        raise OracleError("traditional access needs vertex set {1, ..., N}")

    rows = {v: base.neighbors(v) for v in base.vertices}

    def adj(i: int, ell: int) -> int:
        nbrs = rows.get(i)
        if nbrs is None:
            return ell
        return nbrs[ell] if ell < len(nbrs) else 0

    sign = None
    if isinstance(g, SignedGraph):
        def sign(i: int, ell: int) -> int:
            nbrs = rows.get(i)
            if nbrs is None or ell >= len(nbrs):
                return 0
            return g.s(i, nbrs[ell])

    return SparseAccess(n_bits, S, mode, adj, sign, name=f"explicit-{mode}")


def _check_budget(o: SparseAccess, budget: int) -> None:
    if o.size > budget:
        raise OracleError(f"index space 2^{o.n_bits} exceeds budget {budget}")


def vertex_set(o: SparseAccess, budget: int = DEFAULT_INDEX_BUDGET) -> List[int]:
    _check_budget(o, budget)
    return [i for i in range(o.size) if not o.is_marked_row(i)]


def _reachable(o: SparseAccess, seeds: Iterable[int]) -> List[int]:
    seen, stack = set(), [s for s in seeds if not o.is_marked_row(s)]
    seen.update(stack)
    while stack:
        i = stack.pop()
        for ell in range(o.S):
            j = o.adj(i, ell)
            if j and j not in seen and not o.is_marked_row(j):
                seen.add(j)
                stack.append(j)
    return sorted(seen)


def materialize(o: SparseAccess, seeds: Optional[Iterable[int]] = None,
                budget: int = DEFAULT_INDEX_BUDGET) -> Union[SignedGraph, UnsignedGraph]:
    """Rebuild the explicit graph an oracle describes.

    With ``seeds`` only the part reachable from them is explored; otherwise
    every index is visited. Zero-sign entries of signed oracles are dropped.
    """
    verts = _reachable(o, seeds) if seeds is not None else vertex_set(o, budget)
    vset = set(verts)
    half: Dict[Tuple[int, int], int] = {}
    for i in verts:
        for ell in range(o.S):
            j = o.adj(i, ell)
            if j == 0:
                continue
            s = o.sign(i, ell) if o.signed else -1
            if s == 0:
                continue
            if j not in vset:
                raise AsymmetryError(f"{i} lists {j}, which is not a vertex")
            if (i, j) in half:
                raise OracleError(f"{i} lists {j} twice")
            half[(i, j)] = s
    for (i, j), s in half.items():
        back = half.get((j, i))
        if back is None:
            raise AsymmetryError(f"{i} lists {j} but {j} does not list {i}")
        if back != s:
            raise AsymmetryError(f"sign of {{{i},{j}}} differs by direction")
    if o.signed:
        return SignedGraph(UnsignedGraph(o.n_bits, verts, [k for k in half if k[0] < k[1]]),
                           {k: s for k, s in half.items() if k[0] < k[1]})
    return UnsignedGraph(o.n_bits, verts, [k for k in half if k[0] < k[1]])


@dataclass
class ConformanceReport:
    strict: bool
    exhaustive: bool
    rows_checked: int
    violations: List[Dict] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations

    def kinds(self) -> Counter:
        return Counter(v["kind"] for v in self.violations)

    def add(self, kind: str, i: int = None, ell: int = None, detail: str = "") -> None:
        self.violations.append({"kind": kind, "i": i, "ell": ell, "detail": detail})

    def to_dict(self, limit: int = 50) -> Dict:
        return {
            "strict": self.strict,
            "exhaustive": self.exhaustive,
            "rows_checked": self.rows_checked,
            "violation_counts": dict(sorted(self.kinds().items())),
            "violations": self.violations[:limit],
        }


def conformance_check(o: SparseAccess, exhaustive: bool = True, strict: bool = True,
                      samples: int = 256, seed: int = 0,
                      budget: int = DEFAULT_INDEX_BUDGET) -> ConformanceReport:
    """Audit an oracle against the sparse-access contract.

    Violations are returned as data. Kinds: ``degree-bound``, ``out-of-range``,
    ``malformed-marked-row``, ``padding``, ``self-adjacency``,
    ``duplicate-neighbor``, ``non-vertex-neighbor``, ``asymmetric-adjacency``,
    ``asymmetric-sign``, ``sign-value``, ``zero-sign-adjacency``,
    ``sign-on-non-edge``, ``non-contiguous-vertices``, ``nondeterministic``.

    With ``strict=False`` adjacency entries whose sign is 0 are read as
    non-edges: they are not reported and are skipped by the symmetry and
    padding checks.
    """
    rng = random.Random(seed)
    if exhaustive:
        _check_budget(o, budget)
        rows = list(range(o.size))
    else:
        rows = sorted({0, *(rng.randrange(o.size) for _ in range(samples))})
    report = ConformanceReport(strict, exhaustive, len(rows))
    if o.S < 2:
        report.add("degree-bound", detail=f"S={o.S} < 2")
        return report

    table: Dict[int, List[int]] = {}
    signs: Dict[int, List[int]] = {}

    def load(i: int) -> None:
        if i not in table:
            table[i] = o.row(i)
            signs[i] = [o.sign(i, ell) for ell in range(o.S)] if o.signed else [0] * o.S

    def edge_entries(i: int) -> Dict[int, int]:
        load(i)
        out = {}
        for ell, j in enumerate(table[i]):
            if j == 0:
                continue
            if o.signed and signs[i][ell] == 0 and not strict:
                continue
            out.setdefault(j, signs[i][ell])
        return out

    marked_cache: Dict[int, bool] = {}

    def marked(i: int) -> bool:
        if i not in marked_cache:
            load(i)
            marked_cache[i] = i == 0 or (table[i][0] == 0 and table[i][1] != 0)
        return marked_cache[i]

    vertex_rows: List[int] = []
    for i in rows:
        load(i)
        row, srow = table[i], signs[i]
        if any(not (0 <= j < o.size) for j in row):
            report.add("out-of-range", i, detail=str(row))
            continue
        if marked(i):
            if i != 0 and row != list(range(o.S)):
                report.add("malformed-marked-row", i, detail=str(row))
            if i == 0 and row != list(range(o.S)) and any(row):
                report.add("malformed-marked-row", i, detail=str(row))
            for ell, s in enumerate(srow):
                if o.signed and s != 0:
                    report.add("sign-on-non-edge", i, ell, "nonzero sign on a non-vertex row")
            continue
        vertex_rows.append(i)
        live = [(ell, j) for ell, j in enumerate(row)
                if j != 0 and not (o.signed and not strict and srow[ell] == 0)]
        if strict:
            first_zero = next((ell for ell, j in enumerate(row) if j == 0), o.S)
            if any(j != 0 for j in row[first_zero:]):
                report.add("padding", i, detail=str(row))
        targets = [j for _, j in live]
        if len(set(targets)) != len(targets):
            report.add("duplicate-neighbor", i, detail=str(row))
        for ell, j in enumerate(row):
            s = srow[ell]
            if o.signed and s not in (-1, 0, 1):
                report.add("sign-value", i, ell, f"sign {s}")
            if j == 0:
                if o.signed and s != 0:
                    report.add("sign-on-non-edge", i, ell, "nonzero sign on a padding entry")
                continue
            if o.signed and s == 0:
                if strict:
                    report.add("zero-sign-adjacency", i, ell, f"{i} lists {j} with sign 0")
                continue
            if j == i:
                report.add("self-adjacency", i, ell)
                continue
            if marked(j):
                report.add("non-vertex-neighbor", i, ell, f"{i} lists non-vertex {j}")
                continue
            back = edge_entries(j)
            if i not in back:
                report.add("asymmetric-adjacency", i, ell, f"{i} lists {j} but not conversely")
            elif o.signed and back[i] != s:
                report.add("asymmetric-sign", i, ell, f"s({i},{j})={s} but s({j},{i})={back[i]}")

    if o.mode == TRADITIONAL and exhaustive and vertex_rows != list(range(1, len(vertex_rows) + 1)):
        report.add("non-contiguous-vertices", detail=f"vertex rows are not 1..{len(vertex_rows)}")

    probe = rows if len(rows) <= samples else rng.sample(rows, samples)
    for i in probe:
        ell = rng.randrange(o.S)
        if o.adj(i, ell) != table[i][ell] or (o.signed and o.sign(i, ell) != signs[i][ell]):
            report.add("nondeterministic", i, ell)
    return report
