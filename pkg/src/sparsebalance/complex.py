"""Clique complexes, boundary operators, Hodge Laplacians and exact Betti numbers.

Simplices are sorted vertex tuples over ``{0, ..., n-1}``; their bitstring
encoding sets bit ``k`` iff vertex ``k`` is present. Matrices index simplices
in increasing order of that encoding so output is reproducible.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations
from math import comb
from typing import Dict, FrozenSet, Iterable, List, Tuple

import numpy as np

from .graphs import UnsignedGraph
from .linalg import DenseSymMatrix, exact_rank

Simplex = Tuple[int, ...]

DEFAULT_BUDGET = 200_000


class BudgetExceeded(RuntimeError):
    """Raised when an enumeration would exceed its combinatorial cap."""


def simplex_bits(simplex: Iterable[int]) -> int:
    bits = 0
    for v in simplex:
        bits |= 1 << v
    return bits


def bits_to_simplex(bits: int) -> Simplex:
    out = []
    k = 0
    while bits:
        if bits & 1:
            out.append(k)
        bits >>= 1
        k += 1
    return tuple(out)


def sng(face: Iterable[int], simplex: Iterable[int]) -> int:
    """Orientation sign of ``face`` in ``simplex``: ``(-1)**j`` when ``face`` is
    ``simplex`` with its ``j``-th smallest vertex removed, else 0."""
    face = tuple(sorted(face))
    simplex = tuple(sorted(simplex))
    if len(face) + 1 != len(simplex):
        return 0
    for j, v in enumerate(simplex):
        if simplex[:j] + simplex[j + 1:] == face:
            return -1 if j % 2 else 1
    return 0


@dataclass(frozen=True)
class CliqueComplexView:
    """Clique complex of a graph on ``{0, ..., n-1}``.

    Only the graph is stored; simplices are materialized on demand, subject to
    ``budget`` candidate subsets per enumeration.
    """

    n: int
    edges: FrozenSet[Tuple[int, int]]
    budget: int = DEFAULT_BUDGET
    _nbr: Tuple[int, ...] = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        if self.n < 1:
            raise ValueError("a clique complex needs at least one vertex")
        edges = frozenset((min(u, v), max(u, v)) for u, v in self.edges)
        masks = [0] * self.n
        for u, v in edges:
            if u == v or not (0 <= u < self.n and 0 <= v < self.n):
                raise ValueError(f"bad edge {(u, v)} for n={self.n}")
            masks[u] |= 1 << v
            masks[v] |= 1 << u
        object.__setattr__(self, "edges", edges)
        object.__setattr__(self, "_nbr", tuple(masks))

    @classmethod
    def from_graph(cls, g: UnsignedGraph, budget: int = DEFAULT_BUDGET) -> "CliqueComplexView":
        """Relabel the graph's vertex ids to ``0..n-1`` in increasing order."""
        order = {v: k for k, v in enumerate(sorted(g.vertices))}
        return cls(len(order), frozenset((order[u], order[v]) for u, v in g.edges), budget)

    def neighbor_mask(self, v: int) -> int:
        return self._nbr[v]

    def is_simplex(self, simplex: Iterable[int]) -> bool:
        return self.is_clique_bits(simplex_bits(simplex))

    def is_clique_bits(self, bits: int) -> bool:
        if bits == 0 or bits >> self.n:
            return False
        rest = bits
        while rest:
            low = rest & -rest
            v = low.bit_length() - 1
            if (bits & ~low) & ~self._nbr[v]:
                return False
            rest ^= low
        return True

    def simplices(self, p: int) -> List[Simplex]:
        return enumerate_p_simplices(self, p)

    @property
    def dimension(self) -> int:
        """Largest ``p`` with a nonempty set of ``p``-simplices."""
        p = 0
        while self.simplices(p + 1):
            p += 1
        return p


def enumerate_p_simplices(c: CliqueComplexView, p: int) -> List[Simplex]:
    if p < 0:
        raise ValueError(f"dimension must be non-negative, got {p}")
    if p + 1 > c.n:
        return []
    candidates = comb(c.n, p + 1)
    if candidates > c.budget:
        raise BudgetExceeded(f"{candidates} candidate {p}-simplices exceed budget {c.budget}")
    found = [s for s in combinations(range(c.n), p + 1) if c.is_simplex(s)]
    found.sort(key=simplex_bits)
    return found


@dataclass(frozen=True)
class BoundaryMatrix:
    p: int
    rows: Tuple[Simplex, ...]
    cols: Tuple[Simplex, ...]
    entries: np.ndarray


def boundary_matrix(c: CliqueComplexView, p: int) -> BoundaryMatrix:
    """Matrix of the ``p``-boundary operator, entry ``(face, simplex) = sng(face, simplex)``."""
    if p < 1:
        raise ValueError(f"boundary_matrix needs p >= 1, got {p}")
    rows = enumerate_p_simplices(c, p - 1)
    cols = enumerate_p_simplices(c, p)
    index = {s: k for k, s in enumerate(rows)}
    m = np.zeros((len(rows), len(cols)), dtype=np.int64)
    for j, sigma in enumerate(cols):
        for k in range(len(sigma)):
            m[index[sigma[:k] + sigma[k + 1:]], j] = -1 if k % 2 else 1
    return BoundaryMatrix(p, tuple(rows), tuple(cols), m)


def hodge_laplacian(c: CliqueComplexView, p: int) -> DenseSymMatrix:
    """``down + up`` with ``down = d_p^T d_p`` (absent for p = 0) and ``up = d_{p+1} d_{p+1}^T``."""
    cells = enumerate_p_simplices(c, p)
    size = len(cells)
    lap = np.zeros((size, size), dtype=np.int64)
    if p >= 1:
        d = boundary_matrix(c, p).entries
        lap += d.T @ d
    up = boundary_matrix(c, p + 1).entries
    if up.shape[1]:
        lap += up @ up.T
    return DenseSymMatrix(lap, labels=tuple(cells))


def betti_exact(c: CliqueComplexView, p: int) -> int:
    """``dim C_p - rank d_p - rank d_{p+1}`` over the rationals, ``rank d_0 = 0``."""
    return homology_summary(c, p)["betti"]


def homology_summary(c: CliqueComplexView, p: int) -> Dict[str, int]:
    dim = len(enumerate_p_simplices(c, p))
    down = exact_rank(boundary_matrix(c, p).entries) if p >= 1 else 0
    up = exact_rank(boundary_matrix(c, p + 1).entries)
    return {"p": p, "n_simplices": dim, "rank_boundary": down, "rank_coboundary": up,
            "betti": dim - down - up}
