"""Constructions mapping between problems while preserving sparse access.

* clique complex -> signed graph on the p-simplices (``clique_oracle`` and the
  explicit ``construction_matrix``);
* signed graph -> unsigned graph by negative subdivision of positive edges;
* marked access -> traditional access by appending an auxiliary gadget.
"""
from __future__ import annotations

from dataclasses import dataclass
from math import ceil
from typing import Dict, Iterator, Optional, Tuple

import numpy as np

from .complex import CliqueComplexView, Simplex, bits_to_simplex, enumerate_p_simplices, simplex_bits, sng
from .graphs import SignedGraph, UnsignedGraph
from .linalg import DenseSymMatrix
from .oracle import MARKED, TRADITIONAL, OracleError, SparseAccess


class IdSpaceExhausted(ValueError):
    pass


# -- clique complex -> signed graph -------------------------------------------------

@dataclass(frozen=True)
class CliqueReductionInstance:
    complex: CliqueComplexView
    p: int

    def __post_init__(self):
        if not 0 <= self.p <= self.complex.n - 2:
            raise ValueError(f"clique reduction needs 0 <= p <= n-2, got p={self.p}, n={self.complex.n}")

    @property
    def n(self) -> int:
        return self.complex.n

    @property
    def candidates(self) -> int:
        """Number of remove-one/add-one moves from a p-simplex."""
        return (self.n - self.p - 1) * (self.p + 1)

    @property
    def m(self) -> int:
        return max(0, (self.candidates - 1).bit_length())

    @property
    def S(self) -> int:
        # the non-vertex detector reads positions 0 and 1
        return max(2, 1 << self.m)


def simplex_pair_sign(c: CliqueComplexView, sigma: Simplex, tau: Simplex, literal: bool = False) -> int:
    """Edge sign between two p-simplices of the clique complex.

    ``-sng(s&t, s) sng(s&t, t) - sng(s, s|t) sng(t, s|t)``, where the lower term
    only counts if ``s&t`` is a simplex (nonempty) and the upper term only if
    ``s|t`` is one. ``literal=True`` drops both membership tests.
    """
    inter = tuple(sorted(set(sigma) & set(tau)))
    union = tuple(sorted(set(sigma) | set(tau)))
    lower = upper = 0
    if literal or inter:
        lower = sng(inter, sigma) * sng(inter, tau)
    if literal or c.is_simplex(union):
        upper = sng(sigma, union) * sng(tau, union)
    return -lower - upper


def _candidate(c: CliqueComplexView, sigma: Simplex, a: int, b: int) -> Simplex:
    outside = [v for v in range(c.n) if v not in sigma]
    return tuple(sorted(sigma[:a] + sigma[a + 1:] + (outside[b],)))


def clique_oracle(inst: CliqueReductionInstance, literal_sign: bool = False) -> SparseAccess:
    """Marked signed oracle over the p-simplices of a clique complex.

    Index ``i`` is a vertex iff its bitstring is a (p+1)-clique. Row ``i`` lists
    every remove-one/add-one candidate ``(a, b) = (l mod (p+1), l div (p+1))``
    whether or not it is a clique; non-clique candidates get sign 0.
    """
    c, p = inst.complex, inst.p
    width = p + 1
    outside_count = inst.n - p - 1

    def is_vertex(i: int) -> bool:
        return bin(i).count("1") == width and c.is_clique_bits(i)

    def adj(i: int, ell: int) -> int:
        if not is_vertex(i):
            return ell
        a, b = ell % width, ell // width
        if b >= outside_count:
            return 0
        return simplex_bits(_candidate(c, bits_to_simplex(i), a, b))

    holder: Dict[str, SparseAccess] = {}

    def sign(i: int, ell: int) -> int:
        j = holder["o"].adj(i, ell)
        if j == 0 or not is_vertex(i) or not is_vertex(j):
            return 0
        return simplex_pair_sign(c, bits_to_simplex(i), bits_to_simplex(j), literal_sign)

    o = SparseAccess(inst.n, inst.S, MARKED, adj, sign, name=f"clique(p={p})")
    holder["o"] = o
    return o


def upper_degree(c: CliqueComplexView, sigma: Simplex) -> int:
    """Number of (p+1)-simplices having ``sigma`` as a face."""
    bits = simplex_bits(sigma)
    return sum(1 for v in range(c.n) if not bits >> v & 1 and c.is_clique_bits(bits | 1 << v))


def construction_matrix(c: CliqueComplexView, p: int) -> DenseSymMatrix:
    """Signed-graph form of the p-th Hodge Laplacian, built simplex by simplex.

    Diagonal ``p + 1 + deg_up`` (just ``deg_up`` for p = 0, which has no lower
    part); off-diagonal ``-s(sigma, tau)`` on lower/upper adjacent pairs.
    """
    cells = enumerate_p_simplices(c, p)
    index = {s: k for k, s in enumerate(cells)}
    m = np.zeros((len(cells), len(cells)), dtype=np.int64)
    for k, sigma in enumerate(cells):
        m[k, k] = (p + 1 if p >= 1 else 0) + upper_degree(c, sigma)
        for a in range(p + 1):
            for b in range(c.n - p - 1):
                tau = _candidate(c, sigma, a, b)
                t = index.get(tau)
                if t is None:
                    continue
                m[k, t] = -simplex_pair_sign(c, sigma, tau)
    return DenseSymMatrix(m, labels=tuple(cells))


def simplex_graph(c: CliqueComplexView, p: int) -> SignedGraph:
    """Explicit signed graph on the p-simplices, edges where the pair sign is nonzero.

    Vertex ids are the simplex bitstrings, matching :func:`clique_oracle`.
    """
    cells = enumerate_p_simplices(c, p)
    present = set(cells)
    signs: Dict[Tuple[int, int], int] = {}
    for sigma in cells:
        for a in range(p + 1):
            for b in range(c.n - p - 1):
                tau = _candidate(c, sigma, a, b)
                if tau in present:
                    s = simplex_pair_sign(c, sigma, tau)
                    if s:
                        u, v = simplex_bits(sigma), simplex_bits(tau)
                        signs[(min(u, v), max(u, v))] = s
    base = UnsignedGraph(c.n, [simplex_bits(s) for s in cells], signs)
    return SignedGraph(base, signs)


# -- negative subdivision ----------------------------------------------------------

def negative_subdivision_explicit(g: SignedGraph, n_bits_out: Optional[int] = None) -> UnsignedGraph:
    """Replace each positive edge by a two-edge path through a new vertex, drop signs.

    New vertices get ids ``2**n_bits + k`` for the ``k``-th positive edge in sorted
    order (see :func:`subdivision_ids`).
    """
    ids = subdivision_ids(g)
    top = max(ids.values(), default=max(g.vertices, default=1))
    needed = max(g.n_bits, top.bit_length())
    if n_bits_out is None:
        n_bits_out = needed
    elif n_bits_out < needed:
        raise IdSpaceExhausted(f"{len(ids)} subdivision vertices do not fit below 2^{n_bits_out}")
    edges = [e for e, s in g.sign.items() if s < 0]
    for (u, v), w in ids.items():
        edges += [(u, w), (w, v)]
    return UnsignedGraph(n_bits_out, set(g.vertices) | set(ids.values()), edges)


def subdivision_ids(g: SignedGraph) -> Dict[Tuple[int, int], int]:
    base = 1 << g.n_bits
    positive = sorted(e for e, s in g.sign.items() if s > 0)
    return {e: base + k for k, e in enumerate(positive)}


def negative_subdivision_oracle(o: SparseAccess, canonical: bool = True, lenient: bool = False) -> SparseAccess:
    """Unsigned marked oracle for the negative subdivision of a signed marked oracle.

    The subdivision vertex for the entry ``(i, l)`` has id ``2**n + i * 2**m + l``
    with ``2**m >= S``. With ``canonical=True`` each positive edge keeps only the
    id from its smaller endpoint; the other encoding, and every encoding that
    does not name a positive edge, is a non-vertex. ``canonical=False`` follows
    the per-incidence addressing verbatim (asymmetric whenever a positive edge
    exists; kept for comparison).

    ``lenient=True`` accepts inputs whose rows contain zero-sign entries: vertex
    rows are compacted to their nonzero-sign entries at O(S) queries each.
    """
    if not o.signed:
        raise OracleError("negative subdivision needs a signed oracle")
    if o.mode != MARKED:
        raise OracleError("negative subdivision expects marked access")
    n, S = o.n_bits, o.S
    m = max(1, (S - 1).bit_length())
    base, mask = 1 << n, (1 << m) - 1

    def live_entry(i: int, ell: int) -> Tuple[int, int, int]:
        if not lenient:
            j = o.adj(i, ell)
            return ell, j, (o.sign(i, ell) if j else 0)
        seen = 0
        for pos in range(S):
            j = o.adj(i, pos)
            if j == 0:
                continue
            s = o.sign(i, pos)
            if s == 0:
                continue
            if seen == ell:
                return pos, j, s
            seen += 1
        return ell, 0, 0

    def back_position(j: int, i: int) -> Optional[int]:
        for pos in range(S):
            if o.adj(j, pos) == i:
                return pos
        return None

    def adj(i: int, ell: int) -> int:
        if i < base:
            if o.is_marked_row(i):
                return ell
            if ell >= S:
                return 0
            pos, j, s = live_entry(i, ell)
            if j == 0 or s == 0:
                return 0
            if s < 0:
                return j
            if not canonical or i < j:
                return base + (i << m) + pos
            back = back_position(j, i)
            return 0 if back is None else base + (j << m) + back
        k = i - base
        i2, pos = k >> m, k & mask
        if i2 >= base or pos >= S or o.is_marked_row(i2):
            return ell
        j2 = o.adj(i2, pos)
        if not canonical:
            if j2 == 0 or o.sign(i2, pos) != 1:
                return 0
            return (i2, j2)[ell] if ell < 2 else 0
        if j2 == 0 or j2 < i2 or o.sign(i2, pos) != 1:
            return ell
        return (i2, j2)[ell] if ell < 2 else 0

    return SparseAccess(n + m + 1, max(2, S), MARKED, adj, None,
                        name="subdivide" if canonical else "subdivide-literal")


# -- marked -> traditional ---------------------------------------------------------

@dataclass(frozen=True)
class GadgetLayout:
    n_bits: int
    S: int

    @property
    def base(self) -> int:
        return 1 << self.n_bits

    @property
    def A(self) -> int:
        return ceil(self.base / self.S)

    @property
    def N(self) -> int:
        """Total vertex count ``2**n + A + 3``; vertices are exactly ``1..N``."""
        return self.base + self.A + 3

    @property
    def line(self) -> range:
        return range(self.base, self.base + self.A + 1)

    @property
    def triangle(self) -> Tuple[int, int, int]:
        t = self.base + self.A
        return (t + 1, t + 2, t + 3)

    @property
    def n_bits_out(self) -> int:
        return self.N.bit_length()

    @property
    def S_out(self) -> int:
        return self.S + 2

    def line_vertex_for(self, i: int) -> int:
        return self.base + ceil(i / self.S)


def marked_to_traditional(o: SparseAccess) -> SparseAccess:
    """Traditional-access oracle on ``{1..N}`` with the same balanced/bipartite components.

    Original non-vertices ``1..2**n-1`` hang off a line of auxiliary vertices
    that ends in a triangle; in the signed case one triangle edge is negative.
    The appended component is therefore never balanced nor bipartite.
    """
    if o.mode != MARKED:
        raise OracleError("input must use marked access")
    if o.S < 2:
        raise OracleError("degree bound S must be at least 2")
    lay = GadgetLayout(o.n_bits, o.S)
    base, S, A, N = lay.base, lay.S, lay.A, lay.N
    t1, t2, t3 = lay.triangle

    def attached(k: int) -> Iterator[int]:
        if k < 1:
            return
        for x in range((k - 1) * S + 1, min(k * S, base - 1) + 1):
            if o.is_marked_row(x):
                yield x

    def adj(i: int, ell: int) -> int:
        if i == 0 or i > N:
            return ell
        if i < base:
            if o.is_marked_row(i):
                return lay.line_vertex_for(i) if ell == 0 else 0
            return o.adj(i, ell) if ell < S else 0
        if i <= base + A:
            k = i - base
            if ell == 0:
                return i + 1
            if k >= 1 and ell == 1:
                return i - 1
            slot = ell - (2 if k >= 1 else 1)
            for x in attached(k):
                if slot == 0:
                    return x
                slot -= 1
            return 0
        row = {t1: (i - 1, i + 1, i + 2), t2: (i - 1, i + 1), t3: (i - 1, i - 2)}[i]
        return row[ell] if ell < len(row) else 0

    sign = None
    holder: Dict[str, SparseAccess] = {}
    if o.signed:
        def sign(i: int, ell: int) -> int:
            if i == 0 or i > N:
                return 0
            j = holder["o"].adj(i, ell)
            if j == 0:
                return 0
            if i < base and j < base:
                return o.sign(i, ell)
            if {i, j} == {t2, t3}:
                return -1
            return 1

    out = SparseAccess(lay.n_bits_out, lay.S_out, TRADITIONAL, adj, sign, name="marked-to-traditional")
    holder["o"] = out
    return out
