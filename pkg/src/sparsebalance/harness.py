"""Instance families and the oracle-vs-homology cross-check report."""
from __future__ import annotations

import random
from itertools import combinations, product
from typing import Dict, Iterator, List, Optional

import networkx as nx

from .complex import CliqueComplexView, betti_exact
from .graphs import SignedGraph, UnsignedGraph, has_balanced_component
from .linalg import kernel_dim
from .oracle import materialize
from .reductions import CliqueReductionInstance, clique_oracle
from .spectral import ADJ_COUNT, SIGN_COUNT, assemble_from_oracle, signed_laplacian


def all_clique_complexes(n: int) -> Iterator[CliqueComplexView]:
    """Every labeled graph on ``{0..n-1}``, as clique complexes."""
    pairs = list(combinations(range(n), 2))
    for mask in range(1 << len(pairs)):
        yield CliqueComplexView(n, frozenset(pairs[k] for k in range(len(pairs)) if mask >> k & 1))


def random_clique_complex(rng: random.Random, n: int, density: Optional[float] = None) -> CliqueComplexView:
    q = rng.random() if density is None else density
    return CliqueComplexView(n, frozenset(e for e in combinations(range(n), 2) if rng.random() < q))


def atlas_clique_complexes(max_n: int) -> Iterator[CliqueComplexView]:
    """One clique complex per isomorphism class of graphs with 1..max_n vertices (max_n <= 7)."""
    for g in nx.graph_atlas_g():
        if 1 <= g.number_of_nodes() <= max_n:
            yield CliqueComplexView(g.number_of_nodes(), frozenset(g.edges()))


def all_signed_graphs(max_vertices: int) -> Iterator[SignedGraph]:
    """Every signed graph on ``{1..k}``, ``1 <= k <= max_vertices``: each pair absent, +1 or -1."""
    for k in range(1, max_vertices + 1):
        pairs = list(combinations(range(1, k + 1), 2))
        for choice in product((0, 1, -1), repeat=len(pairs)):
            triples = [(u, v, s) for (u, v), s in zip(pairs, choice) if s]
            yield SignedGraph.from_signed_edges(triples, range(1, k + 1), n_bits=max(1, k.bit_length()))


def all_unsigned_graphs(max_vertices: int) -> Iterator[UnsignedGraph]:
    for k in range(1, max_vertices + 1):
        pairs = list(combinations(range(1, k + 1), 2))
        for mask in range(1 << len(pairs)):
            yield UnsignedGraph(max(1, k.bit_length()), range(1, k + 1),
                                [pairs[b] for b in range(len(pairs)) if mask >> b & 1])


def random_signed_graph(rng: random.Random, vertices: List[int], max_degree: int, n_bits: int,
                        edge_attempts: Optional[int] = None, p_negative: Optional[float] = None) -> SignedGraph:
    """Random signed graph on the given ids with every degree at most ``max_degree``."""
    deg: Dict[int, int] = {v: 0 for v in vertices}
    signs: Dict[tuple, int] = {}
    q = rng.random() if p_negative is None else p_negative
    attempts = edge_attempts if edge_attempts is not None else rng.randint(0, len(vertices) * max_degree)
    for _ in range(attempts):
        if len(vertices) < 2:
            break
        u, v = rng.sample(vertices, 2)
        e = (min(u, v), max(u, v))
        if e in signs or deg[u] >= max_degree or deg[v] >= max_degree:
            continue
        signs[e] = -1 if rng.random() < q else 1
        deg[u] += 1
        deg[v] += 1
    return SignedGraph(UnsignedGraph(n_bits, vertices, signs), signs)


def random_sparse_signed(rng: random.Random, max_vertices: int = 60, max_S: int = 6) -> SignedGraph:
    k = rng.randint(1, max_vertices)
    S = rng.randint(2, max_S)
    return random_signed_graph(rng, list(range(1, k + 1)), S, max(1, k.bit_length()))


def random_marked_signed(rng: random.Random, n_bits: int, S: int) -> SignedGraph:
    """Random signed graph on a random subset of ``[1, 2**n_bits - 1]``."""
    pool = list(range(1, 1 << n_bits))
    verts = sorted(rng.sample(pool, rng.randint(1, len(pool))))
    return random_signed_graph(rng, verts, S, n_bits)


def crosscheck_report(max_n: int = 6, budget: int = 1 << 16) -> Dict:
    """Compare kernel dimensions of oracle-assembled matrices with Betti numbers.

    Runs over one clique complex per isomorphism class with at most ``max_n``
    vertices and every ``0 <= p <= n-2``. Nothing is asserted: the report lists
    where the simplex-graph Laplacian (either diagonal convention) and the
    balanced-component test (either isolated-vertex convention) disagree with
    ``betti_p != 0``.
    """
    rows = []
    totals = {"instances": 0, "sign_count_kernel_mismatch": 0, "adj_count_kernel_mismatch": 0,
              "balance_decision_mismatch": 0, "balance_decision_mismatch_ignoring_isolated": 0}
    for c in atlas_clique_complexes(max_n):
        for p in range(0, c.n - 1):
            betti = betti_exact(c, p)
            o = clique_oracle(CliqueReductionInstance(c, p))
            k_sign = kernel_dim(assemble_from_oracle(o, SIGN_COUNT, "V", budget))
            k_adj = kernel_dim(assemble_from_oracle(o, ADJ_COUNT, "V", budget))
            gs = materialize(o, budget=budget)
            bal = has_balanced_component(gs).answer if gs.vertices else False
            bal_strict = has_balanced_component(gs, count_isolated=False).answer
            k_mat = kernel_dim(signed_laplacian(gs))
            row = {
                "n": c.n, "edges": sorted(map(list, c.edges)), "p": p, "betti": betti,
                "kernel_sign_count": k_sign, "kernel_adj_count": k_adj, "kernel_materialized": k_mat,
                "balanced_component": bal, "balanced_component_ignoring_isolated": bal_strict,
            }
            flags = []
            if k_sign != betti:
                flags.append("sign-count-kernel")
                totals["sign_count_kernel_mismatch"] += 1
            if k_adj != betti:
                flags.append("adj-count-kernel")
                totals["adj_count_kernel_mismatch"] += 1
            if bal != (betti > 0):
                flags.append("balance-decision")
                totals["balance_decision_mismatch"] += 1
            if bal_strict != (betti > 0):
                flags.append("balance-decision-ignoring-isolated")
                totals["balance_decision_mismatch_ignoring_isolated"] += 1
            row["discrepancies"] = flags
            totals["instances"] += 1
            rows.append(row)
    return {"max_n": max_n, "totals": totals,
            "discrepancies": [r for r in rows if r["discrepancies"]]}
