from __future__ import annotations

from itertools import combinations

import networkx as nx
import numpy as np
import pytest
from hypothesis import given

from sparsebalance.complex import (
    BudgetExceeded,
    CliqueComplexView,
    betti_exact,
    bits_to_simplex,
    boundary_matrix,
    enumerate_p_simplices,
    hodge_laplacian,
    homology_summary,
    simplex_bits,
    sng,
)
from sparsebalance.graphs import UnsignedGraph
from sparsebalance.linalg import kernel_dim

from conftest import clique_complexes


def octahedron() -> CliqueComplexView:
    # K_{2,2,2}: every pair except the three antipodal ones
    anti = {(0, 1), (2, 3), (4, 5)}
    return CliqueComplexView(6, frozenset(e for e in combinations(range(6), 2) if e not in anti))


def to_nx(c: CliqueComplexView) -> nx.Graph:
    g = nx.Graph()
    g.add_nodes_from(range(c.n))
    g.add_edges_from(c.edges)
    return g


def test_sng_values():
    assert sng((1, 2), (0, 1, 2)) == 1
    assert sng((0, 2), (0, 1, 2)) == -1
    assert sng((0, 1), (0, 1, 2)) == 1
    assert sng((0, 3), (0, 1, 2)) == 0
    assert sng((), (4,)) == 1
    assert sng((0,), (0, 1, 2)) == 0


def test_bits_roundtrip():
    assert simplex_bits((0, 2, 5)) == 0b100101
    assert bits_to_simplex(0b100101) == (0, 2, 5)


def test_simplices_sorted_by_bits(c4):
    assert enumerate_p_simplices(c4, 1) == [(0, 1), (1, 2), (0, 3), (2, 3)]
    assert enumerate_p_simplices(c4, 2) == []
    assert enumerate_p_simplices(c4, 0) == [(0,), (1,), (2,), (3,)]


def test_boundary_columns(k3):
    b = boundary_matrix(k3, 2)
    assert b.cols == ((0, 1, 2),)
    assert b.rows == ((0, 1), (0, 2), (1, 2))
    assert b.entries[:, 0].tolist() == [1, -1, 1]
    with pytest.raises(ValueError):
        boundary_matrix(k3, 0)


@pytest.mark.parametrize("name,c,p,expected", [
    ("C4", CliqueComplexView(4, frozenset({(0, 1), (1, 2), (2, 3), (0, 3)})), 1, 1),
    ("K3", CliqueComplexView(3, frozenset({(0, 1), (1, 2), (0, 2)})), 1, 0),
    ("K4-top", CliqueComplexView(4, frozenset(combinations(range(4), 2))), 3, 0),
    ("octahedron", octahedron(), 2, 1),
    ("octahedron", octahedron(), 1, 0),
    ("two-triangles", CliqueComplexView(6, frozenset({(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5)})), 0, 2),
    ("C5", CliqueComplexView(5, frozenset({(0, 1), (1, 2), (2, 3), (3, 4), (0, 4)})), 1, 1),
])
def test_known_betti(name, c, p, expected):
    assert betti_exact(c, p) == expected
    assert kernel_dim(hodge_laplacian(c, p)) == expected


def test_hodge_of_triangle_edges(k3):
    assert hodge_laplacian(k3, 1).entries.tolist() == [[3, 0, 0], [0, 3, 0], [0, 0, 3]]
    summary = homology_summary(k3, 1)
    assert summary == {"p": 1, "n_simplices": 3, "rank_boundary": 2, "rank_coboundary": 1, "betti": 0}


def test_budget():
    c = CliqueComplexView(30, frozenset(), budget=1000)
    with pytest.raises(BudgetExceeded):
        enumerate_p_simplices(c, 3)


def test_from_graph_relabels():
    g = UnsignedGraph(4, [], [(3, 9), (9, 12), (3, 12)])
    c = CliqueComplexView.from_graph(g)
    assert c.n == 3 and c.edges == {(0, 1), (1, 2), (0, 2)}
    assert c.dimension == 2


@given(clique_complexes(max_n=6))
def test_boundary_squares_to_zero(c):
    for p in range(1, c.n):
        d_p = boundary_matrix(c, p).entries
        d_up = boundary_matrix(c, p + 1).entries
        if d_p.size and d_up.size:
            assert not (d_p @ d_up).any()


@given(clique_complexes(max_n=6))
def test_euler_characteristic(c):
    faces = sum((-1) ** p * len(enumerate_p_simplices(c, p)) for p in range(c.n))
    bettis = sum((-1) ** p * betti_exact(c, p) for p in range(c.n))
    assert faces == bettis


@given(clique_complexes(max_n=7))
def test_low_betti_against_networkx(c):
    g = to_nx(c)
    assert betti_exact(c, 0) == nx.number_connected_components(g)
    if not any(len(k) >= 3 for k in nx.find_cliques(g)):
        cycle_rank = g.number_of_edges() - g.number_of_nodes() + nx.number_connected_components(g)
        assert betti_exact(c, 1) == cycle_rank


@given(clique_complexes(max_n=6))
def test_simplices_are_cliques(c):
    g = to_nx(c)
    for p in range(c.n):
        found = set(enumerate_p_simplices(c, p))
        ref = {tuple(sorted(s)) for s in combinations(range(c.n), p + 1)
               if all(g.has_edge(u, v) for u, v in combinations(s, 2))}
        assert found == ref


@given(clique_complexes(max_n=6))
def test_hodge_is_psd(c):
    for p in range(c.n):
        vals = hodge_laplacian(c, p).eigenvalues()
        assert (vals > -1e-9).all()
        if vals.size:
            assert np.isclose(vals.sum(), np.trace(hodge_laplacian(c, p).to_float()))
