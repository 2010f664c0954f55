from __future__ import annotations

from itertools import combinations

import pytest
from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from sparsebalance.complex import CliqueComplexView
from sparsebalance.graphs import SignedGraph, UnsignedGraph

settings.register_profile(
    "default",
    max_examples=80,
    deadline=None,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("default")


@st.composite
def signed_graphs(draw, max_vertices: int = 8, n_bits=None, max_degree=None):
    k = draw(st.integers(1, max_vertices))
    bits = n_bits if n_bits is not None else max(1, k.bit_length())
    pool = list(range(1, (1 << bits)))
    verts = sorted(draw(st.lists(st.sampled_from(pool), min_size=1, max_size=k, unique=True)))
    pairs = list(combinations(verts, 2))
    chosen = draw(st.lists(st.sampled_from(pairs), unique=True, max_size=len(pairs))) if pairs else []
    deg = {v: 0 for v in verts}
    signs = {}
    for u, v in chosen:
        if max_degree is not None and (deg[u] >= max_degree or deg[v] >= max_degree):
            continue
        signs[(u, v)] = draw(st.sampled_from((1, -1)))
        deg[u] += 1
        deg[v] += 1
    return SignedGraph(UnsignedGraph(bits, verts, signs), signs)


@st.composite
def unsigned_graphs(draw, max_vertices: int = 8, n_bits=None, max_degree=None):
    g = draw(signed_graphs(max_vertices, n_bits, max_degree))
    return g.base


@st.composite
def clique_complexes(draw, max_n: int = 6):
    n = draw(st.integers(1, max_n))
    pairs = list(combinations(range(n), 2))
    mask = draw(st.lists(st.booleans(), min_size=len(pairs), max_size=len(pairs)))
    return CliqueComplexView(n, frozenset(e for e, keep in zip(pairs, mask) if keep))


@pytest.fixture
def c4() -> CliqueComplexView:
    return CliqueComplexView(4, frozenset({(0, 1), (1, 2), (2, 3), (0, 3)}))


@pytest.fixture
def k3() -> CliqueComplexView:
    return CliqueComplexView(3, frozenset({(0, 1), (1, 2), (0, 2)}))


@pytest.fixture
def triangle_positive() -> SignedGraph:
    return SignedGraph.from_signed_edges([(1, 2, 1), (2, 3, 1), (1, 3, 1)], n_bits=2)


@pytest.fixture
def triangle_one_negative() -> SignedGraph:
    return SignedGraph.from_signed_edges([(1, 2, 1), (2, 3, 1), (1, 3, -1)], n_bits=2)


# one line per acceptance criterion, echoed at the end of the run
ACCEPTANCE_LINES: list = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES, key=lambda s: int(s.split()[2].rstrip(":"))):
            terminalreporter.write_line(line)
