from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor

import pytest
from hypothesis import given

from sparsebalance.graphs import SignedGraph, UnsignedGraph, connected_components
from sparsebalance.oracle import (
    MARKED,
    TRADITIONAL,
    AsymmetryError,
    DegreeOverflow,
    OracleError,
    SparseAccess,
    conformance_check,
    from_explicit,
    materialize,
    vertex_set,
)

from conftest import signed_graphs, unsigned_graphs


def path_graph() -> SignedGraph:
    return SignedGraph.from_signed_edges([(1, 2, 1), (2, 5, -1)], n_bits=3)


def test_rows_and_marking():
    o = from_explicit(path_graph())
    assert o.S == 2
    assert o.row(2) == [1, 5]
    assert o.row(1) == [2, 0]
    assert o.row(3) == [0, 1]
    assert o.row(0) == [0, 1]
    assert [o.sign(2, k) for k in range(2)] == [1, -1]
    assert o.sign(1, 1) == 0
    assert vertex_set(o) == [1, 2, 5]


def test_call_counting():
    o = from_explicit(path_graph())
    o.reset_calls()
    o.row(2)
    o.sign(2, 0)
    assert o.calls == {"adj": 2, "sign": 1}
    with pytest.raises(IndexError):
        o.adj(8, 0)
    with pytest.raises(IndexError):
        o.adj(1, 2)


def test_counter_is_thread_safe():
    o = from_explicit(path_graph())
    o.reset_calls()
    with ThreadPoolExecutor(8) as pool:
        list(pool.map(lambda _: [o.adj(2, 0) for _ in range(500)], range(8)))
    assert o.calls["adj"] == 4000


def test_explicit_constraints():
    star = UnsignedGraph(3, [], [(1, 2), (1, 3), (1, 4)])
    with pytest.raises(DegreeOverflow):
        from_explicit(star, S=2)
    with pytest.raises(OracleError):
        from_explicit(UnsignedGraph(3, [], [(1, 5)]), mode=TRADITIONAL)
    with pytest.raises(OracleError):
        from_explicit(star, n_bits=2)
    with pytest.raises(OracleError):
        SparseAccess(2, 2, "weird", lambda i, l: 0)


@given(signed_graphs(max_vertices=10, max_degree=4))
def test_materialize_roundtrip_signed(g):
    o = from_explicit(g)
    assert materialize(o) == g


@given(unsigned_graphs(max_vertices=10))
def test_materialize_roundtrip_unsigned(g):
    assert materialize(from_explicit(g)) == g


@given(signed_graphs(max_vertices=10, max_degree=4))
def test_materialize_from_seed_is_component(g):
    o = from_explicit(g)
    root = min(g.vertices)
    comp = connected_components(g).components()[0]
    assert sorted(materialize(o, seeds=[root]).vertices) == comp


@given(signed_graphs(max_vertices=10, max_degree=4))
def test_explicit_oracles_conform(g):
    assert conformance_check(from_explicit(g)).ok
    assert conformance_check(from_explicit(g.base)).ok


def test_traditional_conforms():
    g = UnsignedGraph(3, [], [(1, 2), (2, 3), (3, 4)])
    rep = conformance_check(from_explicit(g, mode=TRADITIONAL))
    assert rep.ok, rep.violations


def _table_oracle(rows, signs=None, n_bits=2, S=2, mode=MARKED):
    adj = lambda i, l: rows.get(i, list(range(S)))[l]
    sign = None if signs is None else (lambda i, l: signs.get(i, [0] * S)[l])
    return SparseAccess(n_bits, S, mode, adj, sign)


@pytest.mark.parametrize("rows,signs,kind", [
    ({1: [2, 0], 2: [0, 0]}, None, "asymmetric-adjacency"),
    ({1: [1, 0]}, None, "self-adjacency"),
    ({1: [2, 2], 2: [1, 0]}, None, "duplicate-neighbor"),
    ({1: [3, 0]}, None, "non-vertex-neighbor"),
    ({1: [0, 2], 2: [1, 0]}, None, "malformed-marked-row"),
    ({1: [2, 0], 2: [1, 0]}, {1: [1, 0], 2: [-1, 0]}, "asymmetric-sign"),
    ({1: [2, 0], 2: [1, 0]}, {1: [2, 0], 2: [2, 0]}, "sign-value"),
    ({1: [2, 0], 2: [1, 0]}, {1: [0, 0], 2: [0, 0]}, "zero-sign-adjacency"),
    ({1: [2, 0], 2: [1, 0]}, {1: [1, 1], 2: [1, 0]}, "sign-on-non-edge"),
    ({1: [9, 0]}, None, "out-of-range"),
])
def test_violations_detected(rows, signs, kind):
    rows = {0: [0, 1], 3: [0, 1], **rows}
    for k in (1, 2):
        rows.setdefault(k, [0, 1])
    rep = conformance_check(_table_oracle(rows, signs))
    assert kind in rep.kinds(), rep.violations


def test_padding_gap_is_strict_only():
    rows = {0: [0, 1, 2], 1: [2, 0, 0], 2: [1, 0, 3], 3: [2, 0, 0]}
    o = _table_oracle(rows, S=3)
    assert conformance_check(o).kinds() == {"padding": 1}
    assert conformance_check(o, strict=False).ok


def test_zero_sign_entries_are_lenient_ok():
    rows = {0: [0, 1], 1: [2, 3], 2: [1, 0], 3: [0, 1]}
    o = _table_oracle(rows, {1: [1, 0], 2: [1, 0]})
    strict = conformance_check(o)
    assert strict.kinds()["zero-sign-adjacency"] == 1
    assert conformance_check(o, strict=False).ok


def test_nondeterminism_detected():
    rows = {0: [0, 1], 1: [2, 0], 2: [1, 0], 3: [0, 1]}
    reads = {}

    def adj(i, l):
        # row 1 answers differently after its first read
        reads[(i, l)] = reads.get((i, l), 0) + 1
        if i == 1 and reads[(i, l)] > 1:
            return 3
        return rows[i][l]
    rep = conformance_check(SparseAccess(2, 2, MARKED, adj))
    assert "nondeterministic" in rep.kinds()


def test_non_contiguous_traditional():
    o = from_explicit(UnsignedGraph(3, [], [(1, 2), (3, 5)]))
    trad = SparseAccess(o.n_bits, o.S, TRADITIONAL, o.adj_fn)
    assert "non-contiguous-vertices" in conformance_check(trad).kinds()


def test_sampled_check_is_seeded():
    g = SignedGraph.from_signed_edges([(1, 2, 1), (2, 3, -1)], n_bits=6)
    a = conformance_check(from_explicit(g), exhaustive=False, samples=20, seed=3)
    b = conformance_check(from_explicit(g), exhaustive=False, samples=20, seed=3)
    assert a.ok and a.rows_checked == b.rows_checked


def test_materialize_detects_asymmetry():
    o = _table_oracle({0: [0, 1], 1: [2, 0], 2: [0, 0], 3: [0, 1]})
    with pytest.raises(AsymmetryError):
        materialize(o)
    with pytest.raises(OracleError):
        materialize(from_explicit(path_graph()), budget=4)
