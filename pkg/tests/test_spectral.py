from __future__ import annotations

import warnings
from fractions import Fraction
from math import cos, pi

import numpy as np
import pytest
from hypothesis import given

from sparsebalance.graphs import SignedGraph, UnsignedGraph, connected_components, has_balanced_component
from sparsebalance.linalg import kernel_dim
from sparsebalance.oracle import MARKED, OracleError, SparseAccess, from_explicit
from sparsebalance.reductions import CliqueReductionInstance, clique_oracle
from sparsebalance.spectral import (
    ADJ_COUNT,
    SIGN_COUNT,
    AsymmetricOracleError,
    PromiseViolation,
    algebraic_conflict,
    assemble_from_oracle,
    block_encoding_assemble,
    component_kernel_dims,
    embed_hamiltonian,
    incidence_matrix,
    signed_laplacian,
    signless_laplacian,
    simulate_verifier,
)

from conftest import signed_graphs, unsigned_graphs


def odd_cycle_one_negative(k: int) -> SignedGraph:
    triples = [(v, v + 1, 1) for v in range(1, k)] + [(1, k, -1)]
    return SignedGraph.from_signed_edges(triples, n_bits=max(1, k.bit_length()))


@given(signed_graphs(max_vertices=9))
def test_laplacian_factors_through_incidence(g):
    n, edges, verts = incidence_matrix(g)
    assert verts == signed_laplacian(g).labels
    assert (n.T @ n == signed_laplacian(g).entries.astype(np.int64)).all()


def test_incidence_rows(triangle_one_negative):
    n, edges, _ = incidence_matrix(triangle_one_negative)
    assert edges == ((1, 2), (1, 3), (2, 3))
    assert n.tolist() == [[1, -1, 0], [1, 0, 1], [0, 1, -1]]


@given(unsigned_graphs(max_vertices=9))
def test_signless_is_all_negative(g):
    assert signless_laplacian(g) == signed_laplacian(SignedGraph.uniform(g, -1))


@given(signed_graphs(max_vertices=9))
def test_component_kernels_match_balance(g):
    verdicts = {c.vertices: c.ok for c in has_balanced_component(g).components}
    for comp, k in component_kernel_dims(g):
        assert k == (1 if verdicts[comp] else 0)


@given(signed_graphs(max_vertices=9, max_degree=4))
def test_assembly_of_explicit_oracle(g):
    o = from_explicit(g)
    for mode in (SIGN_COUNT, ADJ_COUNT):
        assert assemble_from_oracle(o, mode) == signed_laplacian(g)
    assert assemble_from_oracle(from_explicit(g.base)) == signless_laplacian(g.base)


def test_diag_modes_differ_on_clique_oracle(k3):
    o = clique_oracle(CliqueReductionInstance(k3, 1))
    assert assemble_from_oracle(o, SIGN_COUNT).entries.tolist() == [[0] * 3] * 3
    assert assemble_from_oracle(o, ADJ_COUNT).entries.tolist() == [[2, 0, 0], [0, 2, 0], [0, 0, 2]]


def test_full_restriction_and_embedding(triangle_positive):
    o = from_explicit(triangle_positive)
    full = assemble_from_oracle(o, restrict="full")
    assert full.labels == (0, 1, 2, 3) and full.entries[0, 0] == 0
    h = embed_hamiltonian(o, alpha=4)
    assert h.scale == Fraction(1, 4)
    assert h.entries.tolist() == [[1, 0, 0, 0], [0, 2, -1, -1], [0, -1, 2, -1], [0, -1, -1, 2]]
    with pytest.raises(ValueError):
        embed_hamiltonian(o, alpha=0)


def test_assembly_rejects_asymmetry():
    rows = {0: [0, 1], 1: [2, 0], 2: [0, 0], 3: [0, 1]}
    o = SparseAccess(2, 2, MARKED, lambda i, l: rows[i][l])
    with pytest.raises(AsymmetricOracleError):
        assemble_from_oracle(o)
    with pytest.raises(AsymmetricOracleError):
        block_encoding_assemble(o)


@given(signed_graphs(max_vertices=7, n_bits=3, max_degree=3))
def test_block_encoding_matches_hamiltonian(g):
    o = from_explicit(g, S=3)
    be = block_encoding_assemble(o)
    assert be.alpha == 6
    h = embed_hamiltonian(o, alpha=1)
    assert be.matrix.rescaled(be.alpha) == h
    assert max(abs(x) for x in be.matrix.exact().flat) <= 1
    assert h.eigenvalues()[-1] <= 2 * o.S + 1e-9
    assert all(len(c) == o.S + 1 for c in be.columns)


def test_verifier_accepts_balanced(triangle_positive):
    out = simulate_verifier(from_explicit(triangle_positive), 0.1)
    assert out.accepted and abs(out.lambda_min) < 1e-12
    assert out.alpha == 4 and out.precision_bits == 6


def test_verifier_rejects_one_negative_triangle(triangle_one_negative):
    out = simulate_verifier(from_explicit(triangle_one_negative), 1.0)
    assert out.decision == "reject"
    assert out.lambda_min == pytest.approx(0.25)
    assert out.threshold == pytest.approx(0.125)
    assert not out.warnings


def test_verifier_inputs(triangle_one_negative):
    o = from_explicit(triangle_one_negative)
    for bad in (0, -1.0):
        with pytest.raises(ValueError):
            simulate_verifier(o, bad)
    with pytest.raises(OracleError):
        simulate_verifier(o, 0.5, task="bipartite")
    with pytest.raises(OracleError):
        simulate_verifier(from_explicit(triangle_one_negative.base), 0.5, task="balance")


def test_verifier_bipartite_task():
    c5 = UnsignedGraph(3, [], [(1, 2), (2, 3), (3, 4), (4, 5), (1, 5)])
    c4 = UnsignedGraph(3, [], [(1, 2), (2, 3), (3, 4), (1, 4)])
    assert not simulate_verifier(from_explicit(c5), 0.3, task="bipartite").accepted
    assert simulate_verifier(from_explicit(c4), 0.5, task="bipartite").accepted


def test_promise_gap_warning():
    g = odd_cycle_one_negative(9)
    lam = 2 - 2 * cos(pi / 9)
    with pytest.warns(PromiseViolation):
        out = simulate_verifier(from_explicit(g), 1.0)
    assert out.lambda_min == pytest.approx(lam / 4)
    assert out.warnings
    with warnings.catch_warnings():
        warnings.simplefilter("error")
        assert simulate_verifier(from_explicit(g), lam).decision == "reject"


def test_quantized_eigenvalue(triangle_one_negative):
    out = simulate_verifier(from_explicit(triangle_one_negative), 0.3, quantize=True)
    assert out.lambda_min * 2 ** out.precision_bits == round(out.lambda_min * 2 ** out.precision_bits)


def test_algebraic_conflict():
    assert algebraic_conflict(signed_laplacian(odd_cycle_one_negative(3))) == pytest.approx(1.0)
    assert algebraic_conflict(signed_laplacian(SignedGraph(UnsignedGraph(1, [1]), {}))) is None


@given(signed_graphs(max_vertices=9))
def test_kernel_counts_balanced_components(g):
    d = has_balanced_component(g)
    assert kernel_dim(signed_laplacian(g)) == sum(c.ok for c in d.components)
    assert len(d.components) == connected_components(g).count
