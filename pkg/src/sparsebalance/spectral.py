"""Laplacians of explicit and implicit graphs, the embedded Hamiltonian, its
block-encoding entries, and a classical stand-in for the phase-estimation verifier."""
from __future__ import annotations

import warnings
from dataclasses import dataclass, field
from fractions import Fraction
from math import ceil, log2
from typing import List, Optional, Tuple

import numpy as np

from .graphs import SignedGraph, UnsignedGraph, connected_components
from .linalg import DenseSymMatrix, kernel_dim
from .oracle import DEFAULT_INDEX_BUDGET, OracleError, SparseAccess, _check_budget

SIGN_COUNT = "sign-count"
ADJ_COUNT = "adj-count"


class AsymmetricOracleError(OracleError):
    pass


class EntryMagnitudeError(ValueError):
    pass


class PromiseViolation(UserWarning):
    """The instance's smallest eigenvalue lies strictly inside the promise gap."""


def signed_laplacian(g: SignedGraph) -> DenseSymMatrix:
    labels = tuple(sorted(g.vertices))
    index = {v: k for k, v in enumerate(labels)}
    m = np.zeros((len(labels), len(labels)), dtype=np.int64)
    for (u, v), s in g.sign.items():
        a, b = index[u], index[v]
        m[a, a] += 1
        m[b, b] += 1
        m[a, b] = m[b, a] = -s
    return DenseSymMatrix(m, labels=labels)


def incidence_matrix(g: SignedGraph) -> Tuple[np.ndarray, Tuple, Tuple]:
    """Edge-by-vertex matrix with row ``(u, v)``, ``u < v``: ``+1`` at ``u`` and ``-s`` at ``v``.

    Returns ``(matrix, edge_labels, vertex_labels)``.
    """
    verts = tuple(sorted(g.vertices))
    index = {v: k for k, v in enumerate(verts)}
    edges = tuple(sorted(g.sign))
    n = np.zeros((len(edges), len(verts)), dtype=np.int64)
    for r, (u, v) in enumerate(edges):
        n[r, index[u]] = 1
        n[r, index[v]] = -g.sign[(u, v)]
    return n, edges, verts


def signless_laplacian(g: UnsignedGraph) -> DenseSymMatrix:
    labels = tuple(sorted(g.vertices))
    index = {v: k for k, v in enumerate(labels)}
    m = np.zeros((len(labels), len(labels)), dtype=np.int64)
    for u, v in g.edges:
        a, b = index[u], index[v]
        m[a, a] += 1
        m[b, b] += 1
        m[a, b] = m[b, a] = 1
    return DenseSymMatrix(m, labels=labels)


def _row_entries(o: SparseAccess, i: int) -> List[Tuple[int, int, int]]:
    """``(ell, j, s)`` for every nonzero adjacency entry of row ``i``; unsigned oracles report s = -1."""
    out = []
    for ell in range(o.S):
        j = o.adj(i, ell)
        if j:
            out.append((ell, j, o.sign(i, ell) if o.signed else -1))
    return out


def assemble_from_oracle(o: SparseAccess, diag_mode: str = SIGN_COUNT, restrict: str = "V",
                         budget: int = DEFAULT_INDEX_BUDGET) -> DenseSymMatrix:
    """Dense matrix an oracle defines: ``-sign`` off the diagonal, a degree count on it.

    Unsigned oracles are read as all-negative, which yields the signless
    Laplacian. ``diag_mode`` chooses between counting nonzero-sign entries and
    nonzero adjacency entries. ``restrict="V"`` keeps vertex rows only;
    ``"full"`` keeps all ``2**n`` indices with zero rows for non-vertices.
    """
    if diag_mode not in (SIGN_COUNT, ADJ_COUNT):
        raise ValueError(f"unknown diag_mode {diag_mode!r}")
    if restrict not in ("V", "full"):
        raise ValueError(f"unknown restrict {restrict!r}")
    _check_budget(o, budget)
    verts = [i for i in range(o.size) if not o.is_marked_row(i)]
    labels = tuple(verts) if restrict == "V" else tuple(range(o.size))
    index = {v: k for k, v in enumerate(labels)}
    m = np.zeros((len(labels), len(labels)), dtype=np.int64)
    vset = set(verts)
    for i in verts:
        entries = _row_entries(o, i)
        r = index[i]
        m[r, r] = len(entries) if diag_mode == ADJ_COUNT else sum(1 for _, _, s in entries if s)
        for _, j, s in entries:
            if s == 0:
                continue
            if j not in vset:
                raise AsymmetricOracleError(f"{i} lists non-vertex {j}")
            m[r, index[j]] = -s
    if not (m == m.T).all():
        bad = np.argwhere(m != m.T)[0]
        raise AsymmetricOracleError(f"entries ({labels[bad[0]]},{labels[bad[1]]}) disagree by direction")
    return DenseSymMatrix(m, labels=labels)


def embed_hamiltonian(o: SparseAccess, alpha=1, diag_mode: str = SIGN_COUNT,
                      budget: int = DEFAULT_INDEX_BUDGET) -> DenseSymMatrix:
    """``(L + sum_{i not in V} |i><i|) / alpha`` over the whole index space.

    ``L`` is the signed Laplacian for signed oracles and the signless one for
    unsigned oracles.
    """
    alpha = Fraction(alpha)
    if alpha <= 0:
        raise ValueError("alpha must be positive")
    full = assemble_from_oracle(o, diag_mode, "full", budget)
    m = full.entries.copy()
    for i in range(o.size):
        if o.is_marked_row(i):
            m[i, i] = 1
    return DenseSymMatrix(m, 1 / alpha, labels=full.labels)


@dataclass(frozen=True)
class BlockEncodingEntries:
    """Entries ``A[i, c(i, l)]`` produced by the row/entry oracle pair.

    ``columns[i]`` holds ``c(i, l)`` for each slot; slot ``S`` carries the
    diagonal of vertex rows.
    """

    matrix: DenseSymMatrix
    alpha: int
    columns: Tuple[Tuple[int, ...], ...]


def block_encoding_assemble(o: SparseAccess, diag_mode: str = SIGN_COUNT,
                            budget: int = DEFAULT_INDEX_BUDGET) -> BlockEncodingEntries:
    """Rebuild the matrix encoded by the row/entry oracles, with ``alpha = 2S``.

    Row oracle: non-vertex rows point slot 0 at the diagonal and every other
    slot at 0; vertex rows use the adjacency list in slots ``0..S-1`` plus the
    diagonal in an extra slot ``S``. Entry oracle: ``1/alpha`` on non-vertex
    diagonals, ``deg/alpha`` on vertex diagonals, ``-s/alpha`` elsewhere.
    Values are returned directly rather than as rotation angles.
    """
    _check_budget(o, budget)
    alpha = 2 * o.S
    size = o.size
    num = np.zeros((size, size), dtype=np.int64)
    columns = []
    for i in range(size):
        invalid = o.is_marked_row(i)
        cols = []
        for ell in range(o.S + 1):
            if invalid:
                c = i if ell == 0 else 0
            elif ell == o.S:
                c = i
            else:
                c = o.adj(i, ell)
            cols.append(c)
            if invalid:
                if c == i and ell == 0:
                    num[i, i] = 1
            elif ell == o.S:
                adj_nz, sign_nz = o.degree_counts(i)
                num[i, i] = adj_nz if diag_mode == ADJ_COUNT else sign_nz
            elif c != 0:
                num[i, c] = -(o.sign(i, ell) if o.signed else -1)
        columns.append(tuple(cols))
    if np.abs(num).max(initial=0) > alpha:
        raise EntryMagnitudeError(f"an entry exceeds alpha={alpha} in magnitude")
    if not (num == num.T).all():
        raise AsymmetricOracleError("row/entry oracles do not describe a symmetric matrix")
    return BlockEncodingEntries(DenseSymMatrix(num, Fraction(1, alpha), tuple(range(size))), alpha, tuple(columns))


@dataclass
class VerifierOutcome:
    lambda_min: float
    threshold: float
    decision: str
    alpha: int
    delta: float
    precision_bits: int
    task: str
    warnings: List[str] = field(default_factory=list)

    @property
    def accepted(self) -> bool:
        return self.decision == "accept"

    def to_dict(self) -> dict:
        return {
            "task": self.task,
            "lambda_min": self.lambda_min,
            "threshold": self.threshold,
            "delta": self.delta,
            "alpha": self.alpha,
            "precision_bits": self.precision_bits,
            "decision": self.decision,
            "warnings": list(self.warnings),
        }


def simulate_verifier(o: SparseAccess, delta: float, task: str = "balance", quantize: bool = False,
                      diag_mode: str = SIGN_COUNT, budget: int = DEFAULT_INDEX_BUDGET) -> VerifierOutcome:
    """Decide the promise problem by eigensolving ``H = (L + I_notV) / (2S)``.

    Accepts iff the smallest eigenvalue is below ``delta' / 2`` with
    ``delta' = min(delta, 1) / alpha``. ``quantize=True`` first rounds the
    eigenvalue to the ``t = ceil(log2(1/delta'))`` bits phase estimation would
    resolve.
    """
    if not delta > 0:
        raise ValueError(f"delta must be positive, got {delta}")
    if task == "balance" and not o.signed:
        raise OracleError("balance task needs a signed oracle")
    if task == "bipartite":
        if o.signed:
            raise OracleError("bipartite task needs an unsigned oracle")
    elif task != "balance":
        raise ValueError(f"unknown task {task!r}")
    alpha = 2 * o.S
    h = embed_hamiltonian(o, alpha, diag_mode, budget)
    lam = float(h.eigenvalues()[0])
    delta_p = min(delta, 1.0) / alpha
    t = max(0, ceil(log2(1 / delta_p)))
    if quantize:
        lam = round(lam * 2 ** t) / 2 ** t
    threshold = delta_p / 2
    notes = []
    eps = 1e-9
    if eps < lam < delta_p * (1 - 1e-9):
        msg = f"smallest eigenvalue {lam:.6g} lies inside the promise gap (0, {delta_p:.6g})"
        warnings.warn(msg, PromiseViolation, stacklevel=2)
        notes.append(msg)
    return VerifierOutcome(lam, threshold, "accept" if lam < threshold else "reject",
                           alpha, float(delta), t, task, notes)


def algebraic_conflict(m: DenseSymMatrix, tol: float = 1e-8) -> Optional[float]:
    """Smallest eigenvalue above ``tol``; None if every eigenvalue is (numerically) zero."""
    vals = m.eigenvalues()
    nonzero = vals[vals > tol]
    return float(nonzero[0]) if nonzero.size else None


def component_kernel_dims(g: SignedGraph) -> List[Tuple[Tuple[int, ...], int]]:
    return [(tuple(comp), kernel_dim(signed_laplacian(g.induced(comp))))
            for comp in connected_components(g).components()]
