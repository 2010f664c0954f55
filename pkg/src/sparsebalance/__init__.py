"""Reductions from clique homology to balanced and bipartite component tests
under sparse oracle access, with brute-force and spectral cross-checks."""

from .complex import (
    BudgetExceeded,
    CliqueComplexView,
    betti_exact,
    boundary_matrix,
    enumerate_p_simplices,
    hodge_laplacian,
    sng,
)
from .graphs import (
    SignedGraph,
    UnsignedGraph,
    connected_components,
    has_balanced_component,
    has_bipartite_component,
)
from .linalg import DenseSymMatrix, exact_rank, kernel_dim
from .oracle import MARKED, TRADITIONAL, SparseAccess, conformance_check, from_explicit, materialize
from .reductions import (
    CliqueReductionInstance,
    GadgetLayout,
    clique_oracle,
    construction_matrix,
    marked_to_traditional,
    negative_subdivision_explicit,
    negative_subdivision_oracle,
)
from .spectral import (
    assemble_from_oracle,
    block_encoding_assemble,
    embed_hamiltonian,
    incidence_matrix,
    signed_laplacian,
    signless_laplacian,
    simulate_verifier,
)

__version__ = "0.1.0"

__all__ = [
    "BudgetExceeded",
    "CliqueComplexView",
    "CliqueReductionInstance",
    "DenseSymMatrix",
    "GadgetLayout",
    "MARKED",
    "SignedGraph",
    "SparseAccess",
    "TRADITIONAL",
    "UnsignedGraph",
    "assemble_from_oracle",
    "betti_exact",
    "block_encoding_assemble",
    "boundary_matrix",
    "clique_oracle",
    "conformance_check",
    "connected_components",
    "construction_matrix",
    "embed_hamiltonian",
    "enumerate_p_simplices",
    "exact_rank",
    "from_explicit",
    "has_balanced_component",
    "has_bipartite_component",
    "hodge_laplacian",
    "incidence_matrix",
    "kernel_dim",
    "marked_to_traditional",
    "materialize",
    "negative_subdivision_explicit",
    "negative_subdivision_oracle",
    "signed_laplacian",
    "signless_laplacian",
    "simulate_verifier",
    "sng",
]
