"""Equitable decompositions of graph matrices over automorphisms.

Given a matrix ``M`` that is preserved by a vertex permutation ``phi``, the
package splits ``M`` into a small divisor matrix and a set of blocks whose
spectra together equal ``sigma(M)``. Around that core it offers eigenvector
reconstruction, spectral-radius computation from the divisor, Gershgorin
region comparison and folded-graph construction.
"""

from .decompose import (
    BasicDecomposition,
    SemiTransversalPlan,
    SequentialDecomposition,
    build_similarity,
    choose_semi_transversal,
    component_blocks,
    decompose,
    decompose_basic,
    decompose_separable,
    divisor_matrix,
    equitable_divisor,
    induced_automorphism,
    roots_of_unity,
)
from .eigvecs import (
    LiftedVector,
    divisor_spectral_radius,
    lift_block_vector,
    lift_divisor_vector,
    radius_chain,
    reconstruct_eigenbasis,
    reconstruct_sequential,
)
from .errors import EqDecompError, InvariantViolation, NotAutomorphismError
from .fold import FoldedGraph, export_dot, fold, fold_family, weighted_adjacency
from .gershgorin import (
    Disk,
    GershRegion,
    block_region,
    disk_contained,
    region,
    region_contained,
    union_area,
)
from .graphs import (
    MatrixKind,
    WeightedGraph,
    build_block_circulant,
    build_matrix,
    check_automorphism,
    is_automorphism,
    planted_basic,
    planted_separable,
)
from .linalg import eigenpairs, eigenvalues, multiset_equal, spectral_radius
from .perms import Permutation, classify, orbits, parse_cycles, separable_power
from .serialize import load_graph, save_artifact

__version__ = "0.1.0"
