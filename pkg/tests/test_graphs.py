import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from eqdecomp import (
    EqDecompError,
    MatrixKind,
    NotAutomorphismError,
    WeightedGraph,
    build_block_circulant,
    build_matrix,
    check_automorphism,
    is_automorphism,
    parse_cycles,
    planted_basic,
    planted_separable,
)
from eqdecomp.graphs import automorphism_violation, compatible_matrix
from eqdecomp.serialize import parse_edge_list
from helpers import FIG1, FIG1_EDGES, PHI, PSI0


@pytest.fixture
def fig1_graph():
    return parse_edge_list(FIG1_EDGES)


def test_edge_list_reproduces_printed_matrix(fig1_graph):
    assert fig1_graph.n == 10
    assert len(fig1_graph.edges) == 12  # 24 nonzero entries in the printed matrix
    np.testing.assert_array_equal(build_matrix(fig1_graph, "adjacency"), FIG1)


def test_laplacian_family(fig1_graph):
    L = build_matrix(fig1_graph, MatrixKind.LAPLACIAN)
    np.testing.assert_allclose(L.sum(axis=1), 0)
    Q = build_matrix(fig1_graph, "signless_laplacian")
    np.testing.assert_allclose(np.diag(Q), FIG1.sum(axis=1))
    Ln = build_matrix(fig1_graph, "normalized_laplacian")
    ev = np.linalg.eigvalsh(Ln)
    assert ev.min() > -1e-12 and ev.max() < 2 + 1e-12


def test_distance_matrix(fig1_graph):
    D = build_matrix(fig1_graph, "distance")
    assert D[2, 3] == 2  # 3 - 2 - 4
    assert D[2, 8] == 3  # 3 - 2 - 8 - 9
    assert is_automorphism(D, PHI)


def test_distance_needs_connected_graph():
    G = WeightedGraph(3, ((1, 2),))
    with pytest.raises(EqDecompError):
        build_matrix(G, "distance")


def test_laplacian_needs_simple_graph():
    G = WeightedGraph(2, ((1, 2, 2.0),))
    with pytest.raises(EqDecompError):
        build_matrix(G, "laplacian")
    np.testing.assert_array_equal(build_matrix(G, "weighted_adjacency"), [[0, 2], [2, 0]])


@pytest.mark.parametrize("kind", [k.value for k in MatrixKind])
def test_every_kind_is_compatible(fig1_graph, kind):
    assert is_automorphism(build_matrix(fig1_graph, kind), PHI)


def test_violation_reports_first_pair():
    bad = parse_cycles("(1,2)", 10)
    assert automorphism_violation(FIG1, bad) == (1, 3)
    with pytest.raises(NotAutomorphismError) as info:
        check_automorphism(FIG1, bad)
    assert info.value.pair == (1, 3)


def test_graph_validation():
    with pytest.raises(EqDecompError):
        WeightedGraph(2, ((1, 3),))
    with pytest.raises(EqDecompError):
        WeightedGraph(2, ((1, 2), (2, 1)))
    WeightedGraph(2, ((1, 2), (2, 1)), directed=True)


def test_graph_dict_round_trip(fig1_graph):
    G = WeightedGraph(3, ((1, 2, 2 + 1j), (2, 3)), directed=True)
    assert WeightedGraph.from_dict(G.to_dict()) == G
    assert WeightedGraph.from_dict(fig1_graph.to_dict()) == fig1_graph


def test_from_matrix_round_trip():
    G = WeightedGraph.from_matrix(FIG1)
    assert not G.directed
    np.testing.assert_array_equal(G.weight_matrix(), FIG1)


def test_block_circulant_layout():
    F = [[5.0]]
    H = [[1.0, 2.0]]
    L = [[3.0], [4.0]]
    blocks = [np.eye(2), 2 * np.eye(2), 3 * np.eye(2)]
    M, phi = build_block_circulant(F, H, L, blocks)
    assert M.shape == (7, 7)
    assert is_automorphism(M, phi)
    assert phi.fixed_points() == [1]
    np.testing.assert_array_equal(M[1:3, 3:5], blocks[1])
    np.testing.assert_array_equal(M[3:5, 1:3], blocks[2])


def test_block_circulant_without_fixed_part():
    M, phi = build_block_circulant([], np.zeros((0, 1)), np.zeros((1, 0)), [[[1.0]], [[2.0]]])
    np.testing.assert_array_equal(M, [[1, 2], [2, 1]])
    assert phi.cycles() == [[1, 2]]


@given(st.integers(0, 2**32 - 1), st.sampled_from(["real", "nonnegative", "integer", "complex"]), st.booleans())
@settings(max_examples=40, deadline=None)
def test_compatible_matrix_respects_automorphism(seed, mode, symmetric):
    rng = np.random.default_rng(seed)
    M, phi = planted_basic(rng, 2, 2, 3, mode=mode, symmetric=symmetric)
    assert is_automorphism(M, phi)
    if symmetric:
        np.testing.assert_allclose(M, M.conj().T)


def test_planted_separable_rejects_non_squarefree():
    with pytest.raises(EqDecompError):
        planted_separable(np.random.default_rng(0), 1, [4, 2])
    M, phi = planted_separable(np.random.default_rng(0), 1, [3, 2])
    assert phi.order == 6 and is_automorphism(M, phi)


def test_compatible_matrix_unknown_mode():
    with pytest.raises(EqDecompError):
        compatible_matrix(PSI0, np.random.default_rng(0), mode="bogus")
