import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from eqdecomp import (
    EqDecompError,
    NotAutomorphismError,
    choose_semi_transversal,
    decompose_basic,
    eigenvalues,
    export_dot,
    fold,
    fold_family,
    multiset_equal,
    parse_cycles,
    planted_basic,
    weighted_adjacency,
)
from eqdecomp.fold import FoldedGraph, format_weight
from eqdecomp.serialize import parse_edge_list
from helpers import FIG1, FIG1_EDGES, PHI, PSI0, ROUND1_BLOCK, ROUND1_DIVISOR


def test_fold_zero_example():
    G = parse_edge_list(FIG1_EDGES)
    F = fold(G, PSI0, choose_semi_transversal(PSI0, PHI), 0)
    edges = {(i, j): w for i, j, w in F.edges}
    assert F.vertices == (1, 2, 3, 4)
    assert F.fixed == (True, False, False, False)
    assert edges[(2, 2)] == 2
    assert edges[(1, 2)] == 3
    assert edges[(2, 3)] == edges[(2, 4)] == 1
    np.testing.assert_allclose(weighted_adjacency(F), ROUND1_DIVISOR)


def test_fold_one_example():
    F = fold(FIG1, PSI0, choose_semi_transversal(PSI0, PHI), 1)
    edges = {(i, j): w for i, j, w in F.edges}
    assert F.vertices == (8, 9, 10)
    assert abs(edges[(8, 8)] + 1) < 1e-12
    assert edges[(8, 9)] == edges[(8, 10)] == 1
    np.testing.assert_allclose(weighted_adjacency(F), ROUND1_BLOCK, atol=1e-12)


def test_k2_family():
    K2 = np.array([[0.0, 1.0], [1.0, 0.0]])
    fam = fold_family(K2, parse_cycles("(1,2)", 2))
    assert [F.edges for F in fam] == [((1, 1, 1 + 0j),), ((2, 2, -1 + 0j),)]


def test_fold_errors():
    with pytest.raises(EqDecompError):
        fold(FIG1, PSI0, None, 3)
    with pytest.raises(NotAutomorphismError):
        fold(FIG1, parse_cycles("(1,2)", 10), None, 0)
    with pytest.raises(EqDecompError):
        fold(FIG1, PSI0, choose_semi_transversal(PSI0.power(2)), 0)


def test_dot_export():
    F = FoldedGraph(1, (1,), ((1, 1, -1 + 0j),), (False,))
    assert '1 -> 1 [label="-1"];' in export_dot(F)
    fam = fold_family(FIG1, PSI0)
    text = export_dot(fam[0])
    assert text.count("shape=circle") == 4
    assert '1 -> 2 [label="3"];' in text
    assert "style=dashed" in text.splitlines()[1]
    empty = export_dot(FoldedGraph(0, (), (), ()))
    assert empty == "digraph G0 {\n}\n"


@pytest.mark.parametrize("w,text", [(3, "3"), (-1, "-1"), (1 + 2j, "1+2i"), (1 - 1j, "1-i"), (-2j, "-2i"), (0.5, "0.5")])
def test_format_weight(w, text):
    assert format_weight(w) == text


def test_folded_json_round_trip():
    for F in fold_family(FIG1, PSI0):
        assert FoldedGraph.from_dict(F.to_dict()) == F


@given(st.integers(0, 2**32 - 1), st.integers(0, 3), st.integers(1, 4), st.sampled_from([2, 3, 5, 6]),
       st.sampled_from(["real", "complex"]))
@settings(max_examples=40, deadline=None)
def test_family_adjacency_equals_blocks(seed, N, r, k, mode):
    M, psi = planted_basic(np.random.default_rng(seed), N, r, k, mode=mode, density=0.7)
    dec = decompose_basic(M, psi)
    fam = fold_family(M, psi)
    assert len(fam) == k
    for F, B in zip(fam, dec.matrices()):
        np.testing.assert_allclose(weighted_adjacency(F), B, atol=1e-10)
    union = np.concatenate([eigenvalues(weighted_adjacency(F)) for F in fam])
    assert multiset_equal(union, eigenvalues(M), 1e-7)
    if mode == "real":
        assert all(complex(w).imag == 0 for _, _, w in fam[0].edges)
