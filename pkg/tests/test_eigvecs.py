import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from eqdecomp import (
    EqDecompError,
    choose_semi_transversal,
    decompose,
    decompose_basic,
    divisor_spectral_radius,
    lift_block_vector,
    lift_divisor_vector,
    parse_cycles,
    planted_basic,
    planted_separable,
    radius_chain,
    reconstruct_eigenbasis,
    reconstruct_sequential,
)
from eqdecomp.decompose import build_similarity
from eqdecomp.eigvecs import lift_stage_vector
from eqdecomp.linalg import eigenpairs, spectral_radius
from helpers import FIG1, PHI, PSI0


def _residual(M, lv):
    return np.linalg.norm(M @ lv.vector - lv.eigenvalue * lv.vector) / max(1.0, np.linalg.norm(lv.vector))


def test_lift_block_vector_layout():
    w = np.exp(2j * np.pi / 3)
    lv = lift_block_vector([1, 2], 1, 1, 3)
    np.testing.assert_allclose(lv.vector, [0, 1, 2, w, 2 * w, w**2, 2 * w**2])
    assert lv.source == ("block", 1, 1)
    with pytest.raises(EqDecompError):
        lift_block_vector([1], 0, 1, 3)


def test_lift_divisor_vector_layout():
    lv = lift_divisor_vector([7], [1, 2], 3)
    np.testing.assert_array_equal(lv.vector, [7, 1, 2, 1, 2, 1, 2])


def test_lift_stage_vector_is_multiplication_by_S():
    rng = np.random.default_rng(0)
    N, r, k = 2, 3, 4
    y = rng.normal(size=N + k * r) + 1j * rng.normal(size=N + k * r)
    np.testing.assert_allclose(lift_stage_vector(y, N, r, k), build_similarity(N, r, k) @ y, atol=1e-12)
    with pytest.raises(EqDecompError):
        lift_stage_vector(y[:-1], N, r, k)


def test_example_basis_from_computed_blocks():
    dec = decompose_basic(FIG1, PSI0)
    vecs = reconstruct_eigenbasis(dec, normalize=True)
    assert len(vecs) == 10
    for lv in vecs:
        assert _residual(FIG1, lv) <= 1e-10
        assert np.isclose(np.linalg.norm(lv.vector), 1)


def test_reordered_output_solves_reordered_matrix():
    rng = np.random.default_rng(4)
    M, psi = planted_basic(rng, 2, 2, 3, mode="real")
    dec = decompose_basic(M, psi)
    Mt = dec.reorder(M)
    for lv in reconstruct_eigenbasis(dec, original_order=False):
        assert _residual(Mt, lv) <= 1e-9
    for lv in reconstruct_eigenbasis(dec):
        assert _residual(M, lv) <= 1e-9


def test_dependent_input_basis_is_rejected():
    dec = decompose_basic(FIG1, PSI0)
    div = [[1, 0, 0, 0]] * 4
    with pytest.raises(EqDecompError, match="dependent"):
        reconstruct_eigenbasis(dec, div, [np.eye(3)] * 2)


def test_basis_size_mismatch():
    dec = decompose_basic(FIG1, PSI0)
    with pytest.raises(EqDecompError):
        reconstruct_eigenbasis(dec, np.eye(3), [np.eye(3)] * 2)
    with pytest.raises(EqDecompError):
        reconstruct_eigenbasis(dec, np.eye(4), [np.eye(3)])


def test_generalized_vectors_lift_to_generalized_vectors():
    # a Jordan chain of a block lifts to a chain of M: (M - lam)^2 x == 0
    J = np.array([[2.0, 1.0], [0.0, 2.0]])
    Z = np.zeros((2, 2))
    from eqdecomp import build_block_circulant

    M, psi = build_block_circulant(np.zeros((0, 0)), np.zeros((0, 2)), np.zeros((2, 0)), [J, Z])
    # B_1 = J - 0 = J, divisor = J
    dec = decompose_basic(M, psi)
    np.testing.assert_allclose(dec.blocks[0], J)
    vecs = reconstruct_eigenbasis(dec, np.eye(2), [np.eye(2)])
    A = M - 2 * np.eye(4)
    for lv in vecs:
        assert np.linalg.norm(A @ A @ lv.vector) <= 1e-12


def test_sequential_example():
    seq = decompose(FIG1, PHI)
    vecs = reconstruct_sequential(seq)
    assert len(vecs) == 10
    for lv in vecs:
        assert _residual(FIG1, lv) <= 1e-10
    with pytest.raises(EqDecompError):
        reconstruct_sequential(seq, [np.eye(3)])


@given(st.integers(0, 2**32 - 1), st.sampled_from([[2, 3], [2, 5], [3, 6], [2, 3, 5]]), st.integers(0, 3))
@settings(max_examples=30, deadline=None)
def test_sequential_reconstruction_property(seed, cycles, N):
    M, phi = planted_separable(np.random.default_rng(seed), N, cycles, mode="complex")
    seq = decompose(M, phi)
    bases = [eigenpairs(b.matrix) for b in seq.blocks]
    if any(b.defective for b in bases):
        return
    vecs = reconstruct_sequential(seq, bases)
    scale = np.linalg.norm(M, 2)
    for lv in vecs:
        assert np.linalg.norm(M @ lv.vector - lv.eigenvalue * lv.vector) <= 1e-8 * scale * np.linalg.norm(lv.vector)


def test_divisor_spectral_radius_example():
    rho, member = divisor_spectral_radius(FIG1, PHI)
    assert rho == pytest.approx(1 + np.sqrt(6), abs=1e-12)
    assert member


def test_divisor_spectral_radius_reducible_flag():
    M = np.zeros((3, 3))
    M[0, 1] = M[0, 2] = 1.0  # 2 and 3 are sinks
    rho, member = divisor_spectral_radius(M, parse_cycles("(2,3)", 3))
    assert rho == 0 and not member


def test_divisor_spectral_radius_rejects_negative():
    with pytest.raises(EqDecompError):
        divisor_spectral_radius(-FIG1, PHI)


def test_radius_chain_example():
    blocks, b0, div = radius_chain(FIG1, PSI0)
    assert len(blocks) == 2
    assert max(blocks) <= b0 <= div
    assert div == pytest.approx(spectral_radius(FIG1))


@given(st.integers(0, 2**32 - 1), st.integers(0, 3), st.integers(1, 4), st.sampled_from([2, 3, 5]))
@settings(max_examples=40, deadline=None)
def test_radius_equality_for_nonnegative(seed, N, r, k):
    M, psi = planted_basic(np.random.default_rng(seed), N, r, k, mode="nonnegative")
    rho, member = divisor_spectral_radius(M, psi)
    assert abs(rho - spectral_radius(M)) <= 1e-8
    assert member
    blocks, b0, div = radius_chain(M, psi)
    assert max(blocks) <= b0 + 1e-8 and b0 <= div + 1e-8
