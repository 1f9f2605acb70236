"""Eigenvectors of ``M`` rebuilt from eigenvectors of its decomposition blocks.

If ``S^{-1} M~ S = divisor (+) B_1 (+) ... (+) B_{k-1}`` then ``S`` carries a
(generalized) eigenvector of any block to one of ``M~``:

* a vector ``u`` of ``B_m`` lifts to ``0_N (+) u (+) w^m u (+) ... (+) w^{m(k-1)} u``;
* a vector ``w (+) v`` of the divisor lifts to ``w (+) v (+) v (+) ... (+) v``.

Also here: the spectral radius of a nonnegative matrix read off its divisor.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .decompose import (
    BasicDecomposition,
    SequentialDecomposition,
    decompose,
    decompose_basic,
    roots_of_unity,
)
from .errors import EqDecompError
from .linalg import EigenPairs, as_matrix, eigenpairs, eigenvalues, is_irreducible_nonnegative
from .perms import Permutation

__all__ = [
    "LiftedVector",
    "lift_block_vector",
    "lift_divisor_vector",
    "lift_stage_vector",
    "reconstruct_eigenbasis",
    "reconstruct_sequential",
    "divisor_spectral_radius",
    "radius_chain",
    "RANK_TOL",
]

RANK_TOL = 1e-8
MEMBERSHIP_TOL = 1e-8


@dataclass(frozen=True)
class LiftedVector:
    """A (generalized) eigenvector of the full matrix.

    ``source`` is ``("block", m, l)`` or ``("divisor", i)``; indices are 1-based
    like the rest of the public API.
    """

    vector: np.ndarray
    source: tuple
    eigenvalue: complex = complex("nan")
    generalized_rank: int = 1

    def normalized(self) -> "LiftedVector":
        nrm = np.linalg.norm(self.vector)
        return LiftedVector(self.vector / nrm if nrm else self.vector, self.source, self.eigenvalue, self.generalized_rank)

    def to_dict(self) -> dict:
        z = complex(self.eigenvalue)
        return {
            "eigenvalue": [z.real, z.imag],
            "generalized_rank": self.generalized_rank,
            "source": list(self.source),
            "vector": [[float(c.real), float(c.imag)] for c in np.asarray(self.vector, dtype=complex)],
        }


def lift_block_vector(u, m: int, N: int, k: int, *, eigenvalue=complex("nan"), index: int = 1,
                      generalized_rank: int = 1) -> LiftedVector:
    """``0_N (+) [w^{m j} u for j = 0..k-1]`` in the reordered coordinates."""
    if not 1 <= m <= k - 1:
        raise EqDecompError(f"block index m must lie in 1..{k - 1}, got {m}")
    u = np.asarray(u, dtype=complex).ravel()
    w = roots_of_unity(k)
    parts = [np.zeros(N, dtype=complex)] + [w[(m * j) % k] * u for j in range(k)]
    return LiftedVector(np.concatenate(parts), ("block", m, index), complex(eigenvalue), generalized_rank)


def lift_divisor_vector(w, v, k: int, *, eigenvalue=complex("nan"), index: int = 1,
                        generalized_rank: int = 1) -> LiftedVector:
    """``w (+) v (+) v (+) ... (+) v`` with ``k`` copies of ``v``."""
    w = np.asarray(w, dtype=complex).ravel()
    v = np.asarray(v, dtype=complex).ravel()
    return LiftedVector(np.concatenate([w] + [v] * k), ("divisor", index), complex(eigenvalue), generalized_rank)


def lift_stage_vector(y, N: int, r: int, k: int) -> np.ndarray:
    """Apply ``S`` to an arbitrary vector ``y`` laid out as ``divisor (+) B_1 (+) ...``."""
    y = np.asarray(y, dtype=complex).ravel()
    if len(y) != N + k * r:
        raise EqDecompError(f"vector has length {len(y)}, expected {N + k * r}")
    x = lift_divisor_vector(y[:N], y[N : N + r], k).vector
    for m in range(1, k):
        seg = y[N + m * r : N + (m + 1) * r]
        if np.any(seg):
            x = x + lift_block_vector(seg, m, N, k).vector
    return x


def _as_basis(basis, size: int, what: str) -> tuple[list[np.ndarray], list[complex]]:
    if isinstance(basis, EigenPairs):
        vecs = [basis.vectors[:, j] for j in range(len(basis))]
        vals = list(basis.values)
    else:
        vecs = [np.asarray(v, dtype=complex).ravel() for v in basis]
        vals = [complex("nan")] * len(vecs)
    if len(vecs) != size:
        raise EqDecompError(f"{what} needs {size} vectors, got {len(vecs)}")
    for v in vecs:
        if len(v) != size:
            raise EqDecompError(f"{what} vectors must have length {size}, got {len(v)}")
    return vecs, vals


def _check_rank(vectors: list[np.ndarray]) -> None:
    E = np.column_stack(vectors)
    s = np.linalg.svd(E, compute_uv=False)
    if s[-1] <= RANK_TOL * s[0]:
        raise EqDecompError(
            f"lifted vectors are numerically dependent (sigma_min/sigma_max = {s[-1] / s[0]:.2e}); "
            "the input bases are not bases"
        )


def reconstruct_eigenbasis(decomp: BasicDecomposition, divisor_basis=None, block_bases=None, *,
                           original_order: bool = True, normalize: bool = False) -> list[LiftedVector]:
    """Lift bases of the divisor and of ``B_1 .. B_{k-1}`` to a basis of ``M``.

    ``divisor_basis`` holds ``N + r`` vectors and ``block_bases[m-1]`` holds the
    ``r`` vectors for ``B_m``; either may be an :class:`EigenPairs`, in which
    case eigenvalues are carried along. Omitted bases are computed with
    :func:`eigenpairs` and must not be defective. Output vectors use the
    original vertex order unless ``original_order`` is false.
    """
    N, r, k = decomp.N, decomp.r, decomp.k
    if divisor_basis is None:
        divisor_basis = _plain_basis(decomp.divisor)
    if block_bases is None:
        block_bases = [_plain_basis(B) for B in decomp.blocks]
    if len(block_bases) != k - 1:
        raise EqDecompError(f"need {k - 1} block bases, got {len(block_bases)}")
    out: list[LiftedVector] = []
    vecs, vals = _as_basis(divisor_basis, N + r, "divisor basis")
    for i, (x, lam) in enumerate(zip(vecs, vals), start=1):
        out.append(lift_divisor_vector(x[:N], x[N:], k, eigenvalue=lam, index=i))
    for m, basis in enumerate(block_bases, start=1):
        vecs, vals = _as_basis(basis, r, f"basis of B_{m}")
        for l, (u, lam) in enumerate(zip(vecs, vals), start=1):
            out.append(lift_block_vector(u, m, N, k, eigenvalue=lam, index=l))
    _check_rank([lv.vector for lv in out])
    if original_order:
        idx = np.asarray(decomp.plan.ordering) - 1
        remapped = []
        for lv in out:
            x = np.empty_like(lv.vector)
            x[idx] = lv.vector
            remapped.append(LiftedVector(x, lv.source, lv.eigenvalue, lv.generalized_rank))
        out = remapped
    if normalize:
        out = [lv.normalized() for lv in out]
    return out


def _plain_basis(B) -> EigenPairs:
    pairs = eigenpairs(B)
    if pairs.defective:
        raise EqDecompError("block is defective; supply a generalized eigenbasis explicitly")
    return pairs


def reconstruct_sequential(decomp: SequentialDecomposition, block_bases=None, *,
                           normalize: bool = False) -> list[LiftedVector]:
    """Eigenbasis of the original matrix from bases of the final blocks.

    Works backwards through the stages: a vector in the coordinates of stage
    ``i + 1`` is reordered into stage ``i``'s plan order and multiplied by that
    stage's ``S``. ``block_bases[b]`` lists vectors for ``decomp.blocks[b]``;
    omitted bases are computed with :func:`eigenpairs`. ``source`` is
    ``("final_block", b, l)`` with 1-based indices.
    """
    n = decomp.final_matrix.shape[0]
    if block_bases is None:
        block_bases = [_plain_basis(b.matrix) for b in decomp.blocks]
    if len(block_bases) != len(decomp.blocks):
        raise EqDecompError(f"need {len(decomp.blocks)} block bases, got {len(block_bases)}")
    out = []
    for b, (blk, basis) in enumerate(zip(decomp.blocks, block_bases), start=1):
        vecs, vals = _as_basis(basis, len(blk.labels), f"basis of final block {b}")
        idx = np.asarray(blk.labels) - 1
        for l, (u, lam) in enumerate(zip(vecs, vals), start=1):
            y = np.zeros(n, dtype=complex)
            y[idx] = u
            for st in reversed(decomp.stages):
                o = np.asarray(st.plan.ordering) - 1
                x = np.empty(n, dtype=complex)
                x[o] = lift_stage_vector(y[o], st.plan.N, st.plan.r, st.plan.k)
                y = x
            out.append(LiftedVector(y, ("final_block", b, l), complex(lam)))
    _check_rank([lv.vector for lv in out])
    if normalize:
        out = [lv.normalized() for lv in out]
    return out


def divisor_spectral_radius(M, phi: Permutation, *, prime_order: str = "largest") -> tuple[float, bool]:
    """Spectral radius of a nonnegative ``M`` computed from its divisor matrix.

    The second value is true when ``M`` is irreducible and the radius is itself
    an eigenvalue of the divisor (within ``1e-8``); it is false for reducible ``M``.
    """
    M = as_matrix(M)
    nonneg, irreducible = is_irreducible_nonnegative(M)
    if not nonneg:
        raise EqDecompError("divisor spectral radius needs a real nonnegative matrix")
    dec = decompose(M, phi, prime_order=prime_order)
    ev = eigenvalues(dec.divisor)
    rho = float(np.max(np.abs(ev))) if len(ev) else 0.0
    member = bool(np.any(np.abs(ev - rho) <= MEMBERSHIP_TOL * max(1.0, rho)))
    return rho, bool(irreducible and member)


def radius_chain(M, psi: Permutation) -> tuple[list[float], float, float]:
    """``([rho(B_1), ..., rho(B_{k-1})], rho(B_0), rho(divisor))`` for a basic ``psi``."""
    dec = decompose_basic(M, psi)

    def rho(A):
        ev = eigenvalues(A)
        return float(np.max(np.abs(ev))) if len(ev) else 0.0

    return [rho(B) for B in dec.blocks], rho(dec.block0), rho(dec.divisor)
