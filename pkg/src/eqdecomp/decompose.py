"""Equitable decompositions over basic and separable automorphisms.

A basic automorphism ``psi`` with ``r`` orbits of size ``k`` and ``N`` fixed
vertices splits a compatible matrix ``M`` into a divisor matrix of size
``N + r`` and ``k - 1`` blocks of size ``r``::

    S^{-1} M~ S = divisor (+) B_1 (+) ... (+) B_{k-1}

where ``M~`` is ``M`` reordered as ``U, T_0, ..., T_{k-1}`` (fixed vertices,
then a semi-transversal and its images). A separable automorphism, whose order
is a product of distinct primes, is handled as a sequence of such steps, one
per prime.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np
from scipy.linalg import block_diag

from .errors import EqDecompError, InvariantViolation, NotAutomorphismError
from .graphs import check_automorphism
from .linalg import as_matrix, eigenvalues, max_abs
from .perms import Permutation, classify

__all__ = [
    "SemiTransversalPlan",
    "BasicDecomposition",
    "Stage",
    "FinalBlock",
    "SequentialDecomposition",
    "roots_of_unity",
    "choose_semi_transversal",
    "component_blocks",
    "divisor_matrix",
    "build_similarity",
    "similarity_inverse",
    "decompose_basic",
    "induced_automorphism",
    "decompose_separable",
    "decompose",
    "equitable_divisor",
    "snap_display",
]

RESIDUAL_TOL = 1e-10
EQUITABLE_TOL = 1e-10


def roots_of_unity(k: int) -> np.ndarray:
    """``[w**0, ..., w**(k-1)]`` for ``w = exp(2 pi i / k)``, exact for k in {1, 2, 4}."""
    exact = {1: [1], 2: [1, -1], 4: [1, 1j, -1, -1j]}
    if k in exact:
        return np.array(exact[k], dtype=complex)
    return np.exp(2j * np.pi * np.arange(k) / k)


def snap_display(A, tol: float = 1e-9) -> np.ndarray:
    """Copy of ``A`` with parts within ``tol`` of an integer rounded; for printing only."""
    A = np.array(A, dtype=complex)
    re, im = A.real.copy(), A.imag.copy()
    for part in (re, im):
        near = np.abs(part - np.round(part)) <= tol
        part[near] = np.round(part[near])
    out = re + 1j * im
    if np.all(out.imag == 0):
        return out.real
    return out


@dataclass(frozen=True)
class SemiTransversalPlan:
    """Vertex bookkeeping for one basic decomposition.

    ``T[l][i] == psi**l (T[0][i])`` for every ``l`` and ``i``; ``U`` holds the
    fixed vertices in increasing order.
    """

    psi: Permutation
    U: tuple[int, ...]
    T: tuple[tuple[int, ...], ...]

    @property
    def k(self) -> int:
        return len(self.T)

    @property
    def r(self) -> int:
        return len(self.T[0])

    @property
    def N(self) -> int:
        return len(self.U)

    @property
    def ordering(self) -> tuple[int, ...]:
        out = list(self.U)
        for t in self.T:
            out.extend(t)
        return tuple(out)

    def to_dict(self) -> dict:
        return {"psi": self.psi.to_dict(), "U": list(self.U), "T": [list(t) for t in self.T]}

    @classmethod
    def from_dict(cls, data: dict) -> "SemiTransversalPlan":
        return _make_plan(Permutation.from_dict(data["psi"]), data["T"][0], data["U"])


def _make_plan(psi: Permutation, T0: Sequence[int], U: Sequence[int]) -> SemiTransversalPlan:
    info = classify(psi)
    if not info.is_basic:
        raise EqDecompError(f"{psi} is not a basic automorphism ({info.describe()})")
    k = info.k
    T0 = tuple(int(v) for v in T0)
    T = tuple(tuple(psi.power(l)(v) for v in T0) for l in range(k))
    fixed = tuple(sorted(psi.fixed_points()))
    if tuple(sorted(U)) != fixed:
        raise EqDecompError("U must be exactly the fixed vertices of psi")
    covered = sorted(v for t in T for v in t)
    if covered != sorted(set(range(1, psi.n + 1)) - set(fixed)):
        raise EqDecompError(f"{list(T0)} is not a semi-transversal of the orbits of {psi}")
    return SemiTransversalPlan(psi, fixed, T)


def choose_semi_transversal(psi: Permutation, phi: Permutation | None = None) -> SemiTransversalPlan:
    """Pick a semi-transversal ``T_0`` for the basic automorphism ``psi``.

    Without ``phi``, ``T_0`` holds the smallest vertex of every nontrivial
    orbit of ``psi``. With ``phi``, ``psi`` must equal ``phi**q`` where
    ``order(phi) = k q`` and ``gcd(k, q) = 1``; then every ``phi``-orbit moved by
    ``psi`` contributes its smallest vertex ``a`` followed by
    ``phi**k (a), phi**(2k) (a), ...`` (``|orbit| / k`` vertices in total).
    This keeps each ``T_l`` invariant under ``phi**k``, which is what lets the
    decomposed matrix inherit ``phi**k`` as an automorphism.
    """
    info = classify(psi)
    if not info.is_basic:
        raise EqDecompError(f"{psi} is not a basic automorphism ({info.describe()})")
    k = info.k
    if phi is None:
        T0 = [o[0] for o in psi.orbits() if len(o) > 1]
        return _make_plan(psi, T0, psi.fixed_points())
    if phi.n != psi.n:
        raise EqDecompError("psi and phi act on different vertex sets")
    order = phi.order
    q = order // k
    if order % k or math.gcd(k, q) != 1 or phi.power(q) != psi:
        raise EqDecompError(f"{psi} is not phi**q with order(phi) = {k}*q and gcd({k}, q) = 1 for phi = {phi}")
    step = phi.power(k)
    T0 = []
    for orb in phi.orbits():
        a = orb[0]
        if psi(a) == a:
            continue
        v = a
        for _ in range(len(orb) // k):
            T0.append(v)
            v = step(v)
    return _make_plan(psi, T0, psi.fixed_points())


def _check_plan(M: np.ndarray, plan: SemiTransversalPlan) -> None:
    if M.shape[0] != plan.psi.n:
        raise EqDecompError(f"matrix is {M.shape[0]}x{M.shape[0]} but the plan covers {plan.psi.n} vertices")
    check_automorphism(M, plan.psi)


def _slices(M: np.ndarray, plan: SemiTransversalPlan):
    idx = np.asarray(plan.ordering) - 1
    Mt = M[np.ix_(idx, idx)]
    N, r, k = plan.N, plan.r, plan.k
    F = Mt[:N, :N]
    H = Mt[:N, N : N + r]
    L = Mt[N : N + r, :N]
    Ms = [Mt[N : N + r, N + m * r : N + (m + 1) * r] for m in range(k)]
    return Mt, F, H, L, Ms


def _blocks_from(Ms: list[np.ndarray], k: int) -> list[np.ndarray]:
    w = roots_of_unity(k)
    B0 = sum(Ms[1:], Ms[0].copy())
    out = [B0]
    for j in range(1, k):
        coef = w[(j * np.arange(k)) % k]
        if np.all(coef.imag == 0) and not np.iscomplexobj(Ms[0]):
            coef = coef.real
        Bj = sum(c * Mm for c, Mm in zip(coef, Ms))
        out.append(Bj)
    return out


def component_blocks(M, plan: SemiTransversalPlan, k: int | None = None) -> list[np.ndarray]:
    """``[B_0, ..., B_{k-1}]`` with ``B_j = sum_m w**(j m) M[T_0, T_m]``."""
    M = as_matrix(M)
    if k is not None and k != plan.k:
        raise EqDecompError(f"k = {k} does not match the plan's orbit size {plan.k}")
    _check_plan(M, plan)
    _, _, _, _, Ms = _slices(M, plan)
    return _blocks_from(Ms, plan.k)


def _divisor(F, H, L, B0, k: int) -> np.ndarray:
    if F.shape[0] == 0:
        return B0
    return np.block([[F, k * H], [L, B0]])


def divisor_matrix(M, plan: SemiTransversalPlan) -> np.ndarray:
    """``[[F, k H], [L, B_0]]``; just ``B_0`` when ``psi`` fixes no vertex."""
    M = as_matrix(M)
    _check_plan(M, plan)
    _, F, H, L, Ms = _slices(M, plan)
    return _divisor(F, H, L, sum(Ms[1:], Ms[0].copy()), plan.k)


def build_similarity(N: int, r: int, k: int) -> np.ndarray:
    """``I_N (+) R`` where block ``(i, j)`` of ``R`` is ``w**(i j) I_r``."""
    if N < 0 or r < 1 or k < 2:
        raise EqDecompError(f"need N >= 0, r >= 1, k >= 2; got N={N}, r={r}, k={k}")
    w = roots_of_unity(k)
    ij = np.outer(np.arange(k), np.arange(k)) % k
    R = np.kron(w[ij], np.eye(r))
    return block_diag(np.eye(N), R).astype(complex)


def similarity_inverse(N: int, r: int, k: int) -> np.ndarray:
    """Inverse of :func:`build_similarity`, i.e. ``I_N (+) conj(R) / k``."""
    S = build_similarity(N, r, k)
    Sinv = S.conj()
    Sinv[N:, N:] /= k
    return Sinv


@dataclass(frozen=True)
class BasicDecomposition:
    """Result of decomposing a matrix over one basic automorphism.

    ``blocks`` holds ``B_1 .. B_{k-1}``; ``block0`` is ``B_0``, the lower-right
    corner of ``divisor``. ``relabel`` maps each vertex to its position in
    ``plan.ordering``.
    """

    k: int
    N: int
    r: int
    divisor: np.ndarray
    block0: np.ndarray
    blocks: tuple[np.ndarray, ...]
    S: np.ndarray
    plan: SemiTransversalPlan
    relabel: Permutation

    @property
    def psi(self) -> Permutation:
        return self.plan.psi

    def matrices(self) -> list[np.ndarray]:
        return [self.divisor, *self.blocks]

    def block_diagonal(self) -> np.ndarray:
        return block_diag(*self.matrices())

    def reorder(self, M) -> np.ndarray:
        idx = np.asarray(self.plan.ordering) - 1
        return np.asarray(M)[np.ix_(idx, idx)]

    def spectrum(self) -> np.ndarray:
        from .linalg import canonical_sort

        return canonical_sort(np.concatenate([eigenvalues(B) for B in self.matrices()]))

    def to_dict(self) -> dict:
        from .serialize import matrix_to_dict

        return {
            "type": "basic",
            "k": self.k,
            "N": self.N,
            "r": self.r,
            "plan": self.plan.to_dict(),
            "ordering": list(self.plan.ordering),
            "divisor": matrix_to_dict(self.divisor),
            "blocks": [matrix_to_dict(B) for B in self.blocks],
        }


def decompose_basic(M, psi: Permutation, plan: SemiTransversalPlan | None = None) -> BasicDecomposition:
    """Equitable decomposition of ``M`` over the basic automorphism ``psi``.

    Raises :class:`NotAutomorphismError` when ``psi`` does not preserve ``M`` and
    :class:`InvariantViolation` when ``S^{-1} M~ S`` misses the block-diagonal
    form by more than ``1e-10 * max|M|``.
    """
    M = as_matrix(M)
    if plan is None:
        plan = choose_semi_transversal(psi)
    elif plan.psi != psi:
        raise EqDecompError("plan was built for a different automorphism")
    _check_plan(M, plan)
    N, r, k = plan.N, plan.r, plan.k
    Mt, F, H, L, Ms = _slices(M, plan)
    Bs = _blocks_from(Ms, k)
    div = _divisor(F, H, L, Bs[0], k)
    S = build_similarity(N, r, k)
    dec = BasicDecomposition(
        k=k,
        N=N,
        r=r,
        divisor=div,
        block0=Bs[0],
        blocks=tuple(Bs[1:]),
        S=S,
        plan=plan,
        relabel=Permutation(np.argsort(np.asarray(plan.ordering) - 1) + 1),
    )
    resid = np.max(np.abs(similarity_inverse(N, r, k) @ Mt @ S - dec.block_diagonal()), initial=0.0)
    if resid > RESIDUAL_TOL * max_abs(M):
        raise InvariantViolation(f"block-diagonal residual {resid:.3e} exceeds {RESIDUAL_TOL} * max|M|")
    return dec


def induced_automorphism(phi: Permutation, p: int, plan: SemiTransversalPlan) -> Permutation:
    """``phi**p`` written in the coordinates ``plan.ordering`` of the decomposed matrix.

    Requires ``phi**p`` to map ``U`` and each ``T_l`` onto themselves, as happens
    for plans from :func:`choose_semi_transversal` given ``phi``.
    """
    step = phi.power(p)
    for part in (plan.U, *plan.T):
        if {step(v) for v in part} != set(part):
            raise EqDecompError(f"phi**{p} does not preserve the plan's vertex classes")
    return step.conjugate_to(plan.ordering)


@dataclass(frozen=True)
class Stage:
    """One round of a sequential decomposition.

    ``phi`` is the automorphism entering the round, ``plan.psi`` the basic power
    of it used for the split. ``matrix`` is the decomposed matrix indexed by the
    original vertex labels, so ``matrix[np.ix_(o, o)]`` with ``o = ordering - 1``
    is block diagonal.
    """

    order: int
    phi: Permutation
    plan: SemiTransversalPlan
    decomposition: BasicDecomposition
    matrix: np.ndarray

    @property
    def psi(self) -> Permutation:
        return self.plan.psi

    def reordered_matrix(self) -> np.ndarray:
        idx = np.asarray(self.plan.ordering) - 1
        return self.matrix[np.ix_(idx, idx)]


@dataclass(frozen=True)
class FinalBlock:
    labels: tuple[int, ...]
    matrix: np.ndarray


@dataclass(frozen=True)
class SequentialDecomposition:
    """Chain of basic decompositions; ``blocks[0]`` is the divisor block."""

    stages: tuple[Stage, ...]
    blocks: tuple[FinalBlock, ...]

    @property
    def divisor(self) -> np.ndarray:
        return self.blocks[0].matrix

    @property
    def divisor_labels(self) -> tuple[int, ...]:
        return self.blocks[0].labels

    @property
    def final_matrix(self) -> np.ndarray:
        return self.stages[-1].matrix

    def off_divisor_blocks(self) -> list[np.ndarray]:
        return [b.matrix for b in self.blocks[1:]]

    def matrices(self) -> list[np.ndarray]:
        return [b.matrix for b in self.blocks]

    def spectrum(self) -> np.ndarray:
        from .linalg import canonical_sort

        return canonical_sort(np.concatenate([eigenvalues(B) for B in self.matrices()]))

    def divisor_partition(self, phi: Permutation) -> list[tuple[int, ...]]:
        """Orbits of ``phi`` listed in the row order of :attr:`divisor`."""
        parts = phi.orbits()
        return [parts.orbit_of(v) for v in self.divisor_labels]

    def to_dict(self) -> dict:
        from .serialize import matrix_to_dict

        return {
            "type": "sequential",
            "stages": [
                {
                    "prime": st.order,
                    "phi_cycles": st.phi.cycles(),
                    "psi_cycles": st.psi.cycles(),
                    "U": list(st.plan.U),
                    "T": [list(t) for t in st.plan.T],
                    "ordering": list(st.plan.ordering),
                    "divisor": matrix_to_dict(st.decomposition.divisor),
                    "blocks": [matrix_to_dict(B) for B in st.decomposition.blocks],
                }
                for st in self.stages
            ],
            "n": self.stages[0].phi.n,
            "divisor_labels": list(self.divisor_labels),
            "divisor": matrix_to_dict(self.divisor),
            "final_blocks": [{"labels": list(b.labels), "matrix": matrix_to_dict(b.matrix)} for b in self.blocks],
        }


def _run_stages(M: np.ndarray, rounds) -> SequentialDecomposition:
    """Drive the stage loop. ``rounds`` yields ``(order, phi, plan_factory)`` lazily."""
    n = M.shape[0]
    current = M
    stages: list[Stage] = []
    parts: list[set[int]] = [set(range(1, n + 1))]
    lineage = set(range(1, n + 1))
    for order, phi_i, plan in rounds:
        try:
            dec = decompose_basic(current, plan.psi, plan)
        except NotAutomorphismError as exc:
            if stages:
                raise InvariantViolation(f"round {len(stages) + 1}: {exc}") from exc
            raise
        idx = np.asarray(plan.ordering) - 1
        nxt = np.zeros((n, n), dtype=np.result_type(current, *dec.matrices()))
        nxt[np.ix_(idx, idx)] = dec.block_diagonal()
        stages.append(Stage(order, phi_i, plan, dec, nxt))
        classes = [set(plan.U) | set(plan.T[0])] + [set(t) for t in plan.T[1:]]
        parts = [p & c for p in parts for c in classes if p & c]
        lineage &= classes[0]
        current = nxt

    pos = {v: i for i, v in enumerate(stages[-1].plan.ordering)}
    parts = [sorted(p, key=pos.__getitem__) for p in parts]
    parts.sort(key=lambda p: (set(p) != lineage, pos[p[0]]))
    blocks = []
    mask = np.ones((n, n), dtype=bool)
    for p in parts:
        ix = np.asarray(p) - 1
        blocks.append(FinalBlock(tuple(p), current[np.ix_(ix, ix)].copy()))
        mask[np.ix_(ix, ix)] = False
    leak = np.max(np.abs(current[mask]), initial=0.0)
    if leak > RESIDUAL_TOL * max(1.0, max_abs(M)):
        raise InvariantViolation(f"final matrix has off-block entries up to {leak:.3e}")
    return SequentialDecomposition(tuple(stages), tuple(blocks))


def decompose_separable(M, phi: Permutation, prime_order: str = "largest") -> SequentialDecomposition:
    """Decompose ``M`` over a separable automorphism, one basic round per prime.

    Round ``i`` takes ``phi_i`` of order ``l_i``, splits over
    ``psi_i = phi_i**(l_i / p_i)`` with a semi-transversal chosen relative to
    ``phi_i``, and hands ``phi_{i+1} = phi_i**p_i`` to the next round.
    """
    M = as_matrix(M)
    if M.shape[0] != phi.n:
        raise EqDecompError(f"matrix is {M.shape[0]}x{M.shape[0]} but phi acts on {phi.n} points")
    info = classify(phi, prime_order)
    if info.kind == "identity":
        raise EqDecompError("cannot decompose over the identity")
    if not info.is_separable:
        raise EqDecompError(
            f"{phi} has order {info.order}, which is not squarefree; "
            "decompose over separable_power(phi) instead"
        )
    check_automorphism(M, phi)

    def rounds():
        phi_i, ell = phi, info.order
        for p in info.primes:
            psi = phi_i.power(ell // p)
            yield p, phi_i, choose_semi_transversal(psi, phi_i)
            phi_i, ell = phi_i.power(p), ell // p

    return _run_stages(M, rounds())


def decompose(M, phi: Permutation, *, prime_order: str = "largest", use_power: bool = False) -> SequentialDecomposition:
    """Decompose over ``phi`` whatever its type.

    Basic automorphisms get a single round with the plain semi-transversal;
    separable ones go through :func:`decompose_separable`. Anything else is
    rejected unless ``use_power`` is set, in which case its separable power is used.
    """
    M = as_matrix(M)
    if use_power:
        from .perms import separable_power

        phi, _ = separable_power(phi)
    info = classify(phi, prime_order)
    if info.is_basic:
        return _run_stages(M, [(info.k, phi, choose_semi_transversal(phi))])
    return decompose_separable(M, phi, prime_order)


def equitable_divisor(M, partition: Sequence[Sequence[int]]) -> np.ndarray:
    """Divisor matrix ``D[i, j] = sum_{t in V_j} M[s, t]`` of an equitable partition.

    Raises :class:`EqDecompError` naming the first ``(i, j, s)`` whose row sum
    differs from the rest of its cell.
    """
    M = as_matrix(M)
    n = M.shape[0]
    cells = [[int(v) for v in cell] for cell in partition]
    flat = sorted(v for c in cells for v in c)
    if flat != list(range(1, n + 1)) or any(not c for c in cells):
        raise EqDecompError("partition must cover 1..n with disjoint nonempty cells")
    tol = EQUITABLE_TOL * max(1.0, max_abs(M))
    k = len(cells)
    D = np.zeros((k, k), dtype=M.dtype)
    for j, cj in enumerate(cells):
        sums = M[:, np.asarray(cj) - 1].sum(axis=1)
        for i, ci in enumerate(cells):
            vals = sums[np.asarray(ci) - 1]
            bad = np.nonzero(np.abs(vals - vals[0]) > tol)[0]
            if len(bad):
                s = ci[bad[0]]
                raise EqDecompError(
                    f"partition is not equitable: cell {i + 1} -> cell {j + 1} row sum is "
                    f"{vals[0]} at vertex {ci[0]} but {vals[bad[0]]} at vertex {s}"
                )
            D[i, j] = vals[0]
    return D
