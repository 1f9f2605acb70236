"""Dense matrix helpers: eigen-oracle, spectrum comparison, spectral radius, irreducibility.

Matrices are plain 2-D numpy arrays (real or complex). Eigenvalues come from
LAPACK through :func:`numpy.linalg.eig`, which does the Hessenberg reduction
and shifted QR iteration internally.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.sparse import csr_matrix
from scipy.sparse.csgraph import connected_components, maximum_bipartite_matching

from .errors import EqDecompError

__all__ = [
    "as_matrix",
    "eigenvalues",
    "eigenpairs",
    "EigenPairs",
    "canonical_sort",
    "multiset_equal",
    "spectral_radius",
    "is_irreducible_nonnegative",
    "default_tolerance",
    "max_abs",
]

MAX_DIM = 2000
DEFAULT_TOL = 1e-8


def as_matrix(M, *, square: bool = True, name: str = "matrix") -> np.ndarray:
    """Validate ``M`` as a finite 2-D array and return it (no copy when possible)."""
    A = np.asarray(M)
    if A.dtype == object or not np.issubdtype(A.dtype, np.number):
        raise EqDecompError(f"{name} must be numeric, got dtype {A.dtype}")
    if A.ndim != 2:
        raise EqDecompError(f"{name} must be 2-D, got shape {A.shape}")
    if square and A.shape[0] != A.shape[1]:
        raise EqDecompError(f"{name} must be square, got shape {A.shape}")
    if not np.all(np.isfinite(A)):
        raise EqDecompError(f"{name} contains NaN or Inf")
    if np.issubdtype(A.dtype, np.integer) or A.dtype == bool:
        A = A.astype(float)
    return A


def max_abs(M) -> float:
    A = np.asarray(M)
    return float(np.max(np.abs(A))) if A.size else 0.0


def default_tolerance(M, base: float = DEFAULT_TOL) -> float:
    """``base`` for matrices with entries of magnitude at most 10, else scaled by the inf-norm."""
    A = np.asarray(M)
    if A.size == 0 or max_abs(A) <= 10:
        return base
    return base * float(np.max(np.sum(np.abs(A), axis=1)))


def canonical_sort(values) -> np.ndarray:
    """Sort complex values lexicographically by (real, imag)."""
    v = np.asarray(values, dtype=complex).ravel()
    idx = np.lexsort((v.imag, v.real))
    return v[idx]


def eigenvalues(M) -> np.ndarray:
    """All eigenvalues with multiplicity, canonically ordered, as a complex array."""
    A = as_matrix(M)
    if A.shape[0] > MAX_DIM:
        raise EqDecompError(f"dense eigen-solve limited to n <= {MAX_DIM}, got {A.shape[0]}")
    if A.shape[0] == 0:
        return np.zeros(0, dtype=complex)
    return canonical_sort(np.linalg.eigvals(A))


@dataclass(frozen=True)
class EigenPairs:
    """Eigenvalues with unit-norm eigenvectors stored as the columns of ``vectors``.

    ``defective`` is set when some eigenvalue has fewer independent eigenvectors
    than its algebraic multiplicity; the missing directions are not synthesized.
    """

    values: np.ndarray
    vectors: np.ndarray
    defective: bool

    def __len__(self) -> int:
        return len(self.values)

    def __iter__(self):
        for j in range(len(self.values)):
            yield self.values[j], self.vectors[:, j]


def _clusters(values: np.ndarray, tol: float) -> list[list[int]]:
    # single linkage on |a - b| <= tol
    n = len(values)
    parent = list(range(n))

    def find(a):
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    for a in range(n):
        for b in range(a + 1, n):
            if abs(values[a] - values[b]) <= tol:
                parent[find(a)] = find(b)
    groups: dict[int, list[int]] = {}
    for a in range(n):
        groups.setdefault(find(a), []).append(a)
    return list(groups.values())


def eigenpairs(M, *, cluster_tol: float = 1e-5, rank_tol: float = 1e-7) -> EigenPairs:
    """Plain eigenpairs of ``M``.

    Eigenvalues closer than ``cluster_tol`` (relative to ``max(1, |M|)``) are
    treated as one multiple eigenvalue. When the solver's eigenvectors for such
    a cluster are numerically dependent (smallest singular value below
    ``rank_tol``), the cluster is defective: an orthonormal basis of the
    independent directions is returned with the cluster mean as eigenvalue.
    """
    A = as_matrix(M)
    n = A.shape[0]
    if n == 0:
        return EigenPairs(np.zeros(0, complex), np.zeros((0, 0), complex), False)
    w, V = np.linalg.eig(A)
    V = V / np.linalg.norm(V, axis=0)
    scale = max(1.0, float(np.linalg.norm(A, 2)))
    values, vectors = [], []
    defective = False
    for group in _clusters(w, cluster_tol * scale):
        sub = V[:, group]
        if len(group) == 1:
            values.append(w[group[0]])
            vectors.append(sub[:, 0])
            continue
        U, s, _ = np.linalg.svd(sub, full_matrices=False)
        rank = int(np.sum(s > rank_tol * s[0]))
        if rank == len(group):
            values.extend(w[group])
            vectors.extend(sub.T)
        else:
            defective = True
            lam = np.mean(w[group])
            values.extend([lam] * rank)
            vectors.extend(U[:, :rank].T)
    values = np.asarray(values, dtype=complex)
    vectors = np.asarray(vectors, dtype=complex).T.reshape(n, len(values))
    order = np.lexsort((values.imag, values.real))
    return EigenPairs(values[order], vectors[:, order], defective)


def multiset_equal(a, b, tol: float = DEFAULT_TOL) -> bool:
    """True when the two multisets can be paired off one-to-one within distance ``tol``.

    The pairing is an exact bipartite matching on the graph of pairs closer
    than ``tol``, so clustered eigenvalues cannot defeat it the way a greedy
    pass over sorted lists can.
    """
    if tol <= 0:
        raise EqDecompError("tol must be positive")
    a = np.asarray(a, dtype=complex).ravel()
    b = np.asarray(b, dtype=complex).ravel()
    if len(a) != len(b):
        return False
    if len(a) == 0:
        return True
    close = np.abs(a[:, None] - b[None, :]) <= tol
    if not close.any(axis=1).all() or not close.any(axis=0).all():
        return False
    match = maximum_bipartite_matching(csr_matrix(close), perm_type="column")
    return bool(np.all(match >= 0))


def spectral_radius(M) -> float:
    ev = eigenvalues(M)
    return float(np.max(np.abs(ev))) if len(ev) else 0.0


def is_irreducible_nonnegative(M) -> tuple[bool, bool]:
    """Return ``(nonnegative, irreducible)``.

    Nonnegative means every entry is real and ``>= 0``. Irreducible means the
    digraph with an arc ``i -> j`` for each nonzero ``M[i, j]`` is strongly
    connected.
    """
    A = as_matrix(M)
    if np.iscomplexobj(A):
        nonneg = bool(np.all(A.imag == 0) and np.all(A.real >= 0))
    else:
        nonneg = bool(np.all(A >= 0))
    n = A.shape[0]
    if n == 0:
        return nonneg, False
    ncomp, _ = connected_components(csr_matrix(A != 0), directed=True, connection="strong")
    return nonneg, ncomp == 1
