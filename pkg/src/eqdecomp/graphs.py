"""Graphs, the matrices attached to them, automorphism checks and planted-symmetry instances."""

from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Sequence

import numpy as np
from scipy.sparse import csr_matrix
from scipy.sparse.csgraph import shortest_path

from .errors import EqDecompError, NotAutomorphismError
from .linalg import as_matrix, max_abs
from .perms import Permutation, factorize

__all__ = [
    "WeightedGraph",
    "MatrixKind",
    "build_matrix",
    "is_automorphism",
    "automorphism_violation",
    "check_automorphism",
    "build_block_circulant",
    "compatible_matrix",
    "planted_basic",
    "planted_separable",
    "random_cycle_type_permutation",
]

AUTOMORPHISM_TOL = 1e-12


class MatrixKind(str, enum.Enum):
    ADJACENCY = "adjacency"
    LAPLACIAN = "laplacian"
    SIGNLESS_LAPLACIAN = "signless_laplacian"
    NORMALIZED_LAPLACIAN = "normalized_laplacian"
    DISTANCE = "distance"
    WEIGHTED_ADJACENCY = "weighted_adjacency"


_SIMPLE_ONLY = {
    MatrixKind.LAPLACIAN,
    MatrixKind.SIGNLESS_LAPLACIAN,
    MatrixKind.NORMALIZED_LAPLACIAN,
    MatrixKind.DISTANCE,
}


@dataclass(frozen=True)
class WeightedGraph:
    """A graph on vertices 1..n with complex edge weights.

    Undirected graphs store each edge once; ``(i, j)`` and ``(j, i)`` count as
    the same edge and listing both is an error. Unweighted edges carry weight 1.
    """

    n: int
    edges: tuple[tuple[int, int, complex], ...] = ()
    directed: bool = False

    def __post_init__(self):
        if self.n < 0:
            raise EqDecompError(f"vertex count must be nonnegative, got {self.n}")
        clean = []
        seen = set()
        for e in self.edges:
            if len(e) == 2:
                i, j = e
                w = 1.0
            elif len(e) == 3:
                i, j, w = e
            else:
                raise EqDecompError(f"edge {e!r} must be (i, j) or (i, j, w)")
            i, j, w = int(i), int(j), complex(w)
            if not (1 <= i <= self.n and 1 <= j <= self.n):
                raise EqDecompError(f"edge ({i}, {j}) has an endpoint outside 1..{self.n}")
            if not np.isfinite(w):
                raise EqDecompError(f"edge ({i}, {j}) has non-finite weight")
            key = (i, j) if self.directed else (min(i, j), max(i, j))
            if key in seen:
                raise EqDecompError(f"duplicate edge ({i}, {j})")
            seen.add(key)
            clean.append((i, j, w))
        object.__setattr__(self, "edges", tuple(clean))

    @property
    def is_simple(self) -> bool:
        return (
            not self.directed
            and all(i != j for i, j, _ in self.edges)
            and all(w == 1 for _, _, w in self.edges)
        )

    @property
    def is_real(self) -> bool:
        return all(w.imag == 0 for _, _, w in self.edges)

    def weight_matrix(self) -> np.ndarray:
        W = np.zeros((self.n, self.n), dtype=complex if not self.is_real else float)
        for i, j, w in self.edges:
            w = w if np.iscomplexobj(W) else w.real
            W[i - 1, j - 1] = w
            if not self.directed:
                W[j - 1, i - 1] = w
        return W

    def to_dict(self) -> dict:
        edges = []
        for i, j, w in self.edges:
            if w == 1:
                edges.append([i, j])
            elif w.imag == 0:
                edges.append([i, j, w.real])
            else:
                edges.append([i, j, w.real, w.imag])
        return {"n": self.n, "directed": self.directed, "edges": edges}

    @classmethod
    def from_dict(cls, data: dict) -> "WeightedGraph":
        if "n" not in data:
            raise EqDecompError("graph JSON is missing field 'n'")
        edges = []
        for idx, e in enumerate(data.get("edges", [])):
            if not isinstance(e, (list, tuple)) or len(e) not in (2, 3, 4):
                raise EqDecompError(f"edges[{idx}] must be [i, j, w_re?, w_im?], got {e!r}")
            re_ = e[2] if len(e) > 2 else 1.0
            im_ = e[3] if len(e) > 3 else 0.0
            edges.append((e[0], e[1], complex(re_, im_)))
        return cls(int(data["n"]), tuple(edges), bool(data.get("directed", False)))

    @classmethod
    def from_matrix(cls, W, directed: bool | None = None) -> "WeightedGraph":
        """Graph whose weighted adjacency is ``W``; undirected when ``W`` is symmetric."""
        W = as_matrix(W)
        if directed is None:
            directed = not np.array_equal(W, W.T)
        edges = []
        n = W.shape[0]
        for i in range(n):
            for j in range(n) if directed else range(i, n):
                if W[i, j] != 0:
                    edges.append((i + 1, j + 1, complex(W[i, j])))
        return cls(n, tuple(edges), directed)


def build_matrix(G: WeightedGraph, kind: MatrixKind | str) -> np.ndarray:
    """Matrix of the requested kind for ``G``.

    The Laplacian family and the distance matrix need a simple graph; the
    distance matrix also needs ``G`` connected. In the normalized Laplacian an
    isolated vertex gets diagonal entry 0.
    """
    kind = MatrixKind(kind)
    if kind in _SIMPLE_ONLY and not G.is_simple:
        raise EqDecompError(f"{kind.value} matrix requires a simple graph (undirected, loop-free, unit weights)")
    W = G.weight_matrix()
    if kind is MatrixKind.WEIGHTED_ADJACENCY:
        return W
    A = (W != 0).astype(float)
    if kind is MatrixKind.ADJACENCY:
        return A
    deg = A.sum(axis=1)
    if kind is MatrixKind.LAPLACIAN:
        return np.diag(deg) - A
    if kind is MatrixKind.SIGNLESS_LAPLACIAN:
        return np.diag(deg) + A
    if kind is MatrixKind.NORMALIZED_LAPLACIAN:
        inv_sqrt = np.zeros_like(deg)
        nz = deg > 0
        inv_sqrt[nz] = 1.0 / np.sqrt(deg[nz])
        return np.diag(nz.astype(float)) - inv_sqrt[:, None] * A * inv_sqrt[None, :]
    # distance
    if G.n == 0:
        return np.zeros((0, 0))
    D = shortest_path(csr_matrix(A), method="D", directed=False, unweighted=True)
    if not np.all(np.isfinite(D)):
        raise EqDecompError("distance matrix requires a connected graph")
    return D


def automorphism_violation(M, phi: Permutation, tol: float | None = None) -> tuple[int, int] | None:
    """First 1-based pair ``(i, j)`` with ``M[phi(i), phi(j)] != M[i, j]``, or ``None``."""
    A = as_matrix(M)
    if A.shape[0] != phi.n:
        raise EqDecompError(f"matrix is {A.shape[0]}x{A.shape[0]} but permutation acts on {phi.n} points")
    if tol is None:
        tol = AUTOMORPHISM_TOL * max(1.0, max_abs(A))
    idx = np.asarray(phi.images) - 1
    bad = np.abs(A[np.ix_(idx, idx)] - A) > tol
    if not bad.any():
        return None
    i, j = np.argwhere(bad)[0]
    return int(i) + 1, int(j) + 1


def is_automorphism(M, phi: Permutation, tol: float | None = None) -> bool:
    return automorphism_violation(M, phi, tol) is None


def check_automorphism(M, phi: Permutation, tol: float | None = None) -> None:
    pair = automorphism_violation(M, phi, tol)
    if pair is not None:
        i, j = pair
        raise NotAutomorphismError(
            f"not an automorphism: M[{phi(i)},{phi(j)}] != M[{i},{j}]", pair=pair
        )


def build_block_circulant(F, H, L, blocks: Sequence) -> tuple[np.ndarray, Permutation]:
    """Assemble the matrix with a fixed part and a block-circulant part.

    Row block ``l`` of the circulant part holds ``blocks[(m - l) % k]`` in column
    block ``m``; every row block starts with ``L`` and the fixed rows read
    ``[F, H, H, ..., H]``. Returns the matrix together with the automorphism
    that fixes the first ``N`` vertices and shifts each circulant block to the next.
    """
    k = len(blocks)
    if k < 2:
        raise EqDecompError("need at least two circulant blocks")
    Ms = [np.atleast_2d(np.asarray(b)) for b in blocks]
    r = Ms[0].shape[0]
    F = np.asarray(F)
    F = np.zeros((0, 0)) if F.size == 0 else np.atleast_2d(F)
    N = F.shape[0]
    H = np.asarray(H).reshape(N, r)
    L = np.asarray(L).reshape(r, N)
    if F.shape != (N, N):
        raise EqDecompError(f"F must be square, got {F.shape}")
    for m, B in enumerate(Ms):
        if B.shape != (r, r):
            raise EqDecompError(f"block {m} has shape {B.shape}, expected ({r}, {r})")
    dtype = np.result_type(F, H, L, *Ms, float)
    n = N + k * r
    M = np.zeros((n, n), dtype=dtype)
    M[:N, :N] = F
    for l in range(k):
        rows = slice(N + l * r, N + (l + 1) * r)
        M[:N, rows] = H
        M[rows, :N] = L
        for m in range(k):
            M[rows, N + m * r : N + (m + 1) * r] = Ms[(m - l) % k]
    images = list(range(1, N + 1))
    for l in range(k):
        for i in range(r):
            images.append(N + ((l + 1) % k) * r + i + 1)
    return M, Permutation(images)


def compatible_matrix(phi: Permutation, rng: np.random.Generator, *, mode: str = "real",
                      density: float = 1.0, symmetric: bool = False) -> np.ndarray:
    """Random matrix with ``M[phi(i), phi(j)] == M[i, j]``.

    One value is drawn per orbit of vertex pairs under ``(i, j) -> (phi(i), phi(j))``,
    so generically ``phi`` and its powers are the only symmetries.

    ``mode`` selects the entry distribution: ``"real"`` (uniform on [-1, 1]),
    ``"nonnegative"`` (uniform on [0, 1]), ``"integer"`` (small nonnegative
    integers) or ``"complex"``. With ``symmetric=True`` the pair orbit of
    ``(j, i)`` shares the value of ``(i, j)`` (Hermitian for complex mode).
    """
    n = phi.n
    img = np.asarray(phi.images) - 1
    M = np.zeros((n, n), dtype=complex if mode == "complex" else float)
    done = np.zeros((n, n), dtype=bool)
    for i in range(n):
        for j in range(n):
            if done[i, j]:
                continue
            if rng.random() >= density:
                val = 0.0
            elif mode == "real":
                val = rng.uniform(-1, 1)
            elif mode == "nonnegative":
                val = rng.uniform(0.05, 1)
            elif mode == "integer":
                val = float(rng.integers(1, 4))
            elif mode == "complex":
                val = complex(rng.uniform(-1, 1), rng.uniform(-1, 1))
            else:
                raise EqDecompError(f"unknown mode {mode!r}")
            if symmetric and isinstance(val, complex):
                # (j, i) in the same pair orbit forces M[i, j] == conj(M[i, j])
                a, b, orbit = i, j, set()
                while (a, b) not in orbit:
                    orbit.add((a, b))
                    a, b = img[a], img[b]
                if (j, i) in orbit:
                    val = complex(val.real, 0.0)
            a, b = i, j
            while not done[a, b]:
                done[a, b] = True
                M[a, b] = val
                if symmetric:
                    done[b, a] = True
                    M[b, a] = np.conj(val)
                a, b = img[a], img[b]
    if symmetric and mode == "complex":
        # diagonal of a Hermitian matrix is real
        M[np.diag_indices(n)] = M.diagonal().real
    return M


def random_cycle_type_permutation(cycle_lengths: Sequence[int], n: int, rng: np.random.Generator) -> Permutation:
    """Permutation on ``n`` points with the given nontrivial cycle lengths, placed at random."""
    if sum(cycle_lengths) > n:
        raise EqDecompError("cycle lengths exceed the number of points")
    points = list(rng.permutation(np.arange(1, n + 1)))
    cycles = []
    for L in cycle_lengths:
        cycles.append([int(v) for v in points[:L]])
        points = points[L:]
    return Permutation.from_cycles(cycles, n)


def planted_basic(rng: np.random.Generator, N: int, r: int, k: int, **kwargs) -> tuple[np.ndarray, Permutation]:
    """Random compatible matrix of size ``N + k r`` with a planted basic automorphism.

    The automorphism has ``r`` orbits of size ``k`` and ``N`` fixed points, with
    vertices shuffled so the orbits are not contiguous.
    """
    phi = random_cycle_type_permutation([k] * r, N + k * r, rng)
    return compatible_matrix(phi, rng, **kwargs), phi


def planted_separable(rng: np.random.Generator, N: int, cycle_lengths: Sequence[int], **kwargs) -> tuple[np.ndarray, Permutation]:
    """Random compatible matrix whose planted automorphism has the given cycle lengths.

    The order of the automorphism is the lcm of ``cycle_lengths`` and must be squarefree.
    """
    phi = random_cycle_type_permutation(list(cycle_lengths), N + sum(cycle_lengths), rng)
    if any(e > 1 for e in factorize(phi.order).values()):
        raise EqDecompError(f"cycle lengths {list(cycle_lengths)} give a non-squarefree order {phi.order}")
    return compatible_matrix(phi, rng, **kwargs), phi
