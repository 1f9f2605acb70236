"""Folded graphs: small weighted digraphs whose adjacency matrices are the decomposition blocks.

For a basic automorphism ``psi`` of order ``k`` with semi-transversal ``T_0``
and fixed set ``U``, the ``m``-th folded graph lives on the vertices
``psi**m (T_0)`` and carries the weights

    nu_m(psi^m i, psi^m j) = sum_l w**(l m) * W[i, psi^l j]     (j in T_0)
    nu_m(i, j)             = W[i, j]                           (j in U, m = 0 only)

With ``m = 0`` the fixed vertices are included and the sum over ``l`` produces
the ``k * H`` column scaling, so the adjacency matrix equals the divisor.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .decompose import SemiTransversalPlan, choose_semi_transversal, roots_of_unity
from .errors import EqDecompError
from .graphs import WeightedGraph, check_automorphism
from .linalg import as_matrix
from .perms import Permutation

__all__ = ["FoldedGraph", "fold", "fold_family", "weighted_adjacency", "export_dot", "format_weight",
           "DROP_TOL"]

DROP_TOL = 1e-12


@dataclass(frozen=True)
class FoldedGraph:
    """Vertices are original labels; ``fixed[v]`` marks vertices of ``U``."""

    m: int
    vertices: tuple[int, ...]
    edges: tuple[tuple[int, int, complex], ...]
    fixed: tuple[bool, ...]

    def index(self) -> dict[int, int]:
        return {v: i for i, v in enumerate(self.vertices)}

    def to_dict(self) -> dict:
        edges = []
        for i, j, w in self.edges:
            w = complex(w)
            edges.append([i, j, w.real] if w.imag == 0 else [i, j, w.real, w.imag])
        return {
            "m": self.m,
            "n": len(self.vertices),
            "directed": True,
            "vertices": list(self.vertices),
            "fixed": [v for v, f in zip(self.vertices, self.fixed) if f],
            "edges": edges,
        }

    @classmethod
    def from_dict(cls, data: dict) -> "FoldedGraph":
        verts = tuple(int(v) for v in data["vertices"])
        fixed_set = set(data.get("fixed", []))
        edges = []
        for e in data.get("edges", []):
            w = complex(e[2] if len(e) > 2 else 1.0, e[3] if len(e) > 3 else 0.0)
            edges.append((int(e[0]), int(e[1]), w))
        return cls(int(data["m"]), verts, tuple(edges), tuple(v in fixed_set for v in verts))


def _weights(G) -> np.ndarray:
    if isinstance(G, WeightedGraph):
        return G.weight_matrix()
    return as_matrix(G)


def fold(G, psi: Permutation, plan: SemiTransversalPlan | None = None, m: int = 0) -> FoldedGraph:
    """The ``m``-th folded graph of ``G`` (a :class:`WeightedGraph` or a weight matrix)."""
    W = _weights(G)
    if plan is None:
        plan = choose_semi_transversal(psi)
    elif plan.psi != psi:
        raise EqDecompError("plan was built for a different automorphism")
    k = plan.k
    if not 0 <= m <= k - 1:
        raise EqDecompError(f"fold index m must lie in 0..{k - 1}, got {m}")
    if W.shape[0] != psi.n:
        raise EqDecompError(f"graph has {W.shape[0]} vertices but psi acts on {psi.n}")
    check_automorphism(W, psi)
    w = roots_of_unity(k)
    T0 = plan.T[0]
    psi_m = psi.power(m)
    rows = (list(plan.U) if m == 0 else []) + list(T0)
    fixed = [True] * (plan.N if m == 0 else 0) + [False] * len(T0)
    labels = [v if f else psi_m(v) for v, f in zip(rows, fixed)]
    edges = []
    for a, i in enumerate(rows):
        for b, j in enumerate(rows):
            if fixed[b]:
                nu = complex(W[i - 1, j - 1])
            else:
                nu = sum(w[(l * m) % k] * W[i - 1, plan.T[l][T0.index(j)] - 1] for l in range(k))
                nu = complex(nu)
            if abs(nu) >= DROP_TOL:
                if abs(nu.imag) < DROP_TOL:
                    nu = complex(nu.real, 0.0)
                edges.append((labels[a], labels[b], nu))
    return FoldedGraph(m, tuple(labels), tuple(edges), tuple(fixed))


def fold_family(G, psi: Permutation, plan: SemiTransversalPlan | None = None) -> list[FoldedGraph]:
    """``[fold(G, psi, plan, m) for m = 0 .. k-1]``."""
    if plan is None:
        plan = choose_semi_transversal(psi)
    return [fold(G, psi, plan, m) for m in range(plan.k)]


def weighted_adjacency(F: FoldedGraph) -> np.ndarray:
    """Dense adjacency in ``F.vertices`` order; real when every weight is real."""
    idx = F.index()
    real = all(complex(w).imag == 0 for _, _, w in F.edges)
    A = np.zeros((len(F.vertices),) * 2, dtype=float if real else complex)
    for i, j, w in F.edges:
        A[idx[i], idx[j]] = complex(w).real if real else w
    return A


def _fmt(x: float) -> str:
    r = round(x)
    if abs(x - r) <= 1e-9:
        return str(int(r))
    return f"{x:.6g}"


def format_weight(w: complex) -> str:
    """Render a weight as ``a``, ``bi`` or ``a+bi`` with near-integers shown as integers."""
    w = complex(w)
    re, im = w.real, w.imag
    if abs(im) <= 1e-9:
        return _fmt(re)
    ims = _fmt(abs(im))
    ims = "" if ims == "1" else ims
    if abs(re) <= 1e-9:
        return f"{'-' if im < 0 else ''}{ims}i"
    return f"{_fmt(re)}{'-' if im < 0 else '+'}{ims}i"


def export_dot(F: FoldedGraph) -> str:
    """DOT digraph text; fixed vertices are drawn as open dashed circles."""
    lines = [f"digraph G{F.m} {{"]
    for v, f in zip(F.vertices, F.fixed):
        style = "shape=circle, style=dashed" if f else "shape=circle, style=filled, fillcolor=lightgray"
        lines.append(f"  {v} [{style}];")
    for i, j, w in F.edges:
        lines.append(f'  {i} -> {j} [label="{format_weight(w)}"];')
    lines.append("}")
    return "\n".join(lines) + "\n"
