"""Shared fixtures: the ten-vertex worked example and a seeded instance generator."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from eqdecomp import Permutation, parse_cycles
from eqdecomp.graphs import compatible_matrix, planted_basic, random_cycle_type_permutation

# Adjacency matrix of the ten-vertex example graph, typed in row by row.
FIG1 = np.array(
    [
        [0, 1, 0, 0, 1, 0, 0, 1, 0, 0],
        [1, 0, 1, 1, 1, 0, 0, 1, 0, 0],
        [0, 1, 0, 0, 0, 0, 0, 0, 0, 0],
        [0, 1, 0, 0, 0, 0, 0, 0, 0, 0],
        [1, 1, 0, 0, 0, 1, 1, 1, 0, 0],
        [0, 0, 0, 0, 1, 0, 0, 0, 0, 0],
        [0, 0, 0, 0, 1, 0, 0, 0, 0, 0],
        [1, 1, 0, 0, 1, 0, 0, 0, 1, 1],
        [0, 0, 0, 0, 0, 0, 0, 1, 0, 0],
        [0, 0, 0, 0, 0, 0, 0, 1, 0, 0],
    ],
    dtype=float,
)

FIG1_EDGES = """\
# n = 10
1 2
1 5
1 8
2 3
2 4
2 5
2 8
5 6
5 7
5 8
8 9
8 10
"""

PHI_TEXT = "(2,5,8)(3,6,9,4,7,10)"
PSI0_TEXT = "(2,8,5)(3,9,7)(4,10,6)"
PHI = parse_cycles(PHI_TEXT, 10)
PSI0 = parse_cycles(PSI0_TEXT, 10)

ROUND1_DIVISOR = np.array([[0, 3, 0, 0], [1, 2, 1, 1], [0, 1, 0, 0], [0, 1, 0, 0]], dtype=float)
ROUND1_BLOCK = np.array([[-1, 1, 1], [1, 0, 0], [1, 0, 0]], dtype=float)
FINAL_DIVISOR = np.array([[0, 3, 0], [1, 2, 2], [0, 1, 0]], dtype=float)


@dataclass(frozen=True)
class Instance:
    name: str
    M: np.ndarray
    phi: Permutation
    kind: str  # "basic" or "separable"
    nonnegative: bool


ENTRY_MODES = ("nonnegative", "sparse-symmetric", "real", "complex")


def _matrix(phi: Permutation, rng: np.random.Generator, mode: str) -> np.ndarray:
    if mode == "nonnegative":
        return compatible_matrix(phi, rng, mode="nonnegative")
    if mode == "sparse-symmetric":
        return compatible_matrix(phi, rng, mode="nonnegative", density=0.4, symmetric=True)
    if mode == "real":
        return compatible_matrix(phi, rng, mode="real")
    return compatible_matrix(phi, rng, mode="complex", symmetric=bool(rng.integers(2)))


def _separable_cycles(rng: np.random.Generator, p: int, q: int, budget: int) -> list[int]:
    """Cycle lengths from {p, q, pq} whose lcm is pq and whose sum fits ``budget``."""
    while True:
        count = int(rng.integers(2, 5))
        cycles = [int(c) for c in rng.choice([p, q, p * q], size=count)]
        if sum(cycles) <= budget and np.lcm.reduce(cycles) == p * q and len(set(cycles)) > 1:
            return cycles


def spectrum_instances(count: int = 200, seed: int = 20240601) -> list[Instance]:
    """Seeded mix of planted-symmetry instances.

    Four fifths are basic with ``k`` in {2, 3, 5, 7}, ``N <= 5``, ``r <= 8`` and
    ``n <= 60``; the rest are separable of order 6 or 10 with several orbit sizes.
    Entry types rotate through dense nonnegative, sparse symmetric nonnegative,
    dense real and complex.
    """
    rng = np.random.default_rng(seed)
    out: list[Instance] = []
    n_basic = (count * 4) // 5
    for idx in range(count):
        mode = ENTRY_MODES[idx % len(ENTRY_MODES)]
        N = int(rng.integers(0, 6))
        if idx < n_basic:
            k = (2, 3, 5, 7)[(idx // len(ENTRY_MODES)) % 4]
            r_max = min(8, (60 - N) // k)
            r = int(rng.integers(1, r_max + 1))
            phi = random_cycle_type_permutation([k] * r, N + k * r, rng)
            name = f"basic-k{k}-N{N}-r{r}-{mode}-{idx}"
            kind = "basic"
        else:
            p, q = ((3, 2), (5, 2))[idx % 2]
            cycles = _separable_cycles(rng, p, q, 60 - N)
            phi = random_cycle_type_permutation(cycles, N + sum(cycles), rng)
            name = f"separable-{p}{q}-{'-'.join(map(str, cycles))}-N{N}-{mode}-{idx}"
            kind = "separable"
        M = _matrix(phi, rng, mode)
        out.append(Instance(name, M, phi, kind, mode in ("nonnegative", "sparse-symmetric")))
    return out


def basic_instance(seed: int, N: int = 2, r: int = 3, k: int = 3, **kw):
    return planted_basic(np.random.default_rng(seed), N, r, k, **kw)


def stage_radius_chains(M, decomp):
    """``radius_chain`` of every stage, restricted to the divisor lineage.

    Stage ``i`` acts on the output of stage ``i - 1``. Only the rows and columns
    that fed every earlier divisor (fixed vertices plus transversal) form a
    nonnegative matrix, so the chain is checked there.
    """
    from eqdecomp import radius_chain

    lineage = list(range(1, M.shape[0] + 1))
    current = np.asarray(M)
    chains = []
    for st in decomp.stages:
        ix = np.asarray(lineage) - 1
        local = st.psi.restrict(lineage)
        if not local.is_identity():
            chains.append(radius_chain(current[np.ix_(ix, ix)], local))
        lineage = sorted(set(lineage) & (set(st.plan.U) | set(st.plan.T[0])))
        current = st.matrix
    return chains
