"""Permutations of the vertex set {1, ..., n}.

All vertex indices are 1-based, both in the public API and in storage.

Functions
---------
parse_cycles
    Build a permutation from cycle notation such as ``"(2,5,8)(3,6,9,4,7,10)"``.
power, orbits, classify, separable_power
    Thin functional wrappers around :class:`Permutation` methods.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass, field
from functools import reduce
from typing import Iterable, Sequence

from .errors import EqDecompError

__all__ = [
    "Permutation",
    "OrbitPartition",
    "AutoClass",
    "parse_cycles",
    "power",
    "orbits",
    "classify",
    "separable_power",
    "factorize",
]

PRIME_ORDERS = ("largest", "ascending")


def factorize(m: int) -> dict[int, int]:
    """Prime factorization of ``m >= 1`` by trial division, as ``{prime: exponent}``."""
    if m < 1:
        raise ValueError(f"cannot factorize {m}")
    out: dict[int, int] = {}
    p = 2
    while p * p <= m:
        while m % p == 0:
            out[p] = out.get(p, 0) + 1
            m //= p
        p += 1
    if m > 1:
        out[m] = out.get(m, 0) + 1
    return out


class Permutation:
    """A bijection of {1, ..., n}.

    ``Permutation((2, 1, 3))`` swaps 1 and 2 and fixes 3: entry ``i - 1`` of
    ``images`` is the image of ``i``. Instances are immutable and hashable.
    """

    __slots__ = ("_images",)

    def __init__(self, images: Iterable[int]):
        images = tuple(int(v) for v in images)
        n = len(images)
        if sorted(images) != list(range(1, n + 1)):
            raise EqDecompError(f"{images} is not a bijection of 1..{n}")
        self._images = images

    @classmethod
    def identity(cls, n: int) -> "Permutation":
        return cls(range(1, n + 1))

    @classmethod
    def from_cycles(cls, cycles: Iterable[Sequence[int]], n: int) -> "Permutation":
        images = list(range(1, n + 1))
        seen: set[int] = set()
        for cyc in cycles:
            cyc = [int(v) for v in cyc]
            for v in cyc:
                if v < 1 or v > n:
                    raise EqDecompError(f"index {v} out of range 1..{n}")
                if v in seen:
                    raise EqDecompError(f"duplicate index {v} in cycle notation")
                seen.add(v)
            for a, b in zip(cyc, cyc[1:] + cyc[:1]):
                images[a - 1] = b
        return cls(images)

    @property
    def n(self) -> int:
        return len(self._images)

    @property
    def images(self) -> tuple[int, ...]:
        return self._images

    def __call__(self, i: int) -> int:
        if i < 1 or i > self.n:
            raise EqDecompError(f"index {i} out of range 1..{self.n}")
        return self._images[i - 1]

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Permutation):
            return NotImplemented
        return self._images == other._images

    def __hash__(self) -> int:
        return hash(self._images)

    def __repr__(self) -> str:
        return f"Permutation.from_cycles({self.cycles()}, n={self.n})"

    def __str__(self) -> str:
        return self.to_cycle_string()

    def __mul__(self, other: "Permutation") -> "Permutation":
        """Composition ``(self * other)(i) == self(other(i))``."""
        if other.n != self.n:
            raise EqDecompError(f"cannot compose permutations on {self.n} and {other.n} points")
        return Permutation(self._images[j - 1] for j in other._images)

    def inverse(self) -> "Permutation":
        inv = [0] * self.n
        for i, j in enumerate(self._images, start=1):
            inv[j - 1] = i
        return Permutation(inv)

    def power(self, e: int) -> "Permutation":
        """``self`` composed with itself ``e`` times; negative ``e`` uses the inverse."""
        # each point moves e steps along its own cycle
        images = [0] * self.n
        for cyc in self._all_cycles():
            L = len(cyc)
            for idx, v in enumerate(cyc):
                images[v - 1] = cyc[(idx + e) % L]
        return Permutation(images)

    def _all_cycles(self) -> list[list[int]]:
        seen = [False] * self.n
        out = []
        for start in range(1, self.n + 1):
            if seen[start - 1]:
                continue
            cyc = []
            v = start
            while not seen[v - 1]:
                seen[v - 1] = True
                cyc.append(v)
                v = self._images[v - 1]
            out.append(cyc)
        return out

    def cycles(self) -> list[list[int]]:
        """Nontrivial cycles, each starting at its smallest member, sorted by that member."""
        return [c for c in self._all_cycles() if len(c) > 1]

    def to_cycle_string(self) -> str:
        cyc = self.cycles()
        if not cyc:
            return "()"
        return "".join("(" + ",".join(map(str, c)) + ")" for c in cyc)

    def to_dict(self) -> dict:
        return {"n": self.n, "cycles": self.cycles()}

    @classmethod
    def from_dict(cls, data: dict) -> "Permutation":
        try:
            return cls.from_cycles(data["cycles"], int(data["n"]))
        except KeyError as exc:
            raise EqDecompError(f"permutation JSON is missing field {exc}") from None

    @property
    def order(self) -> int:
        return reduce(math.lcm, (len(c) for c in self._all_cycles()), 1)

    def is_identity(self) -> bool:
        return all(v == i for i, v in enumerate(self._images, start=1))

    def fixed_points(self) -> list[int]:
        return [i for i, v in enumerate(self._images, start=1) if v == i]

    def orbits(self) -> "OrbitPartition":
        return OrbitPartition(tuple(tuple(c) for c in self._all_cycles()))

    def restrict(self, subset: Sequence[int]) -> "Permutation":
        """Relabel the action on an invariant ``subset`` to positions 1..len(subset)."""
        pos = {v: i for i, v in enumerate(subset, start=1)}
        try:
            return Permutation(pos[self(v)] for v in subset)
        except KeyError:
            raise EqDecompError("subset is not invariant under the permutation") from None

    def conjugate_to(self, ordering: Sequence[int]) -> "Permutation":
        """The same map written in the coordinates of ``ordering``.

        Position ``a`` holds vertex ``ordering[a-1]``; the returned permutation sends
        ``a`` to the position of ``self(ordering[a-1])``.
        """
        if sorted(ordering) != list(range(1, self.n + 1)):
            raise EqDecompError("ordering must list every vertex exactly once")
        return self.restrict(ordering)


@dataclass(frozen=True)
class OrbitPartition:
    """Orbits listed as ``(v, phi(v), phi^2(v), ...)`` starting from the smallest member ``v``."""

    orbits: tuple[tuple[int, ...], ...]

    def __iter__(self):
        return iter(self.orbits)

    def __len__(self) -> int:
        return len(self.orbits)

    def as_sets(self) -> list[frozenset[int]]:
        return [frozenset(o) for o in self.orbits]

    def sizes(self) -> list[int]:
        return [len(o) for o in self.orbits]

    def orbit_of(self, v: int) -> tuple[int, ...]:
        for o in self.orbits:
            if v in o:
                return o
        raise EqDecompError(f"vertex {v} is not covered by the partition")


@dataclass(frozen=True)
class AutoClass:
    """Structural class of a permutation.

    ``kind`` is the most specific of ``identity``, ``uniform``, ``basic``,
    ``separable`` and ``general``. A uniform permutation is also basic, and a
    basic one of squarefree order is also separable; the boolean properties
    report each membership separately.
    """

    kind: str
    order: int
    k: int | None = None
    n_fixed: int = 0
    primes: tuple[int, ...] = field(default=())

    @property
    def is_basic(self) -> bool:
        return self.kind in ("uniform", "basic")

    @property
    def is_uniform(self) -> bool:
        return self.kind == "uniform"

    @property
    def is_separable(self) -> bool:
        return _squarefree(self.order)

    def describe(self) -> str:
        if self.kind == "identity":
            return "identity"
        parts = []
        if self.kind == "uniform":
            parts.append(f"uniform(k={self.k})")
        elif self.kind == "basic":
            parts.append(f"basic(k={self.k}, N={self.n_fixed})")
        elif self.kind == "general":
            parts.append("general")
        if self.is_separable:
            parts.append(f"separable(primes={list(self.primes)})")
        else:
            parts.append(f"not separable (order {self.order})")
        return ", ".join(parts)


def _squarefree(m: int) -> bool:
    return all(e == 1 for e in factorize(m).values())


def _ordered_primes(order: int, prime_order: str) -> tuple[int, ...]:
    if prime_order not in PRIME_ORDERS:
        raise EqDecompError(f"prime_order must be one of {PRIME_ORDERS}, got {prime_order!r}")
    primes = sorted(factorize(order))
    if prime_order == "largest":
        primes.reverse()
    return tuple(primes)


_CYCLE_RE = re.compile(r"\(([^()]*)\)")


def parse_cycles(text: str, n: int) -> Permutation:
    """Parse cycle notation; entries may be separated by commas and/or whitespace.

    >>> parse_cycles("(1 2)(3,4)", 4).images
    (2, 1, 4, 3)
    """
    stripped = _CYCLE_RE.sub("", text)
    if stripped.replace(",", "").strip():
        raise EqDecompError(f"malformed cycle notation: {text!r}")
    cycles = []
    for body in _CYCLE_RE.findall(text):
        tokens = [t for t in re.split(r"[,\s]+", body.strip()) if t]
        try:
            cycles.append([int(t) for t in tokens])
        except ValueError:
            raise EqDecompError(f"non-integer entry in cycle ({body})") from None
    return Permutation.from_cycles(cycles, n)


def power(phi: Permutation, e: int) -> Permutation:
    return phi.power(e)


def orbits(phi: Permutation) -> OrbitPartition:
    return phi.orbits()


def classify(phi: Permutation, prime_order: str = "largest") -> AutoClass:
    """Classify ``phi`` as identity, uniform, basic, separable or general.

    ``primes`` holds the distinct prime factors of the order when it is squarefree,
    largest first by default (``prime_order="ascending"`` reverses this).
    """
    order = phi.order
    primes = _ordered_primes(order, prime_order) if _squarefree(order) else ()
    sizes = phi.orbits().sizes()
    nontrivial = {s for s in sizes if s > 1}
    n_fixed = sizes.count(1)
    if not nontrivial:
        return AutoClass("identity", order, None, n_fixed, primes)
    if len(nontrivial) == 1:
        (k,) = nontrivial
        kind = "uniform" if n_fixed == 0 else "basic"
        return AutoClass(kind, order, k, n_fixed, primes)
    kind = "separable" if primes else "general"
    return AutoClass(kind, order, None, n_fixed, primes)


def separable_power(phi: Permutation) -> tuple[Permutation, int]:
    """Return ``(phi**e, e)`` with ``e = prod p**(a-1)`` over ``order = prod p**a``.

    The result has squarefree order equal to the radical of ``phi.order``.
    """
    if phi.is_identity():
        raise EqDecompError("the identity has no separable power with nontrivial orbits")
    e = 1
    for p, a in factorize(phi.order).items():
        e *= p ** (a - 1)
    return phi.power(e), e
