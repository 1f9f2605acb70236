"""Gershgorin disks and regions, containment tests and union areas.

Each disk is centred at a diagonal entry with radius equal to the absolute
off-diagonal sum of its row (or column). Every eigenvalue lies in the union.
Decomposing a matrix over an automorphism can only shrink this union, and
:func:`region_contained` checks that disk by disk.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from .errors import EqDecompError
from .linalg import as_matrix

__all__ = [
    "Disk",
    "GershRegion",
    "region",
    "block_region",
    "disk_contained",
    "region_contained",
    "sampled_contained",
    "union_area",
    "grid_union_area",
    "distance_to_region",
]

MODES = ("rows", "columns")


@dataclass(frozen=True)
class Disk:
    center: complex
    radius: float

    def __post_init__(self):
        if not (self.radius >= 0) or not math.isfinite(self.radius):
            raise EqDecompError(f"disk radius must be finite and >= 0, got {self.radius}")
        object.__setattr__(self, "center", complex(self.center))
        object.__setattr__(self, "radius", float(self.radius))

    def contains_point(self, z: complex, tol: float = 0.0) -> bool:
        return abs(complex(z) - self.center) <= self.radius + tol

    def to_dict(self) -> dict:
        return {"center": [self.center.real, self.center.imag], "radius": self.radius}

    @classmethod
    def from_dict(cls, data: dict) -> "Disk":
        c = data["center"]
        center = complex(c[0], c[1]) if isinstance(c, (list, tuple)) else complex(c)
        return cls(center, float(data["radius"]))


@dataclass(frozen=True)
class GershRegion:
    """Union of ``disks``; disk ``i`` comes from row (or column) ``i``."""

    disks: tuple[Disk, ...]
    mode: str = "rows"

    def __post_init__(self):
        if self.mode not in MODES:
            raise EqDecompError(f"mode must be one of {MODES}, got {self.mode!r}")
        object.__setattr__(self, "disks", tuple(self.disks))

    def __len__(self) -> int:
        return len(self.disks)

    def __iter__(self):
        return iter(self.disks)

    def contains_point(self, z: complex, tol: float = 0.0) -> bool:
        return any(d.contains_point(z, tol) for d in self.disks)

    def area(self) -> float:
        return union_area(self)

    def to_dict(self) -> dict:
        return {"mode": self.mode, "disks": [d.to_dict() for d in self.disks]}

    @classmethod
    def from_dict(cls, data: dict) -> "GershRegion":
        try:
            return cls(tuple(Disk.from_dict(d) for d in data["disks"]), data.get("mode", "rows"))
        except (KeyError, TypeError, IndexError) as exc:
            raise EqDecompError(f"malformed region JSON: {exc!r}") from None


def region(M, mode: str = "rows") -> GershRegion:
    """Gershgorin region of a square matrix in row or column mode."""
    if mode not in MODES:
        raise EqDecompError(f"mode must be one of {MODES}, got {mode!r}")
    A = as_matrix(M)
    if mode == "columns":
        A = A.T
    absA = np.abs(A)
    radii = absA.sum(axis=1) - np.abs(np.diag(A))
    radii = np.maximum(radii, 0.0)  # guard against -0.0 style round-off
    return GershRegion(tuple(Disk(c, r) for c, r in zip(np.diag(A), radii)), mode)


def block_region(blocks: Iterable, mode: str = "rows") -> GershRegion:
    """Region of the block-diagonal matrix built from ``blocks``, without forming it."""
    disks: list[Disk] = []
    for B in blocks:
        disks.extend(region(B, mode).disks)
    return GershRegion(tuple(disks), mode)


def disk_contained(inner: Disk, outer: Disk, tol: float = 0.0) -> bool:
    """Closed containment ``|c_in - c_out| <= r_out - r_in`` (plus ``tol``)."""
    return abs(inner.center - outer.center) <= outer.radius - inner.radius + tol


def region_contained(inner: GershRegion, outer: GershRegion, tol: float = 1e-10) -> bool:
    """True when each inner disk sits inside a single outer disk.

    This is sufficient for set containment but not necessary: a disk covered by
    two overlapping outer disks together is reported as not contained. ``tol``
    absorbs floating-point noise in the radii (scaled by the largest radius).
    """
    scale = max([1.0] + [d.radius for d in outer.disks] + [abs(d.center) for d in outer.disks])
    return all(any(disk_contained(d, o, tol * scale) for o in outer.disks) for d in inner.disks)


def sampled_contained(inner: GershRegion, outer: GershRegion, samples: int = 10_000,
                      tol: float = 1e-10) -> bool:
    """Set-containment check by testing ``samples`` boundary points of each inner disk.

    Diagnostic only: it can miss a thin gap between samples.
    """
    theta = np.linspace(0.0, 2 * np.pi, samples, endpoint=False)
    unit = np.exp(1j * theta)
    centers = np.array([o.center for o in outer.disks], dtype=complex)
    radii = np.array([o.radius for o in outer.disks])
    if len(centers) == 0:
        return len(inner.disks) == 0
    for d in inner.disks:
        pts = d.center + d.radius * unit if d.radius > 0 else np.array([d.center])
        dist = np.abs(pts[:, None] - centers[None, :]) - radii[None, :]
        if np.any(dist.min(axis=1) > tol * max(1.0, radii.max())):
            return False
    return True


def distance_to_region(z: complex, reg: GershRegion) -> float:
    """Distance from ``z`` to the region (0 when inside)."""
    if not reg.disks:
        return math.inf
    return max(0.0, min(abs(complex(z) - d.center) - d.radius for d in reg.disks))


def _lens_area(a: Disk, b: Disk) -> float:
    r1, r2 = a.radius, b.radius
    d = abs(a.center - b.center)
    if d >= r1 + r2:
        return math.pi * (r1 * r1 + r2 * r2)
    if d <= abs(r1 - r2):
        return math.pi * max(r1, r2) ** 2
    c1 = max(-1.0, min(1.0, (d * d + r1 * r1 - r2 * r2) / (2 * d * r1)))
    c2 = max(-1.0, min(1.0, (d * d + r2 * r2 - r1 * r1) / (2 * d * r2)))
    k = 0.5 * math.sqrt(max(0.0, (-d + r1 + r2) * (d + r1 - r2) * (d - r1 + r2) * (d + r1 + r2)))
    overlap = r1 * r1 * math.acos(c1) + r2 * r2 * math.acos(c2) - k
    return math.pi * (r1 * r1 + r2 * r2) - overlap


def _reduce(disks: Sequence[Disk]) -> list[Disk]:
    """Drop point disks, duplicates and disks inside another disk."""
    ds = sorted({(d.center.real, d.center.imag, d.radius) for d in disks if d.radius > 0},
                key=lambda t: -t[2])
    kept: list[Disk] = []
    for x, y, r in ds:
        d = Disk(complex(x, y), r)
        if not any(disk_contained(d, o) for o in kept):
            kept.append(d)
    return kept


def _boundary_area(disks: list[Disk]) -> float:
    # Green's theorem: area = 1/2 * integral of (x dy - y dx) over the outer
    # boundary, which consists of arcs of each circle lying outside all others.
    total = 0.0
    for i, d in enumerate(disks):
        cuts = [0.0, 2 * math.pi]
        for j, e in enumerate(disks):
            if i == j:
                continue
            dist = abs(e.center - d.center)
            if dist >= d.radius + e.radius or dist <= abs(d.radius - e.radius):
                continue
            base = math.atan2((e.center - d.center).imag, (e.center - d.center).real)
            cosa = (d.radius ** 2 + dist ** 2 - e.radius ** 2) / (2 * d.radius * dist)
            alpha = math.acos(max(-1.0, min(1.0, cosa)))
            cuts.extend(((base - alpha) % (2 * math.pi), (base + alpha) % (2 * math.pi)))
        cuts.sort()
        cx, cy, r = d.center.real, d.center.imag, d.radius
        for t0, t1 in zip(cuts[:-1], cuts[1:]):
            if t1 - t0 <= 0:
                continue
            mid = 0.5 * (t0 + t1)
            p = d.center + r * complex(math.cos(mid), math.sin(mid))
            if any(abs(p - e.center) < e.radius for j, e in enumerate(disks) if j != i):
                continue
            total += 0.5 * (r * r * (t1 - t0)
                            + r * cx * (math.sin(t1) - math.sin(t0))
                            - r * cy * (math.cos(t1) - math.cos(t0)))
    return total


def union_area(reg: GershRegion | Sequence[Disk], tol: float = 1e-9) -> float:
    """Area of the union of the disks.

    Two disks use the closed-form lens formula. Larger unions are integrated
    exactly along their boundary arcs, so ``tol`` is met for any positive value.
    """
    if tol <= 0:
        raise EqDecompError("tol must be positive")
    disks = _reduce(reg.disks if isinstance(reg, GershRegion) else list(reg))
    if not disks:
        return 0.0
    if len(disks) == 1:
        return math.pi * disks[0].radius ** 2
    if len(disks) == 2:
        return _lens_area(disks[0], disks[1])
    return _boundary_area(disks)


def grid_union_area(reg: GershRegion | Sequence[Disk], resolution: int = 1000) -> float:
    """Midpoint-grid estimate of the union area; an independent cross-check."""
    disks = list(reg.disks if isinstance(reg, GershRegion) else reg)
    disks = [d for d in disks if d.radius > 0]
    if not disks:
        return 0.0
    xmin = min(d.center.real - d.radius for d in disks)
    xmax = max(d.center.real + d.radius for d in disks)
    ymin = min(d.center.imag - d.radius for d in disks)
    ymax = max(d.center.imag + d.radius for d in disks)
    hx, hy = (xmax - xmin) / resolution, (ymax - ymin) / resolution
    xs = xmin + hx * (np.arange(resolution) + 0.5)
    ys = ymin + hy * (np.arange(resolution) + 0.5)
    X, Y = np.meshgrid(xs, ys)
    inside = np.zeros_like(X, dtype=bool)
    for d in disks:
        inside |= (X - d.center.real) ** 2 + (Y - d.center.imag) ** 2 <= d.radius ** 2
    return float(inside.sum() * hx * hy)
