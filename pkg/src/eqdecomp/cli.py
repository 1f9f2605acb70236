"""Command-line interface: ``eqdecomp <command> INPUT [options]``.

Exit status is 0 on success, 1 when the input fails validation (bad file, not
an automorphism, check failed) and 2 when an internal invariant breaks.
"""

from __future__ import annotations

import argparse
import os
import sys
from dataclasses import dataclass
from pathlib import Path
from typing import Callable

import numpy as np

from .decompose import decompose
from .eigvecs import divisor_spectral_radius, reconstruct_sequential
from .errors import EqDecompError, InvariantViolation, NotAutomorphismError
from .fold import export_dot, fold_family
from .gershgorin import block_region, region, region_contained, union_area
from .graphs import (
    MatrixKind,
    WeightedGraph,
    automorphism_violation,
    build_matrix,
    planted_basic,
    planted_separable,
)
from .linalg import eigenvalues, is_irreducible_nonnegative, multiset_equal
from .perms import Permutation, classify, parse_cycles
from .serialize import dumps, load_json, matrix_from_dict, matrix_to_dict, parse_edge_list

DEFAULT_TOL = 1e-8

EXIT_OK, EXIT_INVALID, EXIT_INTERNAL = 0, 1, 2


@dataclass
class RunConfig:
    command: str
    input: str | None = None
    auto: str | None = None
    auto_file: str | None = None
    kind: str = "adjacency"
    mode: str = "rows"
    prime_order: str = "largest"
    tol: float = DEFAULT_TOL
    power: bool = False
    seed: int = 0
    out: str | None = None
    format: str = "json"
    gen_fixed: int = 1
    gen_cycles: str = "3,3"
    gen_mode: str = "nonnegative"


class _Failed(Exception):
    """A check ran fine but its verdict is negative; carries the payload to print."""

    def __init__(self, payload):
        super().__init__("check failed")
        self.payload = payload


def _load_input(cfg: RunConfig) -> tuple[np.ndarray, dict]:
    """Return the matrix to work on and the raw JSON document (empty for edge lists)."""
    if cfg.input is None:
        raise EqDecompError("this command needs an input file")
    path = Path(cfg.input)
    if not path.exists():
        raise EqDecompError(f"{path}: no such file")
    text = path.read_text()
    if not text.lstrip().startswith("{"):
        return build_matrix(parse_edge_list(text), cfg.kind), {}
    doc = load_json(path)
    if "edges" in doc:
        return build_matrix(WeightedGraph.from_dict(doc), cfg.kind), doc
    if "matrix" in doc:
        return matrix_from_dict(doc["matrix"]), doc
    if "entries" in doc:
        return matrix_from_dict(doc), doc
    raise EqDecompError(f"{path}: expected a graph (edges), a matrix (entries) or a generated instance (matrix)")


def _load_automorphism(cfg: RunConfig, n: int, doc: dict) -> Permutation:
    if cfg.auto is not None:
        return parse_cycles(cfg.auto, n)
    if cfg.auto_file is not None:
        text = Path(cfg.auto_file).read_text()
        if text.lstrip().startswith("{"):
            phi = Permutation.from_dict(load_json(cfg.auto_file))
        else:
            phi = parse_cycles(text.strip(), n)
        if phi.n != n:
            raise EqDecompError(f"automorphism acts on {phi.n} points but the matrix has {n} rows")
        return phi
    if "automorphism" in doc:
        return Permutation.from_dict(doc["automorphism"])
    raise EqDecompError("no automorphism given; use --auto or --auto-file")


def _complex_list(values) -> list[list[float]]:
    return [[float(z.real), float(z.imag)] for z in np.asarray(values, dtype=complex)]


def _verified(M: np.ndarray, phi: Permutation) -> None:
    bad = automorphism_violation(M, phi)
    if bad is not None:
        i, j = bad
        raise NotAutomorphismError(
            f"not an automorphism: M[{i},{j}] = {M[i - 1, j - 1]} but "
            f"M[{phi(i)},{phi(j)}] = {M[phi(i) - 1, phi(j) - 1]}",
            pair=bad,
        )


def cmd_orbits(cfg, M, phi):
    orb = phi.orbits()
    return {"orbits": [list(o) for o in orb], "sizes": orb.sizes()}


def cmd_classify(cfg, M, phi):
    info = classify(phi, cfg.prime_order)
    return {
        "kind": info.kind,
        "order": info.order,
        "k": info.k,
        "n_fixed": info.n_fixed,
        "basic": info.is_basic,
        "uniform": info.is_uniform,
        "separable": info.is_separable,
        "primes": list(info.primes),
        "description": info.describe(),
    }


def cmd_verify(cfg, M, phi):
    bad = automorphism_violation(M, phi)
    if bad is None:
        return {"automorphism": True}
    i, j = bad
    raise _Failed({
        "automorphism": False,
        "violation": [i, j],
        "image": [phi(i), phi(j)],
        "message": f"M[{i},{j}] != M[{phi(i)},{phi(j)}]",
    })


def _decomp(cfg, M, phi):
    _verified(M, phi)
    return decompose(M, phi, prime_order=cfg.prime_order, use_power=cfg.power)


def cmd_decompose(cfg, M, phi):
    return _decomp(cfg, M, phi).to_dict()


def cmd_spectrum(cfg, M, phi):
    dec = _decomp(cfg, M, phi)
    full = eigenvalues(M)
    parts = dec.spectrum()
    ok = multiset_equal(full, parts, cfg.tol)
    payload = {"oracle": _complex_list(full), "decomposition": _complex_list(parts), "preserved": ok, "tol": cfg.tol}
    if not ok:
        raise _Failed(payload)
    return payload


def cmd_eigvecs(cfg, M, phi):
    dec = _decomp(cfg, M, phi)
    vecs = reconstruct_sequential(dec, normalize=True)
    scale = float(np.linalg.norm(M, 2)) or 1.0
    rows = []
    worst = 0.0
    for lv in vecs:
        res = float(np.linalg.norm(M @ lv.vector - lv.eigenvalue * lv.vector))
        worst = max(worst, res / scale)
        d = lv.to_dict()
        d["residual"] = res
        rows.append(d)
    payload = {"vectors": rows, "max_relative_residual": worst, "tol": cfg.tol}
    if worst > cfg.tol:
        raise _Failed(payload)
    return payload


def cmd_radius(cfg, M, phi):
    _verified(M, phi)
    rho, member = divisor_spectral_radius(M, phi, prime_order=cfg.prime_order)
    full = eigenvalues(M)
    rho_m = float(np.max(np.abs(full))) if len(full) else 0.0
    _, irreducible = is_irreducible_nonnegative(M)
    return {
        "divisor_radius": rho,
        "matrix_radius": rho_m,
        "irreducible": irreducible,
        "radius_is_divisor_eigenvalue": member,
        "difference": abs(rho - rho_m),
    }


def cmd_gershgorin(cfg, M, phi):
    dec = _decomp(cfg, M, phi)
    before = region(M, cfg.mode)
    after = block_region(dec.matrices(), cfg.mode)
    a0, a1 = union_area(before), union_area(after)
    return {
        "mode": cfg.mode,
        "original": before.to_dict(),
        "decomposed": after.to_dict(),
        "contained": region_contained(after, before),
        "area_original": a0,
        "area_decomposed": a1,
        "area_ratio": a1 / a0 if a0 > 0 else None,
    }


def cmd_fold(cfg, M, phi):
    _verified(M, phi)
    info = classify(phi)
    if not info.is_basic:
        raise EqDecompError(f"folding needs a basic automorphism; {phi} is {info.describe()}")
    family = fold_family(M, phi)
    if cfg.format == "dot":
        return "".join(export_dot(F) for F in family)
    return {"family": [F.to_dict() for F in family]}


def cmd_gen(cfg, M, phi):
    rng = np.random.default_rng(cfg.seed)
    cycles = [int(c) for c in cfg.gen_cycles.split(",") if c.strip()]
    if not cycles:
        raise EqDecompError("--cycles needs at least one cycle length")
    if len(set(cycles)) == 1:
        k = cycles[0]
        A, phi = planted_basic(rng, cfg.gen_fixed, len(cycles), k, mode=cfg.gen_mode)
    else:
        A, phi = planted_separable(rng, cfg.gen_fixed, cycles, mode=cfg.gen_mode)
    return {"seed": cfg.seed, "matrix": matrix_to_dict(A), "automorphism": phi.to_dict()}


COMMANDS: dict[str, Callable] = {
    "orbits": cmd_orbits,
    "classify": cmd_classify,
    "verify": cmd_verify,
    "decompose": cmd_decompose,
    "spectrum": cmd_spectrum,
    "eigvecs": cmd_eigvecs,
    "radius": cmd_radius,
    "gershgorin": cmd_gershgorin,
    "fold": cmd_fold,
    "gen": cmd_gen,
}


def _env_tol() -> float:
    raw = os.environ.get("EQDECOMP_TOL")
    if raw is None:
        return DEFAULT_TOL
    try:
        return float(raw)
    except ValueError:
        raise EqDecompError(f"EQDECOMP_TOL must be a number, got {raw!r}") from None


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="eqdecomp", description="Equitable decompositions of graph matrices.")
    p.add_argument("command", choices=sorted(COMMANDS))
    p.add_argument("input", nargs="?", help="graph JSON, matrix JSON, generated instance or edge list")
    p.add_argument("--auto", help='automorphism in cycle notation, e.g. "(2,8,5)(3,9,7)"')
    p.add_argument("--auto-file", help="file with cycle notation or permutation JSON")
    p.add_argument("--kind", default="adjacency", choices=[k.value for k in MatrixKind])
    p.add_argument("--mode", default="rows", choices=["rows", "columns"])
    p.add_argument("--prime-order", default="largest", choices=["largest", "ascending"])
    p.add_argument("--tol", type=float, default=None, help="comparison tolerance (default EQDECOMP_TOL or 1e-8)")
    p.add_argument("--power", action="store_true", help="decompose over the separable power of the automorphism")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", help="write output here instead of stdout")
    p.add_argument("--format", default="json", choices=["json", "dot"])
    g = p.add_argument_group("gen options")
    g.add_argument("--fixed", type=int, default=1, help="number of fixed vertices")
    g.add_argument("--cycles", default="3,3", help="comma-separated cycle lengths")
    g.add_argument("--entries", default="nonnegative", choices=["real", "nonnegative", "integer", "complex"])
    return p


def _emit(payload, cfg: RunConfig, stream) -> None:
    text = payload if isinstance(payload, str) else dumps(payload)
    if cfg.out:
        Path(cfg.out).write_text(text)
    else:
        stream.write(text)


def run(cfg: RunConfig, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    try:
        if not cfg.tol > 0:
            raise EqDecompError(f"tolerance must be positive, got {cfg.tol}")
        if cfg.format == "dot" and cfg.command != "fold":
            raise EqDecompError("--format dot is only available for the fold command")
        if cfg.command == "gen":
            M = phi = None
        else:
            M, doc = _load_input(cfg)
            phi = _load_automorphism(cfg, M.shape[0], doc)
            if phi.n != M.shape[0]:
                raise EqDecompError(f"automorphism acts on {phi.n} points but the matrix has {M.shape[0]} rows")
        payload = COMMANDS[cfg.command](cfg, M, phi)
    except _Failed as f:
        _emit(f.payload, cfg, stdout)
        return EXIT_INVALID
    except InvariantViolation as exc:
        stderr.write(f"internal error: {exc}\n")
        return EXIT_INTERNAL
    except (EqDecompError, OSError) as exc:
        stderr.write(f"error: {exc}\n")
        return EXIT_INVALID
    _emit(payload, cfg, stdout)
    return EXIT_OK


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        tol = args.tol if args.tol is not None else _env_tol()
    except EqDecompError as exc:
        sys.stderr.write(f"error: {exc}\n")
        return EXIT_INVALID
    cfg = RunConfig(
        command=args.command,
        input=args.input,
        auto=args.auto,
        auto_file=args.auto_file,
        kind=args.kind,
        mode=args.mode,
        prime_order=args.prime_order,
        tol=tol,
        power=args.power,
        seed=args.seed,
        out=args.out,
        format=args.format,
        gen_fixed=args.fixed,
        gen_cycles=args.cycles,
        gen_mode=args.entries,
    )
    return run(cfg)


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
