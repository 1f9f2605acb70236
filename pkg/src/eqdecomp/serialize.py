"""JSON and edge-list I/O for graphs, matrices, permutations, regions and decompositions.

Floats are written with Python's shortest round-trip ``repr`` so that saving
and re-loading reproduces every value bit for bit.
"""

from __future__ import annotations

import json
from pathlib import Path
from typing import Any

import numpy as np

from .errors import EqDecompError
from .graphs import WeightedGraph
from .perms import Permutation

__all__ = [
    "matrix_to_dict",
    "matrix_from_dict",
    "dumps",
    "load_json",
    "parse_edge_list",
    "load_graph",
    "load_matrix",
    "save_artifact",
]


def _num(x: float) -> float | int:
    x = float(x)
    return x


def matrix_to_dict(M) -> dict:
    """``{"rows", "cols", "entries": [[re, im], ...]}`` in row-major order."""
    A = np.asarray(M)
    if A.ndim != 2:
        raise EqDecompError(f"expected a 2-D matrix, got shape {A.shape}")
    flat = A.astype(complex).ravel()
    return {
        "rows": int(A.shape[0]),
        "cols": int(A.shape[1]),
        "entries": [[_num(z.real), _num(z.imag)] for z in flat],
    }


def matrix_from_dict(data: dict, *, real_if_possible: bool = True) -> np.ndarray:
    try:
        rows, cols, entries = int(data["rows"]), int(data["cols"]), data["entries"]
    except KeyError as exc:
        raise EqDecompError(f"matrix JSON is missing field {exc}") from None
    if len(entries) != rows * cols:
        raise EqDecompError(f"matrix JSON has {len(entries)} entries, expected {rows}*{cols}")
    vals = np.empty(rows * cols, dtype=complex)
    for idx, e in enumerate(entries):
        if isinstance(e, (int, float)):
            vals[idx] = e
        elif isinstance(e, (list, tuple)) and len(e) == 2:
            vals[idx] = complex(e[0], e[1])
        else:
            raise EqDecompError(f"entries[{idx}] must be [re, im], got {e!r}")
    A = vals.reshape(rows, cols)
    if not np.all(np.isfinite(A)):
        raise EqDecompError("matrix JSON contains non-finite values")
    if real_if_possible and np.all(A.imag == 0):
        return A.real.copy()
    return A


def _default(obj: Any):
    if isinstance(obj, np.ndarray):
        return matrix_to_dict(obj) if obj.ndim == 2 else [_default(v) for v in obj]
    if isinstance(obj, (np.integer,)):
        return int(obj)
    if isinstance(obj, (np.floating,)):
        return float(obj)
    if isinstance(obj, (complex, np.complexfloating)):
        return [float(obj.real), float(obj.imag)]
    if isinstance(obj, Permutation):
        return obj.to_dict()
    if hasattr(obj, "to_dict"):
        return obj.to_dict()
    raise TypeError(f"cannot serialize {type(obj).__name__}")


def dumps(value: Any) -> str:
    """Deterministic JSON text for any package value."""
    if hasattr(value, "to_dict"):
        value = value.to_dict()
    return json.dumps(value, default=_default, indent=2, allow_nan=False) + "\n"


def load_json(path: str | Path) -> Any:
    text = Path(path).read_text()
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise EqDecompError(f"{path}: invalid JSON at line {exc.lineno}, column {exc.colno}: {exc.msg}") from None


def _parse_weight(tok: str) -> complex:
    try:
        return complex(float(tok))
    except ValueError:
        return complex(tok.replace("i", "j"))


def parse_edge_list(text: str, n: int | None = None, directed: bool = False) -> WeightedGraph:
    """Parse ``i j [w]`` lines. ``#`` starts a comment.

    The vertex count is ``n`` if given, else a ``# n = <int>`` comment, else
    the largest index seen.
    """
    edges = []
    header_n = None
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line, _, comment = raw.partition("#")
        c = comment.replace(":", "=").replace(" ", "")
        if c.startswith("n="):
            try:
                header_n = int(c[2:])
            except ValueError:
                raise EqDecompError(f"line {lineno}: bad vertex-count comment {raw.strip()!r}") from None
        toks = line.split()
        if not toks:
            continue
        if len(toks) not in (2, 3):
            raise EqDecompError(f"line {lineno}: expected 'i j [w]', got {line.strip()!r}")
        try:
            i, j = int(toks[0]), int(toks[1])
            w = _parse_weight(toks[2]) if len(toks) == 3 else 1.0
        except ValueError:
            raise EqDecompError(f"line {lineno}: cannot parse {line.strip()!r}") from None
        edges.append((i, j, w))
    if n is None:
        n = header_n if header_n is not None else max((max(i, j) for i, j, _ in edges), default=0)
    try:
        return WeightedGraph(n, tuple(edges), directed)
    except EqDecompError as exc:
        raise EqDecompError(f"edge list: {exc}") from None


def load_graph(path: str | Path, n: int | None = None, directed: bool = False) -> WeightedGraph:
    """Read a graph from JSON (``{"n", "directed", "edges"}``) or a plain edge list."""
    path = Path(path)
    text = path.read_text()
    if text.lstrip().startswith("{"):
        data = load_json(path)
        if "edges" not in data:
            raise EqDecompError(f"{path}: not a graph JSON document (no 'edges' field)")
        return WeightedGraph.from_dict(data)
    return parse_edge_list(text, n=n, directed=directed)


def load_matrix(path: str | Path) -> np.ndarray:
    data = load_json(path)
    if "matrix" in data and isinstance(data["matrix"], dict):
        data = data["matrix"]
    return matrix_from_dict(data)


def save_artifact(value: Any, path: str | Path | None = None, fmt: str = "json") -> str:
    """Serialize ``value`` as JSON (or DOT for folded graphs); write to ``path`` if given."""
    if fmt == "json":
        text = dumps(value)
    elif fmt == "dot":
        from .fold import export_dot

        text = export_dot(value)
    else:
        raise EqDecompError(f"unknown output format {fmt!r}")
    if path is not None:
        Path(path).write_text(text)
    return text
