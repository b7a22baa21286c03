"""JSON wire formats.

Matrices: ``{"rows": n, "cols": m, "data": [[re, im], ...]}`` in row-major
order. Maps add ``"kind"``: ``"linear"``, ``"antilinear"`` or
``"conjugation"``. Reports and decomposition bundles are plain JSON objects
built from these.
"""
from __future__ import annotations

import json
import math
from pathlib import Path

import numpy as np

from .antilinear import AntiLinearMap, Conjugation, make_conjugation
from .errors import DomainError
from .numeric import DEFAULT_TOL, Tolerance

__all__ = [
    "matrix_to_json", "matrix_from_json", "map_to_json", "map_from_json",
    "load_json", "dump_json", "battery_to_json", "inequality_to_json", "bundle",
]

KINDS = ("linear", "antilinear", "conjugation")


def matrix_to_json(m) -> dict:
    m = np.asarray(m, dtype=complex)
    rows, cols = m.shape
    return {
        "rows": rows,
        "cols": cols,
        "data": [[float(z.real), float(z.imag)] for z in m.ravel()],
    }


def matrix_from_json(obj) -> np.ndarray:
    if not isinstance(obj, dict):
        raise DomainError("matrix must be a JSON object")
    try:
        rows, cols, data = obj["rows"], obj["cols"], obj["data"]
    except KeyError as exc:
        raise DomainError(f"matrix is missing field {exc}") from None
    if not all(isinstance(v, int) and not isinstance(v, bool) and v > 0 for v in (rows, cols)):
        raise DomainError("rows and cols must be positive integers")
    if not isinstance(data, list) or len(data) != rows * cols:
        raise DomainError(f"expected {rows * cols} entries, got "
                          f"{len(data) if isinstance(data, list) else type(data).__name__}")
    out = np.empty(rows * cols, dtype=complex)
    for i, pair in enumerate(data):
        if (not isinstance(pair, list) or len(pair) != 2
                or not all(isinstance(v, (int, float)) and not isinstance(v, bool) for v in pair)
                or not all(math.isfinite(v) for v in pair)):
            raise DomainError(f"entry {i} is not a finite [re, im] pair")
        out[i] = complex(pair[0], pair[1])
    return out.reshape(rows, cols)


def map_to_json(x) -> dict:
    if isinstance(x, Conjugation):
        kind, m = "conjugation", x.mat
    elif isinstance(x, AntiLinearMap):
        kind, m = "antilinear", x.mat
    else:
        kind, m = "linear", x
    return {"kind": kind, **matrix_to_json(m)}


def map_from_json(obj, tol: Tolerance = DEFAULT_TOL, default_kind: str = "linear"):
    """Decode a map; conjugations are validated, linear maps come back as arrays."""
    m = matrix_from_json(obj)
    kind = obj.get("kind", default_kind)
    if kind not in KINDS:
        raise DomainError(f"unknown kind {kind!r}")
    if kind == "conjugation":
        return make_conjugation(m, tol)
    if kind == "antilinear":
        return AntiLinearMap(m)
    return m


def load_json(path) -> object:
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise DomainError(f"cannot read {path}: {exc.strerror}") from None
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise DomainError(f"{path}: malformed JSON ({exc.msg} at line {exc.lineno})") from None


def dump_json(obj, indent: int | None = 2) -> str:
    return json.dumps(obj, indent=indent, sort_keys=False, allow_nan=False) + "\n"


def battery_to_json(report) -> dict:
    return {
        "conditions": list(report.conditions),
        "residuals": list(report.residuals),
        "verdict": report.verdict,
        "consistent": report.consistent,
    }


def inequality_to_json(report) -> dict:
    return {
        "name": report.name,
        "lhs": report.lhs.tolist(),
        "rhs": report.rhs.tolist(),
        "slack": report.slack.tolist(),
        "passed": report.passed,
    }


def bundle(factors: dict, residuals: dict, passed: bool, **extra) -> dict:
    """``{"factors": [...], "residuals": {...}, "passed": bool}``; factors keep their names."""
    out = {
        "factors": [{"name": name, **map_to_json(f)} for name, f in factors.items()],
        "residuals": {k: float(v) for k, v in residuals.items()},
        "passed": bool(passed),
    }
    out.update(extra)
    return out
