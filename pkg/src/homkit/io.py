"""JSON files for structures, tensors, YD modules and run reports (``homkit-schema v1``).

Scalars are strings (``"3/4"`` over Q, canonical residues over GF(p)); output is
canonical JSON with sorted keys so identical inputs give identical bytes.
"""

from __future__ import annotations

import hashlib
import json
from pathlib import Path
from typing import Any

import numpy as np

from .exactlin import Field
from .homcore import HomAlgebra, HomBialgebra, HomCoalgebra, HomHopfAlgebra, Report
from .ydmod import YDModule

SCHEMA = "homkit-schema v1"
TOOL = "homkit 0.1.0"

STRUCTURE_FIELDS = {
    "algebra": ("mul", "unit", "alpha"),
    "coalgebra": ("comul", "counit", "alpha"),
    "bialgebra": ("mul", "unit", "comul", "counit", "alpha"),
    "hopf": ("mul", "unit", "comul", "counit", "alpha", "antipode"),
}
_CLASSES = {"algebra": HomAlgebra, "coalgebra": HomCoalgebra, "bialgebra": HomBialgebra, "hopf": HomHopfAlgebra}


class SchemaError(ValueError):
    """Malformed or inconsistent input file."""


def encode(arr: np.ndarray, F: Field):
    return np.vectorize(F.format, otypes=[object])(arr).tolist() if np.asarray(arr).size else np.asarray(arr).tolist()


def decode(data, F: Field, shape: tuple[int, ...] | None = None) -> np.ndarray:
    try:
        arr = F.array(data)
    except (ValueError, TypeError, ZeroDivisionError) as exc:
        raise SchemaError(f"bad scalar data: {exc}") from exc
    if shape is not None and arr.shape != tuple(shape):
        raise SchemaError(f"expected shape {tuple(shape)}, got {arr.shape}")
    return arr


def dumps(doc: dict) -> str:
    return json.dumps(doc, sort_keys=True, separators=(",", ":"), ensure_ascii=True) + "\n"


def write(doc: dict, path: str | Path | None) -> str:
    text = dumps(doc)
    if path is not None:
        Path(path).write_text(text)
    return text


def digest(path: str | Path) -> str:
    return hashlib.sha256(Path(path).read_bytes()).hexdigest()


# ---------------------------------------------------------------- structures


def structure_kind(X) -> str:
    if isinstance(X, HomHopfAlgebra):
        return "hopf"
    if isinstance(X, HomBialgebra):
        return "bialgebra"
    if isinstance(X, HomCoalgebra):
        return "coalgebra"
    if isinstance(X, HomAlgebra):
        return "algebra"
    raise TypeError(f"not a structure: {type(X).__name__}")


def structure_to_doc(X) -> dict:
    kind = structure_kind(X)
    doc = {"schema": SCHEMA, "kind": kind, "field": str(X.field), "dim": X.dim, "labels": list(X.labels)}
    for name in STRUCTURE_FIELDS[kind]:
        doc[name] = encode(getattr(X, name), X.field)
    return doc


def _shapes(n: int) -> dict:
    return {
        "mul": (n, n, n), "comul": (n, n, n), "unit": (n,), "counit": (n,),
        "alpha": (n, n), "antipode": (n, n),
    }


def _check_header(doc: dict) -> Field:
    if not isinstance(doc, dict):
        raise SchemaError("top level must be an object")
    if doc.get("schema") != SCHEMA:
        raise SchemaError(f"schema must be {SCHEMA!r}")
    try:
        return Field.parse(str(doc["field"]))
    except (KeyError, ValueError) as exc:
        raise SchemaError(f"bad field: {exc}") from exc


def structure_from_doc(doc: dict, field: Field | None = None):
    F = _check_header(doc)
    kind = doc.get("kind")
    if kind not in STRUCTURE_FIELDS:
        raise SchemaError(f"not a structure kind: {kind!r}")
    n = doc.get("dim")
    if not isinstance(n, int) or n < 1:
        raise SchemaError("dim must be a positive integer")
    target = field or F
    shapes = _shapes(n)
    parts = {}
    for name in STRUCTURE_FIELDS[kind]:
        if name not in doc:
            raise SchemaError(f"missing {name!r}")
        parts[name] = decode(decode(doc[name], F, shapes[name]), target) if target != F else decode(doc[name], F, shapes[name])
    labels = doc.get("labels") or [f"e{i}" for i in range(n)]
    if len(labels) != n:
        raise SchemaError("labels do not match dim")
    try:
        return _CLASSES[kind](field=target, labels=list(labels), **parts)
    except (ValueError, ArithmeticError) as exc:
        raise SchemaError(str(exc)) from exc


# ---------------------------------------------------------------- tensors


def tensor_to_doc(arr: np.ndarray, F: Field, role: str, meta: dict | None = None) -> dict:
    doc = {"schema": SCHEMA, "kind": "tensor", "role": role, "field": str(F), "shape": list(arr.shape), "data": encode(arr, F)}
    if meta:
        doc["meta"] = meta
    return doc


def tensor_from_doc(doc: dict, role: str | None = None, field: Field | None = None) -> np.ndarray:
    F = _check_header(doc)
    if doc.get("kind") != "tensor":
        raise SchemaError("not a tensor file")
    if role is not None and doc.get("role") != role:
        raise SchemaError(f"expected role {role!r}, got {doc.get('role')!r}")
    arr = decode(doc["data"], F, tuple(doc.get("shape", ())))
    return decode(arr, field) if field is not None and field != F else arr


def yd_to_doc(M: YDModule, F: Field) -> dict:
    return {
        "schema": SCHEMA, "kind": "yd_module", "field": str(F), "dim": M.dim,
        "mu": encode(M.mu, F), "action": encode(M.action, F), "coaction": encode(M.coaction, F),
    }


def yd_from_doc(doc: dict) -> YDModule:
    F = _check_header(doc)
    if doc.get("kind") != "yd_module":
        raise SchemaError("not a yd_module file")
    n = doc["dim"]
    mu = decode(doc["mu"], F, (n, n))
    act = decode(doc["action"], F)
    co = decode(doc["coaction"], F)
    if act.ndim != 3 or act.shape[1:] != (n, n) or co.ndim != 3 or co.shape[:2] != (n, n):
        raise SchemaError("action/coaction shapes do not match dim")
    return YDModule(mu, act, co)


def load(path: str | Path) -> dict:
    try:
        return json.loads(Path(path).read_text())
    except OSError as exc:
        raise SchemaError(f"cannot read {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise SchemaError(f"{path}: invalid JSON ({exc})") from exc


def field_of_doc(doc: dict) -> Field:
    return _check_header(doc)


# ---------------------------------------------------------------- reports


def run_report(verb: str, inputs: list[str], reports: list[Report], F: Field | None, extra: dict[str, Any] | None = None) -> dict:
    fmt = F.format if F is not None else str
    doc = {
        "schema": SCHEMA,
        "kind": "run_report",
        "tool": TOOL,
        "verb": verb,
        "inputs": {str(p): digest(p) for p in inputs},
        "pass": all(r.ok for r in reports),
        "reports": [r.to_dict(fmt) for r in reports],
        "notes": [n for r in reports for n in r.notes],
    }
    if extra:
        doc.update(extra)
    return doc


__all__ = [
    "SCHEMA",
    "SchemaError",
    "TOOL",
    "decode",
    "digest",
    "dumps",
    "encode",
    "field_of_doc",
    "load",
    "run_report",
    "structure_from_doc",
    "structure_to_doc",
    "tensor_from_doc",
    "tensor_to_doc",
    "write",
    "yd_from_doc",
    "yd_to_doc",
]
