"""Readers and writers for the on-disk formats.

* algebra JSON  ``{"name", "dim", "table"}`` with ``table[i][j][k]`` the
  coefficient of ``e_k`` in ``e_i e_j``
* units JSON    list of coefficient vectors
* path CSV      header ``t,x1..xd,y1..yd``
* domain JSON   ``{"variant", "boxes": [{"x_lo", "x_hi", "y_lo", "y_hi"}]}``
* polynomial JSON ``{"d", "algebra", "terms": [{"alpha", "coeff"}]}``
"""
from __future__ import annotations

import csv
import json
from importlib import resources
from pathlib import Path
from typing import Union

import numpy as np

from .algebra import AlgebraSpec, Element, builtin_algebra
from .slicecone import Box, DomainSpec, DomainVariant, SlicePath
from .sliceregular import SlicePolynomial

PathLike = Union[str, Path]


def fixture_path(name: str) -> Path:
    """Location of a shipped fixture file."""
    return Path(str(resources.files("weakslice") / "data" / name))


def algebra_to_json(A: AlgebraSpec) -> dict:
    return {"name": A.name, "dim": A.dim, "table": A.table.tolist()}


def algebra_from_json(obj: dict) -> AlgebraSpec:
    table = np.asarray(obj["table"], dtype=float)
    if "dim" in obj and table.shape[0] != int(obj["dim"]):
        raise ValueError(f"dim {obj['dim']} does not match table size {table.shape[0]}")
    return AlgebraSpec(obj.get("name", "custom"), table)


def load_algebra(selector: str) -> AlgebraSpec:
    """A builtin identifier or a path to an algebra JSON file."""
    p = Path(selector)
    if p.suffix == ".json" or p.exists():
        with open(p) as fh:
            return algebra_from_json(json.load(fh))
    return builtin_algebra(selector)


def save_algebra(A: AlgebraSpec, path: PathLike):
    dump_json(algebra_to_json(A), path)


def load_units(path: PathLike, A: AlgebraSpec) -> list[Element]:
    with open(path) as fh:
        data = json.load(fh)
    return parse_units(data, A)


def parse_units(data, A: AlgebraSpec) -> list[Element]:
    if data and not isinstance(data[0], list):
        data = [data]
    return [Element(A, v) for v in data]


def load_path(path: PathLike) -> SlicePath:
    with open(path, newline="") as fh:
        reader = csv.reader(fh)
        header = [h.strip() for h in next(reader)]
        rows = [[float(v) for v in row] for row in reader if row]
    if not header or header[0] != "t" or (len(header) - 1) % 2:
        raise ValueError("path CSV header must be t,x1..xd,y1..yd")
    d = (len(header) - 1) // 2
    expected = ["t"] + [f"x{l}" for l in range(1, d + 1)] + [f"y{l}" for l in range(1, d + 1)]
    if header != expected:
        raise ValueError(f"path CSV header must be {','.join(expected)}")
    arr = np.asarray(rows, dtype=float)
    return SlicePath(arr[:, 0], arr[:, 1:1 + d], arr[:, 1 + d:])


def save_path(path: SlicePath, dest: PathLike):
    d = path.d
    with open(dest, "w", newline="") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(["t"] + [f"x{l}" for l in range(1, d + 1)] + [f"y{l}" for l in range(1, d + 1)])
        for t, x, y in zip(path.t, path.x, path.y):
            w.writerow([repr(float(t))] + [repr(float(v)) for v in x] + [repr(float(v)) for v in y])


def _box(b: dict) -> Box:
    return Box(b["x_lo"], b["x_hi"], b["y_lo"], b["y_hi"])


def domain_from_json(obj: dict, A: AlgebraSpec = None) -> DomainSpec:
    variant = DomainVariant(obj["variant"].upper())
    if variant is DomainVariant.SLICEWISE:
        if A is None:
            raise ValueError("SLICEWISE domains need an algebra to read their units")
        entries = tuple(
            (Element(A, s["unit"]), tuple(_box(b) for b in s["boxes"])) for s in obj["slices"]
        )
        return DomainSpec(variant, slicewise=entries)
    return DomainSpec(variant, boxes=tuple(_box(b) for b in obj.get("boxes", [])))


def polynomial_from_json(obj: dict, A: AlgebraSpec = None) -> SlicePolynomial:
    if A is None:
        A = load_algebra(obj["algebra"])
    terms: dict = {}
    for term in obj["terms"]:
        alpha = tuple(int(a) for a in term["alpha"])
        c = Element(A, term["coeff"])
        terms[alpha] = terms[alpha] + c if alpha in terms else c
    return SlicePolynomial(int(obj["d"]), A, terms, bool(obj.get("conjugate", False)))


def polynomial_to_json(P: SlicePolynomial) -> dict:
    out = {
        "d": P.d,
        "algebra": P.algebra.name,
        "terms": [{"alpha": list(a), "coeff": c.coeffs.tolist()} for a, c in sorted(P.terms.items())],
    }
    if P.conjugate:
        out["conjugate"] = True
    return out


def load_polynomial(path: PathLike, A: AlgebraSpec = None) -> SlicePolynomial:
    with open(path) as fh:
        return polynomial_from_json(json.load(fh), A)


def _jsonable(obj):
    if isinstance(obj, dict):
        return {str(k): _jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_jsonable(v) for v in obj]
    if isinstance(obj, np.ndarray):
        return _jsonable(obj.tolist())
    if isinstance(obj, (np.floating,)):
        return float(obj)
    if isinstance(obj, (np.integer,)):
        return int(obj)
    if isinstance(obj, np.bool_):
        return bool(obj)
    return obj


def dumps(obj) -> str:
    """Deterministic JSON text (sorted keys, shortest round-trip floats)."""
    return json.dumps(_jsonable(obj), sort_keys=True, indent=1) + "\n"


def dump_json(obj, path: PathLike):
    with open(path, "w") as fh:
        fh.write(dumps(obj))
