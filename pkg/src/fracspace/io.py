"""File formats: space documents, field functions, kernel triplet export."""
from __future__ import annotations

import json
from pathlib import Path

import numpy as np

from .errors import InputFormatError
from .space import PowerLaw, Space, TableLaw, build_space

_SPACE_FIELDS = {"points", "weights", "lambda", "dim_n"}
_POINT_FIELDS = {"coords", "distance_matrix"}


def _reject_unknown(doc: dict, allowed: set, where: str) -> None:
    unknown = set(doc) - allowed
    if unknown:
        raise InputFormatError(f"unknown field(s) in {where}: {sorted(unknown)}")


def _parse_lambda(doc):
    if not isinstance(doc, dict) or "type" not in doc:
        raise InputFormatError("lambda must be an object with a 'type' field")
    kind = doc["type"]
    if kind == "power":
        _reject_unknown(doc, {"type", "c", "k"}, "lambda")
        try:
            return PowerLaw(c=float(doc["c"]), k=float(doc["k"]))
        except KeyError as exc:
            raise InputFormatError(f"lambda missing field {exc}") from exc
    if kind == "table":
        _reject_unknown(doc, {"type", "radii", "values"}, "lambda")
        try:
            return TableLaw(radii=tuple(map(float, doc["radii"])),
                            values=tuple(map(float, doc["values"])))
        except KeyError as exc:
            raise InputFormatError(f"lambda missing field {exc}") from exc
    raise InputFormatError(f"lambda type must be 'power' or 'table', got {kind!r}")


def load_space(path) -> Space:
    """Read a space document: points, weights, dominating function, dimension."""
    try:
        doc = json.loads(Path(path).read_text())
    except (OSError, json.JSONDecodeError) as exc:
        raise InputFormatError(f"cannot read space file {path}: {exc}") from exc
    if not isinstance(doc, dict):
        raise InputFormatError("space file must contain a single object")
    _reject_unknown(doc, _SPACE_FIELDS, "space file")
    for field in ("points", "weights", "lambda"):
        if field not in doc:
            raise InputFormatError(f"space file missing field '{field}'")
    points = doc["points"]
    if not isinstance(points, dict):
        raise InputFormatError("points must be an object")
    _reject_unknown(points, _POINT_FIELDS, "points")
    if "coords" in points and "distance_matrix" in points:
        raise InputFormatError("points must give coords or distance_matrix, not both")
    if "coords" in points:
        coords = np.asarray(points["coords"], dtype=float)
        if coords.ndim != 2:
            raise InputFormatError("coords must be a list of equal-length vectors")
        diff = coords[:, None, :] - coords[None, :, :]
        distances = np.sqrt((diff**2).sum(axis=2))
    elif "distance_matrix" in points:
        distances = np.asarray(points["distance_matrix"], dtype=float)
    else:
        raise InputFormatError("points must give coords or distance_matrix")
    weights = np.asarray(doc["weights"], dtype=float)
    lam = _parse_lambda(doc["lambda"])
    dim_n = float(doc["dim_n"]) if "dim_n" in doc else None
    return build_space(distances, weights, lam, dim_n=dim_n)


def save_space(space: Space, path) -> None:
    """Write a space document that round-trips through load_space."""
    if isinstance(space.lam, PowerLaw):
        lam = {"type": "power", "c": space.lam.c, "k": space.lam.k}
    else:
        lam = {"type": "table", "radii": list(space.lam.radii),
               "values": list(space.lam.values)}
    doc = {
        "points": {"distance_matrix": space.distances.tolist()},
        "weights": space.weights.tolist(),
        "lambda": lam,
        "dim_n": space.dim_n,
    }
    Path(path).write_text(json.dumps(doc, sort_keys=True, indent=2) + "\n")


def load_function(path, expected_length: int | None = None) -> np.ndarray:
    """Read a field function: a flat list of reals."""
    try:
        doc = json.loads(Path(path).read_text())
    except (OSError, json.JSONDecodeError) as exc:
        raise InputFormatError(f"cannot read function file {path}: {exc}") from exc
    if not isinstance(doc, list) or not all(
        isinstance(v, (int, float)) and not isinstance(v, bool) for v in doc
    ):
        raise InputFormatError("function file must be a flat list of reals")
    values = np.asarray(doc, dtype=float)
    if expected_length is not None and len(values) != expected_length:
        raise InputFormatError(
            f"function length {len(values)} does not match point count {expected_length}"
        )
    if not np.all(np.isfinite(values)):
        raise InputFormatError("function file contains non-finite values")
    return values


def save_function(values, path) -> None:
    Path(path).write_text(json.dumps([float(v) for v in values]) + "\n")


def export_kernel(values: np.ndarray, path) -> None:
    """Write the off-diagonal kernel as sorted (i, j, value) triplets."""
    n = values.shape[0]
    rows = [
        [int(i), int(j), float(values[i, j])]
        for i in range(n)
        for j in range(n)
        if i != j
    ]
    Path(path).write_text(json.dumps(rows) + "\n")


def import_kernel(path, n: int) -> np.ndarray:
    """Read (i, j, value) triplets back into a dense off-diagonal table."""
    try:
        rows = json.loads(Path(path).read_text())
    except (OSError, json.JSONDecodeError) as exc:
        raise InputFormatError(f"cannot read kernel file {path}: {exc}") from exc
    out = np.zeros((n, n))
    if not isinstance(rows, list):
        raise InputFormatError("kernel file must be a list of (i, j, value) triplets")
    for row in rows:
        if not (isinstance(row, list) and len(row) == 3):
            raise InputFormatError("kernel entries must be (i, j, value) triplets")
        i, j, v = int(row[0]), int(row[1]), float(row[2])
        if not (0 <= i < n and 0 <= j < n) or i == j:
            raise InputFormatError(f"kernel entry ({i}, {j}) out of range or diagonal")
        out[i, j] = v
    return out
