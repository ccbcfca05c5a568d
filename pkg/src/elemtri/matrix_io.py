"""Matrix files: CSV (real only) and JSON (real or complex).

JSON layout is ``{"rows": n, "cols": m, "data": [[...], ...]}`` where a
complex entry is written as ``[re, im]``. Floats are written with Python's
shortest round-trip repr, so write/read is lossless and byte-stable.
"""

import csv
import json
from pathlib import Path

import numpy as np

from .core import as_matrix
from .errors import ShapeError


class MatrixFormatError(ValueError):
    pass


def _fmt(x):
    return repr(float(x))


def matrix_to_json(M):
    M = np.asarray(M)
    if np.iscomplexobj(M):
        data = [[[float(z.real), float(z.imag)] for z in row] for row in M]
    else:
        data = [[float(x) for x in row] for row in M]
    return {"rows": int(M.shape[0]), "cols": int(M.shape[1]), "data": data}


def matrix_from_json(obj):
    try:
        rows, cols, data = int(obj["rows"]), int(obj["cols"]), obj["data"]
    except (KeyError, TypeError, ValueError) as exc:
        raise MatrixFormatError(f"missing or invalid matrix fields: {exc}") from exc
    if len(data) != rows or any(len(r) != cols for r in data):
        raise MatrixFormatError(f"data is not a {rows}x{cols} grid")
    entries = [e for r in data for e in r]
    is_complex = any(isinstance(e, list) for e in entries)
    out = np.empty((rows, cols), dtype=np.complex128 if is_complex else np.float64)
    for i, r in enumerate(data):
        for j, e in enumerate(r):
            if isinstance(e, list):
                if len(e) != 2:
                    raise MatrixFormatError(f"complex entry ({i}, {j}) must be [re, im]")
                out[i, j] = complex(float(e[0]), float(e[1]))
            elif isinstance(e, (int, float)) and not isinstance(e, bool):
                out[i, j] = e
            else:
                raise MatrixFormatError(f"entry ({i}, {j}) is not a number")
    return out


def format_csv(M):
    M = np.asarray(M)
    if np.iscomplexobj(M):
        raise MatrixFormatError("CSV holds real matrices only; use JSON for complex data")
    return "".join(",".join(_fmt(x) for x in row) + "\n" for row in M)


def parse_csv(text):
    rows = [r for r in csv.reader(text.splitlines()) if r]
    if not rows:
        raise MatrixFormatError("empty CSV")
    if len({len(r) for r in rows}) != 1:
        raise MatrixFormatError("ragged CSV rows")
    try:
        return as_matrix([[float(x) for x in r] for r in rows])
    except (ValueError, ShapeError) as exc:
        raise MatrixFormatError(str(exc)) from exc


def read_matrix(path):
    path = Path(path)
    text = path.read_text()
    if path.suffix.lower() == ".json":
        try:
            obj = json.loads(text)
        except json.JSONDecodeError as exc:
            raise MatrixFormatError(f"invalid JSON: {exc}") from exc
        return matrix_from_json(obj)
    return parse_csv(text)


def write_matrix(path, M):
    path = Path(path)
    if path.suffix.lower() == ".json":
        path.write_text(json.dumps(matrix_to_json(M)) + "\n")
    else:
        path.write_text(format_csv(M))
