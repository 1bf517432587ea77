"""Exact integer matrix algebra used as the oracle layer.

Matrices are plain ``numpy`` arrays of dtype ``int64``.  Only
:func:`elementary` takes 1-based indices, everything else is 0-based.
"""
from __future__ import annotations

import json
from functools import reduce
from pathlib import Path

import numpy as np

from .permutation import Permutation

INT = np.int64


def as_int_matrix(a) -> np.ndarray:
    arr = np.asarray(a)
    if arr.ndim != 2:
        raise ValueError(f"expected a 2-D matrix, got shape {arr.shape}")
    if arr.dtype.kind not in "iub":
        if not np.all(np.equal(np.mod(arr, 1), 0)):
            raise ValueError("matrix has non-integer entries")
    return arr.astype(INT)


def zeros(rows: int, cols: int) -> np.ndarray:
    return np.zeros((rows, cols), dtype=INT)


def identity(n: int) -> np.ndarray:
    return np.eye(n, dtype=INT)


def elementary(i: int, j: int, rows: int, cols: int) -> np.ndarray:
    """``E^{i,j}`` of shape rows x cols, with 1-based ``(i, j)``."""
    if not (1 <= i <= rows and 1 <= j <= cols):
        raise IndexError(f"entry ({i},{j}) outside a {rows}x{cols} matrix")
    e = zeros(rows, cols)
    e[i - 1, j - 1] = 1
    return e


def basis_vector(j: int, n: int) -> np.ndarray:
    """Column vector ``e_j^n`` (1-based ``j``) as an n x 1 matrix."""
    return elementary(j, 1, n, 1)


def matmul(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    if a.shape[1] != b.shape[0]:
        raise ValueError(f"shape mismatch {a.shape} @ {b.shape}")
    return a @ b


def kron(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Block matrix ``(a_ij * b)``."""
    m, n = a.shape
    p, q = b.shape
    out = np.zeros((m * p, n * q), dtype=np.result_type(a, b))
    for i in range(m):
        for j in range(n):
            if a[i, j]:
                out[i * p:(i + 1) * p, j * q:(j + 1) * q] = a[i, j] * b
    return out


def kron_all(factors) -> np.ndarray:
    return reduce(kron, factors)


def perm_to_matrix(perm: Permutation) -> np.ndarray:
    """``P`` with ``P e_x = e_{perm(x)}``, i.e. ``P[perm(x), x] = 1``."""
    d = perm.degree
    p = zeros(d, d)
    p[list(perm.images), np.arange(d)] = 1
    return p


def matrix_to_perm(p: np.ndarray) -> Permutation:
    """Inverse of :func:`perm_to_matrix`; rejects non-permutation matrices."""
    p = np.asarray(p)
    n = p.shape[0]
    if p.shape != (n, n) or not np.isin(p, (0, 1)).all():
        raise ValueError("not a 0/1 square matrix")
    if not (p.sum(axis=0) == 1).all() or not (p.sum(axis=1) == 1).all():
        raise ValueError("not a permutation matrix")
    return Permutation(np.argmax(p, axis=0).tolist())


def is_permutation_matrix(p: np.ndarray) -> bool:
    try:
        matrix_to_perm(p)
    except ValueError:
        return False
    return True


# Matrix file format: {"rows": R, "cols": C, "entries": [[re, im], ...]} row-major.

def matrix_to_json(a: np.ndarray) -> dict:
    a = np.asarray(a)
    flat = a.reshape(-1)
    if np.iscomplexobj(flat):
        entries = [[float(z.real), float(z.imag)] for z in flat]
    else:
        entries = [[int(v), 0] for v in flat]
    return {"rows": int(a.shape[0]), "cols": int(a.shape[1]), "entries": entries}


def matrix_from_json(obj: dict, integer: bool = False) -> np.ndarray:
    try:
        rows, cols, entries = int(obj["rows"]), int(obj["cols"]), obj["entries"]
    except (KeyError, TypeError) as exc:
        raise ValueError(f"malformed matrix object: {exc}") from None
    if len(entries) != rows * cols:
        raise ValueError(f"expected {rows * cols} entries, got {len(entries)}")
    values = np.array([complex(re, im) for re, im in entries], dtype=complex).reshape(rows, cols)
    if integer:
        if np.any(values.imag != 0):
            raise ValueError("integer matrix has nonzero imaginary parts")
        return as_int_matrix(values.real)
    return values


def save_matrix(path, a: np.ndarray) -> None:
    Path(path).write_text(json.dumps(matrix_to_json(a)) + "\n")


def load_matrix(path, integer: bool = False) -> np.ndarray:
    with open(path) as fh:
        return matrix_from_json(json.load(fh), integer=integer)
