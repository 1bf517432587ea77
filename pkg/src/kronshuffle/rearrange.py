"""Reordering the factors of an iterated Kronecker product.

With factors ``A_0, ..., A_{m-1}`` of shapes ``r_i x c_i`` and ``sigma`` in
Sym(m) acting on 0-based factor positions,

    L @ (A_0 kron ... kron A_{m-1}) @ R == A_{sigma^-1(0)} kron ... kron A_{sigma^-1(m-1)}

where ``L`` is the shuffling matrix over the row dims and ``R`` the
transposed shuffling matrix over the column dims.  Dimensions equal to 1
are allowed.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .config import LIMITS
from .linalg_kron import as_int_matrix, kron_all
from .mixed_radix import LimitExceeded
from .permutation import Permutation
from .shuffling import definition_sum, digit_shuffle_images


@dataclass(frozen=True)
class FactorList:
    matrices: tuple

    def __init__(self, matrices):
        mats = tuple(as_int_matrix(a) for a in matrices)
        if len(mats) < 2:
            raise ValueError("need at least two factors")
        object.__setattr__(self, "matrices", mats)

    @property
    def m(self) -> int:
        return len(self.matrices)

    @property
    def row_dims(self) -> tuple[int, ...]:
        return tuple(a.shape[0] for a in self.matrices)

    @property
    def col_dims(self) -> tuple[int, ...]:
        return tuple(a.shape[1] for a in self.matrices)


def _sigma(sigma, m) -> Permutation:
    sigma = sigma if isinstance(sigma, Permutation) else Permutation(sigma)
    if sigma.degree != m:
        raise ValueError(f"sigma has degree {sigma.degree}, expected {m}")
    return sigma


def left_matrix(row_dims, sigma) -> np.ndarray:
    return definition_sum(tuple(row_dims), _sigma(sigma, len(row_dims)))


def right_matrix(col_dims, sigma) -> np.ndarray:
    return definition_sum(tuple(col_dims), _sigma(sigma, len(col_dims)), transpose=True)


def reordered_kron(factors: FactorList, sigma) -> np.ndarray:
    """Direct product of the factors taken in the order ``sigma^-1(0), ...``."""
    inv = _sigma(sigma, factors.m).inverse().images
    return kron_all([factors.matrices[inv[j]] for j in range(factors.m)])


def _check_size(factors: FactorList):
    size = math.prod(factors.row_dims) * math.prod(factors.col_dims)
    if size > LIMITS.max_matrix_entries:
        raise LimitExceeded(f"product has {size} entries, limit {LIMITS.max_matrix_entries}")


def rearrange_kron(factors, sigma, method: str = "index") -> np.ndarray:
    """``L @ kron(factors) @ R``.

    ``method="index"`` relabels rows and columns directly;
    ``method="matrix"`` multiplies by the explicit ``L`` and ``R``.
    """
    if not isinstance(factors, FactorList):
        factors = FactorList(factors)
    sigma = _sigma(sigma, factors.m)
    _check_size(factors)
    product = kron_all(factors.matrices)
    if method == "matrix":
        return left_matrix(factors.row_dims, sigma) @ product @ right_matrix(factors.col_dims, sigma)
    if method != "index":
        raise ValueError(f"unknown method {method!r}")
    rows = np.argsort(digit_shuffle_images(factors.row_dims, sigma))
    cols = np.argsort(digit_shuffle_images(factors.col_dims, sigma))
    return product[np.ix_(rows, cols)]


def conjugate_kron(square_factors, sigma, method: str = "index") -> np.ndarray:
    """``L @ kron(factors) @ L^-1`` for square factors, using ``L^-1 = L^T``."""
    factors = square_factors if isinstance(square_factors, FactorList) else FactorList(square_factors)
    if factors.row_dims != factors.col_dims:
        raise ValueError(f"non-square factor among shapes {list(zip(factors.row_dims, factors.col_dims))}")
    sigma = _sigma(sigma, factors.m)
    if method == "matrix":
        _check_size(factors)
        L = left_matrix(factors.row_dims, sigma)
        return L @ kron_all(factors.matrices) @ L.T
    return rearrange_kron(factors, sigma, method=method)
