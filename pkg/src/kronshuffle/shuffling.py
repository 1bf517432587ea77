"""Shuffling permutations of the leaves of a rooted tree.

For branch indices ``(n_1, ..., n_m)`` and ``sigma`` in Sym(m), the shuffle
``sigma~`` sends the leaf with word ``x_1 ... x_m`` to the integer whose word
is ``x_{sigma^-1(1)} ... x_{sigma^-1(m)}`` read in the reordered basis
``(n_{sigma^-1(1)}, ..., n_{sigma^-1(m)})``.

``sigma`` is a :class:`Permutation` of degree m on 0-based word positions,
or a 1-based cycle string such as ``"(1 3)"``.
"""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .config import LIMITS
from .linalg_kron import INT, elementary, kron_all, perm_to_matrix
from .mixed_radix import BranchIndices, LimitExceeded, place_values
from .permutation import Permutation, parse_cycles


def as_sigma(sigma, m: int) -> Permutation:
    if isinstance(sigma, Permutation):
        if sigma.degree != m:
            raise ValueError(f"sigma has degree {sigma.degree}, expected {m}")
        return sigma
    if isinstance(sigma, str):
        return parse_cycles(sigma, m, one_based=True)
    return Permutation(sigma)


def as_basis(basis) -> BranchIndices:
    return basis if isinstance(basis, BranchIndices) else BranchIndices(basis)


@dataclass(frozen=True)
class ShuffleSpec:
    basis: BranchIndices
    sigma: Permutation

    def __init__(self, basis, sigma):
        basis = as_basis(basis)
        object.__setattr__(self, "basis", basis)
        object.__setattr__(self, "sigma", as_sigma(sigma, basis.m))

    def perm(self) -> Permutation:
        return shuffle_perm(self.basis, self.sigma)


def reorder(dims: Sequence[int], sigma: Permutation) -> tuple[int, ...]:
    """``(d_{sigma^-1(0)}, ..., d_{sigma^-1(m-1)})``."""
    inv = sigma.inverse().images
    return tuple(dims[inv[j]] for j in range(len(dims)))


def reordered_basis(basis, sigma) -> BranchIndices:
    basis = as_basis(basis)
    return BranchIndices(reorder(basis.indices, as_sigma(sigma, basis.m)))


def digit_shuffle_images(dims: Sequence[int], sigma: Permutation) -> np.ndarray:
    """Images of ``0..prod(dims)-1`` under the digit-position shuffle.

    Radices equal to 1 are allowed here.
    """
    dims = tuple(dims)
    src_w = place_values(dims)
    dst_w = place_values(reorder(dims, sigma))
    x = np.arange(math.prod(dims), dtype=INT)
    out = np.zeros_like(x)
    # digit x_l sits at target position sigma(l)
    for l in range(len(dims)):
        digit = (x // src_w[l]) % dims[l]
        out += digit * dst_w[sigma(l)]
    return out


def shuffle_perm(basis, sigma) -> Permutation:
    basis = as_basis(basis)
    sigma = as_sigma(sigma, basis.m)
    return Permutation(digit_shuffle_images(basis.indices, sigma).tolist())


def definition_sum(dims: Sequence[int], sigma: Permutation, dense: bool | None = None,
                   transpose: bool = False) -> np.ndarray:
    """Sum over all index tuples of ``kron_j E^{i_{sigma^-1(j)}, i_j}``.

    Each elementary factor has shape ``d_{sigma^-1(j)} x d_j``; with
    ``transpose`` every factor is ``E^{i_j, i_{sigma^-1(j)}}`` instead.  With
    ``dense`` the Kronecker products are formed as full matrices; otherwise
    each product is located by the block rule of the Kronecker product
    without allocating it (needed beyond a few hundred rows).
    """
    dims = tuple(dims)
    m = len(dims)
    inv = sigma.inverse().images
    n = math.prod(dims)
    if dense is None:
        dense = n <= 256
    out = np.zeros((n, n), dtype=INT)
    for idx in itertools.product(*(range(1, d + 1) for d in dims)):
        shapes = [(dims[inv[j]], dims[j]) for j in range(m)]
        entries = [(idx[inv[j]], idx[j]) for j in range(m)]
        if transpose:
            shapes = [(c, r) for r, c in shapes]
            entries = [(j, i) for i, j in entries]
        if dense:
            out += kron_all([elementary(i, j, r, c) for (i, j), (r, c) in zip(entries, shapes)])
        else:
            row = col = 0
            for (i, j), (r, c) in zip(entries, shapes):
                row = row * r + (i - 1)
                col = col * c + (j - 1)
            out[row, col] += 1
    return out


def shuffle_matrix_oracle(basis, sigma, limit: int | None = None, dense: bool | None = None) -> np.ndarray:
    basis = as_basis(basis)
    sigma = as_sigma(sigma, basis.m)
    limit = LIMITS.oracle_n if limit is None else limit
    if basis.total > limit:
        raise LimitExceeded(f"N = {basis.total} exceeds the oracle limit {limit}")
    return definition_sum(basis.indices, sigma, dense=dense)


def shuffle_matrix(basis, sigma) -> np.ndarray:
    """Shuffling matrix built from the action formula (fast path)."""
    return perm_to_matrix(shuffle_perm(basis, sigma))


def cyclic_sigma(m: int) -> Permutation:
    """The forward cycle ``(1 2 ... m)`` on 0-based positions."""
    return Permutation([(j + 1) % m for j in range(m)])


def perfect_shuffle(basis) -> Permutation:
    basis = as_basis(basis)
    return shuffle_perm(basis, cyclic_sigma(basis.m))


def perfect_shuffle_transpose(basis) -> Permutation:
    """Perfect shuffle as the transpose of an ``(N/n_m) x n_m`` array.

    The element at row i, column j (position ``i*n_m + j``) moves to
    position ``j*(N/n_m) + i``.
    """
    basis = as_basis(basis)
    cols = basis[-1]
    rows = basis.total // cols
    images = [0] * basis.total
    for i in range(rows):
        for j in range(cols):
            images[i * cols + j] = j * rows + i
    return Permutation(images)


def sh_k(n: int, k: int) -> Permutation:
    """Shuffle of ``0..n-1`` listing ``0, k, 2k, ... (mod n-1)`` then ``n-1``."""
    if n < 3:
        raise ValueError(f"Sh_k needs N >= 3, got {n}")
    if not 1 <= k <= n - 2:
        raise ValueError(f"k must lie in [1, {n - 2}], got {k}")
    if math.gcd(k, n - 1) != 1:
        raise ValueError(f"gcd({k}, {n - 1}) != 1: the orbit of 0 misses points")
    horizontal = [(t * k) % (n - 1) for t in range(n - 1)] + [n - 1]
    return Permutation(horizontal).inverse()


def all_sigmas(m: int, limit: int | None = None):
    limit = LIMITS.max_m_perms if limit is None else limit
    if math.factorial(m) > limit:
        raise LimitExceeded(f"{m}! permutations exceed the limit {limit}")
    return [Permutation(p) for p in itertools.permutations(range(m))]


def common_fixed(basis) -> set[int]:
    basis = as_basis(basis)
    fixed = set(range(basis.total))
    for sigma in all_sigmas(basis.m):
        fixed &= shuffle_perm(basis, sigma).fixed_points()
    return fixed


def compose_shuffles(basis, sigma, tau) -> Permutation:
    """``tau~`` on the sigma-reordered tree after ``sigma~``; equals ``(tau sigma)~``."""
    basis = as_basis(basis)
    sigma = as_sigma(sigma, basis.m)
    tau = as_sigma(tau, basis.m)
    first = shuffle_perm(basis, sigma)
    second = shuffle_perm(reordered_basis(basis, sigma), tau)
    return second * first
