"""DFT matrix factorization in exact root-of-unity arithmetic, and an FFT.

Exact part
----------
Every matrix in the block factorization of ``F_N(omega) (P^sigma)^T`` has
entries that are either 0 or a single power of ``omega = exp(2 pi i / N)``.
:class:`OmegaMatrix` stores such a matrix as integer exponents mod N with
``-1`` for zero; products are formed exactly and raise
:class:`StructuralError` if any cell would need a sum of two powers.

Floating-point part
-------------------
:func:`fft` evaluates ``y_j = sum_k x_k omega^(jk)`` by recursive use of

    F_n P_s^r = (F_r(omega^s) kron I_s) T^s_r (I_r kron F_s(omega^r)),   n = r s

with the twiddle diagonal folded into the size-r butterflies, so a plan with
factors ``f_1, ..., f_k`` costs exactly ``N * sum(f_i)`` complex
multiply-adds.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .config import LIMITS
from .mixed_radix import LimitExceeded
from .permutation import Permutation
from .shuffling import as_basis, as_sigma, shuffle_perm

ZERO = -1


class StructuralError(ArithmeticError):
    """A cell of an exact product would be a sum of several powers of omega."""


@dataclass(frozen=True, eq=False)
class OmegaMatrix:
    modulus: int
    exps: np.ndarray = field(repr=False)

    def __post_init__(self):
        if self.modulus < 1:
            raise ValueError(f"modulus must be >= 1, got {self.modulus}")
        e = np.asarray(self.exps, dtype=np.int64)
        if e.ndim != 2:
            raise ValueError(f"expected a 2-D exponent grid, got shape {e.shape}")
        e = np.where(e == ZERO, ZERO, np.mod(e, self.modulus))
        e.setflags(write=False)
        object.__setattr__(self, "exps", e)

    @property
    def shape(self) -> tuple[int, int]:
        return self.exps.shape

    @property
    def rows(self) -> int:
        return self.exps.shape[0]

    @property
    def cols(self) -> int:
        return self.exps.shape[1]

    def __eq__(self, other):
        if not isinstance(other, OmegaMatrix):
            return NotImplemented
        return self.modulus == other.modulus and np.array_equal(self.exps, other.exps)

    def __matmul__(self, other: "OmegaMatrix") -> "OmegaMatrix":
        _same_modulus(self, other)
        if self.cols != other.rows:
            raise ValueError(f"shape mismatch {self.shape} @ {other.shape}")
        nz_a = (self.exps != ZERO).astype(np.int64)
        nz_b = (other.exps != ZERO).astype(np.int64)
        counts = nz_a @ nz_b
        if (counts > 1).any():
            i, j = np.argwhere(counts > 1)[0]
            raise StructuralError(f"cell ({i},{j}) is a sum of {counts[i, j]} powers of omega")
        a0 = np.where(nz_a, self.exps, 0)
        b0 = np.where(nz_b, other.exps, 0)
        # only one term survives per cell, so these sums pick out its two exponents
        e = a0 @ nz_b + nz_a @ b0
        return OmegaMatrix(self.modulus, np.where(counts == 1, e, ZERO))

    def times_power(self, e: int) -> "OmegaMatrix":
        """Scalar multiple ``omega^e * self``."""
        return OmegaMatrix(self.modulus, np.where(self.exps == ZERO, ZERO, self.exps + e))

    def lift(self, modulus: int) -> "OmegaMatrix":
        """Same complex matrix expressed with a finer root of unity."""
        if modulus % self.modulus:
            raise ValueError(f"{self.modulus} does not divide {modulus}")
        f = modulus // self.modulus
        return OmegaMatrix(modulus, np.where(self.exps == ZERO, ZERO, self.exps * f))

    @property
    def T(self) -> "OmegaMatrix":
        return OmegaMatrix(self.modulus, self.exps.T)

    def is_diagonal(self) -> bool:
        off = self.exps.copy()
        np.fill_diagonal(off, ZERO)
        return bool((off == ZERO).all())

    def to_complex(self) -> np.ndarray:
        table = np.exp(2j * np.pi * np.arange(self.modulus) / self.modulus)
        out = table[np.where(self.exps == ZERO, 0, self.exps)]
        out[self.exps == ZERO] = 0
        return out

    def __str__(self):
        def cell(e):
            return "0" if e == ZERO else ("1" if e == 0 else f"w^{e}")
        return "\n".join(" ".join(f"{cell(e):>5}" for e in row) for row in self.exps)


def _same_modulus(*mats: OmegaMatrix):
    if len({m.modulus for m in mats}) != 1:
        raise ValueError(f"moduli differ: {[m.modulus for m in mats]}")


def omega_identity(n: int, modulus: int) -> OmegaMatrix:
    e = np.full((n, n), ZERO, dtype=np.int64)
    np.fill_diagonal(e, 0)
    return OmegaMatrix(modulus, e)


def omega_kron(a: OmegaMatrix, b: OmegaMatrix) -> OmegaMatrix:
    _same_modulus(a, b)
    ea, eb = a.exps, b.exps
    summed = ea[:, None, :, None] + eb[None, :, None, :]
    zero = (ea[:, None, :, None] == ZERO) | (eb[None, :, None, :] == ZERO)
    out = np.where(zero, ZERO, summed).reshape(a.rows * b.rows, a.cols * b.cols)
    return OmegaMatrix(a.modulus, out)


def from_blocks(grid: Sequence[Sequence[OmegaMatrix]]) -> OmegaMatrix:
    _same_modulus(*(b for row in grid for b in row))
    return OmegaMatrix(grid[0][0].modulus, np.block([[b.exps for b in row] for row in grid]))


def permutation_omega(perm: Permutation, modulus: int) -> OmegaMatrix:
    """Permutation matrix ``P e_x = e_{perm(x)}`` with ones as ``omega^0``."""
    d = perm.degree
    e = np.full((d, d), ZERO, dtype=np.int64)
    e[list(perm.images), np.arange(d)] = 0
    return OmegaMatrix(modulus, e)


def dft_matrix(n: int, step: int = 1, modulus: int | None = None) -> OmegaMatrix:
    """``F_n(omega^step)`` where ``omega`` is a primitive ``modulus``-th root.

    With the defaults this is ``F_n(omega_n)``, entries ``omega^(ij)``.
    """
    if n < 1:
        raise ValueError(f"n must be >= 1, got {n}")
    modulus = n if modulus is None else modulus
    i = np.arange(n, dtype=np.int64)
    return OmegaMatrix(modulus, (np.outer(i, i) * step) % modulus)


def vandermonde(exponents: Sequence[int], modulus: int) -> OmegaMatrix:
    """``V(a_1, ..., a_n)`` with ``a_j = omega^exponents[j]``; row t holds ``a_j^t``."""
    exps = np.asarray(exponents, dtype=np.int64)
    t = np.arange(len(exps), dtype=np.int64)
    return OmegaMatrix(modulus, np.outer(t, exps))


def diag_power(base_exponent: int, s: int, modulus: int) -> OmegaMatrix:
    """``D_s(W)`` for the scalar ``W = omega^base_exponent``."""
    if s < 1:
        raise ValueError(f"s must be >= 1, got {s}")
    e = np.full((s, s), ZERO, dtype=np.int64)
    np.fill_diagonal(e, np.arange(s, dtype=np.int64) * base_exponent)
    return OmegaMatrix(modulus, e)


def diag_blocks(w: OmegaMatrix, r: int) -> OmegaMatrix:
    """``D_r(W)`` for a square matrix ``W``: block diagonal ``W^0, ..., W^(r-1)``."""
    if w.rows != w.cols:
        raise ValueError(f"W must be square, got {w.shape}")
    zero = OmegaMatrix(w.modulus, np.full(w.shape, ZERO, dtype=np.int64))
    powers = [omega_identity(w.rows, w.modulus)]
    for _ in range(r - 1):
        powers.append(powers[-1] @ w)
    return from_blocks([[powers[i] if i == j else zero for j in range(r)] for i in range(r)])


def twiddle(r: int, s: int, modulus: int | None = None) -> OmegaMatrix:
    """``T^s_r = D_r(D_s(omega))``; entry ``i s + j`` is ``omega^(ij)``."""
    n = r * s
    if modulus is not None and modulus != n:
        raise ValueError(f"N = {modulus} differs from r*s = {n}")
    return diag_blocks(diag_power(1, s, n), r)


def shuffle_omega(r: int, s: int, modulus: int) -> OmegaMatrix:
    """``P_s^r`` of size ``rs``, i.e. the two-level shuffle on branches (r, s)."""
    if r == 1 or s == 1:
        return omega_identity(r * s, modulus)
    return permutation_omega(shuffle_perm((r, s), Permutation([1, 0])), modulus)


def radix_identity_sides(r: int, s: int) -> tuple[OmegaMatrix, OmegaMatrix]:
    n = r * s
    lhs = dft_matrix(n) @ shuffle_omega(r, s, n)
    rhs = (omega_kron(dft_matrix(r, s, n), omega_identity(s, n))
           @ twiddle(r, s)
           @ omega_kron(omega_identity(r, n), dft_matrix(s, r, n)))
    return lhs, rhs


def radix_identity_check(r: int, s: int) -> bool:
    if r < 1 or s < 1 or r * s < 2:
        raise ValueError(f"need r, s >= 1 with rs >= 2, got ({r}, {s})")
    lhs, rhs = radix_identity_sides(r, s)
    return lhs == rhs


# -- block factorization of F_N (P^sigma)^T -----------------------------------

@dataclass(frozen=True)
class FactorBlocks:
    n_m: int
    block_size: int
    C: tuple[tuple[OmegaMatrix, ...], ...]
    A: tuple[OmegaMatrix, ...]
    B: tuple[tuple[OmegaMatrix, ...], ...]

    def assemble(self) -> OmegaMatrix:
        return from_blocks(self.B)


def _check_oracle_size(n: int):
    if n > LIMITS.oracle_n:
        raise LimitExceeded(f"N = {n} exceeds the oracle limit {LIMITS.oracle_n}")


def theorem_blocks(basis, sigma) -> FactorBlocks:
    """``B_hk = C_hk A_h`` with

    ``C_hk = omega^(M h c_k) D_M(omega^c_k)``, ``c_k = sigma~^-1(M k)`` and
    ``A_h[i, j] = omega^((i + h M) sigma~^-1(j))``, where ``M = N / n_m``.
    """
    basis = as_basis(basis)
    sigma = as_sigma(sigma, basis.m)
    n = basis.total
    _check_oracle_size(n)
    n_m = basis[-1]
    M = n // n_m
    inv = np.asarray(shuffle_perm(basis, sigma).inverse().images, dtype=np.int64)
    i = np.arange(M, dtype=np.int64)
    A = tuple(OmegaMatrix(n, np.outer(i + h * M, inv[:M])) for h in range(n_m))
    C = tuple(tuple(diag_power(int(inv[M * k]), M, n).times_power(M * h * int(inv[M * k]))
                    for k in range(n_m)) for h in range(n_m))
    B = tuple(tuple(C[h][k] @ A[h] for k in range(n_m)) for h in range(n_m))
    return FactorBlocks(n_m, M, C, A, B)


def dft_times_shuffle_transpose(basis, sigma) -> OmegaMatrix:
    """``F_N (P^sigma)^T``: column j of ``F_N`` taken at ``sigma~^-1(j)``."""
    basis = as_basis(basis)
    sigma = as_sigma(sigma, basis.m)
    inv = list(shuffle_perm(basis, sigma).inverse().images)
    return OmegaMatrix(basis.total, dft_matrix(basis.total).exps[:, inv])


def verify_factorization(basis, sigma) -> bool:
    basis = as_basis(basis)
    return theorem_blocks(basis, sigma).assemble() == dft_times_shuffle_transpose(basis, sigma)


def split_additive(basis, sigma) -> bool:
    """Whether ``sigma~^-1(Mk + j) == sigma~^-1(Mk) + sigma~^-1(j)`` (mod N)
    for all ``0 <= k < n_m``, ``0 <= j < M``.

    The block factorization holds exactly when this does: comparing block
    (h, k) entry (i, j) of both sides with ``i + hM = 1`` forces it, and it
    makes every entry agree.
    """
    basis = as_basis(basis)
    sigma = as_sigma(sigma, basis.m)
    n = basis.total
    M = n // basis[-1]
    inv = np.asarray(shuffle_perm(basis, sigma).inverse().images, dtype=np.int64).reshape(basis[-1], M)
    return bool(((inv - inv[:, :1] - inv[:1, :]) % n == 0).all())


def cyclic_blocks(basis) -> tuple[tuple[OmegaMatrix, ...], ...]:
    """Blocks for sigma = (1 2 ... m): ``omega^(Nhk/n_m) D_M(omega^k) F_M(omega^n_m)``."""
    basis = as_basis(basis)
    n, n_m = basis.total, basis[-1]
    M = n // n_m
    F = dft_matrix(M, n_m, n)
    return tuple(tuple((diag_power(k, M, n) @ F).times_power(M * h * k) for k in range(n_m))
                 for h in range(n_m))


def radix2_two_block(n1: int) -> OmegaMatrix:
    """``[[F, D F], [F, -D F]]`` with ``F = F_n1(omega^2)``, ``D = D_n1(omega)``, N = 2 n1."""
    n = 2 * n1
    F = dft_matrix(n1, 2, n)
    DF = diag_power(1, n1, n) @ F
    return from_blocks([[F, DF], [F, DF.times_power(n1)]])


# -- numerical DFT and FFT -----------------------------------------------------

def _as_batch(x) -> tuple[np.ndarray, bool]:
    x = np.asarray(x, dtype=np.complex128)
    if x.ndim == 1:
        return x[None, :], True
    if x.ndim != 2:
        raise ValueError(f"expected a vector or a batch of vectors, got shape {x.shape}")
    return x, False


def _roots(n: int) -> np.ndarray:
    return np.exp(2j * np.pi * np.arange(n) / n)


def naive_dft(x, chunk: int = 256) -> np.ndarray:
    """Direct ``O(N^2)`` evaluation of ``y_j = sum_k x_k omega^(jk)``."""
    xb, single = _as_batch(x)
    n = xb.shape[1]
    if n < 1:
        raise ValueError("empty input")
    table = _roots(n)
    k = np.arange(n, dtype=np.int64)
    y = np.empty_like(xb)
    for start in range(0, n, chunk):
        j = np.arange(start, min(start + chunk, n), dtype=np.int64)
        y[:, j] = xb @ table[np.outer(k, j) % n]
    return y[0] if single else y


@dataclass(frozen=True)
class Stage:
    radix: int        # size of the small DFTs in this stage
    size: int         # length of the sub-transform this stage completes
    batch: int        # number of such sub-transforms (N // size)


@dataclass(frozen=True)
class Plan:
    """Stages listed outermost first; the last stage is the base small DFT."""

    n: int
    factors: tuple[int, ...]
    stages: tuple[Stage, ...]
    _kernels: dict = field(default_factory=dict, repr=False, compare=False)

    @property
    def multiply_adds(self) -> int:
        return self.n * sum(self.factors)

    def kernel(self, level: int) -> np.ndarray:
        """Complex butterfly matrices for ``stages[level]``.

        Base level: ``F_p`` as a p x p array.  Other levels: an array of shape
        (s, r, r) whose j-th slice is the twiddled butterfly
        ``W_j[a, b] = omega_n^((a s + j) b)``.
        """
        cached = self._kernels.get(level)
        if cached is not None:
            return cached
        st = self.stages[level]
        n, r = st.size, st.radix
        table = _roots(n)
        if level == len(self.stages) - 1:
            k = np.arange(r)
            mat = table[np.outer(k, k) % n]
        else:
            s = n // r
            a = np.arange(r)[None, :, None]
            b = np.arange(r)[None, None, :]
            j = np.arange(s)[:, None, None]
            mat = table[((a * s + j) * b) % n]
        self._kernels[level] = mat
        return mat

    def expand(self) -> OmegaMatrix:
        """The product of the plan's stage matrices in exact arithmetic."""
        return _expand(self.factors, self.n)


def _expand(factors: tuple[int, ...], n: int) -> OmegaMatrix:
    if len(factors) == 1:
        return dft_matrix(n)
    r, s = factors[0], n // factors[0]
    sub = _expand(factors[1:], s).lift(n)
    e = np.full((n, n), ZERO, dtype=np.int64)
    a, b, j = np.meshgrid(np.arange(r), np.arange(r), np.arange(s), indexing="ij")
    e[a * s + j, b * s + j] = ((a * s + j) * b) % n
    butterflies = OmegaMatrix(n, e)
    # P_r^s is the shuffle on branches (s, r)
    return butterflies @ omega_kron(omega_identity(r, n), sub) @ shuffle_omega(s, r, n)


def prime_factors(n: int) -> list[int]:
    out, p = [], 2
    while p * p <= n:
        while n % p == 0:
            out.append(p)
            n //= p
        p += 1
    if n > 1:
        out.append(n)
    return out


def fft_plan(n: int, factorization: Sequence[int] | None = None) -> Plan:
    if n < 1:
        raise ValueError(f"N must be >= 1, got {n}")
    if factorization is None:
        factors = tuple(prime_factors(n)) or (1,)
    else:
        factors = tuple(int(f) for f in factorization)
        if n > 1 and any(f < 2 for f in factors):
            raise ValueError(f"every factor must be >= 2, got {factors}")
        if math.prod(factors) != n:
            raise ValueError(f"factors {factors} multiply to {math.prod(factors)}, not {n}")
    stages = []
    size = n
    for f in factors:
        stages.append(Stage(radix=f, size=size, batch=n // size))
        size //= f
    return Plan(n, factors, tuple(stages))


class OpCounter:
    """Accumulates complex multiply-adds performed by :func:`fft`."""

    def __init__(self):
        self.multiply_adds = 0


def fft(x, plan: Plan | None = None, counter: OpCounter | None = None) -> np.ndarray:
    """DFT of ``x`` (a vector or a batch of row vectors) following ``plan``."""
    xb, single = _as_batch(x)
    if plan is None:
        plan = fft_plan(xb.shape[1])
    if xb.shape[1] != plan.n:
        raise ValueError(f"input length {xb.shape[1]} does not match plan size {plan.n}")
    counter = counter if counter is not None else OpCounter()
    y = _run(plan, 0, xb, counter)
    return y[0] if single else y


def _run(plan: Plan, level: int, x: np.ndarray, counter: OpCounter) -> np.ndarray:
    batch, n = x.shape
    st = plan.stages[level]
    kern = plan.kernel(level)
    r = st.radix
    if level == len(plan.stages) - 1:
        counter.multiply_adds += batch * r * r
        return x @ kern.T
    s = n // r
    # P_r^s: segment b collects x[b], x[b + r], x[b + 2r], ...
    segments = x.reshape(batch, s, r).transpose(0, 2, 1).reshape(batch * r, s)
    z = _run(plan, level + 1, segments, counter).reshape(batch, r, s)
    counter.multiply_adds += batch * s * r * r
    # out[k, a, j] = sum_b kern[j, a, b] z[k, b, j], batched over j
    out = np.matmul(kern, z.transpose(2, 1, 0)).transpose(2, 1, 0)
    return out.reshape(batch, n)
