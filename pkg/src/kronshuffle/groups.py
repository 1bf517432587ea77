"""Groups generated by shuffling permutations.

``k_group`` enumerates the subgroup of Sym(N) generated by every shuffle of
a tree; ``gsh_group`` the group generated by the ``Sh_k`` shuffles.  Both use
a breadth-first closure over image tables, which is adequate for groups of
up to a few million elements.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable

from .config import LIMITS
from .mixed_radix import LimitExceeded
from .permutation import Permutation
from .shuffling import all_sigmas, as_basis, as_sigma, reordered_basis, sh_k, shuffle_perm


@dataclass(frozen=True)
class PermGroup:
    degree: int
    elements: tuple[Permutation, ...]     # sorted by image table
    generators: tuple[Permutation, ...]

    @property
    def order(self) -> int:
        return len(self.elements)

    def element_set(self) -> frozenset[tuple[int, ...]]:
        return frozenset(p.images for p in self.elements)

    def __contains__(self, perm: Permutation) -> bool:
        return perm.images in self._lookup

    @property
    def _lookup(self):
        cache = self.__dict__.get("_cache")
        if cache is None:
            cache = self.element_set()
            object.__setattr__(self, "_cache", cache)
        return cache

    def is_abelian(self) -> bool:
        gens = self.generators
        return all((a * b).images == (b * a).images for i, a in enumerate(gens) for b in gens[i + 1:])

    def common_fixed_points(self) -> set[int]:
        fixed = set(range(self.degree))
        for g in self.generators:
            fixed &= g.fixed_points()
        return fixed


def closure(generators: Iterable[Permutation], degree: int, limit: int | None = None) -> PermGroup:
    """Group generated by ``generators``, by saturation from the identity.

    Raises :class:`LimitExceeded` once more than ``limit`` elements are found.
    """
    limit = LIMITS.group_size if limit is None else limit
    gens = tuple(generators)
    for g in gens:
        if g.degree != degree:
            raise ValueError(f"generator of degree {g.degree}, expected {degree}")
    gen_tables = [g.images for g in gens]
    identity = tuple(range(degree))
    seen = {identity}
    frontier = [identity]
    while frontier:
        fresh = []
        for h in frontier:
            for s in gen_tables:
                # s after h
                prod = tuple([s[y] for y in h])
                if prod not in seen:
                    seen.add(prod)
                    fresh.append(prod)
                    if len(seen) > limit:
                        raise LimitExceeded(f"group has more than {limit} elements")
        frontier = fresh
    elements = tuple(Permutation(t) for t in sorted(seen))
    return PermGroup(degree, elements, gens)


def shuffle_generators(basis) -> list[Permutation]:
    basis = as_basis(basis)
    return [shuffle_perm(basis, sigma) for sigma in all_sigmas(basis.m)]


def k_group(basis, limit: int | None = None) -> PermGroup:
    basis = as_basis(basis)
    return closure(shuffle_generators(basis), basis.total, limit)


def totient(n: int) -> int:
    if n < 1:
        raise ValueError(f"totient needs n >= 1, got {n}")
    result, rest, p = n, n, 2
    while p * p <= rest:
        if rest % p == 0:
            while rest % p == 0:
                rest //= p
            result -= result // p
        p += 1
    if rest > 1:
        result -= result // rest
    return result


def units(n: int) -> list[int]:
    """``k`` in ``[1, n]`` coprime to ``n`` (``[1]`` when ``n == 1``)."""
    return [k for k in range(1, n + 1) if math.gcd(k, n) == 1] if n > 1 else [1]


def sh_generators(n: int) -> list[Permutation]:
    if n < 3:
        raise ValueError(f"G_Sh needs N >= 3, got {n}")
    return [sh_k(n, k) for k in units(n - 1) if k <= n - 2]


def gsh_group(n: int, limit: int | None = None) -> PermGroup:
    return closure(sh_generators(n), n, limit)


def index_lower_bound_check(basis, group: PermGroup | None = None) -> bool:
    """``[Sym(N) : K] >= N (N - 1)``, in exact integer arithmetic."""
    basis = as_basis(basis)
    group = k_group(basis) if group is None else group
    n = basis.total
    index, rem = divmod(math.factorial(n), group.order)
    if rem:
        raise ArithmeticError(f"group order {group.order} does not divide {n}!")
    return index >= n * (n - 1)


def reorder_certificate(basis, sigma) -> bool:
    """Check that every generator of the group on the ``sigma``-reordered tree
    is a product of generators of the original group.

    ``tau~`` (reordered tree) equals ``(tau sigma)~ * (sigma~)^-1`` (original
    tree).  Running this for ``sigma`` and for ``sigma^-1`` on the reordered
    tree shows the two groups coincide without enumerating either.
    """
    basis = as_basis(basis)
    sigma = as_sigma(sigma, basis.m)
    other = reordered_basis(basis, sigma)
    sig = shuffle_perm(basis, sigma)
    sig_inv = sig.inverse()
    for tau in all_sigmas(basis.m):
        # both factors are generators of the original group by construction
        witness = shuffle_perm(basis, tau * sigma) * sig_inv
        if witness.images != shuffle_perm(other, tau).images:
            return False
    return True
