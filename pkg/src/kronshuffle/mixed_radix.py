"""Mixed-radix codec for the leaves of a rooted tree with given branch indices.

A word ``x_1 x_2 ... x_m`` with ``0 <= x_j < n_j`` is identified with the
integer ``sum_j x_j * u_{m-j}``, where ``u_0 = 1`` and ``u_i`` is the product
of the last ``i`` branch indices.  Digit 1 is the most significant, so the
natural order of integers is the lexicographic order of words.

Word positions are written 1..m in prose but stored 0-based.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

from .config import LIMITS


class LimitExceeded(ValueError):
    """Raised when a requested object is larger than the configured bound."""


@dataclass(frozen=True)
class BranchIndices:
    """The tuple ``(n_1, ..., n_m)``; every index >= 2 and ``m >= 2``."""

    indices: tuple[int, ...]

    def __init__(self, indices: Sequence[int], max_n: int | None = None):
        indices = tuple(int(n) for n in indices)
        if len(indices) < 2:
            raise ValueError(f"need at least two branch indices, got {indices}")
        if any(n < 2 for n in indices):
            raise ValueError(f"branch indices must be >= 2, got {indices}")
        limit = LIMITS.max_n if max_n is None else max_n
        total = math.prod(indices)
        if total > limit:
            raise LimitExceeded(f"N = {total} exceeds the limit {limit}")
        object.__setattr__(self, "indices", indices)

    @property
    def m(self) -> int:
        return len(self.indices)

    @property
    def total(self) -> int:
        return math.prod(self.indices)

    def __iter__(self):
        return iter(self.indices)

    def __len__(self):
        return len(self.indices)

    def __getitem__(self, i):
        return self.indices[i]

    def __str__(self):
        return ",".join(map(str, self.indices))


@dataclass(frozen=True)
class WeightVector:
    weights: tuple[int, ...]   # (u_{m-1}, ..., u_1, u_0)


@dataclass(frozen=True)
class DigitWord:
    digits: tuple[int, ...]
    basis: BranchIndices

    def __post_init__(self):
        digits = tuple(int(d) for d in self.digits)
        if len(digits) != self.basis.m:
            raise ValueError(f"word {digits} has {len(digits)} letters, basis has {self.basis.m}")
        for j, (d, n) in enumerate(zip(digits, self.basis)):
            if not 0 <= d < n:
                raise ValueError(f"digit x_{j + 1} = {d} out of range [0, {n - 1}]")
        object.__setattr__(self, "digits", digits)


def place_values(dims: Sequence[int]) -> list[int]:
    """Positional weights for ``dims``, most significant first.

    Unlike :class:`BranchIndices` this accepts radices equal to 1, which the
    Kronecker rearrangement code needs for scalar factors.
    """
    weights = [1] * len(dims)
    for j in range(len(dims) - 2, -1, -1):
        weights[j] = weights[j + 1] * dims[j + 1]
    return weights


def to_digits(x: int, dims: Sequence[int]) -> list[int]:
    digits = [0] * len(dims)
    for j in range(len(dims) - 1, -1, -1):
        x, digits[j] = divmod(x, dims[j])
    return digits


def from_digits(digits: Sequence[int], dims: Sequence[int]) -> int:
    x = 0
    for d, n in zip(digits, dims):
        x = x * n + d
    return x


def weight_vector(basis: BranchIndices) -> WeightVector:
    return WeightVector(tuple(place_values(basis.indices)))


def encode(word: DigitWord) -> int:
    return from_digits(word.digits, word.basis.indices)


def decode(x: int, basis: BranchIndices) -> DigitWord:
    if not 0 <= x < basis.total:
        raise ValueError(f"{x} is outside [0, {basis.total - 1}]")
    return DigitWord(tuple(to_digits(x, basis.indices)), basis)
