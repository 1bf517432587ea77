"""Finite permutations of ``{0, ..., d-1}`` stored as image tables.

Composition is right to left: ``(f * g)(x) == f(g(x))``.  This is the order
in which shuffling matrices multiply, ``P(tau) @ P(sigma) == P(tau sigma)``.
"""
from __future__ import annotations

import math
import re
from dataclasses import dataclass
from typing import Iterable, Sequence


class CycleSyntaxError(ValueError):
    pass


@dataclass(frozen=True)
class Permutation:
    images: tuple[int, ...]

    def __init__(self, images: Iterable[int]):
        images = tuple(int(v) for v in images)
        d = len(images)
        seen = [False] * d
        for v in images:
            if not 0 <= v < d or seen[v]:
                raise ValueError(f"{list(images)} is not a permutation of 0..{d - 1}")
            seen[v] = True
        object.__setattr__(self, "images", images)

    @classmethod
    def identity(cls, degree: int) -> "Permutation":
        return cls(range(degree))

    @classmethod
    def from_cycles(cls, cycles: Iterable[Sequence[int]], degree: int) -> "Permutation":
        images = list(range(degree))
        touched = set()
        for cycle in cycles:
            cycle = [int(c) for c in cycle]
            for c in cycle:
                if not 0 <= c < degree:
                    raise ValueError(f"cycle entry {c} outside 0..{degree - 1}")
                if c in touched:
                    raise ValueError(f"point {c} appears in more than one cycle")
                touched.add(c)
            for a, b in zip(cycle, cycle[1:] + cycle[:1]):
                images[a] = b
        return cls(images)

    @property
    def degree(self) -> int:
        return len(self.images)

    def __call__(self, x: int) -> int:
        return self.images[x]

    def __len__(self):
        return len(self.images)

    def __mul__(self, other: "Permutation") -> "Permutation":
        return self.compose(other)

    def compose(self, other: "Permutation") -> "Permutation":
        """``self`` after ``other``."""
        if self.degree != other.degree:
            raise ValueError(f"degree mismatch: {self.degree} vs {other.degree}")
        f = self.images
        return Permutation(f[y] for y in other.images)

    def inverse(self) -> "Permutation":
        inv = [0] * self.degree
        for x, y in enumerate(self.images):
            inv[y] = x
        return Permutation(inv)

    def cycles(self) -> list[tuple[int, ...]]:
        """Canonical cycles: each starts at its minimum, sorted by minimum,
        fixed points kept as singletons."""
        seen = [False] * self.degree
        out = []
        for start in range(self.degree):
            if seen[start]:
                continue
            cycle = []
            x = start
            while not seen[x]:
                seen[x] = True
                cycle.append(x)
                x = self.images[x]
            out.append(tuple(cycle))
        return out

    def horizontal(self) -> list[int]:
        """Listing whose t-th entry is the point sent to position t.

        ``f(x)`` is the position of ``x`` in this list.
        """
        return list(self.inverse().images)

    def fixed_points(self) -> set[int]:
        return {x for x, y in enumerate(self.images) if x == y}

    def order(self) -> int:
        return math.lcm(*(len(c) for c in self.cycles())) if self.degree else 1

    def is_identity(self) -> bool:
        return all(x == y for x, y in enumerate(self.images))

    def __str__(self):
        return format_cycles(self.cycles())


def compose(*perms: Permutation) -> Permutation:
    """Right-to-left product ``perms[0] * perms[1] * ...``."""
    if not perms:
        raise ValueError("need at least one permutation")
    result = perms[-1]
    for p in reversed(perms[:-1]):
        result = p.compose(result)
    return result


def format_cycles(cycles: Iterable[Sequence[int]], one_based: bool = False) -> str:
    shift = 1 if one_based else 0
    return "".join("(" + " ".join(str(c + shift) for c in cycle) + ")" for cycle in cycles)


def format_horizontal(perm: Permutation) -> str:
    return " ".join(map(str, perm.horizontal()))


_CYCLE_RE = re.compile(r"\(([^()]*)\)")


def parse_cycles(text: str, degree: int, one_based: bool = False) -> Permutation:
    """Parse cycle notation such as ``"(1 3)"`` or ``"(0)(1 4 6)(2 8 9 3)"``.

    ``"()"`` and the empty string denote the identity.  Entries may be
    separated by spaces or commas.
    """
    stripped = re.sub(r"\s+", " ", text.strip())
    if _CYCLE_RE.sub("", stripped).strip():
        raise CycleSyntaxError(f"malformed cycle string {text!r}")
    shift = 1 if one_based else 0
    cycles = []
    for body in _CYCLE_RE.findall(stripped):
        tokens = [t for t in re.split(r"[\s,]+", body.strip()) if t]
        try:
            cycle = [int(t) - shift for t in tokens]
        except ValueError:
            raise CycleSyntaxError(f"non-integer entry in cycle string {text!r}") from None
        if cycle:
            cycles.append(cycle)
    try:
        return Permutation.from_cycles(cycles, degree)
    except ValueError as exc:
        raise CycleSyntaxError(f"{text!r}: {exc}") from None


def to_json(perm: Permutation) -> dict:
    return {
        "degree": perm.degree,
        "images": list(perm.images),
        "cycles": [list(c) for c in perm.cycles()],
        "horizontal": perm.horizontal(),
        "fixed_points": sorted(perm.fixed_points()),
    }
