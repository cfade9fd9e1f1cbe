"""Permutations of the coset labels {1..N}.

Permutations act on the right: ``compose(p, q)`` applies ``p`` first and then
``q``, so that the image of a coset ``K`` under a word ``g h`` is ``(K g) h``.
Points are 1-indexed in every public method; the images are stored 0-indexed.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass
from functools import reduce
from typing import Iterable, Sequence


class PermutationError(ValueError):
    """Malformed permutation data (bad cycle text, degree mismatch, ...)."""

    def __init__(self, message: str, offset: int | None = None) -> None:
        super().__init__(message)
        self.offset = offset


# Raw 0-indexed tuple helpers. The backtracking search works on these directly.

def tuple_compose(p: tuple[int, ...], q: tuple[int, ...]) -> tuple[int, ...]:
    return tuple([q[i] for i in p])


def tuple_inverse(p: tuple[int, ...]) -> tuple[int, ...]:
    inv = [0] * len(p)
    for i, j in enumerate(p):
        inv[j] = i
    return tuple(inv)


def tuple_power(p: tuple[int, ...], k: int) -> tuple[int, ...]:
    if k < 0:
        p, k = tuple_inverse(p), -k
    result = tuple(range(len(p)))
    base = p
    while k:
        if k & 1:
            result = tuple_compose(result, base)
        base = tuple_compose(base, base)
        k >>= 1
    return result


def tuple_cycle_lengths(p: tuple[int, ...]) -> list[int]:
    seen = [False] * len(p)
    lengths = []
    for start in range(len(p)):
        if seen[start]:
            continue
        n = 0
        i = start
        while not seen[i]:
            seen[i] = True
            i = p[i]
            n += 1
        lengths.append(n)
    return lengths


@dataclass(frozen=True, order=True)
class Permutation:
    """A bijection of {1..N}, stored as the 0-indexed tuple of images."""

    images: tuple[int, ...]

    def __post_init__(self) -> None:
        images = tuple(self.images)
        if not images:
            raise PermutationError("a permutation needs degree at least 1")
        if sorted(images) != list(range(len(images))):
            raise PermutationError(f"not a bijection: {images!r}")
        object.__setattr__(self, "images", images)

    @classmethod
    def identity(cls, degree: int) -> Permutation:
        return cls(tuple(range(degree)))

    @classmethod
    def from_images(cls, images: Sequence[int]) -> Permutation:
        """Build from 1-indexed images, ``images[i - 1]`` being the image of ``i``."""
        return cls(tuple(x - 1 for x in images))

    @classmethod
    def from_cycles(cls, cycles: Iterable[Sequence[int]], degree: int) -> Permutation:
        images = list(range(degree))
        seen: set[int] = set()
        for cyc in cycles:
            for a, b in zip(cyc, list(cyc[1:]) + list(cyc[:1])):
                if not 1 <= a <= degree:
                    raise PermutationError(f"point {a} outside 1..{degree}")
                if a in seen:
                    raise PermutationError(f"point {a} repeated")
                seen.add(a)
                images[a - 1] = b - 1
        return cls(tuple(images))

    @property
    def degree(self) -> int:
        return len(self.images)

    def __call__(self, point: int) -> int:
        return self.images[point - 1] + 1

    def compose(self, other: Permutation) -> Permutation:
        """Apply ``self`` first, then ``other``."""
        if other.degree != self.degree:
            raise PermutationError(
                f"degree mismatch: {self.degree} and {other.degree}")
        return Permutation(tuple_compose(self.images, other.images))

    __mul__ = compose

    def inverse(self) -> Permutation:
        return Permutation(tuple_inverse(self.images))

    def __pow__(self, k: int) -> Permutation:
        return Permutation(tuple_power(self.images, k))

    def is_identity(self) -> bool:
        return all(i == j for i, j in enumerate(self.images))

    def order(self) -> int:
        return reduce(math.lcm, tuple_cycle_lengths(self.images), 1)

    def cycles(self) -> list[list[int]]:
        """All cycles, fixed points included, each starting at its minimum.

        Cycles come out sorted by their minimum since the scan is ascending.
        """
        seen = [False] * self.degree
        out = []
        for start in range(self.degree):
            if seen[start]:
                continue
            cyc = []
            i = start
            while not seen[i]:
                seen[i] = True
                cyc.append(i + 1)
                i = self.images[i]
            out.append(cyc)
        return out

    def cycle_of(self, point: int) -> list[int]:
        cyc = [point]
        i = self(point)
        while i != point:
            cyc.append(i)
            i = self(i)
        return cyc

    def fixed_points(self) -> list[int]:
        return [i + 1 for i, j in enumerate(self.images) if i == j]

    def __str__(self) -> str:
        return format_cycles(self)

    def __repr__(self) -> str:
        return f"Permutation({format_cycles(self)!r}, degree={self.degree})"


def compose(p: Permutation, q: Permutation) -> Permutation:
    return p.compose(q)


def inverse(p: Permutation) -> Permutation:
    return p.inverse()


def identity(degree: int) -> Permutation:
    return Permutation.identity(degree)


def order(p: Permutation) -> int:
    return p.order()


def cycles(p: Permutation) -> list[list[int]]:
    return p.cycles()


def fixed_points(p: Permutation) -> list[int]:
    return p.fixed_points()


def orbits(gens: Sequence[Permutation], degree: int | None = None) -> list[list[int]]:
    """Orbits of the group generated by ``gens``, sorted, by minimum element."""
    if degree is None:
        if not gens:
            raise PermutationError("degree required for an empty generator list")
        degree = gens[0].degree
    for g in gens:
        if g.degree != degree:
            raise PermutationError(f"degree mismatch: {g.degree} and {degree}")
    label = [-1] * degree
    out = []
    for start in range(degree):
        if label[start] >= 0:
            continue
        label[start] = len(out)
        orbit = [start]
        stack = [start]
        while stack:
            i = stack.pop()
            for g in gens:
                j = g.images[i]
                if label[j] < 0:
                    label[j] = label[start]
                    orbit.append(j)
                    stack.append(j)
        out.append(sorted(k + 1 for k in orbit))
    return out


_TOKEN = re.compile(r"\s*(?:(\()|(\))|(,)|(\d+)|(\S))")


def parse_cycles(text: str, degree: int) -> Permutation:
    """Parse cycle notation such as ``"(1,2)(3)(4)"``; omitted points are fixed.

    Errors carry the character offset of the problem in ``PermutationError.offset``.
    """
    if degree < 1:
        raise PermutationError("degree must be positive")
    images = list(range(degree))
    seen: set[int] = set()
    pos = 0
    current: list[int] | None = None
    current_start = 0
    expect_point = False
    n = len(text)
    while pos < n:
        if text[pos:].strip() == "":
            break
        m = _TOKEN.match(text, pos)
        assert m is not None
        start = m.start(m.lastindex)
        if m.group(1):
            if current is not None:
                raise PermutationError("nested '('", start)
            current, current_start, expect_point = [], start, True
        elif m.group(2):
            if current is None:
                raise PermutationError("unmatched ')'", start)
            if expect_point and current:
                raise PermutationError("missing point after ','", start)
            for a, b in zip(current, current[1:] + current[:1]):
                images[a - 1] = b - 1
            current = None
        elif m.group(3):
            if current is None or expect_point:
                raise PermutationError("unexpected ','", start)
            expect_point = True
        elif m.group(4):
            if current is None or not expect_point:
                raise PermutationError("point outside a cycle or missing ','", start)
            point = int(m.group(4))
            if not 1 <= point <= degree:
                raise PermutationError(f"point {point} outside 1..{degree}", start)
            if point in seen:
                raise PermutationError(f"point {point} repeated", start)
            seen.add(point)
            current.append(point)
            expect_point = False
        else:
            raise PermutationError(f"unexpected character {m.group(5)!r}", start)
        pos = m.end()
    if current is not None:
        raise PermutationError("unclosed '('", current_start)
    return Permutation(tuple(images))


def format_cycles(p: Permutation) -> str:
    """Cycle notation without fixed points; the identity is ``"()"``."""
    parts = ["(" + ",".join(map(str, c)) + ")" for c in p.cycles() if len(c) > 1]
    return "".join(parts) or "()"
