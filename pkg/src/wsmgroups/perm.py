"""Permutations on {0, ..., n-1}, printed and parsed in 1-based cycle notation."""

from __future__ import annotations

import re
from functools import reduce
from math import lcm
from typing import Iterable, Sequence

MAX_DEGREE = 64

_CYCLE_RE = re.compile(r"\(([^()]*)\)")


class PermutationError(ValueError):
    pass


class Permutation:
    """An immutable permutation of ``range(degree)``.

    Products compose left to right: ``(p * q)(i) == q(p(i))``, so
    ``i ** (p * q) == (i ** p) ** q`` and conjugation ``x ** g`` is
    ``~g * x * g``.
    """

    __slots__ = ("images", "_hash")

    def __init__(self, images: Sequence[int], check: bool = True):
        images = tuple(images)
        if check:
            n = len(images)
            if n < 1:
                raise PermutationError("degree must be at least 1")
            if sorted(images) != list(range(n)):
                raise PermutationError(f"not a bijection on {n} points: {images}")
        self.images = images
        self._hash = hash(images)

    @classmethod
    def identity(cls, degree: int) -> Permutation:
        return cls(range(degree), check=False)

    @classmethod
    def from_cycles(cls, cycles: Iterable[Sequence[int]], degree: int) -> Permutation:
        """Build from 0-based cycles."""
        img = list(range(degree))
        seen = set()
        for cyc in cycles:
            for a in cyc:
                if not 0 <= a < degree:
                    raise PermutationError(f"point {a + 1} outside degree {degree}")
                if a in seen:
                    raise PermutationError(f"point {a + 1} repeated")
                seen.add(a)
            for a, b in zip(cyc, list(cyc[1:]) + [cyc[0]]):
                img[a] = b
        return cls(img, check=False)

    @classmethod
    def parse(cls, text: str, degree: int | None = None) -> Permutation:
        """Parse 1-based cycle notation such as ``"(1,2)(3,4)"`` or ``"()"``."""
        stripped = re.sub(r"\s+", "", text)
        if not stripped:
            raise PermutationError("empty permutation string")
        cycles = []
        pos = 0
        for m in _CYCLE_RE.finditer(stripped):
            if m.start() != pos:
                raise PermutationError(f"cannot parse {text!r}")
            pos = m.end()
            body = m.group(1)
            if body:
                try:
                    cycles.append([int(t) - 1 for t in body.split(",")])
                except ValueError:
                    raise PermutationError(f"bad cycle ({body}) in {text!r}") from None
        if pos != len(stripped):
            raise PermutationError(f"cannot parse {text!r}")
        top = max((a + 1 for c in cycles for a in c), default=1)
        if degree is None:
            degree = top
        elif top > degree:
            raise PermutationError(f"{text!r} moves points beyond degree {degree}")
        if any(a < 0 for c in cycles for a in c):
            raise PermutationError("points are numbered from 1")
        return cls.from_cycles(cycles, degree)

    @property
    def degree(self) -> int:
        return len(self.images)

    def __call__(self, i: int) -> int:
        return self.images[i]

    def __rpow__(self, point: int) -> int:
        return self.images[point]

    def __mul__(self, other: Permutation) -> Permutation:
        if not isinstance(other, Permutation):
            return NotImplemented
        if other.degree != self.degree:
            raise PermutationError("degree mismatch")
        q = other.images
        return Permutation([q[i] for i in self.images], check=False)

    def __invert__(self) -> Permutation:
        inv = [0] * len(self.images)
        for i, j in enumerate(self.images):
            inv[j] = i
        return Permutation(inv, check=False)

    inverse = __invert__

    def __pow__(self, k: int) -> Permutation:
        if k < 0:
            return (~self) ** (-k)
        result = Permutation.identity(self.degree)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def conjugate(self, g: Permutation) -> Permutation:
        """Return ``g^-1 * self * g``."""
        return ~g * self * g

    def commutator(self, other: Permutation) -> Permutation:
        return ~self * ~other * self * other

    def is_identity(self) -> bool:
        return all(i == j for i, j in enumerate(self.images))

    def cycles(self) -> list[tuple[int, ...]]:
        """Nontrivial cycles, each starting at its smallest point."""
        seen = [False] * len(self.images)
        out = []
        for i in range(len(self.images)):
            if seen[i] or self.images[i] == i:
                continue
            cyc = [i]
            seen[i] = True
            j = self.images[i]
            while j != i:
                seen[j] = True
                cyc.append(j)
                j = self.images[j]
            out.append(tuple(cyc))
        return out

    def order(self) -> int:
        return reduce(lcm, (len(c) for c in self.cycles()), 1)

    def sign(self) -> int:
        return -1 if sum(len(c) - 1 for c in self.cycles()) % 2 else 1

    def support(self) -> list[int]:
        return [i for i, j in enumerate(self.images) if i != j]

    def first_moved(self) -> int | None:
        for i, j in enumerate(self.images):
            if i != j:
                return i
        return None

    def shifted(self, offset: int, degree: int) -> Permutation:
        """Embed into ``degree`` points, moving point i to i + offset."""
        img = list(range(degree))
        for i, j in enumerate(self.images):
            img[i + offset] = j + offset
        return Permutation(img, check=False)

    def __eq__(self, other) -> bool:
        return isinstance(other, Permutation) and self.images == other.images

    def __lt__(self, other: Permutation) -> bool:
        return self.images < other.images

    def __hash__(self) -> int:
        return self._hash

    def __str__(self) -> str:
        cyc = self.cycles()
        if not cyc:
            return "()"
        return "".join("(" + ",".join(str(a + 1) for a in c) + ")" for c in cyc)

    def __repr__(self) -> str:
        return f"Permutation.parse({str(self)!r}, {self.degree})"
