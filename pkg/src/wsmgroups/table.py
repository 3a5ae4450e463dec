"""Cayley-table view of a small permutation group.

Elements are numbered in lexicographic order of their image tuples, so the
identity is element 0. Subsets of the group are Python ints used as bitsets.
"""

from __future__ import annotations

from math import lcm

import numpy as np

from .groups import BoundExceeded, PermGroup
from .perm import Permutation

TABLE_HARD_CAP = 2000


def bits(mask: int) -> list[int]:
    out = []
    while mask:
        low = mask & -mask
        out.append(low.bit_length() - 1)
        mask ^= low
    return out


def popcount(mask: int) -> int:
    return bin(mask).count("1")


def _multiplication_table(elements: list[Permutation], base: list[int], degree: int) -> list[list[int]]:
    """``mul[a][b]`` = index of ``elements[a] * elements[b]``.

    An element is determined by the images of the base points, so products
    are looked up by those images written as a number in base ``degree``.
    """
    n = len(elements)
    if not base:
        return [[0] * n for _ in range(n)]
    if degree ** len(base) >= 2**63:  # keys would overflow; multiply directly
        index = {g.images: i for i, g in enumerate(elements)}
        return [[index[(a * b).images] for b in elements] for a in elements]
    imgs = np.array([g.images for g in elements], dtype=np.int64)
    radix = degree ** np.arange(len(base), dtype=np.int64)
    keys = imgs[:, base] @ radix
    order = np.argsort(keys)
    sorted_keys = keys[order]
    out = []
    for a in range(n):
        # (a*b)(x) = b(a(x)), so the product's base images are columns a(base) of b
        prod = imgs[:, imgs[a, base]] @ radix
        out.append(order[np.searchsorted(sorted_keys, prod)].tolist())
    return out


class ElementTable:
    def __init__(self, G: PermGroup, bound: int = TABLE_HARD_CAP):
        if G.order > min(bound, TABLE_HARD_CAP):
            raise BoundExceeded(f"|G| = {G.order} exceeds element-table bound {min(bound, TABLE_HARD_CAP)}")
        self.group = G
        self.elements: list[Permutation] = sorted(G.elements())
        self.n = len(self.elements)
        self.index = {g.images: i for i, g in enumerate(self.elements)}
        self.mul = _multiplication_table(self.elements, G.base, G.degree)
        self.inv = [row.index(0) for row in self.mul]
        self.gens = [self.index[g.images] for g in G.generators]
        self.full = (1 << self.n) - 1
        self._orders: list[int] | None = None

    def index_of(self, g: Permutation) -> int:
        return self.index[g.images]

    @property
    def orders(self) -> list[int]:
        if self._orders is None:
            self._orders = [g.order() for g in self.elements]
        return self._orders

    @property
    def exponent(self) -> int:
        e = 1
        for o in self.orders:
            e = lcm(e, o)
        return e

    def power(self, x: int, k: int) -> int:
        k %= self.orders[x]
        r = 0
        for _ in range(k):
            r = self.mul[r][x]
        return r

    def conj(self, x: int, g: int) -> int:
        """Index of ``g^-1 x g``."""
        return self.mul[self.mul[self.inv[g]][x]][g]

    def closure(self, gens, start: int = 1) -> int:
        """Bitset of the subgroup generated by ``gens`` (and the bitset ``start``)."""
        elems = bits(start) if start != 1 else [0]
        mask = start | 1
        mul = self.mul
        gens = list(gens)
        for x in elems:
            row = mul[x]
            for g in gens:
                y = row[g]
                if not (mask >> y) & 1:
                    mask |= 1 << y
                    elems.append(y)
        return mask

    def conjugate_mask(self, mask: int, g: int) -> int:
        out = 0
        for x in bits(mask):
            out |= 1 << self.conj(x, g)
        return out

    def perms(self, indices) -> list[Permutation]:
        return [self.elements[i] for i in indices]

    def mask_of(self, H: PermGroup) -> int:
        mask = 0
        for h in H.elements():
            mask |= 1 << self.index[h.images]
        return mask
