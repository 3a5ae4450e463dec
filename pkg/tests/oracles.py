"""Brute-force reference computations used to cross-check the package.

Everything here works on plain tuples and Python sets, with no stabilizer
chains, bitsets or modular arithmetic tricks.
"""

from __future__ import annotations

import itertools
from math import gcd

import numpy as np


def compose(a: tuple, b: tuple) -> tuple:
    """Apply a, then b."""
    return tuple(b[a[i]] for i in range(len(a)))


def inverse(a: tuple) -> tuple:
    out = [0] * len(a)
    for i, x in enumerate(a):
        out[x] = i
    return tuple(out)


def closure(gens, degree: int) -> frozenset:
    e = tuple(range(degree))
    seen = {e}
    todo = [e]
    gens = [tuple(g) for g in gens]
    while todo:
        x = todo.pop()
        for g in gens:
            y = compose(x, g)
            if y not in seen:
                seen.add(y)
                todo.append(y)
    return frozenset(seen)


def elements(G) -> frozenset:
    return closure([g.images for g in G.generators], G.degree)


def subgroup_closure(elems: set, degree: int) -> frozenset:
    return closure(list(elems), degree)


def all_subgroups(G, max_gens: int | None = None) -> set[frozenset]:
    """Every subgroup: cyclic ones, closed under pairwise joins.

    With ``max_gens`` only subgroups generated by that many elements are returned.
    """
    elems = sorted(elements(G))
    if max_gens is not None:
        found = set()
        for k in range(0, max_gens + 1):
            for gs in itertools.combinations(elems, k):
                found.add(closure(gs, G.degree))
        return found
    found = {closure([g], G.degree) for g in elems}
    frontier = set(found)
    while frontier:
        new = set()
        for A in frontier:
            for B in found:
                if not (A <= B or B <= A):
                    J = closure(A | B, G.degree)
                    if J not in found:
                        new.add(J)
        found |= new
        frontier = new
    return found


def conj_set(S: frozenset, g: tuple) -> frozenset:
    gi = inverse(g)
    return frozenset(compose(compose(gi, x), g) for x in S)


def core(S: frozenset, G_elems) -> frozenset:
    out = set(S)
    for g in G_elems:
        out &= conj_set(S, g)
    return frozenset(out)


def is_normal(S, G_elems) -> bool:
    return all(conj_set(S, g) == S for g in G_elems)


def maximal_in(H: frozenset, X: frozenset, subgroups) -> bool:
    if not H < X:
        return False
    return not any(H < K < X for K in subgroups)


def maximal_subgroups(G_elems, subgroups) -> list[frozenset]:
    return [M for M in subgroups if maximal_in(M, G_elems, subgroups)]


def order(x: tuple) -> int:
    e = tuple(range(len(x)))
    k, y = 1, x
    while y != e:
        y = compose(y, x)
        k += 1
    return k


def is_nilpotent(S: frozenset, degree: int) -> bool:
    """Lower central series reaches 1."""
    cur = S
    e = tuple(range(degree))
    while True:
        comms = {compose(compose(inverse(a), inverse(b)), compose(a, b)) for a in S for b in cur}
        nxt = closure(comms, degree) if comms else frozenset({e})
        if nxt == cur:
            return cur == frozenset({e})
        cur = nxt


def fitting(G_elems, subgroups, degree: int) -> frozenset:
    normal_nil = [S for S in subgroups if is_normal(S, G_elems) and is_nilpotent(S, degree)]
    gens = set().union(*normal_nil)
    return closure(gens, degree)


def is_wsm(G_elems, subgroups) -> bool:
    """Direct from the definitions: weak second maximal implies second maximal."""
    maxes = maximal_subgroups(G_elems, subgroups)
    for H in subgroups:
        if H == G_elems:
            continue
        over = [M for M in maxes if H <= M]
        flags = [maximal_in(H, M, subgroups) for M in over]
        if any(flags) and not all(flags):
            return False
    return True


def derived(S: frozenset, degree: int) -> frozenset:
    comms = {compose(compose(inverse(a), inverse(b)), compose(a, b)) for a in S for b in S}
    return closure(comms, degree)


def is_supersolvable(G_elems, subgroups, degree: int) -> bool:
    """A chain of normal subgroups with prime-order steps exists (search over the lattice)."""
    normals = [S for S in subgroups if is_normal(S, G_elems)]
    e = frozenset({tuple(range(degree))})

    def reach(S):
        if S == G_elems:
            return True
        for T in normals:
            if S < T and _is_prime(len(T) // len(S)) and reach(T):
                return True
        return False

    return reach(e)


def _is_prime(n: int) -> bool:
    return n > 1 and all(n % d for d in range(2, int(n**0.5) + 1))


# -- GF(p) modules ---------------------------------------------------------


def orbit_span(p: int, element_mats, v) -> frozenset:
    """Additive closure of ``{v g : g in G}`` as a set of vectors."""
    n = len(v)
    gens = {tuple(int(x) for x in (np.array(v) @ a) % p) for a in element_mats}
    span = {tuple([0] * n)}
    frontier = list(span)
    while frontier:
        nxt = []
        for w in frontier:
            for g in gens:
                s = tuple((a + b) % p for a, b in zip(w, g))
                if s not in span:
                    span.add(s)
                    nxt.append(s)
        frontier = nxt
    return frozenset(span)


def irreducible(p: int, element_mats, n: int) -> bool:
    """No nonzero vector generates a proper submodule (orbit sums over all group elements)."""
    for v in itertools.product(range(p), repeat=n):
        if any(v) and len(orbit_span(p, element_mats, v)) < p**n:
            return False
    return True


def cyclic_character(n: int, j: int, k: int) -> complex:
    import cmath

    return cmath.exp(2j * cmath.pi * j * k / n)


def coprime(a: int, b: int) -> bool:
    return gcd(a, b) == 1
