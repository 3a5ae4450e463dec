"""Permutation groups backed by a deterministic Schreier-Sims stabilizer chain."""

from __future__ import annotations

import hashlib
import itertools
from dataclasses import dataclass
from typing import Iterable, Iterator, Sequence

from .perm import MAX_DEGREE, Permutation


class GroupError(ValueError):
    """Invalid input to a group operation."""


class DegreeMismatch(GroupError):
    pass


class BoundExceeded(GroupError):
    """A configured size bound (index, lattice, table, vectors) was exceeded."""


DEFAULT_INDEX_BOUND = 10**5


@dataclass
class Level:
    point: int
    gens: list[Permutation]
    transversal: dict[int, Permutation]  # orbit point -> u with point**u == orbit point


def _orbit_transversal(point: int, gens: Sequence[Permutation], degree: int) -> dict[int, Permutation]:
    trans = {point: Permutation.identity(degree)}
    queue = [point]
    for x in queue:
        u = trans[x]
        for s in gens:
            y = s.images[x]
            if y not in trans:
                trans[y] = u * s
                queue.append(y)
    return trans


def _sift(levels: list[Level], g: Permutation, start: int = 0) -> tuple[Permutation, int]:
    for i in range(start, len(levels)):
        lev = levels[i]
        d = g.images[lev.point]
        u = lev.transversal.get(d)
        if u is None:
            return g, i
        g = g * ~u
    return g, len(levels)


def _schreier_sims(gens: Sequence[Permutation], degree: int, base_prefix: Sequence[int] = ()) -> list[Level]:
    base = list(base_prefix)
    strong: list[Permutation] = []
    for g in gens:
        if not g.is_identity() and g not in strong:
            strong.append(g)
    for g in strong:
        if all(g.images[b] == b for b in base):
            base.append(g.first_moved())

    def fixes(g, pts):
        return all(g.images[b] == b for b in pts)

    levels = [
        Level(b, [s for s in strong if fixes(s, base[:i])], {})
        for i, b in enumerate(base)
    ]
    for lev in levels:
        lev.transversal = _orbit_transversal(lev.point, lev.gens, degree)

    i = len(levels) - 1
    while i >= 0:
        lev = levels[i]
        new_level = None
        for beta, u in list(lev.transversal.items()):
            for s in lev.gens:
                h = u * s * ~lev.transversal[s.images[beta]]
                if h.is_identity():
                    continue
                res, j = _sift(levels, h, i + 1)
                if j == len(levels):
                    if res.is_identity():
                        continue
                    levels.append(Level(res.first_moved(), [], {}))
                for l in range(i + 1, j + 1):
                    levels[l].gens.append(res)
                    levels[l].transversal = _orbit_transversal(levels[l].point, levels[l].gens, degree)
                new_level = j
                break
            if new_level is not None:
                break
        if new_level is None:
            i -= 1
        else:
            i = new_level
    return levels


class PermGroup:
    """A finite permutation group given by generators.

    The stabilizer chain is built eagerly, so ``order`` and ``contains`` are
    cheap. Instances are treated as immutable.
    """

    def __init__(
        self,
        generators: Iterable[Permutation],
        degree: int | None = None,
        *,
        base: Sequence[int] = (),
        name: str | None = None,
        parent_id: str | None = None,
    ):
        gens = list(generators)
        degrees = {g.degree for g in gens}
        if degree is None:
            if not degrees:
                degree = 1
            elif len(degrees) > 1:
                raise DegreeMismatch(f"generators have inconsistent degrees {sorted(degrees)}")
            else:
                degree = degrees.pop()
        elif degrees and degrees != {degree}:
            raise DegreeMismatch(f"generators have degrees {sorted(degrees)}, expected {degree}")
        if not 1 <= degree <= MAX_DEGREE:
            raise GroupError(f"degree {degree} outside 1..{MAX_DEGREE}")
        self.degree = degree
        self.generators: tuple[Permutation, ...] = tuple(gens)
        self.name = name
        self.parent_id = parent_id
        self.chain = _schreier_sims(self.generators, degree, base)
        self.order = 1
        for lev in self.chain:
            self.order *= len(lev.transversal)
        self._id: str | None = None

    # -- basic queries ---------------------------------------------------

    @property
    def id(self) -> str:
        if self._id is None:
            text = f"{self.degree}|" + ";".join(sorted(str(g) for g in self.generators))
            self._id = hashlib.sha256(text.encode()).hexdigest()[:16]
        return self._id

    @property
    def base(self) -> list[int]:
        return [lev.point for lev in self.chain]

    @property
    def identity(self) -> Permutation:
        return Permutation.identity(self.degree)

    def strong_generators(self) -> list[Permutation]:
        out: list[Permutation] = []
        for lev in self.chain:
            for g in lev.gens:
                if g not in out:
                    out.append(g)
        return out

    def is_trivial(self) -> bool:
        return self.order == 1

    def _check_degree(self, g: Permutation) -> None:
        if g.degree != self.degree:
            raise DegreeMismatch(f"permutation of degree {g.degree} in group of degree {self.degree}")

    def contains(self, g: Permutation) -> bool:
        self._check_degree(g)
        res, j = _sift(self.chain, g)
        return j == len(self.chain) and res.is_identity()

    __contains__ = contains

    def elements(self) -> Iterator[Permutation]:
        """All elements, each exactly once."""
        if not self.chain:
            yield self.identity
            return
        # each element factors uniquely as t_k ... t_1 with t_i from level i
        transversals = [list(lev.transversal.values()) for lev in reversed(self.chain)]
        for combo in itertools.product(*transversals):
            g = combo[0]
            for t in combo[1:]:
                g = g * t
            yield g

    def is_subgroup_of(self, other: PermGroup) -> bool:
        return (
            self.degree == other.degree
            and other.order % self.order == 0
            and all(other.contains(g) for g in self.generators)
        )

    def __eq__(self, other) -> bool:
        if not isinstance(other, PermGroup):
            return NotImplemented
        return self.order == other.order and self.is_subgroup_of(other)

    def __hash__(self) -> int:
        return hash((self.degree, self.order))

    def __len__(self) -> int:
        return self.order

    def __repr__(self) -> str:
        label = self.name or "<" + ", ".join(map(str, self.generators)) + ">"
        return f"PermGroup({label}, order={self.order})"

    # -- subgroups -------------------------------------------------------

    def subgroup(self, gens: Iterable[Permutation], name: str | None = None) -> PermGroup:
        gens = list(gens)
        for g in gens:
            if not self.contains(g):
                raise GroupError(f"{g} is not an element of {self!r}")
        return PermGroup(gens, self.degree, name=name, parent_id=self.id)

    def trivial_subgroup(self) -> PermGroup:
        return PermGroup([], self.degree, parent_id=self.id)

    def closure(self, H: PermGroup, *extra: Permutation) -> PermGroup:
        """The subgroup ``<H, extra...>``."""
        for g in extra:
            self._check_degree(g)
        self._check_degree_group(H)
        if all(H.contains(g) for g in extra):
            return H
        return PermGroup(list(H.generators) + list(extra), self.degree, parent_id=self.id)

    def join(self, A: PermGroup, B: PermGroup) -> PermGroup:
        return self.closure(A, *B.generators)

    def _check_degree_group(self, H: PermGroup) -> None:
        if H.degree != self.degree:
            raise DegreeMismatch(f"subgroup of degree {H.degree} in group of degree {self.degree}")

    def conjugate(self, H: PermGroup, g: Permutation) -> PermGroup:
        """``H^g = g^-1 H g``."""
        return PermGroup([h.conjugate(g) for h in H.generators], self.degree, parent_id=self.id)

    def intersection(self, A: PermGroup, B: PermGroup) -> PermGroup:
        """``A ∩ B`` by backtrack over the chain of the smaller group."""
        self._check_degree_group(A)
        self._check_degree_group(B)
        if A.order > B.order:
            A, B = B, A
        if A.is_subgroup_of(B):
            return A
        B = PermGroup(B.generators, self.degree, base=A.base)
        found = PermGroup([], self.degree)
        gens: list[Permutation] = []
        levels = A.chain
        depth = len(levels)

        def prefix_ok(p: Permutation, upto: int) -> bool:
            g = p
            for lev in B.chain[: upto + 1]:
                u = lev.transversal.get(g.images[lev.point])
                if u is None:
                    return False
                g = g * ~u
            return True

        def search(i: int, p: Permutation) -> None:
            nonlocal found
            if i == depth:
                if B.contains(p) and not found.contains(p):
                    gens.append(p)
                    found = PermGroup(gens, self.degree)
                return
            for t in levels[i].transversal.values():
                q = t * p
                if prefix_ok(q, i):
                    search(i + 1, q)

        search(0, self.identity)
        return PermGroup(gens, self.degree, parent_id=self.id)

    def is_normal(self, H: PermGroup) -> bool:
        return all(H.contains(h.conjugate(g)) for h in H.generators for g in self.generators)

    def normal_closure(self, gens: Iterable[Permutation]) -> PermGroup:
        gens = [g for g in gens if not g.is_identity()]
        N = PermGroup(gens, self.degree)
        changed = True
        while changed:
            changed = False
            for n in list(N.generators):
                for g in self.generators:
                    c = n.conjugate(g)
                    if not N.contains(c):
                        N = PermGroup(list(N.generators) + [c], self.degree)
                        changed = True
        return PermGroup(N.generators, self.degree, parent_id=self.id)

    def normal_core(self, H: PermGroup) -> PermGroup:
        """Largest normal subgroup of ``self`` contained in ``H``."""
        if not H.is_subgroup_of(self):
            raise GroupError("H is not a subgroup of G")
        core = H
        changed = True
        while changed and not core.is_trivial():
            changed = False
            for g in self.generators:
                nxt = self.intersection(core, self.conjugate(core, g))
                if nxt.order < core.order:
                    core = nxt
                    changed = True
        return PermGroup(core.generators, self.degree, parent_id=self.id)

    # -- series ----------------------------------------------------------

    def derived_subgroup(self) -> PermGroup:
        comms = [a.commutator(b) for a, b in itertools.combinations(self.generators, 2)]
        return self.normal_closure(comms)

    def derived_series(self) -> list[PermGroup]:
        series = [self]
        while True:
            D = series[-1].derived_subgroup()
            if D.order == series[-1].order:
                return series
            series.append(D)

    def is_solvable(self) -> bool:
        return self.derived_series()[-1].is_trivial()

    def is_abelian(self) -> bool:
        return all(a * b == b * a for a, b in itertools.combinations(self.generators, 2))

    # -- cosets ----------------------------------------------------------

    def coset_key(self, H: PermGroup, g: Permutation) -> tuple[int, ...]:
        """Canonical label of the right coset ``H g``.

        Returns the images of the element of ``H g`` whose images of the base
        of ``H`` are lexicographically least.
        """
        x = g
        for lev in H.chain:
            best = min(lev.transversal, key=lambda d: x.images[d])
            x = lev.transversal[best] * x
        return x.images

    def right_transversal(self, H: PermGroup, bound: int = DEFAULT_INDEX_BOUND) -> list[Permutation]:
        """Canonical representatives of the right cosets of ``H``; identity first."""
        self._check_degree_group(H)
        index = self.order // H.order
        if index > bound:
            raise BoundExceeded(f"index {index} exceeds bound {bound}")
        start = Permutation(self.coset_key(H, self.identity), check=False)
        reps = [start]
        seen = {start.images}
        for r in reps:
            for s in self.generators:
                key = self.coset_key(H, r * s)
                if key not in seen:
                    seen.add(key)
                    reps.append(Permutation(key, check=False))
        return reps

    def coset_action(self, H: PermGroup, bound: int = DEFAULT_INDEX_BOUND):
        """Action of the generators on right cosets of ``H``.

        Returns ``(reps, images)`` where ``images[k]`` is the permutation of
        coset indices induced by generator ``k``.
        """
        reps = self.right_transversal(H, bound)
        where = {r.images: i for i, r in enumerate(reps)}

        def act(g: Permutation) -> list[int]:
            return [where[self.coset_key(H, r * g)] for r in reps]

        return reps, act

    def double_coset_reps(self, H: PermGroup, bound: int = DEFAULT_INDEX_BOUND) -> list[Permutation]:
        """One representative per ``(H, H)`` double coset, identity first."""
        reps, act = self.coset_action(H, bound)
        h_images = [act(h) for h in H.generators]
        seen = [False] * len(reps)
        out = []
        for i in range(len(reps)):
            if seen[i]:
                continue
            out.append(reps[i])
            seen[i] = True
            stack = [i]
            while stack:
                c = stack.pop()
                for img in h_images:
                    d = img[c]
                    if not seen[d]:
                        seen[d] = True
                        stack.append(d)
        return out

    def is_maximal_in(self, H: PermGroup, bound: int = DEFAULT_INDEX_BOUND) -> bool:
        """Whether ``H`` is a maximal subgroup of ``self``.

        Checks ``<H, g> == G`` for one ``g`` per nontrivial double coset of H.
        """
        if not H.is_subgroup_of(self):
            raise GroupError("H is not a subgroup of G")
        if H.order == self.order:
            return False
        for g in self.double_coset_reps(H, bound)[1:]:
            if self.closure(H, g).order != self.order:
                return False
        return True


def symmetric_generators(n: int, offset: int = 0, degree: int | None = None) -> list[Permutation]:
    degree = degree or n
    if n < 2:
        return []
    cyc = Permutation.from_cycles([list(range(offset, offset + n))], degree)
    tr = Permutation.from_cycles([[offset, offset + 1]], degree)
    return [tr, cyc] if n > 2 else [tr]


def direct_product(G1: PermGroup, G2: PermGroup, name: str | None = None) -> PermGroup:
    """``G1 x G2`` acting on the disjoint union of the two domains."""
    n = G1.degree + G2.degree
    gens = [g.shifted(0, n) for g in G1.generators]
    gens += [g.shifted(G1.degree, n) for g in G2.generators]
    if name is None and G1.name and G2.name:
        name = f"{G1.name}x{G2.name}"
    return PermGroup(gens, n, name=name)


def build_group(generators: Iterable[Permutation], name: str | None = None) -> PermGroup:
    return PermGroup(generators, name=name)
