"""Subgroup lattices of small groups and the predicates built on them.

Subgroups are referred to by integer ids into ``SubgroupLattice.masks``;
``lattice.group(i)`` materialises one as a :class:`PermGroup`.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from functools import cached_property

from sympy import factorint

from .groups import BoundExceeded, GroupError, PermGroup
from .perm import Permutation
from .table import ElementTable, bits

DEFAULT_LATTICE_BOUND = 500
LATTICE_HARD_CAP = 2000


class ChainPosition(str, Enum):
    MAXIMAL = "maximal"
    SECOND_MAXIMAL = "second_maximal"
    WEAK_SECOND_MAXIMAL_ONLY = "weak_second_maximal_only"
    NEITHER = "neither"


@dataclass(frozen=True)
class ChiefFactor:
    upper: int
    lower: int
    order: int
    prime: int | None  # None when the order is not a prime power
    exponent: int
    non_frattini: bool


@dataclass(frozen=True)
class ChiefSeries:
    terms: tuple[int, ...]  # G = N_0 > N_1 > ... > N_k = 1, as subgroup ids
    factors: tuple[ChiefFactor, ...]  # factors[i] is terms[i] / terms[i+1]


def prime_power(n: int) -> tuple[int, int] | None:
    f = factorint(n)
    if len(f) != 1:
        return None
    ((p, k),) = f.items()
    return p, k


class SubgroupLattice:
    def __init__(self, G: PermGroup, bound: int = DEFAULT_LATTICE_BOUND):
        cap = min(bound, LATTICE_HARD_CAP)
        if G.order > cap:
            raise BoundExceeded(f"|G| = {G.order} exceeds lattice bound {cap}")
        self.parent = G
        self.table = ElementTable(G, LATTICE_HARD_CAP)
        self._setup(self._enumerate())

    @classmethod
    def from_data(cls, G: PermGroup, data: dict) -> SubgroupLattice:
        """Rebuild from :meth:`to_data` output without re-enumerating."""
        self = cls.__new__(cls)
        self.parent = G
        self.table = ElementTable(G, LATTICE_HARD_CAP)
        if data.get("elements") != [str(g) for g in self.table.elements[:2]] or data.get("order") != G.order:
            raise ValueError("lattice data does not match the group")
        found = {int(m, 16): list(g) for m, g in zip(data["masks"], data["gens"])}
        if len(found) != len(data["masks"]) or any(m >> self.table.n for m in found):
            raise ValueError("lattice data is inconsistent")
        self._setup(found)
        return self

    def to_data(self) -> dict:
        return {
            "order": self.parent.order,
            "elements": [str(g) for g in self.table.elements[:2]],
            "masks": [format(m, "x") for m in self.masks],
            "gens": self.gens,
        }

    def _setup(self, found: dict[int, list[int]]) -> None:
        elems = {m: tuple(bits(m)) for m in found}
        order = sorted(found, key=lambda m: (len(elems[m]), elems[m]))
        self.masks: list[int] = order
        self.orders = [len(elems[m]) for m in order]
        self.elements = [elems[m] for m in order]
        self.gens = [found[m] for m in order]
        self.id_of = {m: i for i, m in enumerate(order)}
        self.top = len(order) - 1
        self.bottom = 0
        self._groups: dict[int, PermGroup] = {}
        self._supersets: dict[int, list[int]] = {}
        self._classify()

    # -- construction ----------------------------------------------------

    def _enumerate(self) -> dict[int, list[int]]:
        t = self.table
        zuppos: dict[int, int] = {}
        for x in range(1, t.n):
            if prime_power(t.orders[x]) is not None:
                m = t.closure([x])
                zuppos.setdefault(m, x)
        zlist = sorted(zuppos.items())
        found: dict[int, list[int]] = {1: []}
        frontier = [1]
        while frontier:
            nxt = []
            for s in frontier:
                gs = found[s]
                for zm, z in zlist:
                    if zm & ~s == 0:
                        continue
                    T = t.closure(gs + [z], start=s) if gs else zm
                    if T not in found:
                        found[T] = gs + [z]
                        nxt.append(T)
            frontier = nxt
        return found

    def _classify(self) -> None:
        t = self.table
        class_of = [-1] * len(self.masks)
        classes: list[list[int]] = []
        for i, m in enumerate(self.masks):
            if class_of[i] >= 0:
                continue
            cls = [i]
            class_of[i] = len(classes)
            for j in cls:
                mj = self.masks[j]
                for g in t.gens:
                    c = self.id_of[t.conjugate_mask(mj, g)]
                    if class_of[c] < 0:
                        class_of[c] = len(classes)
                        cls.append(c)
            classes.append(sorted(cls))
        self.class_of = class_of
        self.classes = classes

    # -- basic access ----------------------------------------------------

    def __len__(self) -> int:
        return len(self.masks)

    @property
    def class_reps(self) -> list[int]:
        return [c[0] for c in self.classes]

    def group(self, i: int) -> PermGroup:
        if i not in self._groups:
            self._groups[i] = PermGroup(
                self.table.perms(self.gens[i]), self.parent.degree, parent_id=self.parent.id
            )
        return self._groups[i]

    def find(self, H: PermGroup) -> int:
        """Id of a subgroup given as a permutation group."""
        try:
            return self.id_of[self.table.mask_of(H)]
        except KeyError:
            raise GroupError("not a subgroup of the lattice's group") from None

    def find_mask(self, mask: int) -> int:
        return self.id_of[mask]

    def _id(self, H) -> int:
        return H if isinstance(H, int) else self.find(H)

    def contains(self, big: int, small: int) -> bool:
        ms = self.masks[small]
        return self.masks[big] & ms == ms

    def is_normal(self, i: int) -> bool:
        return len(self.classes[self.class_of[i]]) == 1

    @cached_property
    def normal_subgroups(self) -> list[int]:
        return [i for i in range(len(self.masks)) if self.is_normal(i)]

    def supersets(self, i: int) -> list[int]:
        """Ids of subgroups strictly containing subgroup ``i``."""
        if i not in self._supersets:
            m, o = self.masks[i], self.orders[i]
            self._supersets[i] = [
                j
                for j in range(i + 1, len(self.masks))
                if self.orders[j] > o and self.orders[j] % o == 0 and self.masks[j] & m == m
            ]
        return self._supersets[i]

    def subgroups_of(self, i: int) -> list[int]:
        m, o = self.masks[i], self.orders[i]
        return [j for j in range(i + 1) if o % self.orders[j] == 0 and self.masks[j] & m == self.masks[j]]

    def is_maximal_in(self, h, x) -> bool:
        """Whether subgroup ``h`` is maximal in subgroup ``x``."""
        h, x = self._id(h), self._id(x)
        if h == x or not self.contains(x, h):
            return False
        mx = self.masks[x]
        ox = self.orders[x]
        for k in self.supersets(h):
            if k != x and self.orders[k] < ox and self.masks[k] & mx == self.masks[k]:
                return False
        return True

    def upper_covers(self, i: int) -> list[int]:
        return [k for k in self.supersets(i) if self.is_maximal_in(i, k)]

    @cached_property
    def maximal_subgroups(self) -> list[int]:
        if self.top == 0:
            return []
        return [i for i in range(self.top) if self.supersets(i) == [self.top]]

    def is_maximal(self, i: int) -> bool:
        return self.supersets(i) == [self.top] and i != self.top

    def inclusion_edges(self) -> set[tuple[int, int]]:
        """Class-level maximal-inclusion edges ``(lower class, upper class)``."""
        edges = set()
        for c, members in enumerate(self.classes):
            for k in self.upper_covers(members[0]):
                edges.add((c, self.class_of[k]))
        return edges

    # -- second maximal subgroups ----------------------------------------

    def max_over(self, H) -> list[int]:
        """``Max(G, H)``: maximal subgroups of G containing H (literal subgroups)."""
        h = self._id(H)
        if h == self.top:
            raise GroupError("Max(G, H) is undefined for H = G")
        return [m for m in self.maximal_subgroups if self.contains(m, h)]

    def bad_members(self, H) -> list[int]:
        """Members of ``Max(G, H)`` in which H is not maximal."""
        h = self._id(H)
        return [m for m in self.max_over(h) if m != h and not self.is_maximal_in(h, m)]

    def classify_chain_position(self, H) -> ChainPosition:
        h = self._id(H)
        if h == self.top:
            raise GroupError("H must be a proper subgroup")
        if self.is_maximal(h):
            return ChainPosition.MAXIMAL
        members = self.max_over(h)
        flags = [self.is_maximal_in(h, m) for m in members]
        if flags and all(flags):
            return ChainPosition.SECOND_MAXIMAL
        if any(flags):
            return ChainPosition.WEAK_SECOND_MAXIMAL_ONLY
        return ChainPosition.NEITHER

    # -- characteristic subgroups ----------------------------------------

    def intersect(self, ids) -> int:
        m = self.table.full
        for i in ids:
            m &= self.masks[i]
        return self.id_of[m]

    def join(self, ids) -> int:
        gens: list[int] = []
        for i in ids:
            gens += self.gens[i]
        return self.id_of[self.table.closure(gens)]

    def frattini(self) -> int:
        return self.intersect(self.maximal_subgroups)

    def frattini_above(self, K: int) -> int:
        """Preimage of ``Phi(G/K)``: intersection of maximal subgroups containing K."""
        over = [m for m in self.maximal_subgroups if self.contains(m, K)]
        return self.intersect(over) if over else self.top

    def normal_core(self, H) -> int:
        h = self._id(H)
        return self.intersect(self.classes[self.class_of[h]])

    def o_p(self, p: int) -> int:
        """Largest normal p-subgroup."""
        best = self.bottom
        for i in self.normal_subgroups:
            pp = prime_power(self.orders[i])
            if pp and pp[0] == p and self.orders[i] > self.orders[best]:
                best = i
        return best

    def fitting(self) -> int:
        parts = [self.o_p(p) for p in factorint(self.parent.order)]
        return self.join(parts) if parts else self.bottom

    def is_nilpotent(self, i: int) -> bool:
        """A subgroup is nilpotent iff each of its Sylow subgroups is unique."""
        o = self.orders[i]
        subs = self.subgroups_of(i)
        for p, k in factorint(o).items():
            if sum(1 for j in subs if self.orders[j] == p**k) != 1:
                return False
        return True

    def minimal_normal_above(self, K: int) -> list[int]:
        """Normal subgroups N > K with no normal subgroup strictly between."""
        above = [n for n in self.normal_subgroups if n != K and self.contains(n, K)]
        out = []
        for n in above:
            if not any(
                m != n and self.orders[m] < self.orders[n] and self.contains(n, m) for m in above
            ):
                out.append(n)
        return out

    def chief_series(self) -> ChiefSeries:
        terms = [self.bottom]
        while terms[-1] != self.top:
            # ids are sorted by (order, elements): min() is the smallest by that key
            terms.append(min(self.minimal_normal_above(terms[-1])))
        terms.reverse()
        return self._series(terms)

    def all_chief_series(self, limit: int | None = None) -> list[ChiefSeries]:
        """Every chief series (bottom-up depth-first), stopping after ``limit`` of them."""
        out: list[ChiefSeries] = []

        def walk(terms):
            if limit is not None and len(out) >= limit:
                return
            if terms[-1] == self.top:
                out.append(self._series(terms[::-1]))
                return
            for n in self.minimal_normal_above(terms[-1]):
                walk(terms + [n])

        walk([self.bottom])
        return out

    def _series(self, terms: list[int]) -> ChiefSeries:
        factors = []
        for up, low in zip(terms, terms[1:]):
            order = self.orders[up] // self.orders[low]
            pp = prime_power(order)
            phi = self.frattini_above(low)
            factors.append(
                ChiefFactor(
                    upper=up,
                    lower=low,
                    order=order,
                    prime=pp[0] if pp else None,
                    exponent=pp[1] if pp else 0,
                    non_frattini=not self.contains(phi, up),
                )
            )
        return ChiefSeries(tuple(terms), tuple(factors))

    def is_supersolvable(self) -> bool:
        return all(f.prime is not None and f.exponent == 1 for f in self.chief_series().factors)

    def centralizer(self, i: int) -> int:
        """Centralizer in G of the subgroup (or subset) with id ``i``."""
        t = self.table
        elems = self.elements[i]
        mask = 0
        for g in range(t.n):
            row = t.mul[g]
            if all(row[x] == t.mul[x][g] for x in elems):
                mask |= 1 << g
        return self.id_of[mask]

    def centralizer_of_factor(self, upper: int, lower: int) -> int:
        """Kernel of the conjugation action of G on the section upper/lower."""
        t = self.table
        low = self.masks[lower]
        elems = self.elements[upper]
        mask = 0
        for g in range(t.n):
            # x^g x^-1 must lie in the lower term for every x in the upper term
            if all((low >> t.mul[t.conj(x, g)][t.inv[x]]) & 1 for x in elems):
                mask |= 1 << g
        return self.id_of[mask]

    def summary(self) -> dict:
        return {
            "order": self.parent.order,
            "subgroups": len(self.masks),
            "classes": len(self.classes),
            "class_orders": [self.orders[c[0]] for c in self.classes],
            "class_sizes": [len(c) for c in self.classes],
            "maximal_classes": sorted({self.class_of[m] for m in self.maximal_subgroups}),
            "normal": [self.orders[i] for i in self.normal_subgroups],
        }


class Quotient:
    """``G/N`` as a permutation group, with the projection from G."""

    def __init__(self, G: PermGroup, N: PermGroup, lattice: SubgroupLattice | None = None):
        if not N.is_subgroup_of(G) or not G.is_normal(N):
            raise GroupError("N is not a normal subgroup of G")
        self.source = G
        self.kernel = N
        if N.is_trivial():
            self.group = G
            self._act = None
            return
        U = N
        if lattice is not None:
            # act on cosets of a largest subgroup whose core is exactly N
            n = lattice.find(N)
            cands = [
                j for j in lattice.supersets(n)
                if j != lattice.top and lattice.normal_core(j) == n
            ]
            if cands:
                U = lattice.group(max(cands, key=lambda j: (lattice.orders[j], -j)))
        _, act = G.coset_action(U)
        self._act = act
        self.group = PermGroup([self.project(g) for g in G.generators], name=None)

    def project(self, g: Permutation) -> Permutation:
        if self._act is None:
            return g
        return Permutation(self._act(g), check=False)

    def project_subgroup(self, H: PermGroup) -> PermGroup:
        return PermGroup([self.project(h) for h in H.generators], self.group.degree)


def quotient_group(G: PermGroup, N: PermGroup, lattice: SubgroupLattice | None = None) -> Quotient:
    return Quotient(G, N, lattice)


def enumerate_subgroups(G: PermGroup, bound: int = DEFAULT_LATTICE_BOUND) -> SubgroupLattice:
    return SubgroupLattice(G, bound)
