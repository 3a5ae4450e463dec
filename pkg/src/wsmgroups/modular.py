"""Finite-dimensional GF(p)-modules for permutation groups.

Vectors are rows and groups act on the right: ``v -> v @ rho(g)``, so
``rho(g * h) == rho(g) @ rho(h)``. For a chief factor this is conjugation,
``x -> g^-1 x g``.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field
from functools import cached_property

import numpy as np

from . import gfp
from .groups import BoundExceeded, GroupError, PermGroup
from .lattice import ChiefSeries, SubgroupLattice, quotient_group
from .perm import Permutation

DEFAULT_VECTOR_BOUND = 10**4
DEFAULT_HOM_SEARCH_BOUND = 10**4
HOM_SAMPLES = 4000


class ModuleError(ValueError):
    pass


class IsomorphismUnknown(RuntimeError):
    """Random search for an invertible intertwiner was inconclusive."""


class GModule:
    def __init__(self, p: int, matrices, group: PermGroup, provenance: dict | None = None):
        self.p = p
        self.group = group
        mats = tuple(gfp.as_matrix(a, p) for a in matrices)
        if len(mats) != len(group.generators):
            raise ModuleError(f"{len(mats)} matrices for {len(group.generators)} generators")
        if not mats:
            raise ModuleError("a module over a group without generators needs an explicit dimension; use GModule.trivial")
        n = mats[0].shape[0]
        for a in mats:
            if a.shape != (n, n) or not gfp.is_invertible(a, p):
                raise ModuleError("generator matrices must be invertible and of one size")
        self.matrices = mats
        self.dim = n
        self.provenance = provenance or {}

    @classmethod
    def trivial(cls, p: int, dim: int, group: PermGroup, provenance: dict | None = None) -> GModule:
        m = cls.__new__(cls)
        m.p, m.group, m.dim = p, group, dim
        m.matrices = tuple(np.eye(dim, dtype=np.int64) for _ in group.generators)
        m.provenance = provenance or {}
        return m

    def __repr__(self) -> str:
        return f"GModule(p={self.p}, dim={self.dim}, group order {self.group.order})"

    @cached_property
    def _element_matrices(self) -> dict[tuple[int, ...], np.ndarray]:
        """Matrix of every group element; checks the generator map is a homomorphism."""
        one = self.group.identity
        table = {one.images: np.eye(self.dim, dtype=np.int64)}
        queue = [one]
        for x in queue:
            mx = table[x.images]
            for g, a in zip(self.group.generators, self.matrices):
                y = x * g
                my = mx @ a % self.p
                seen = table.get(y.images)
                if seen is None:
                    table[y.images] = my
                    queue.append(y)
                elif not np.array_equal(seen, my):
                    raise ModuleError("generator matrices do not define a homomorphism")
        return table

    def matrix_of(self, g: Permutation) -> np.ndarray:
        try:
            return self._element_matrices[g.images]
        except KeyError:
            raise GroupError(f"{g} is not in the acting group") from None

    def check_homomorphism(self) -> None:
        self._element_matrices

    def restrict(self, H: PermGroup) -> GModule:
        mats = [self.matrix_of(h) for h in H.generators]
        if not mats:
            return GModule.trivial(self.p, self.dim, H, self.provenance)
        return GModule(self.p, mats, H, self.provenance)

    def kernel(self) -> PermGroup:
        eye = np.eye(self.dim, dtype=np.int64)
        K = self.group.trivial_subgroup()
        gens: list[Permutation] = []
        for images, a in self._element_matrices.items():
            if np.array_equal(a, eye):
                g = Permutation(images, check=False)
                if not K.contains(g):
                    gens.append(g)
                    K = self.group.subgroup(gens)
        return K

    def is_faithful(self) -> bool:
        return self.kernel().is_trivial()

    def acts_trivially(self, N: PermGroup) -> bool:
        eye = np.eye(self.dim, dtype=np.int64)
        return all(np.array_equal(self.matrix_of(n), eye) for n in N.generators)


@dataclass(frozen=True)
class Subspace:
    p: int
    basis: np.ndarray = field(compare=False)  # reduced row echelon form
    pivots: tuple[int, ...]

    @classmethod
    def span(cls, rows, p: int, n: int) -> Subspace:
        rows = np.asarray(rows, dtype=np.int64).reshape(-1, n)
        r, piv = gfp.rref(rows, p) if len(rows) else (np.zeros((0, n), dtype=np.int64), [])
        return cls(p, r, tuple(piv))

    @property
    def dim(self) -> int:
        return len(self.pivots)

    @property
    def key(self) -> bytes:
        return self.basis.tobytes() + bytes(self.pivots)

    def __eq__(self, other) -> bool:
        return isinstance(other, Subspace) and self.key == other.key

    def __hash__(self) -> int:
        return hash(self.key)

    def contains(self, v) -> bool:
        v = np.asarray(v, dtype=np.int64) % self.p
        for row, c in zip(self.basis, self.pivots):
            if v[c]:
                v = (v - v[c] * row) % self.p
        return not v.any()

    def issubspace(self, other: Subspace) -> bool:
        return all(other.contains(r) for r in self.basis)


def _spin_rows(p: int, mats, v) -> list[list[int]]:
    """Echelon rows spanning the smallest invariant subspace containing v."""
    n = len(v)
    mats = [a.tolist() for a in mats]
    echelon: list[tuple[int, list[int]]] = []

    def reduce(w):
        w = list(w)
        for c, row in echelon:
            f = w[c]
            if f:
                w = [(x - f * y) % p for x, y in zip(w, row)]
        return w

    def add(w) -> bool:
        w = reduce(w)
        for c in range(n):
            if w[c]:
                inv = pow(w[c], -1, p)
                echelon.append((c, [x * inv % p for x in w]))
                return True
        return False

    add(v)
    queue = [list(v)]
    for w in queue:
        if len(echelon) == n:
            break
        for a in mats:
            u = [sum(w[i] * a[i][j] for i in range(n)) % p for j in range(n)]
            if add(u):
                queue.append(u)
    return [row for _, row in echelon]


def spin(m: GModule, v) -> Subspace:
    """Smallest submodule of ``m`` containing the vector ``v``."""
    v = [int(x) % m.p for x in np.asarray(v).ravel()]
    if len(v) != m.dim:
        raise ModuleError("vector has the wrong length")
    if not any(v):
        raise ModuleError("cannot spin the zero vector")
    return Subspace.span(_spin_rows(m.p, m.matrices, v), m.p, m.dim)


def projective_points(p: int, n: int):
    """One nonzero vector per 1-dimensional subspace (first nonzero entry 1)."""
    for lead in range(n):
        for tail in itertools.product(range(p), repeat=n - lead - 1):
            yield [0] * lead + [1] + list(tail)


def _check_bound(m: GModule, bound: int) -> None:
    if m.p**m.dim > bound:
        raise BoundExceeded(f"{m.p}^{m.dim} vectors exceed bound {bound}")


def find_proper_submodule(m: GModule, bound: int = DEFAULT_VECTOR_BOUND) -> Subspace | None:
    """A proper nonzero submodule if one exists (exhaustive spin), else None."""
    _check_bound(m, bound)
    if m.dim == 1:
        return None
    for v in projective_points(m.p, m.dim):
        rows = _spin_rows(m.p, m.matrices, v)
        if len(rows) < m.dim:
            return Subspace.span(rows, m.p, m.dim)
    return None


def is_irreducible(m: GModule, bound: int = DEFAULT_VECTOR_BOUND) -> bool:
    return find_proper_submodule(m, bound) is None


def strong_irreducibility_witness(m: GModule, lattice: SubgroupLattice, bound: int = DEFAULT_VECTOR_BOUND):
    """``None`` if strongly irreducible, else ``(maximal subgroup id or None, submodule)``."""
    if lattice.parent.order != m.group.order:
        raise ModuleError("lattice does not belong to the acting group")
    sub = find_proper_submodule(m, bound)
    if sub is not None:
        return (None, sub)
    for i in lattice.maximal_subgroups:
        sub = find_proper_submodule(m.restrict(lattice.group(i)), bound)
        if sub is not None:
            return (i, sub)
    return None


def is_strongly_irreducible(m: GModule, lattice: SubgroupLattice, bound: int = DEFAULT_VECTOR_BOUND) -> bool:
    """Irreducible, and irreducible on restriction to every maximal subgroup.

    A trivial acting group has no maximal subgroups, so only irreducibility
    (dimension 1) is required there.
    """
    return strong_irreducibility_witness(m, lattice, bound) is None


def submodule(m: GModule, W: Subspace) -> GModule:
    """The action on an invariant subspace, in the coordinates of its echelon basis."""
    piv = list(W.pivots)
    mats = [(W.basis @ a % m.p)[:, piv] for a in m.matrices]
    if not mats:
        return GModule.trivial(m.p, W.dim, m.group)
    return GModule(m.p, mats, m.group)


def quotient_module(m: GModule, W: Subspace) -> GModule:
    """The action on ``V / W``, using the non-pivot coordinates of W."""
    free = [c for c in range(m.dim) if c not in W.pivots]
    mats = []
    for a in m.matrices:
        rows = []
        for c in free:
            v = a[c].copy()
            for row, pc in zip(W.basis, W.pivots):
                if v[pc]:
                    v = (v - v[pc] * row) % m.p
            rows.append(v[free])
        mats.append(np.array(rows, dtype=np.int64).reshape(len(free), len(free)))
    if not mats:
        return GModule.trivial(m.p, len(free), m.group)
    return GModule(m.p, mats, m.group)


def composition_factor_dims(m: GModule, seed: int = 0, bound: int = DEFAULT_VECTOR_BOUND) -> list[int]:
    """Dimensions of composition factors, splitting on spun submodules.

    Vectors are tried in a seeded random order; each proper submodule found
    splits the module into sub and quotient, which are handled recursively.
    """
    _check_bound(m, bound)
    if m.dim == 1:
        return [1]
    vecs = list(projective_points(m.p, m.dim))
    random.Random(seed).shuffle(vecs)
    for v in vecs:
        rows = _spin_rows(m.p, m.matrices, v)
        if len(rows) < m.dim:
            W = Subspace.span(rows, m.p, m.dim)
            return composition_factor_dims(submodule(m, W), seed + 1, bound) + composition_factor_dims(
                quotient_module(m, W), seed + 2, bound
            )
    return [m.dim]


def hom_space(m1: GModule, m2: GModule) -> list[np.ndarray]:
    """Basis of ``{T : rho1(g) @ T == T @ rho2(g)}`` for all generators g."""
    p, n1, n2 = m1.p, m1.dim, m2.dim
    eqs = []
    for a1, a2 in zip(m1.matrices, m2.matrices):
        cols = []
        for i in range(n1):
            for j in range(n2):
                e = np.zeros((n1, n2), dtype=np.int64)
                e[i, j] = 1
                cols.append(((a1 @ e - e @ a2) % p).ravel())
        eqs.append(np.array(cols, dtype=np.int64).T)
    if not eqs:
        return [e.reshape(n1, n2) for e in np.eye(n1 * n2, dtype=np.int64)]
    sol = gfp.nullspace(np.vstack(eqs), p)
    return [row.reshape(n1, n2) for row in sol]


def module_isomorphic(
    m1: GModule, m2: GModule, bound: int = DEFAULT_HOM_SEARCH_BOUND, seed: int = 0
) -> bool:
    if m1.p != m2.p or m1.dim != m2.dim:
        return False
    if len(m1.matrices) != len(m2.matrices) or m1.group.generators != m2.group.generators:
        raise ModuleError("modules are over different acting groups")
    p, n = m1.p, m1.dim
    basis = hom_space(m1, m2)
    d = len(basis)
    if d == 0:
        return False
    stack = np.array(basis)

    def invertible(coeffs) -> bool:
        t = np.tensordot(np.asarray(coeffs, dtype=np.int64), stack, axes=1) % p
        return gfp.rank(t, p) == n

    if p**d <= bound:
        return any(invertible(c) for c in itertools.product(range(p), repeat=d) if any(c))
    rng = random.Random(seed)
    for _ in range(HOM_SAMPLES):
        if invertible([rng.randrange(p) for _ in range(d)]):
            return True
    raise IsomorphismUnknown(f"no invertible intertwiner in {HOM_SAMPLES} samples of a {d}-dim Hom space")


def minimal_submodules(m: GModule, bound: int = DEFAULT_VECTOR_BOUND) -> list[Subspace]:
    """All inclusion-minimal submodules spun from single vectors."""
    _check_bound(m, bound)
    spans = {}
    for v in projective_points(m.p, m.dim):
        W = Subspace.span(_spin_rows(m.p, m.matrices, v), m.p, m.dim)
        spans.setdefault(W, W)
    subs = sorted(spans, key=lambda W: W.dim)
    out = []
    for W in subs:
        if not any(U.dim < W.dim and U.issubspace(W) for U in out):
            out.append(W)
    return out


def is_homogeneous(m: GModule, bound: int = DEFAULT_VECTOR_BOUND) -> bool:
    """All minimal submodules are pairwise isomorphic."""
    mins = minimal_submodules(m, bound)
    first = submodule(m, mins[0])
    return all(module_isomorphic(first, submodule(m, W)) for W in mins[1:])


def quasi_primitivity_witness(m: GModule, lattice: SubgroupLattice, bound: int = DEFAULT_VECTOR_BOUND) -> int | None:
    """Id of a normal subgroup with inhomogeneous restriction, or None."""
    if not is_irreducible(m, bound):
        raise ModuleError("quasi-primitivity is defined for irreducible modules")
    for i in lattice.normal_subgroups:
        if lattice.orders[i] == 1:
            continue
        if not is_homogeneous(m.restrict(lattice.group(i)), bound):
            return i
    return None


def is_quasi_primitive(m: GModule, lattice: SubgroupLattice, bound: int = DEFAULT_VECTOR_BOUND) -> bool:
    return quasi_primitivity_witness(m, lattice, bound) is None


def dual_module(m: GModule) -> GModule:
    """Contragredient module: ``rho*(g) = (rho(g)^-1)^T``."""
    mats = [gfp.inverse(a, m.p).T.copy() for a in m.matrices]
    if not mats:
        return GModule.trivial(m.p, m.dim, m.group, m.provenance)
    return GModule(m.p, mats, m.group, dict(m.provenance, dual=True))


def restrict_and_lift(m: GModule, N: PermGroup, lattice: SubgroupLattice | None = None) -> GModule:
    """The same module viewed over ``group / N``; N must act trivially."""
    if not N.is_subgroup_of(m.group):
        raise ModuleError("N is not a subgroup of the acting group")
    if not m.acts_trivially(N):
        raise ModuleError("N does not act trivially on the module")
    if N.is_trivial():
        return m
    Q = quotient_group(m.group, N, lattice)
    prov = dict(m.provenance, lifted_from_order=m.group.order, kernel_order=N.order)
    if not m.matrices:
        return GModule.trivial(m.p, m.dim, Q.group, prov)
    return GModule(m.p, m.matrices, Q.group, prov)


def chief_factor_module(G: PermGroup, series: ChiefSeries, i: int, lattice: SubgroupLattice) -> GModule:
    """Conjugation action of G on the chief factor ``terms[i] / terms[i+1]``."""
    f = series.factors[i]
    if f.prime is None:
        raise ModuleError(f"chief factor of order {f.order} is not elementary abelian")
    t = lattice.table
    p, n = f.prime, f.exponent
    upper = lattice.elements[f.upper]
    low_mask = lattice.masks[f.lower]
    low = lattice.elements[f.lower]

    def coset_key(x: int) -> int:
        return min(t.mul[x][l] for l in low)

    for x in upper:
        if not (low_mask >> t.power(x, p)) & 1:
            raise ModuleError(f"chief factor of order {f.order} is not elementary abelian")
        for y in upper:
            if not (low_mask >> t.mul[t.mul[t.inv[x]][t.inv[y]]][t.mul[x][y]]) & 1:
                raise ModuleError(f"chief factor of order {f.order} is not abelian")

    basis: list[int] = []
    span = low_mask
    for x in upper:
        if not (span >> x) & 1:
            basis.append(x)
            span = t.closure(lattice.gens[f.lower] + basis)
    assert len(basis) == n

    coords: dict[int, tuple[int, ...]] = {}
    for vec in itertools.product(range(p), repeat=n):
        x = 0
        for b, a in zip(basis, vec):
            x = t.mul[x][t.power(b, a)]
        coords[coset_key(x)] = vec
    mats = []
    for g in G.generators:
        gi = t.index_of(g)
        mats.append([coords[coset_key(t.conj(b, gi))] for b in basis])
    prov = {
        "factor_index": i,
        "factor_order": f.order,
        "upper": f.upper,
        "lower": f.lower,
        "basis": [str(t.elements[b]) for b in basis],
    }
    if not mats:
        return GModule.trivial(p, n, G, prov)
    return GModule(p, mats, G, prov)


def centralizer_quotient_module(m: GModule, lattice: SubgroupLattice | None = None) -> GModule:
    """Lift ``m`` to ``group / kernel``, where it is faithful."""
    return restrict_and_lift(m, m.kernel(), lattice)
