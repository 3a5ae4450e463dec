import itertools

import numpy as np
import pytest

from wsmgroups.corpus import agl1, cyclic, default_corpus, dihedral, quaternion, sym
from wsmgroups.groups import PermGroup
from wsmgroups.lattice import SubgroupLattice
from wsmgroups.modular import (
    GModule,
    ModuleError,
    chief_factor_module,
    composition_factor_dims,
    dual_module,
    find_proper_submodule,
    hom_space,
    is_irreducible,
    is_quasi_primitive,
    is_strongly_irreducible,
    minimal_submodules,
    module_isomorphic,
    restrict_and_lift,
    spin,
)
from wsmgroups.perm import Permutation
from wsmgroups.verify import s3_natural_module_gf2

import oracles


def s4_v4_module():
    G = sym(4)
    L = SubgroupLattice(G)
    cs = L.chief_series()
    i = next(k for k, f in enumerate(cs.factors) if f.order == 4)
    return G, L, chief_factor_module(G, cs, i, L)


def image_size(m):
    return len({a.tobytes() for a in m._element_matrices.values()})


def test_s4_klein_factor_is_full_gl2():
    G, L, m = s4_v4_module()
    assert (m.p, m.dim) == (2, 2)
    assert image_size(m) == 6
    assert m.kernel().order == 4
    assert is_irreducible(m)
    assert not is_strongly_irreducible(m, L)


def test_chief_factor_matrices_match_brute_force_conjugation():
    G, L, m = s4_v4_module()
    basis = [Permutation.parse(b, 4) for b in m.provenance["basis"]]
    for g in G.elements():
        a = m.matrix_of(g)
        for r, b in enumerate(basis):
            img = b.conjugate(g)
            want = Permutation.identity(4)
            for c, bb in zip(a[r], basis):
                want = want * bb ** int(c)
            assert img == want


def test_agl19_factor_is_fixed_point_free():
    G = agl1(9)
    L = SubgroupLattice(G)
    cs = L.chief_series()
    i = next(k for k, f in enumerate(cs.factors) if f.order == 9)
    m = chief_factor_module(G, cs, i, L)
    assert (m.p, m.dim) == (3, 2)
    alpha = next(g for g in G.elements() if g.order() == 8)
    a = m.matrix_of(alpha)
    fixed = [v for v in itertools.product(range(3), repeat=2) if any(v) and tuple(np.array(v) @ a % 3) == v]
    assert fixed == []
    lifted = restrict_and_lift(m, m.kernel(), L)
    assert lifted.group.order == 8
    assert is_strongly_irreducible(lifted, SubgroupLattice(lifted.group))


def test_central_factor_acts_trivially():
    G = quaternion(8)
    L = SubgroupLattice(G)
    cs = L.chief_series()
    m = chief_factor_module(G, cs, len(cs.factors) - 1, L)
    assert all(np.array_equal(a, np.eye(1, dtype=np.int64)) for a in m.matrices)


def test_nonabelian_factor_is_rejected():
    G = sym(5)
    L = SubgroupLattice(G)
    cs = L.chief_series()
    i = next(k for k, f in enumerate(cs.factors) if f.order == 60)
    with pytest.raises(ModuleError):
        chief_factor_module(G, cs, i, L)


def test_non_homomorphism_is_detected():
    S3 = sym(3)
    m = GModule(2, [[[1, 0], [0, 1]], [[0, 1], [1, 1]]], S3)
    with pytest.raises(ModuleError):
        m.check_homomorphism()


def test_spin_examples():
    m = s3_natural_module_gf2()
    assert spin(m, [1, 0]).dim == 2
    t = m.restrict(m.group.subgroup([Permutation.parse("(1,2)", 3)]))
    assert spin(t, [1, 1]).dim == 1
    triv = GModule.trivial(2, 2, cyclic(2))
    assert spin(triv, [1, 0]).dim == 1
    with pytest.raises(ModuleError):
        spin(m, [0, 0])


def test_s3_module_predicates():
    m = s3_natural_module_gf2()
    L = SubgroupLattice(m.group)
    assert is_irreducible(m)
    assert not is_strongly_irreducible(m, L)
    assert is_quasi_primitive(m, L)
    assert module_isomorphic(dual_module(m), m)


def test_trivial_modules():
    T = PermGroup([], degree=1)
    m = GModule.trivial(2, 1, T)
    L = SubgroupLattice(T)
    assert is_irreducible(m) and is_strongly_irreducible(m, L) and is_quasi_primitive(m, L)
    assert m.is_faithful() and dual_module(m).is_faithful()
    assert not is_irreducible(GModule.trivial(3, 2, cyclic(3)))


def test_isomorphism_examples():
    C2 = cyclic(2)
    triv = GModule(3, [[[1]]], C2)
    sign = GModule(3, [[[2]]], C2)
    assert module_isomorphic(triv, triv)
    assert not module_isomorphic(triv, sign)
    assert not module_isomorphic(triv, GModule(3, [[[1, 0], [0, 1]]], C2))
    # two minimal submodules of the doubled C3-module on GF(2)^2 + GF(2)^2
    C3 = cyclic(3)
    r = np.array([[0, 1], [1, 1]])
    big = np.block([[r, np.zeros((2, 2), dtype=np.int64)], [np.zeros((2, 2), dtype=np.int64), r]])
    m = GModule(2, [big], C3)
    mins = minimal_submodules(m)
    assert len(mins) == 5  # the points of the projective line over GF(4)
    from wsmgroups.modular import submodule

    parts = [submodule(m, W) for W in mins]
    assert all(module_isomorphic(parts[0], q) for q in parts[1:])
    with pytest.raises(ModuleError):
        module_isomorphic(triv, GModule(3, [[[1]]], cyclic(3)))


def test_hom_space_intertwines():
    m = s3_natural_module_gf2()
    for t in hom_space(m, m):
        for a in m.matrices:
            assert np.array_equal(a @ t % 2, t @ a % 2)


def test_isomorphism_search_can_report_unknown():
    # a 4-dim Hom space over GF(3) with a search bound of 3 forces sampling
    C2 = cyclic(2)
    m = GModule.trivial(3, 2, C2)
    assert module_isomorphic(m, m, bound=3)


def test_restrict_and_lift_preserves_verdicts():
    G, L, m = s4_v4_module()
    q = restrict_and_lift(m, m.kernel(), L)
    assert q.group.order == 6 and q.is_faithful()
    LQ = SubgroupLattice(q.group)
    assert is_irreducible(q) == is_irreducible(m)
    assert is_strongly_irreducible(q, LQ) == is_strongly_irreducible(m, L)
    assert restrict_and_lift(m, G.trivial_subgroup()) is m
    with pytest.raises(ModuleError):
        restrict_and_lift(m, G)


def _random_module(rng, G, p):
    """A module from a random invertible change of basis of a permutation module."""
    n = G.degree
    while True:
        c = rng.integers(0, p, size=(n, n))
        from wsmgroups import gfp

        if gfp.is_invertible(c, p):
            break
    ci = gfp.inverse(c, p)
    mats = []
    for g in G.generators:
        pm = np.zeros((n, n), dtype=np.int64)
        for i in range(n):
            pm[i, g(i)] = 1
        mats.append(ci @ pm @ c % p)
    return GModule(p, mats, G)


@pytest.mark.parametrize("G,p", [(sym(3), 2), (sym(3), 3), (cyclic(4), 3), (dihedral(4), 3), (sym(4), 5)],
                         ids=lambda x: getattr(x, "name", str(x)))
def test_irreducibility_matches_orbit_span_oracle_and_composition(G, p):
    rng = np.random.default_rng(7)
    m = _random_module(rng, G, p)
    if p ** m.dim <= 5**4:
        assert is_irreducible(m) == oracles.irreducible(p, m.matrices, m.dim)
    dims = composition_factor_dims(m)
    assert sum(dims) == m.dim
    for seed in range(3):
        assert sorted(composition_factor_dims(m, seed=seed)) == sorted(dims)


def test_basis_change_does_not_change_predicates():
    rng = np.random.default_rng(3)
    from wsmgroups import gfp

    for m, L in [(s3_natural_module_gf2(), SubgroupLattice(sym(3)))] + [
        (restrict_and_lift(mm, mm.kernel(), LL), None) for _, LL, mm in [s4_v4_module()]
    ]:
        L = L or SubgroupLattice(m.group)
        for _ in range(3):
            while True:
                c = rng.integers(0, m.p, size=(m.dim, m.dim))
                if gfp.is_invertible(c, m.p):
                    break
            ci = gfp.inverse(c, m.p)
            m2 = GModule(m.p, [ci @ a @ c % m.p for a in m.matrices], m.group)
            assert module_isomorphic(m, m2)
            assert is_irreducible(m2) == is_irreducible(m)
            assert is_strongly_irreducible(m2, L) == is_strongly_irreducible(m, L)
            assert is_quasi_primitive(m2, L) == is_quasi_primitive(m, L)


def _corpus_chief_modules(max_order):
    out = []
    for spec in default_corpus(max_order):
        G = spec.build()
        if not G.is_solvable():
            continue
        L = SubgroupLattice(G)
        cs = L.chief_series()
        for i in range(len(cs.factors)):
            out.append((spec.name, i, chief_factor_module(G, cs, i, L)))
    return out


CHIEF_MODULES = _corpus_chief_modules(32)


@pytest.mark.parametrize("name,i,m", CHIEF_MODULES, ids=[f"{n}:{i}" for n, i, _ in CHIEF_MODULES])
def test_chief_module_properties(name, i, m):
    # chief factors are irreducible G-modules
    assert is_irreducible(m)
    if m.p ** m.dim <= 256:
        assert oracles.irreducible(m.p, list(m._element_matrices.values()), m.dim)
    assert composition_factor_dims(m) == [m.dim]
    d = dual_module(m)
    assert module_isomorphic(dual_module(d), m)
    assert d.kernel() == m.kernel()
    assert find_proper_submodule(d) is None
