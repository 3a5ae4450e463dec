"""Executable checks of the WSM-group results over concrete groups.

Every check returns a :class:`VerificationReport`. A failing report always
carries at least one witness (subgroups as generator lists in cycle notation)
and a skipped report always carries a reason.
"""

from __future__ import annotations

import logging
import time
from math import factorial
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable

from sympy import isprime

from .characters import CharacterTable, character_table, nonvanishing_classes
from .corpus import alt
from .groups import DEFAULT_INDEX_BOUND, BoundExceeded, PermGroup, direct_product
from .lattice import DEFAULT_LATTICE_BOUND, ChainPosition, SubgroupLattice
from .modular import (
    DEFAULT_VECTOR_BOUND,
    GModule,
    chief_factor_module,
    dual_module,
    is_irreducible,
    is_quasi_primitive,
    is_strongly_irreducible,
    module_isomorphic,
    restrict_and_lift,
    strong_irreducibility_witness,
)
from .perm import Permutation

log = logging.getLogger(__name__)

THEOREMS = (
    "A",
    "B",
    "C",
    "key_lemma",
    "lemma_3_1",
    "lemma_4_1",
    "lemma_4_3",
    "remark_supersolvable",
    "remark_order72",
    "remark_nonsolvable",
    "character_table",
)

PASS, FAIL, SKIPPED = "pass", "fail", "skipped"


@dataclass
class VerificationReport:
    group: str
    theorem: str
    verdict: str
    reason: str | None = None
    witnesses: list[dict] = field(default_factory=list)
    details: dict = field(default_factory=dict)
    seconds: float = 0.0

    def __post_init__(self):
        if self.verdict == FAIL and not self.witnesses:
            raise ValueError(f"{self.theorem}: a failing report needs a witness")
        if self.verdict == SKIPPED and not self.reason:
            raise ValueError(f"{self.theorem}: a skipped report needs a reason")

    @property
    def ok(self) -> bool:
        return self.verdict != FAIL

    def to_json(self, timings: bool = False) -> dict:
        d = {"theorem": self.theorem, "verdict": self.verdict}
        if self.reason:
            d["reason"] = self.reason
        if self.details:
            d["details"] = self.details
        if self.witnesses:
            d["witnesses"] = self.witnesses
        if timings:
            d["seconds"] = round(self.seconds, 4)
        return d


def gens_text(G: PermGroup) -> list[str]:
    return [str(g) for g in G.generators]


def sub_text(L: SubgroupLattice, i: int) -> dict:
    return {"order": L.orders[i], "generators": [str(L.table.elements[x]) for x in L.gens[i]]}


def _name(G: PermGroup) -> str:
    return G.name or G.id


def _timed(fn):
    def wrapper(*args, **kwargs):
        t = time.perf_counter()
        rep = fn(*args, **kwargs)
        rep.seconds = time.perf_counter() - t
        return rep

    wrapper.__name__ = fn.__name__
    wrapper.__doc__ = fn.__doc__
    return wrapper


def group_check(fn):
    """Accept either a GroupContext or ``(G, L=None, T=None)``, and time the call."""

    def wrapper(G, L=None, T=None):
        ctx = G if isinstance(G, GroupContext) else GroupContext(G, lattice=L, table=T)
        t = time.perf_counter()
        rep = fn(ctx)
        rep.seconds = time.perf_counter() - t
        return rep

    wrapper.__name__ = fn.__name__
    wrapper.__doc__ = fn.__doc__
    return wrapper


# -- WSM predicate --------------------------------------------------------


def wsm_witness(L: SubgroupLattice) -> tuple[int, int, int] | None:
    """``(H, M, X)`` with H maximal in M but not in X, both in Max(G, H); None if WSM."""
    for c in L.classes:
        h = c[0]
        if h == L.top or L.is_maximal(h):
            continue
        members = L.max_over(h)
        good = [m for m in members if L.is_maximal_in(h, m)]
        bad = [m for m in members if not L.is_maximal_in(h, m)]
        if good and bad:
            return h, good[0], bad[0]
    return None


def is_wsm(G, L: SubgroupLattice | None = None) -> bool:
    """Every weak second maximal subgroup is second maximal.

    Accepts ``(G, L)``, a lattice alone, or a group (whose lattice is then built).
    """
    if L is None:
        L = G if isinstance(G, SubgroupLattice) else SubgroupLattice(G)
    return all(
        L.classify_chain_position(c[0]) != ChainPosition.WEAK_SECOND_MAXIMAL_ONLY
        for c in L.classes
        if c[0] != L.top
    )


# -- group context --------------------------------------------------------


@dataclass
class ChiefModule:
    index: int
    order: int
    prime: int
    non_frattini: bool
    module: GModule  # action of G
    lifted: GModule  # faithful action of G / C_G(factor)
    lifted_lattice: SubgroupLattice


class GroupContext:
    """Lazily computed data about one group, shared by the verifiers."""

    def __init__(
        self,
        G: PermGroup,
        lattice_bound: int = DEFAULT_LATTICE_BOUND,
        char_bound: int = 2000,
        vector_bound: int = DEFAULT_VECTOR_BOUND,
        lattice: SubgroupLattice | None = None,
        table: CharacterTable | None = None,
        index_bound: int = DEFAULT_INDEX_BOUND,
    ):
        self.G = G
        self.index_bound = index_bound
        self.lattice_bound = lattice_bound
        self.char_bound = char_bound
        self.vector_bound = vector_bound
        if lattice is not None:
            self.__dict__["lattice"] = lattice
        if table is not None:
            self.__dict__["table"] = table

    @property
    def name(self) -> str:
        return _name(self.G)

    @cached_property
    def lattice(self) -> SubgroupLattice | None:
        if self.G.order > self.lattice_bound:
            return None
        return SubgroupLattice(self.G, self.lattice_bound)

    @cached_property
    def table(self) -> CharacterTable | None:
        if self.G.order > self.char_bound:
            return None
        if "lattice" in self.__dict__ and self.lattice is not None:
            return character_table(self.lattice.table, self.char_bound)
        return character_table(self.G, self.char_bound)

    @cached_property
    def solvable(self) -> bool:
        return self.G.is_solvable()

    @cached_property
    def chief_modules(self) -> list[ChiefModule]:
        L = self.lattice
        cs = L.chief_series()
        out = []
        for i, f in enumerate(cs.factors):
            m = chief_factor_module(self.G, cs, i, L)
            C = m.kernel()
            lifted = restrict_and_lift(m, C, L)
            out.append(
                ChiefModule(i, f.order, f.prime, f.non_frattini, m, lifted, SubgroupLattice(lifted.group))
            )
        return out

    def need_lattice(self) -> str | None:
        if self.lattice is None:
            return f"|G| = {self.G.order} exceeds lattice bound {self.lattice_bound}"
        return None


# -- per-group verifiers --------------------------------------------------


@group_check
def verify_theorem_B(ctx: GroupContext) -> VerificationReport:
    """In a solvable group, a weak second maximal H is non-maximal in at most one member of Max(G, H)."""
    name = ctx.name
    if (why := ctx.need_lattice()) is not None:
        return VerificationReport(name, "B", SKIPPED, why)
    if not ctx.solvable:
        return VerificationReport(name, "B", SKIPPED, "hypothesis not met: G is not solvable")
    L = ctx.lattice
    witnesses = []
    checked = 0
    worst = 0
    for c in L.classes:
        h = c[0]
        if h == L.top or L.is_maximal(h):
            continue
        members = L.max_over(h)
        if not any(L.is_maximal_in(h, m) for m in members):
            continue
        checked += 1
        bad = L.bad_members(h)
        worst = max(worst, len(bad))
        if len(bad) > 1:
            witnesses.append({"H": sub_text(L, h), "bad_members": [sub_text(L, x) for x in bad]})
    details = {"weak_second_maximal_classes": checked, "max_bad_members": worst}
    return VerificationReport(name, "B", FAIL if witnesses else PASS, None, witnesses, details)


@group_check
def verify_key_lemma(ctx: GroupContext) -> VerificationReport:
    """If H is maximal in M but not in X, with M, X in Max(G, H), then core(H) = core(M)."""
    name = ctx.name
    if (why := ctx.need_lattice()) is not None:
        return VerificationReport(name, "key_lemma", SKIPPED, why)
    L = ctx.lattice
    witnesses = []
    triples = 0
    for c in L.classes:
        h = c[0]
        if h == L.top or L.is_maximal(h):
            continue
        members = L.max_over(h)
        good = [m for m in members if L.is_maximal_in(h, m)]
        bad = [m for m in members if not L.is_maximal_in(h, m)]
        if not (good and bad):
            continue
        core_h = L.normal_core(h)
        for m in good:
            triples += len(bad)
            if L.normal_core(m) != core_h:
                witnesses.append(
                    {"H": sub_text(L, h), "M": sub_text(L, m), "X": sub_text(L, bad[0]),
                     "core_H": L.orders[core_h], "core_M": L.orders[L.normal_core(m)]}
                )
    return VerificationReport(
        name, "key_lemma", FAIL if witnesses else PASS, None, witnesses, {"triples": triples}
    )


def _strongly_irreducible_side(ctx: GroupContext) -> tuple[bool, list[dict], list[dict]]:
    """Side (b): every non-Frattini chief factor is strongly irreducible over G/C_G(factor)."""
    rows, witnesses = [], []
    for cm in ctx.chief_modules:
        row = {"factor": cm.index, "order": cm.order, "non_frattini": cm.non_frattini}
        if cm.non_frattini:
            w = strong_irreducibility_witness(cm.lifted, cm.lifted_lattice, ctx.vector_bound)
            row["strongly_irreducible"] = w is None
            if w is not None:
                m_id, sub = w
                witnesses.append({
                    "chief_factor": row,
                    "acting_group_order": cm.lifted.group.order,
                    "maximal_subgroup": None if m_id is None else sub_text(cm.lifted_lattice, m_id),
                    "invariant_subspace": sub.basis.tolist(),
                })
        rows.append(row)
    return not witnesses, rows, witnesses


@group_check
def verify_theorem_C(ctx: GroupContext) -> VerificationReport:
    """For solvable G: WSM iff every non-Frattini chief factor is strongly irreducible."""
    name = ctx.name
    if (why := ctx.need_lattice()) is not None:
        return VerificationReport(name, "C", SKIPPED, why)
    if not ctx.solvable:
        return VerificationReport(name, "C", SKIPPED, "hypothesis not met: G is not solvable")
    L = ctx.lattice
    side_a = wsm_witness(L)
    a = side_a is None
    b, rows, b_witnesses = _strongly_irreducible_side(ctx)
    details = {"wsm": a, "chief_factors_strongly_irreducible": b, "chief_factors": rows}
    if a == b:
        return VerificationReport(name, "C", PASS, None, [], details)
    witnesses = list(b_witnesses)
    if side_a is not None:
        h, m, x = side_a
        witnesses.append({"H": sub_text(L, h), "M": sub_text(L, m), "X": sub_text(L, x)})
    if not witnesses:
        witnesses.append({"sides": {"a": a, "b": b}})
    return VerificationReport(name, "C", FAIL, None, witnesses, details)


@group_check
def verify_theorem_A(ctx: GroupContext) -> VerificationReport:
    """In a solvable WSM-group every non-vanishing element lies in the Fitting subgroup."""
    name = ctx.name
    if (why := ctx.need_lattice()) is not None:
        return VerificationReport(name, "A", SKIPPED, why)
    if ctx.table is None:
        return VerificationReport(name, "A", SKIPPED, f"|G| exceeds character bound {ctx.char_bound}")
    L, T = ctx.lattice, ctx.table
    fit = L.masks[L.fitting()]
    nv = nonvanishing_classes(T)
    outside = [k for k in nv if any(not (fit >> x) & 1 for x in T.classes.members[k])]
    details = {
        "fitting_order": L.orders[L.fitting()],
        "nonvanishing_classes": len(nv),
        "nonvanishing_elements": sum(T.classes.sizes[k] for k in nv),
    }
    if not ctx.solvable:
        return VerificationReport(name, "A", SKIPPED, "hypothesis not met: G is not solvable", details=details)
    if not is_wsm(L):
        # recorded for the general conjecture on solvable groups, never asserted
        details["observed_nonvanishing_in_fitting"] = not outside
        if outside:
            log.warning("%s: non-vanishing element outside F(G) in a solvable group: %s",
                        name, T.classes.representatives[outside[0]])
        return VerificationReport(name, "A", SKIPPED, "hypothesis not met: G is not a WSM-group", details=details)
    witnesses = [
        {"class_representative": str(T.classes.representatives[k]), "class_size": T.classes.sizes[k]}
        for k in outside
    ]
    return VerificationReport(name, "A", FAIL if witnesses else PASS, None, witnesses, details)


@group_check
def verify_lemma_3_1(ctx: GroupContext) -> VerificationReport:
    """Strong irreducibility of a chief factor is unchanged by passing to G/C_G(factor)."""
    name = ctx.name
    if (why := ctx.need_lattice()) is not None:
        return VerificationReport(name, "lemma_3_1", SKIPPED, why)
    if not ctx.solvable:
        return VerificationReport(name, "lemma_3_1", SKIPPED, "chief factors are not all elementary abelian")
    L = ctx.lattice
    witnesses, rows = [], []
    for cm in ctx.chief_modules:
        over_g = (is_irreducible(cm.module, ctx.vector_bound), is_strongly_irreducible(cm.module, L, ctx.vector_bound))
        over_q = (
            is_irreducible(cm.lifted, ctx.vector_bound),
            is_strongly_irreducible(cm.lifted, cm.lifted_lattice, ctx.vector_bound),
        )
        rows.append({"factor": cm.index, "over_G": list(over_g), "over_quotient": list(over_q)})
        if over_g != over_q:
            witnesses.append(rows[-1])
    return VerificationReport(name, "lemma_3_1", FAIL if witnesses else PASS, None, witnesses, {"factors": rows})


def s3_natural_module_gf2() -> GModule:
    """S3 on GF(2)^2: irreducible and quasi-primitive, but not strongly irreducible."""
    from .corpus import sym

    S3 = sym(3)
    mats = {"(1,2)": [[0, 1], [1, 0]], "(1,2,3)": [[0, 1], [1, 1]]}
    return GModule(2, [mats[str(g)] for g in S3.generators], S3, {"source": "S3 on GF(2)^2"})


def converse_exhibits() -> list[tuple[str, GModule, SubgroupLattice]]:
    m = s3_natural_module_gf2()
    return [("S3 on GF(2)^2", m, SubgroupLattice(m.group))]


def _module_entries(ctx: GroupContext) -> list[tuple[str, GModule, SubgroupLattice]]:
    return [(f"{ctx.name}:factor{cm.index}", cm.lifted, cm.lifted_lattice) for cm in ctx.chief_modules]


@_timed
def verify_lemma_4_1(entries: Iterable[tuple[str, GModule, SubgroupLattice]], group: str = "modules",
                     bound: int = DEFAULT_VECTOR_BOUND) -> VerificationReport:
    """Every strongly irreducible module is quasi-primitive (the converse is only recorded)."""
    witnesses, converse, checked = [], [], 0
    for label, m, lat in entries:
        if not is_irreducible(m, bound):
            continue
        si = is_strongly_irreducible(m, lat, bound)
        qp = is_quasi_primitive(m, lat, bound)
        checked += 1
        if si and not qp:
            witnesses.append({"module": label, "p": m.p, "dim": m.dim, "acting_group_order": m.group.order})
        elif qp and not si:
            converse.append(label)
    details = {"modules": checked, "quasi_primitive_not_strongly_irreducible": converse}
    return VerificationReport(group, "lemma_4_1", FAIL if witnesses else PASS, None, witnesses, details)


@_timed
def verify_lemma_4_3(entries: Iterable[tuple[str, GModule, SubgroupLattice]], group: str = "modules",
                     bound: int = DEFAULT_VECTOR_BOUND) -> VerificationReport:
    """The dual module has the same kernel, and preserves (strong) irreducibility."""
    witnesses, checked = [], 0
    for label, m, lat in entries:
        d = dual_module(m)
        same_kernel = m.kernel() == d.kernel()
        irr = is_irreducible(m, bound)
        irr_d = is_irreducible(d, bound)
        si = irr and is_strongly_irreducible(m, lat, bound)
        si_d = irr_d and is_strongly_irreducible(d, lat, bound)
        faithful = m.is_faithful()
        checked += 1
        problems = []
        if not same_kernel:
            problems.append("kernel")
        if irr and not irr_d:
            problems.append("irreducibility")
        if faithful and si and not (si_d and d.is_faithful()):
            problems.append("strong irreducibility")
        if problems:
            witnesses.append({"module": label, "p": m.p, "dim": m.dim, "lost": problems})
    return VerificationReport(group, "lemma_4_3", FAIL if witnesses else PASS, None, witnesses, {"modules": checked})


@group_check
def verify_lemma_4_1_group(ctx: GroupContext) -> VerificationReport:
    if (why := ctx.need_lattice()) is not None:
        return VerificationReport(ctx.name, "lemma_4_1", SKIPPED, why)
    if not ctx.solvable:
        return VerificationReport(ctx.name, "lemma_4_1", SKIPPED, "chief factors are not all elementary abelian")
    return verify_lemma_4_1(_module_entries(ctx), ctx.name, ctx.vector_bound)


@group_check
def verify_lemma_4_3_group(ctx: GroupContext) -> VerificationReport:
    if (why := ctx.need_lattice()) is not None:
        return VerificationReport(ctx.name, "lemma_4_3", SKIPPED, why)
    if not ctx.solvable:
        return VerificationReport(ctx.name, "lemma_4_3", SKIPPED, "chief factors are not all elementary abelian")
    return verify_lemma_4_3(_module_entries(ctx), ctx.name, ctx.vector_bound)


@group_check
def check_supersolvable_implies_wsm(ctx: GroupContext) -> VerificationReport:
    """Supersolvable implies WSM; WSM but not supersolvable is recorded."""
    name = ctx.name
    if (why := ctx.need_lattice()) is not None:
        return VerificationReport(name, "remark_supersolvable", SKIPPED, why)
    L = ctx.lattice
    ss = L.is_supersolvable()
    w = wsm_witness(L)
    details = {"supersolvable": ss, "wsm": w is None}
    if ss and w is not None:
        h, m, x = w
        return VerificationReport(name, "remark_supersolvable", FAIL, None,
                                  [{"H": sub_text(L, h), "M": sub_text(L, m), "X": sub_text(L, x)}], details)
    return VerificationReport(name, "remark_supersolvable", PASS, None, [], details)


def order72_structure(ctx: GroupContext) -> dict | None:
    """Data on ``V <alpha>`` with |V| = 9 and alpha fixed-point-free of order 8, if G has that shape."""
    G, L = ctx.G, ctx.lattice
    if G.order != 72 or L is None or not ctx.solvable:
        return None
    fit = L.fitting()
    if L.orders[fit] != 9 or not all(L.table.orders[x] in (1, 3) for x in L.elements[fit]):
        return None
    fitmask = L.masks[fit]
    alphas = [x for x in range(L.table.n) if L.table.orders[x] == 8]
    if not alphas:
        return None
    a = alphas[0]
    # fixed-point-free: alpha centralises no nontrivial element of V
    fpf = all(L.table.conj(v, a) != v for v in L.elements[fit] if v != 0)
    if not fpf:
        return None
    return {"V": sub_text(L, fit), "alpha": str(L.table.elements[a]), "fitting_mask": fitmask}


@group_check
def verify_remark_order72(ctx: GroupContext) -> VerificationReport:
    """V <alpha> (|V| = 9, alpha fixed-point-free of order 8) is WSM but not supersolvable."""
    name = ctx.name
    if (why := ctx.need_lattice()) is not None:
        return VerificationReport(name, "remark_order72", SKIPPED, why)
    shape = order72_structure(ctx)
    if shape is None:
        return VerificationReport(name, "remark_order72", SKIPPED, "G is not of the form 3^2 : C8 (fixed-point-free)")
    L = ctx.lattice
    ss = L.is_supersolvable()
    w = wsm_witness(L)
    details = {"supersolvable": ss, "wsm": w is None, "V": shape["V"], "alpha": shape["alpha"]}
    witnesses = []
    if ss:
        witnesses.append({"unexpected": "supersolvable", "chief_orders": [f.order for f in L.chief_series().factors]})
    if w is not None:
        h, m, x = w
        witnesses.append({"H": sub_text(L, h), "M": sub_text(L, m), "X": sub_text(L, x)})
    return VerificationReport(name, "remark_order72", FAIL if witnesses else PASS, None, witnesses, details)


@group_check
def verify_character_table(ctx: GroupContext) -> VerificationReport:
    """Both orthogonality relations hold exactly, and linear characters number |G:G'|."""
    name = ctx.name
    if ctx.table is None:
        return VerificationReport(name, "character_table", SKIPPED, f"|G| exceeds character bound {ctx.char_bound}")
    T = ctx.table
    defects = T.orthogonality_defects()
    linear = sum(1 for d in T.degrees if d == 1)
    index = ctx.G.order // ctx.G.derived_subgroup().order
    witnesses = [{"relation": kind, "i": i, "j": j} for kind, i, j in defects[:10]]
    if linear != index:
        witnesses.append({"linear_characters": linear, "abelianisation_order": index})
    details = {"degrees": T.degrees, "classes": len(T.classes), "prime": T.prime}
    return VerificationReport(name, "character_table", FAIL if witnesses else PASS, None, witnesses, details)


# -- the non-solvable counterexample -------------------------------------


@dataclass
class NonsolvableCounterexample:
    p: int
    G: PermGroup
    X1: PermGroup
    X2: PermGroup
    M: PermGroup
    H: PermGroup
    Y: PermGroup  # B x B, strictly between H and both X_i


def nonsolvable_counterexample_groups(p: int) -> NonsolvableCounterexample:
    n = 2 * p
    A = alt(p)
    # A_(p-1) as the stabiliser of the last point
    B = A.subgroup([g.shifted(0, p) for g in alt(p - 1).generators])

    def left(g):
        return g.shifted(0, n)

    def right(g):
        return g.shifted(p, n)

    def diag(g):
        return Permutation(list(g.images) + [i + p for i in g.images], check=False)

    G = direct_product(A, A, name=f"A{p}xA{p}")
    X1 = G.subgroup([left(g) for g in A.generators] + [right(g) for g in B.generators])
    X2 = G.subgroup([left(g) for g in B.generators] + [right(g) for g in A.generators])
    M = G.subgroup([diag(g) for g in A.generators])
    H = G.subgroup([diag(g) for g in B.generators])
    Y = G.subgroup([left(g) for g in B.generators] + [right(g) for g in B.generators])
    return NonsolvableCounterexample(p, G, X1, X2, M, H, Y)


def build_nonsolvable_counterexample(p: int = 7, index_bound: int = DEFAULT_INDEX_BOUND) -> VerificationReport:
    """Check that in A_p x A_p the diagonal A_(p-1) is weak second maximal with two bad members."""
    t0 = time.perf_counter()
    name = f"A{p}xA{p}"
    if p < 7:
        return VerificationReport(name, "remark_nonsolvable", SKIPPED, "p must be a prime >= 7")
    ce = nonsolvable_counterexample_groups(p)
    G, X1, X2, M, H, Y = ce.G, ce.X1, ce.X2, ce.M, ce.H, ce.Y
    try:
        checks = {
            "G_not_solvable": not G.is_solvable(),
            "index_M_H": M.order // H.order,
            "H_maximal_in_M": M.is_maximal_in(H, index_bound),
            "X1_maximal_in_G": G.is_maximal_in(X1, index_bound),
            "X2_maximal_in_G": G.is_maximal_in(X2, index_bound),
            "M_maximal_in_G": G.is_maximal_in(M, index_bound),
            "H_in_X1_X2_M": H.is_subgroup_of(X1) and H.is_subgroup_of(X2) and H.is_subgroup_of(M),
            "H_lt_BxB_lt_X1": H.is_subgroup_of(Y) and Y.is_subgroup_of(X1) and H.order < Y.order < X1.order,
            "H_lt_BxB_lt_X2": H.is_subgroup_of(Y) and Y.is_subgroup_of(X2) and H.order < Y.order < X2.order,
            "X1_ne_X2": X1 != X2,
            "index_X1_BxB": X1.order // Y.order,
            "order_G": G.order,
        }
    except BoundExceeded as exc:
        return VerificationReport(name, "remark_nonsolvable", SKIPPED, str(exc))
    confirmed = (
        checks["G_not_solvable"]
        and checks["index_M_H"] == p
        and checks["H_maximal_in_M"]
        and checks["X1_maximal_in_G"]
        and checks["X2_maximal_in_G"]
        and checks["M_maximal_in_G"]
        and checks["H_in_X1_X2_M"]
        and checks["H_lt_BxB_lt_X1"]
        and checks["H_lt_BxB_lt_X2"]
        and checks["X1_ne_X2"]
    )
    checks["bad_members"] = 2 if checks["H_lt_BxB_lt_X1"] and checks["H_lt_BxB_lt_X2"] and checks["X1_ne_X2"] else None
    witnesses = [] if confirmed else [
        {"H": gens_text(H), "M": gens_text(M), "X1": gens_text(X1), "X2": gens_text(X2), "checks": checks}
    ]
    rep = VerificationReport(name, "remark_nonsolvable", PASS if confirmed else FAIL, None, witnesses, checks)
    rep.seconds = time.perf_counter() - t0
    return rep


def matches_nonsolvable_example(G: PermGroup) -> int | None:
    """The prime p if G equals the builtin A_p x A_p (p >= 7), else None."""
    if G.degree % 2:
        return None
    p = G.degree // 2
    if p < 7 or not isprime(p) or G.order != (factorial(p) // 2) ** 2:
        return None
    A = alt(p)
    return p if G == direct_product(A, A) else None


@group_check
def verify_remark_nonsolvable(ctx: GroupContext) -> VerificationReport:
    p = matches_nonsolvable_example(ctx.G)
    if p is None:
        return VerificationReport(ctx.name, "remark_nonsolvable", SKIPPED, "G is not A_p x A_p for a prime p >= 7")
    rep = build_nonsolvable_counterexample(p, ctx.index_bound)
    rep.group = ctx.name
    return rep


GROUP_VERIFIERS = {
    "A": verify_theorem_A,
    "B": verify_theorem_B,
    "C": verify_theorem_C,
    "key_lemma": verify_key_lemma,
    "lemma_3_1": verify_lemma_3_1,
    "lemma_4_1": verify_lemma_4_1_group,
    "lemma_4_3": verify_lemma_4_3_group,
    "remark_supersolvable": check_supersolvable_implies_wsm,
    "remark_order72": verify_remark_order72,
    "remark_nonsolvable": verify_remark_nonsolvable,
    "character_table": verify_character_table,
}


def verify_group(ctx: GroupContext, theorems: Iterable[str] = THEOREMS) -> list[VerificationReport]:
    out = []
    for th in theorems:
        try:
            out.append(GROUP_VERIFIERS[th](ctx))
        except BoundExceeded as exc:
            out.append(VerificationReport(ctx.name, th, SKIPPED, f"bound exceeded: {exc}"))
        except Exception as exc:  # recorded, never aborts a corpus run
            log.exception("%s: %s crashed", ctx.name, th)
            out.append(VerificationReport(ctx.name, th, FAIL, None,
                                          [{"error": f"{type(exc).__name__}: {exc}"}]))
    return out


def verify_remark_supersolvable(reports: Iterable[VerificationReport], group: str = "corpus") -> VerificationReport:
    """Corpus level: supersolvable implies WSM everywhere, and the converse fails somewhere.

    Takes the per-group ``remark_supersolvable`` reports.
    """
    t = time.perf_counter()
    reports = [r for r in reports if r.theorem == "remark_supersolvable" and r.verdict != SKIPPED]
    failures = [{"group": r.group, "witnesses": r.witnesses} for r in reports if r.verdict == FAIL]
    exhibits = sorted(r.group for r in reports if r.details.get("wsm") and not r.details.get("supersolvable"))
    details = {
        "groups": len(reports),
        "supersolvable": sum(1 for r in reports if r.details.get("supersolvable")),
        "wsm_not_supersolvable": exhibits,
    }
    if not failures and not exhibits:
        failures.append({"missing": "no WSM group that is not supersolvable was found"})
    rep = VerificationReport(group, "remark_supersolvable", FAIL if failures else PASS, None, failures, details)
    rep.seconds = time.perf_counter() - t
    return rep


def chief_series_independence(ctx: GroupContext, limit: int = 50) -> VerificationReport:
    """Compare up to ``limit`` chief series: factors must match up to G-isomorphism.

    Also checks that the non-Frattini flag and the strong irreducibility
    verdict of matched factors agree, so side (b) of the WSM criterion does
    not depend on the chosen series.
    """
    t0 = time.perf_counter()
    name = ctx.name
    if (why := ctx.need_lattice()) is not None:
        return VerificationReport(name, "chief_series_independence", SKIPPED, why)
    if not ctx.solvable:
        return VerificationReport(name, "chief_series_independence", SKIPPED, "G is not solvable")
    G, L = ctx.G, ctx.lattice

    def profile(series):
        rows = []
        for i, f in enumerate(series.factors):
            m = chief_factor_module(G, series, i, L)
            rows.append((f, m, is_strongly_irreducible(m, L, ctx.vector_bound)))
        return rows

    all_series = L.all_chief_series(limit)
    ref = profile(all_series[0])
    witnesses = []
    for s in all_series[1:]:
        other = profile(s)
        unused = list(range(len(other)))
        for f, m, si in ref:
            hit = next(
                (j for j in unused
                 if other[j][0].order == f.order
                 and other[j][0].non_frattini == f.non_frattini
                 and other[j][2] == si
                 and module_isomorphic(m, other[j][1])),
                None,
            )
            if hit is None:
                witnesses.append({"series": list(s.terms), "reference": list(all_series[0].terms),
                                  "factor_order": f.order})
                break
            unused.remove(hit)
    rep = VerificationReport(name, "chief_series_independence", FAIL if witnesses else PASS, None,
                             witnesses, {"series_compared": len(all_series)})
    rep.seconds = time.perf_counter() - t0
    return rep
