"""Builtin group constructors, corpus files and the default corpus."""

from __future__ import annotations

import ast
import itertools
import json
from math import factorial
from dataclasses import dataclass
from pathlib import Path
from typing import Callable

from sympy import factorint, isprime

from .groups import GroupError, PermGroup, direct_product, symmetric_generators
from .perm import MAX_DEGREE, Permutation, PermutationError


class CorpusError(ValueError):
    pass


# -- constructors ---------------------------------------------------------


def sym(n: int) -> PermGroup:
    if n < 1:
        raise GroupError("sym(n) needs n >= 1")
    return PermGroup(symmetric_generators(n), n, name=f"S{n}")


def alt(n: int) -> PermGroup:
    if n < 1:
        raise GroupError("alt(n) needs n >= 1")
    if n < 3:
        return PermGroup([], n, name=f"A{n}")
    gens = [Permutation.from_cycles([[0, 1, 2]], n)]
    if n > 3:
        cyc = list(range(n)) if n % 2 else list(range(1, n))
        gens.append(Permutation.from_cycles([cyc], n))
    return PermGroup(gens, n, name=f"A{n}")


def cyclic(n: int) -> PermGroup:
    """Cyclic group of order n, as disjoint cycles of prime-power lengths."""
    if n < 1:
        raise GroupError("cyclic(n) needs n >= 1")
    parts = [p**k for p, k in sorted(factorint(n).items())]
    degree = max(1, sum(parts))
    cycles, start = [], 0
    for q in parts:
        cycles.append(list(range(start, start + q)))
        start += q
    gens = [Permutation.from_cycles(cycles, degree)] if n > 1 else []
    return PermGroup(gens, degree, name=f"C{n}")


def dihedral(n: int) -> PermGroup:
    """Dihedral group of order 2n (symmetries of an n-gon; n = 1, 2 give C2, V4)."""
    if n < 1:
        raise GroupError("dihedral(n) needs n >= 1")
    if n == 1:
        return PermGroup([Permutation.from_cycles([[0, 1]], 2)], 2, name="D2")
    if n == 2:
        return PermGroup(
            [Permutation.from_cycles([[0, 1]], 4), Permutation.from_cycles([[2, 3]], 4)], 4, name="D4"
        )
    rot = Permutation.from_cycles([list(range(n))], n)
    ref = Permutation([(-i) % n for i in range(n)])
    return PermGroup([rot, ref], n, name=f"D{2 * n}")


def elem_abelian(p: int, n: int) -> PermGroup:
    if not isprime(p) or n < 1:
        raise GroupError("elem_abelian(p, n) needs a prime p and n >= 1")
    deg = p * n
    gens = [Permutation.from_cycles([list(range(i * p, (i + 1) * p))], deg) for i in range(n)]
    return PermGroup(gens, deg, name=f"{p}^{n}" if n > 1 else f"C{p}")


def _regular(elements: list, mul: Callable, gens: list, name: str) -> PermGroup:
    index = {x: i for i, x in enumerate(elements)}
    perms = [Permutation([index[mul(x, g)] for x in elements]) for g in gens]
    return PermGroup(perms, len(elements), name=name)


def dicyclic(m: int) -> PermGroup:
    """Dicyclic group <a, x | a^(2m), x^2 = a^m, a^x = a^-1> of order 4m, regular action."""
    if m < 2:
        raise GroupError("dicyclic(m) needs m >= 2")
    n = 2 * m
    elems = [(i, j) for j in range(2) for i in range(n)]

    def mul(u, v):
        (i, j), (k, l) = u, v
        # a^i x^j a^k x^l, using x a^k = a^-k x and x^2 = a^m
        k = -k if j else k
        i = (i + k) % n
        if j and l:
            return ((i + m) % n, 0)
        return (i, j ^ l)

    return _regular(elems, mul, [(1, 0), (0, 1)], f"Dic{4 * m}")


def quaternion(n: int = 8) -> PermGroup:
    """Generalised quaternion group of order n = 2^k >= 8."""
    pp = factorint(n)
    if set(pp) != {2} or n < 8:
        raise GroupError("quaternion(n) needs n a power of 2, n >= 8")
    G = dicyclic(n // 4)
    G.name = f"Q{n}"
    return G


class _Field:
    """GF(p^k) with elements encoded as integers in base p."""

    def __init__(self, q: int):
        ((p, k),) = factorint(q).items()
        self.p, self.k, self.q = p, k, q
        self.modulus = self._irreducible() if k > 1 else None

    def _irreducible(self) -> tuple[int, ...]:
        p, k = self.p, self.k
        for tail in itertools.product(range(p), repeat=k):
            poly = list(tail) + [1]  # low to high, monic
            if self._is_irreducible(poly):
                return tuple(poly)
        raise AssertionError("no irreducible polynomial found")

    def _is_irreducible(self, poly) -> bool:
        # test divisibility by every monic polynomial of degree <= k/2
        p = self.p
        for d in range(1, len(poly) // 2 + 1):
            for tail in itertools.product(range(p), repeat=d):
                if not any(_poly_mod(poly, list(tail) + [1], p)):
                    return False
        return True

    def digits(self, x: int) -> list[int]:
        return [(x // self.p**i) % self.p for i in range(self.k)]

    def encode(self, d) -> int:
        return sum(c * self.p**i for i, c in enumerate(d))

    def add(self, x: int, y: int) -> int:
        return self.encode([(a + b) % self.p for a, b in zip(self.digits(x), self.digits(y))])

    def mul(self, x: int, y: int) -> int:
        if self.k == 1:
            return x * y % self.p
        a, b = self.digits(x), self.digits(y)
        prod = [0] * (2 * self.k - 1)
        for i, u in enumerate(a):
            for j, v in enumerate(b):
                prod[i + j] = (prod[i + j] + u * v) % self.p
        return self.encode(_poly_mod(prod, list(self.modulus), self.p)[: self.k])

    def primitive_element(self) -> int:
        for w in range(2, self.q) if self.q > 2 else [1]:
            x, seen = 1, set()
            while x not in seen:
                seen.add(x)
                x = self.mul(x, w)
            if len(seen) == self.q - 1:
                return w
        return 1


def _poly_mod(a: list[int], m: list[int], p: int) -> list[int]:
    a = list(a) + [0] * max(0, len(m) - 1 - len(a))
    inv = pow(m[-1], -1, p)
    for top in range(len(a) - 1, len(m) - 2, -1):
        c = a[top] * inv % p
        if c:
            shift = top - (len(m) - 1)
            for i, v in enumerate(m):
                a[shift + i] = (a[shift + i] - c * v) % p
    return a[: len(m) - 1]


AGL1_FIELDS = (2, 3, 4, 5, 7, 8, 9, 11, 13, 16, 25, 27)


def agl1(q: int) -> PermGroup:
    """Affine group x -> a x + b over GF(q), acting on the q field elements."""
    if q not in AGL1_FIELDS:
        raise GroupError(f"agl1(q) supports q in {AGL1_FIELDS}")
    F = _Field(q)
    one = 1
    w = F.primitive_element()
    translate = Permutation([F.add(x, one) for x in range(q)])
    scale = Permutation([F.mul(w, x) for x in range(q)])
    gens = [translate] + ([] if scale.is_identity() else [scale])
    return PermGroup(gens, q, name=f"AGL(1,{q})")


def direct(a: PermGroup, b: PermGroup) -> PermGroup:
    return direct_product(a, b)


def from_generators(cycles: list[str], degree: int | None = None, name: str | None = None) -> PermGroup:
    perms = [Permutation.parse(c) for c in cycles]
    if degree is None:
        degree = max((p.degree for p in perms), default=1)
    perms = [Permutation.parse(c, degree) for c in cycles]
    return PermGroup(perms, degree, name=name)


CONSTRUCTORS: dict[str, Callable[..., PermGroup]] = {
    "sym": sym,
    "alt": alt,
    "cyclic": cyclic,
    "dihedral": dihedral,
    "elem_abelian": elem_abelian,
    "quaternion": quaternion,
    "dicyclic": dicyclic,
    "agl1": agl1,
    "direct": direct,
}


def build_source(source: str) -> PermGroup:
    """Evaluate a constructor expression such as ``direct(sym(3), cyclic(2))``."""
    try:
        tree = ast.parse(source.strip(), mode="eval")
    except SyntaxError as exc:
        raise CorpusError(f"cannot parse source {source!r}") from exc

    def ev(node):
        if isinstance(node, ast.Call) and isinstance(node.func, ast.Name) and not node.keywords:
            fn = CONSTRUCTORS.get(node.func.id)
            if fn is None:
                raise CorpusError(f"unknown constructor {node.func.id!r}")
            return fn(*[ev(a) for a in node.args])
        if isinstance(node, ast.Constant) and type(node.value) is int:
            return node.value
        raise CorpusError(f"unsupported expression in {source!r}")

    try:
        G = ev(tree.body)
    except (GroupError, PermutationError, TypeError) as exc:
        raise CorpusError(f"{source}: {exc}") from exc
    if not isinstance(G, PermGroup):
        raise CorpusError(f"{source!r} does not describe a group")
    return G


# -- specs and files ------------------------------------------------------


@dataclass
class GroupSpec:
    name: str
    source: str | list[str]
    expected_order: int | None = None
    degree: int | None = None

    def build(self) -> PermGroup:
        if isinstance(self.source, list):
            try:
                G = from_generators(self.source, self.degree, self.name)
            except (GroupError, PermutationError) as exc:
                raise CorpusError(f"{self.name}: {exc}") from exc
        else:
            G = build_source(self.source)
        G.name = self.name
        if self.expected_order is not None and G.order != self.expected_order:
            raise CorpusError(f"{self.name}: order {G.order} != expected {self.expected_order}")
        return G

    def to_json(self) -> dict:
        d = {"name": self.name, "source": self.source}
        if self.expected_order is not None:
            d["expected_order"] = self.expected_order
        if self.degree is not None:
            d["degree"] = self.degree
        return d


def spec_from_dict(d: dict) -> GroupSpec:
    if not isinstance(d, dict) or "name" not in d or "source" not in d:
        raise CorpusError("each entry needs 'name' and 'source'")
    src = d["source"]
    if not isinstance(src, (str, list)):
        raise CorpusError("'source' must be a constructor string or a list of cycles")
    return GroupSpec(str(d["name"]), src, d.get("expected_order"), d.get("degree"))


def parse_corpus(path: str | Path, validate: bool = True) -> list[GroupSpec]:
    """Read a JSON-lines corpus; blank lines and ``#`` comments are skipped."""
    specs = []
    with open(path) as fh:
        for lineno, line in enumerate(fh, 1):
            line = line.strip()
            if not line or line.startswith("#"):
                continue
            try:
                spec = spec_from_dict(json.loads(line))
                if validate:
                    spec.build()
            except (json.JSONDecodeError, CorpusError) as exc:
                raise CorpusError(f"line {lineno}: {exc}") from exc
            specs.append(spec)
    return specs


def write_corpus(specs: list[GroupSpec], path: str | Path) -> None:
    with open(path, "w") as fh:
        for s in specs:
            fh.write(json.dumps(s.to_json()) + "\n")


# -- default corpus -------------------------------------------------------

_SMALL_FACTORS = [
    ("C2", "cyclic(2)", 2),
    ("C3", "cyclic(3)", 3),
    ("C4", "cyclic(4)", 4),
    ("V4", "elem_abelian(2,2)", 4),
    ("C5", "cyclic(5)", 5),
    ("S3", "sym(3)", 6),
    ("C6", "cyclic(6)", 6),
    ("C7", "cyclic(7)", 7),
    ("C8", "cyclic(8)", 8),
    ("2^3", "elem_abelian(2,3)", 8),
    ("D8", "dihedral(4)", 8),
    ("Q8", "quaternion(8)", 8),
    ("C9", "cyclic(9)", 9),
    ("D10", "dihedral(5)", 10),
    ("A4", "alt(4)", 12),
    ("Dic12", "dicyclic(3)", 12),
    ("D12", "dihedral(6)", 12),
    ("D14", "dihedral(7)", 14),
    ("D16", "dihedral(8)", 16),
    ("Q16", "quaternion(16)", 16),
    ("AGL(1,5)", "agl1(5)", 20),
    ("S4", "sym(4)", 24),
]


def _prime_power_degree(n: int) -> int:
    """Degree of the builtin cyclic(n): one cycle per prime-power factor."""
    return sum(p**k for p, k in factorint(n).items()) if n > 1 else 1


def default_corpus(max_order: int = 200) -> list[GroupSpec]:
    """Builtin groups of order <= max_order that fit the degree cap.

    2^7 is left out: its 29212 subgroups take minutes to classify.
    Entries with the same generators as an earlier one (S2 and C2, say)
    are dropped.
    """
    specs: list[GroupSpec] = []

    def add(name, source, order):
        if order <= max_order:
            specs.append(GroupSpec(name, source, order))

    for n in range(1, 5 + 1):
        add(f"S{n}", f"sym({n})", factorial(n))
    for n in range(3, 5 + 1):
        add(f"A{n}", f"alt({n})", factorial(n) // 2)
    for n in range(1, max_order + 1):
        if _prime_power_degree(n) <= MAX_DEGREE:
            add(f"C{n}", f"cyclic({n})", n)
    for n in range(3, MAX_DEGREE + 1):
        add(f"D{2 * n}", f"dihedral({n})", 2 * n)
    for p in (2, 3, 5, 7, 11, 13):
        for k in range(2, 7):
            if p**k <= max_order and (p, k) != (2, 7):
                add(f"{p}^{k}", f"elem_abelian({p},{k})", p**k)
    for k in range(3, 7):
        add(f"Q{2**k}", f"quaternion({2**k})", 2**k)
    for m in (3, 5, 6, 7):
        add(f"Dic{4 * m}", f"dicyclic({m})", 4 * m)
    for q in (4, 5, 7, 8, 9, 11, 13):
        add(f"AGL(1,{q})", f"agl1({q})", q * (q - 1))
    for (na, sa, oa), (nb, sb, ob) in itertools.combinations_with_replacement(_SMALL_FACTORS, 2):
        if not (oa == 2 and ob == 2):
            add(f"{na}x{nb}", f"direct({sa},{sb})", oa * ob)
    add("S3xS3xC2", "direct(direct(sym(3),sym(3)),cyclic(2))", 72)
    add("A5xC2", "direct(alt(5),cyclic(2))", 120)
    add("S4xS3", "direct(sym(4),sym(3))", 144)
    add("AGL(1,9)xC2", "direct(agl1(9),cyclic(2))", 144)
    seen: set[str] = set()
    out = []
    for spec in specs:
        gid = spec.build().id
        if gid not in seen:
            seen.add(gid)
            out.append(spec)
    return out
