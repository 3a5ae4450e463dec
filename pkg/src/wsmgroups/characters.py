"""Conjugacy classes and exact character tables (Dixon-Schneider).

Class sums are diagonalised simultaneously over GF(l) for a prime
``l = 1 mod exp(G)``; each character is then lifted to Z[zeta_e] by reading
off eigenvalue multiplicities from its values on powers of each class.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from functools import cached_property
from math import gcd, isqrt

import numpy as np
from sympy import isprime, primitive_root

from . import gfp
from .cyclotomic import Cyclotomic, reduction_matrix
from .groups import BoundExceeded, PermGroup
from .perm import Permutation
from .table import ElementTable

DEFAULT_CHAR_BOUND = 2000


class LiftError(ArithmeticError):
    """Modular eigenvalue data did not lift to cyclotomic integers (a bug)."""


@dataclass
class ConjugacyClasses:
    table: ElementTable
    members: list[list[int]]  # element indices, each list sorted
    class_of: list[int]  # element index -> class index

    @property
    def representatives(self) -> list[Permutation]:
        return [self.table.elements[m[0]] for m in self.members]

    @property
    def sizes(self) -> list[int]:
        return [len(m) for m in self.members]

    @property
    def orders(self) -> list[int]:
        return [self.table.orders[m[0]] for m in self.members]

    def __len__(self) -> int:
        return len(self.members)

    @cached_property
    def inverse_map(self) -> list[int]:
        t = self.table
        return [self.class_of[t.inv[m[0]]] for m in self.members]

    def power_map(self, k: int) -> list[int]:
        t = self.table
        return [self.class_of[t.power(m[0], k)] for m in self.members]

    def centralizer_order(self, k: int) -> int:
        return self.table.n // len(self.members[k])


def conjugacy_classes(G: PermGroup | ElementTable, bound: int = DEFAULT_CHAR_BOUND) -> ConjugacyClasses:
    t = G if isinstance(G, ElementTable) else ElementTable(G, bound)
    class_of = [-1] * t.n
    raw = []
    for x in range(t.n):
        if class_of[x] >= 0:
            continue
        orbit = [x]
        class_of[x] = len(raw)
        for y in orbit:
            for g in t.gens:
                z = t.conj(y, g)
                if class_of[z] < 0:
                    class_of[z] = len(raw)
                    orbit.append(z)
        raw.append(sorted(orbit))
    # identity first, then by element order, then by smallest member
    raw.sort(key=lambda m: (t.orders[m[0]], m[0]))
    for c, m in enumerate(raw):
        for x in m:
            class_of[x] = c
    return ConjugacyClasses(t, raw, class_of)


def dixon_prime(order: int, exponent: int) -> int:
    """Smallest prime l = 1 mod exponent with l > 2 sqrt(order)."""
    lo = 2 * isqrt(order) + 1
    k = max(1, -(-(lo - 1) // exponent))
    while True:
        l = k * exponent + 1
        if l > lo - 1 and l * l > 4 * order and isprime(l):
            return l
        k += 1


def class_matrices(cc: ConjugacyClasses) -> np.ndarray:
    """``a[j, i, k]`` = #{x in C_i : x^-1 g_k in C_j} (class multiplication coefficients)."""
    t = cc.table
    r = len(cc)
    a = np.zeros((r, r, r), dtype=np.int64)
    cls = cc.class_of
    for k, m in enumerate(cc.members):
        g = m[0]
        for x in range(t.n):
            a[cls[t.mul[t.inv[x]][g]], cls[x], k] += 1
    return a


def _split(basis: np.ndarray, piv: list[int], P: np.ndarray, l: int) -> list[tuple[np.ndarray, list[int]]]:
    """Split a P-invariant row space into left eigenspaces of P."""
    d = basis.shape[0]
    C = (basis @ P % l)[:, piv]
    out = []
    total = 0
    for lam in gfp.poly_roots(gfp.charpoly(C, l), l):
        shifted = (C - lam * np.eye(d, dtype=np.int64)) % l
        coeffs = gfp.left_nullspace(shifted, l)
        if len(coeffs) == 0:
            continue
        out.append(gfp.rref(coeffs @ basis % l, l))
        total += len(coeffs)
    if total != d:
        raise LiftError("class matrices are not simultaneously diagonalisable mod l")
    return out


@dataclass
class CharacterTable:
    group: PermGroup
    classes: ConjugacyClasses
    exponent: int
    prime: int
    # terms[i][k]: {t: multiplicity} with chi_i(g_k) = sum mult * zeta_e^t
    terms: list[list[dict[int, int]]] = field(repr=False)

    @property
    def degrees(self) -> list[int]:
        return [sum(row[0].values()) for row in self.terms]

    def __len__(self) -> int:
        return len(self.terms)

    @cached_property
    def rows(self) -> list[list[Cyclotomic]]:
        e = self.exponent
        return [[Cyclotomic.from_exponents(e, v) for v in row] for row in self.terms]

    def value(self, i: int, k: int) -> Cyclotomic:
        return self.rows[i][k]

    @cached_property
    def _packed(self) -> tuple[np.ndarray, np.ndarray]:
        """Exponent and multiplicity arrays of shape (rows, classes, max terms)."""
        width = max(len(v) for row in self.terms for v in row)
        r, c = len(self.terms), len(self.classes)
        E = np.zeros((r, c, width), dtype=np.int64)
        M = np.zeros((r, c, width), dtype=np.int64)
        for i, row in enumerate(self.terms):
            for k, v in enumerate(row):
                for s, (t, mult) in enumerate(sorted(v.items())):
                    E[i, k, s] = t
                    M[i, k, s] = mult
        return E, M

    @cached_property
    def reduced(self) -> np.ndarray:
        """Canonical coordinates of every value, shape (rows, classes, phi(e))."""
        E, M = self._packed
        R = reduction_matrix(self.exponent)
        return np.einsum("ikl,iklf->ikf", M, R[E])

    def zero_mask(self) -> np.ndarray:
        return ~self.reduced.any(axis=2)

    def _hermitian_sums(self, E1, M1, E2, M2, weights) -> np.ndarray:
        """``sum_k w_k a_k conj(b_k)`` for each pair of rows of (E1, M1) and (E2, M2).

        Returns canonical coordinates, shape (n1, n2, phi(e)); all integer.
        """
        e = self.exponent
        R = reduction_matrix(e)
        n1, n2 = E1.shape[0], E2.shape[0]
        hist = np.zeros((n1, n2 * e), dtype=np.int64)
        for i in range(n1):
            exps = (E1[i][None, :, :, None] - E2[:, :, None, :]) % e
            w = weights[None, :, None, None] * M1[i][None, :, :, None] * M2[:, :, None, :]
            idx = (np.arange(n2)[:, None, None, None] * e + exps).ravel()
            np.add.at(hist[i], idx, w.ravel())
        hist = hist.reshape(n1 * n2, e)
        # integer matmul has no BLAS path; float64 is exact while every sum stays below 2^53
        bound = int(np.abs(hist).max(initial=0)) * int(np.abs(R).max(initial=0)) * e
        if bound < 2**53:
            out = np.rint(hist.astype(np.float64) @ R.astype(np.float64)).astype(np.int64)
        else:
            out = hist @ R
        return out.reshape(n1, n2, R.shape[1])

    def row_products(self) -> np.ndarray:
        E, M = self._packed
        w = np.array(self.classes.sizes, dtype=np.int64)
        return self._hermitian_sums(E, M, E, M, w)

    def column_products(self) -> np.ndarray:
        E, M = self._packed
        Et, Mt = E.transpose(1, 0, 2), M.transpose(1, 0, 2)
        w = np.ones(E.shape[0], dtype=np.int64)
        return self._hermitian_sums(Et, Mt, Et, Mt, w)

    def orthogonality_defects(self) -> list[tuple[str, int, int]]:
        """Pairs violating either orthogonality relation, compared exactly."""
        n = self.group.order
        rows = self.row_products()
        want = np.zeros_like(rows)
        want[:, :, 0] = n * np.eye(rows.shape[0], dtype=np.int64)
        bad = [("row", int(i), int(j)) for i, j in np.argwhere((rows != want).any(axis=2))]
        cols = self.column_products()
        want = np.zeros_like(cols)
        cent = [self.classes.centralizer_order(k) for k in range(cols.shape[0])]
        want[:, :, 0] = np.diag(np.array(cent, dtype=np.int64))
        bad += [("column", int(k), int(h)) for k, h in np.argwhere((cols != want).any(axis=2))]
        return bad

    def galois_defects(self) -> list[tuple[int, int, int]]:
        """``(k, i, c)`` where zeta -> zeta^k does not carry chi_i(g_c) to chi_i(g_c^k)."""
        e = self.exponent
        E, M = self._packed
        R = reduction_matrix(e)
        bad = []
        for k in range(2, e):
            if gcd(k, e) != 1:
                continue
            pm = self.classes.power_map(k)
            img = np.einsum("ikl,iklf->ikf", M, R[E * k % e])
            target = self.reduced[:, pm, :]
            for i, c in zip(*np.nonzero((img != target).any(axis=2))):
                bad.append((k, int(i), int(c)))
        return bad

    def to_json(self) -> dict:
        return {
            "group": self.group.name,
            "order": self.group.order,
            "classes": {
                "representatives": [str(g) for g in self.classes.representatives],
                "sizes": self.classes.sizes,
                "orders": self.classes.orders,
            },
            "degrees": self.degrees,
            "values": [
                [{"conductor": v.minimal().e, "coeffs": list(v.minimal().coeffs)} for v in row]
                for row in self.rows
            ],
        }

    def dumps(self) -> str:
        return json.dumps(self.to_json(), sort_keys=True)

    def to_data(self) -> dict:
        """Raw lift data, enough to rebuild the table with :meth:`from_data`."""
        return {
            "order": self.group.order,
            "exponent": self.exponent,
            "prime": self.prime,
            "class_representatives": [str(g) for g in self.classes.representatives],
            "terms": [[sorted(v.items()) for v in row] for row in self.terms],
        }

    @classmethod
    def from_data(cls, G: PermGroup | ElementTable, data: dict) -> CharacterTable:
        cc = conjugacy_classes(G, max(DEFAULT_CHAR_BOUND, data["order"]))
        if (
            data["order"] != cc.table.n
            or data["exponent"] != cc.table.exponent
            or data["class_representatives"] != [str(g) for g in cc.representatives]
        ):
            raise ValueError("character data does not match the group")
        terms = [[{int(t): int(m) for t, m in v} for v in row] for row in data["terms"]]
        return cls(cc.table.group, cc, data["exponent"], data["prime"], terms)


def character_table(G: PermGroup | ElementTable, bound: int = DEFAULT_CHAR_BOUND) -> CharacterTable:
    """Exact table of G; an existing :class:`ElementTable` of G may be passed instead."""
    if isinstance(G, ElementTable) and G.n > bound:
        raise BoundExceeded(f"|G| = {G.n} exceeds character bound {bound}")
    cc = conjugacy_classes(G, bound)
    t = cc.table
    G = t.group
    n = t.n
    r = len(cc)
    e = t.exponent
    l = dixon_prime(n, e)
    sizes = cc.sizes

    a = class_matrices(cc)
    spaces = [(np.eye(r, dtype=np.int64), list(range(r)))]
    for j in range(1, r):
        if all(b.shape[0] == 1 for b, _ in spaces):
            break
        P = (a[j].T % l).astype(np.int64)
        nxt = []
        for b, piv in spaces:
            nxt.extend([(b, piv)] if b.shape[0] == 1 else _split(b, piv, P, l))
        spaces = nxt
    if len(spaces) != r or any(b.shape[0] != 1 for b, _ in spaces):
        raise LiftError("class matrices failed to separate the characters")

    inv_cls = cc.inverse_map
    size_inv = [pow(s, -1, l) for s in sizes]
    z = pow(primitive_root(l), (l - 1) // e, l)
    values = []
    for b, _ in spaces:
        omega = b[0] * pow(int(b[0][0]), -1, l) % l
        norm = sum(int(omega[k]) * int(omega[inv_cls[k]]) * size_inv[k] for k in range(r)) % l
        dsq = n * pow(norm, -1, l) % l
        deg = next((d for d in range(1, isqrt(n) + 1) if d * d % l == dsq), None)
        if deg is None:
            raise LiftError("no integer degree matches the modular data")
        values.append([deg * int(omega[k]) * size_inv[k] % l for k in range(r)])
    vals = np.array(values, dtype=np.int64)

    terms: list[list[dict[int, int]]] = [[{} for _ in range(r)] for _ in range(r)]
    dft: dict[int, np.ndarray] = {}
    for k in range(r):
        o = cc.orders[k]
        x = cc.members[k][0]
        powers = []
        y = 0
        for _ in range(o):
            powers.append(cc.class_of[y])
            y = t.mul[y][x]
        if o not in dft:
            # W[s, m] = zo^(-m s) / o
            zo = pow(z, e // o, l)
            o_inv = pow(o, -1, l)
            zpow = np.array([pow(zo, i, l) * o_inv % l for i in range(o)], dtype=np.int64)
            idx = np.arange(o)
            dft[o] = zpow[(-np.outer(idx, idx)) % o]
        mult = _matmul_mod(vals[:, powers], dft[o], l)
        for i in range(r):
            deg = int(vals[i, 0])
            nz = np.flatnonzero(mult[i])
            row = {int(m) * (e // o): int(mult[i, m]) for m in nz}
            if sum(row.values()) != deg or any(c > deg for c in row.values()):
                raise LiftError(f"eigenvalue multiplicities do not lift for class {k}")
            terms[i][k] = row

    order = sorted(range(r), key=lambda i: (_degree(terms[i]), _sort_key(terms[i], e)))
    return CharacterTable(G, cc, e, l, [terms[i] for i in order])


def _matmul_mod(a: np.ndarray, b: np.ndarray, l: int) -> np.ndarray:
    """``a @ b mod l`` for entries in [0, l); through BLAS when float64 stays exact."""
    if (l - 1) ** 2 * a.shape[1] < 2**53:
        return np.rint(a.astype(np.float64) @ b.astype(np.float64)).astype(np.int64) % l
    if (l - 1) ** 2 * a.shape[1] < 2**63:
        return a @ b % l
    return (a.astype(object) @ b.astype(object) % l).astype(np.int64)


def _degree(row) -> int:
    return sum(row[0].values())


def _sort_key(row, e):
    return [tuple(sorted(v.items())) for v in row]


def nonvanishing_classes(T: CharacterTable) -> list[int]:
    """Classes on which no irreducible character is zero."""
    zero = T.zero_mask()
    return [k for k in range(len(T.classes)) if not zero[:, k].any()]


def nonvanishing_elements(T: CharacterTable) -> list[Permutation]:
    cc = T.classes
    return [cc.table.elements[x] for k in nonvanishing_classes(T) for x in cc.members[k]]


def vanishing_witness(T: CharacterTable, k: int) -> int | None:
    """Index of a character vanishing on class k, if any."""
    zero = T.zero_mask()
    hits = np.nonzero(zero[:, k])[0]
    return int(hits[0]) if len(hits) else None
