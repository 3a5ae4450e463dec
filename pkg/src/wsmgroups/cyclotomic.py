"""Exact arithmetic in the cyclotomic integers Z[zeta_e].

An element is stored by its coordinates in the power basis
``1, z, ..., z^(phi(e)-1)`` of ``Z[x] / Phi_e(x)``, which is canonical, so
zero testing is a coefficient check.
"""

from __future__ import annotations

import cmath
from fractions import Fraction
from functools import lru_cache
from math import gcd, lcm

import numpy as np
from sympy import divisors, totient


@lru_cache(maxsize=None)
def cyclotomic_poly(e: int) -> tuple[int, ...]:
    """Coefficients of Phi_e, lowest degree first."""
    num = [-1] + [0] * (e - 1) + [1]  # x^e - 1
    for d in divisors(e)[:-1]:
        num = _exact_div(num, list(cyclotomic_poly(d)))
    return tuple(num)


def _exact_div(num: list[int], den: list[int]) -> list[int]:
    num = list(num)
    q = [0] * (len(num) - len(den) + 1)
    for k in range(len(q) - 1, -1, -1):
        c = num[k + len(den) - 1]  # den is monic
        q[k] = c
        if c:
            for i, d in enumerate(den):
                num[k + i] -= c * d
    assert not any(num), "cyclotomic division left a remainder"
    return q


@lru_cache(maxsize=None)
def reduction_matrix(e: int) -> np.ndarray:
    """Row t holds the coordinates of x^t mod Phi_e, for 0 <= t < e."""
    phi = int(totient(e))
    poly = cyclotomic_poly(e)
    rows = np.zeros((e, phi), dtype=np.int64)
    cur = [0] * phi
    cur[0] = 1
    for t in range(e):
        rows[t] = cur
        # multiply by x, then replace x^phi by -(lower terms of Phi_e)
        top = cur[-1]
        cur = [0] + cur[:-1]
        if top:
            cur = [c - top * poly[i] for i, c in enumerate(cur)]
    rows.setflags(write=False)
    return rows


def reduce_exponents(e: int, terms: dict[int, int]) -> tuple[int, ...]:
    """Coordinates of ``sum mult * z^t`` for ``{t: mult}``."""
    red = reduction_matrix(e)
    acc = np.zeros(red.shape[1], dtype=np.int64)
    for t, c in terms.items():
        if c:
            acc += c * red[t % e]
    return tuple(int(c) for c in acc)


class Cyclotomic:
    """An element of Z[zeta_e]."""

    __slots__ = ("e", "coeffs")

    def __init__(self, e: int, coeffs):
        coeffs = tuple(int(c) for c in coeffs)
        if len(coeffs) != int(totient(e)):
            raise ValueError(f"expected {int(totient(e))} coordinates for conductor {e}")
        self.e = e
        self.coeffs = coeffs

    @classmethod
    def from_int(cls, n: int) -> Cyclotomic:
        return cls(1, (n,))

    @classmethod
    def root_of_unity(cls, e: int, t: int = 1) -> Cyclotomic:
        return cls(e, reduce_exponents(e, {t: 1}))

    @classmethod
    def from_exponents(cls, e: int, terms: dict[int, int]) -> Cyclotomic:
        return cls(e, reduce_exponents(e, terms))

    def lift(self, E: int) -> Cyclotomic:
        """The same number written over zeta_E, where e divides E."""
        if E == self.e:
            return self
        if E % self.e:
            raise ValueError(f"{self.e} does not divide {E}")
        step = E // self.e
        return Cyclotomic.from_exponents(E, {i * step: c for i, c in enumerate(self.coeffs) if c})

    def _common(self, other) -> tuple[Cyclotomic, Cyclotomic]:
        if isinstance(other, int):
            other = Cyclotomic.from_int(other)
        E = lcm(self.e, other.e)
        return self.lift(E), other.lift(E)

    def __add__(self, other) -> Cyclotomic:
        a, b = self._common(other)
        return Cyclotomic(a.e, [x + y for x, y in zip(a.coeffs, b.coeffs)])

    __radd__ = __add__

    def __neg__(self) -> Cyclotomic:
        return Cyclotomic(self.e, [-x for x in self.coeffs])

    def __sub__(self, other) -> Cyclotomic:
        return self + (-other if isinstance(other, Cyclotomic) else Cyclotomic.from_int(-other))

    def __rsub__(self, other) -> Cyclotomic:
        return -self + other

    def __mul__(self, other) -> Cyclotomic:
        a, b = self._common(other)
        terms: dict[int, int] = {}
        for i, x in enumerate(a.coeffs):
            if x:
                for j, y in enumerate(b.coeffs):
                    if y:
                        t = (i + j) % a.e
                        terms[t] = terms.get(t, 0) + x * y
        return Cyclotomic.from_exponents(a.e, terms)

    __rmul__ = __mul__

    def galois(self, k: int) -> Cyclotomic:
        """Image under zeta -> zeta^k, for k coprime to the conductor."""
        if gcd(k, self.e) != 1:
            raise ValueError("Galois exponent must be coprime to the conductor")
        terms: dict[int, int] = {}
        for i, c in enumerate(self.coeffs):
            if c:
                t = i * k % self.e
                terms[t] = terms.get(t, 0) + c
        return Cyclotomic.from_exponents(self.e, terms)

    def conjugate(self) -> Cyclotomic:
        return self.galois(-1 % self.e if self.e > 1 else 1)

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def __bool__(self) -> bool:
        return not self.is_zero()

    def __eq__(self, other) -> bool:
        if isinstance(other, int):
            other = Cyclotomic.from_int(other)
        if not isinstance(other, Cyclotomic):
            return NotImplemented
        a, b = self._common(other)
        return a.coeffs == b.coeffs

    def __hash__(self) -> int:
        m = self.minimal()
        return hash((m.e, m.coeffs))

    def is_integer(self) -> bool:
        return not any(self.coeffs[1:])

    def __int__(self) -> int:
        if not self.is_integer():
            raise ValueError(f"{self} is not a rational integer")
        return self.coeffs[0]

    def minimal(self) -> Cyclotomic:
        """Rewrite over the smallest conductor whose field contains the value."""
        return _minimal(self.e, self.coeffs)

    def to_complex(self) -> complex:
        z = cmath.exp(2j * cmath.pi / self.e)
        return sum(c * z**i for i, c in enumerate(self.coeffs))

    def __repr__(self) -> str:
        return f"Cyclotomic({self.e}, {self.coeffs})"

    def __str__(self) -> str:
        parts = []
        for i, c in enumerate(self.coeffs):
            if not c:
                continue
            mono = "" if i == 0 else (f"z{self.e}" if i == 1 else f"z{self.e}^{i}")
            if not mono:
                parts.append(str(c))
            elif c == 1:
                parts.append(mono)
            elif c == -1:
                parts.append("-" + mono)
            else:
                parts.append(f"{c}*{mono}")
        return " + ".join(parts).replace("+ -", "- ") if parts else "0"


def _fixed_by(e: int, coeffs: tuple[int, ...], sub: int) -> bool:
    """Whether the value is fixed by every zeta -> zeta^k with k = 1 mod sub."""
    ks = [k for k in range(1, e) if gcd(k, e) == 1 and k % sub == 1 % sub]
    red = reduction_matrix(e)
    vec = np.array(coeffs, dtype=np.int64)
    for k in ks:
        img = np.zeros_like(vec)
        for i, c in enumerate(coeffs):
            if c:
                img += c * red[i * k % e]
        if not np.array_equal(img, vec):
            return False
    return True


@lru_cache(maxsize=1 << 16)
def _minimal(e: int, coeffs: tuple[int, ...]) -> Cyclotomic:
    if not any(coeffs[1:]):
        return Cyclotomic(1, coeffs[:1])
    for d in divisors(e):
        if d == 1 or d == e:
            continue
        if _fixed_by(e, coeffs, d):
            return Cyclotomic(d, _solve_in_subfield(e, coeffs, d))
    return Cyclotomic(e, coeffs)


def _solve_in_subfield(e: int, coeffs: tuple[int, ...], d: int) -> tuple[int, ...]:
    """Coordinates over zeta_d of a value of Z[zeta_e] known to lie in Q(zeta_d)."""
    phi_d = int(totient(d))
    step = e // d
    red = reduction_matrix(e)
    cols = [red[(i * step) % e] for i in range(phi_d)]
    rows = len(coeffs)
    aug = [[Fraction(int(cols[j][r])) for j in range(phi_d)] + [Fraction(coeffs[r])] for r in range(rows)]
    piv_row = 0
    pivots = []
    for c in range(phi_d):
        k = next((r for r in range(piv_row, rows) if aug[r][c] != 0), None)
        if k is None:
            continue
        aug[piv_row], aug[k] = aug[k], aug[piv_row]
        inv = 1 / aug[piv_row][c]
        aug[piv_row] = [x * inv for x in aug[piv_row]]
        for r in range(rows):
            if r != piv_row and aug[r][c] != 0:
                f = aug[r][c]
                aug[r] = [x - f * y for x, y in zip(aug[r], aug[piv_row])]
        pivots.append(c)
        piv_row += 1
    sol = [Fraction(0)] * phi_d
    for r, c in enumerate(pivots):
        sol[c] = aug[r][-1]
    if any(aug[r][-1] != 0 for r in range(piv_row, rows)) or any(s.denominator != 1 for s in sol):
        raise ArithmeticError("value does not lie in Z[zeta_d]")
    return tuple(int(s) for s in sol)
