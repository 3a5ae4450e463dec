"""Dense linear algebra over GF(p) on int64 numpy arrays.

Entries are kept in ``[0, p)``. Products are reduced after every matrix
multiply, so ``p`` must satisfy ``n * p**2 < 2**63`` for the sizes used.
"""

from __future__ import annotations

import numpy as np


def as_matrix(a, p: int) -> np.ndarray:
    return np.asarray(a, dtype=np.int64) % p


def rref(a, p: int) -> tuple[np.ndarray, list[int]]:
    """Reduced row echelon form; returns (nonzero rows, pivot columns)."""
    m = as_matrix(a, p).copy()
    if m.ndim == 1:
        m = m.reshape(1, -1)
    rows, cols = m.shape
    pivots = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        nz = np.nonzero(m[r:, c])[0]
        if len(nz) == 0:
            continue
        k = r + nz[0]
        if k != r:
            m[[r, k]] = m[[k, r]]
        m[r] = m[r] * pow(int(m[r, c]), -1, p) % p
        col = m[:, c].copy()
        col[r] = 0
        nzr = np.nonzero(col)[0]
        if len(nzr):
            m[nzr] = (m[nzr] - np.outer(col[nzr], m[r])) % p
        pivots.append(c)
        r += 1
    return m[:r], pivots


def rank(a, p: int) -> int:
    return len(rref(a, p)[1])


def nullspace(a, p: int) -> np.ndarray:
    """Basis (as rows) of ``{x : a @ x == 0}``."""
    a = as_matrix(a, p)
    cols = a.shape[1]
    r, piv = rref(a, p)
    free = [c for c in range(cols) if c not in piv]
    basis = np.zeros((len(free), cols), dtype=np.int64)
    for k, f in enumerate(free):
        basis[k, f] = 1
        for i, c in enumerate(piv):
            basis[k, c] = (-r[i, f]) % p
    return basis


def left_nullspace(a, p: int) -> np.ndarray:
    """Basis (as rows) of ``{v : v @ a == 0}``."""
    return nullspace(as_matrix(a, p).T, p)


def inverse(a, p: int) -> np.ndarray:
    a = as_matrix(a, p)
    n = a.shape[0]
    r, piv = rref(np.hstack([a, np.eye(n, dtype=np.int64)]), p)
    if piv[:n] != list(range(n)) or len(piv) < n:
        raise ValueError("matrix is singular mod p")
    return r[:n, n:]


def matmul(a, b, p: int) -> np.ndarray:
    return (np.asarray(a, dtype=np.int64) @ np.asarray(b, dtype=np.int64)) % p


def is_invertible(a, p: int) -> bool:
    a = as_matrix(a, p)
    return a.shape[0] == a.shape[1] and rank(a, p) == a.shape[0]


def charpoly(a, p: int) -> list[int]:
    """Characteristic polynomial of a square matrix, coefficients low to high.

    Reduces to upper Hessenberg form by similarity, then applies the
    standard recurrence on leading principal minors.
    """
    h = as_matrix(a, p).copy()
    n = h.shape[0]
    for j in range(n - 2):
        nz = np.nonzero(h[j + 1 :, j])[0]
        if len(nz) == 0:
            continue
        k = j + 1 + nz[0]
        if k != j + 1:
            h[[j + 1, k]] = h[[k, j + 1]]
            h[:, [j + 1, k]] = h[:, [k, j + 1]]
        inv = pow(int(h[j + 1, j]), -1, p)
        for i in range(j + 2, n):
            f = h[i, j] * inv % p
            if f:
                h[i] = (h[i] - f * h[j + 1]) % p
                h[:, j + 1] = (h[:, j + 1] + f * h[:, i]) % p
    # polys[k] is the charpoly of the leading k x k block
    polys = [[1]]
    for k in range(1, n + 1):
        prev = polys[k - 1]
        cur = [0] + prev  # x * prev
        a_kk = int(h[k - 1, k - 1])
        for i, c in enumerate(prev):
            cur[i] = (cur[i] - a_kk * c) % p
        prod = 1
        for i in range(k - 1, 0, -1):
            prod = prod * int(h[i, i - 1]) % p
            coeff = prod * int(h[i - 1, k - 1]) % p
            if coeff:
                for t, c in enumerate(polys[i - 1]):
                    cur[t] = (cur[t] - coeff * c) % p
        polys.append(cur)
    return polys[n]


def poly_roots(coeffs: list[int], p: int) -> list[int]:
    """Roots in GF(p) by evaluation at every field element."""
    xs = np.arange(p, dtype=np.int64)
    acc = np.zeros(p, dtype=np.int64)
    for c in reversed(coeffs):
        acc = (acc * xs + c) % p
    return [int(x) for x in np.nonzero(acc == 0)[0]]
