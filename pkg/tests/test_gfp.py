import itertools

import numpy as np
from hypothesis import given, settings, strategies as st

from wsmgroups import gfp


def matrices(p, n, m=None):
    m = m or n
    return st.lists(st.integers(0, p - 1), min_size=n * m, max_size=n * m).map(
        lambda xs: np.array(xs, dtype=np.int64).reshape(n, m))


@settings(max_examples=60)
@given(st.sampled_from([2, 3, 5, 7]).flatmap(lambda p: st.tuples(st.just(p), matrices(p, 4))))
def test_rank_nullity_and_inverse(pa):
    p, a = pa
    r = gfp.rank(a, p)
    ns = gfp.nullspace(a, p)
    assert r + len(ns) == 4
    for v in ns:
        assert not (a @ v % p).any()
    ln = gfp.left_nullspace(a, p)
    for v in ln:
        assert not (v @ a % p).any()
    if r == 4:
        assert gfp.is_invertible(a, p)
        assert np.array_equal(gfp.matmul(a, gfp.inverse(a, p), p), np.eye(4, dtype=np.int64))


def test_rank_against_subspace_count():
    # brute force: the row space of a over GF(3) has 3^rank vectors
    rng = np.random.default_rng(1)
    for _ in range(20):
        a = rng.integers(0, 3, size=(3, 4))
        span = {tuple(np.array(c) @ a % 3) for c in itertools.product(range(3), repeat=3)}
        assert len(span) == 3 ** gfp.rank(a, 3)


@settings(max_examples=40)
@given(st.sampled_from([2, 3, 5, 7, 11]).flatmap(lambda p: st.tuples(st.just(p), matrices(p, 3))))
def test_charpoly_vanishes_at_eigenvalues(pa):
    p, a = pa
    c = gfp.charpoly(a, p)
    assert len(c) == 4 and c[-1] == 1
    for x in range(p):
        det = round(np.linalg.det((x * np.eye(3) - a).astype(float)))
        assert (sum(ci * x**i for i, ci in enumerate(c)) - det) % p == 0
    assert set(gfp.poly_roots(c, p)) == {x for x in range(p) if gfp.rank((a - x * np.eye(3, dtype=np.int64)) % p, p) < 3}


def test_rref_is_canonical():
    # the same row space given by two different spanning sets
    a = np.array([[2, 4, 1], [1, 2, 4]])
    b = np.array([[3, 1, 0], [1, 2, 4], [4, 3, 4]])
    r, piv = gfp.rref(a, 5)
    rb, pivb = gfp.rref(b, 5)
    assert piv == pivb == [0, 2]
    assert r.tolist() == rb.tolist() == [[1, 2, 0], [0, 0, 1]]
