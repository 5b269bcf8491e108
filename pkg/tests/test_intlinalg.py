import random
from fractions import Fraction
from math import gcd, prod

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from nashcones import intlinalg as la
from nashcones.errors import NotFullRank, NotSquare, RankDeficient, Singular, ZeroVector


# ---------------------------------------------------------------- oracles


def det_cofactor(m):
    """Independent determinant oracle: textbook cofactor expansion."""
    n = len(m)
    if n == 1:
        return m[0][0]
    total = 0
    for j in range(n):
        minor = [row[:j] + row[j + 1 :] for row in m[1:]]
        total += (-1) ** j * m[0][j] * det_cofactor(minor)
    return total


def rank_fraction(m):
    """Independent rank oracle: Gaussian elimination over Fraction."""
    a = [[Fraction(x) for x in row] for row in m]
    n = len(a)
    if n == 0:
        return 0
    d = len(a[0])
    r = 0
    for c in range(d):
        piv = next((i for i in range(r, n) if a[i][c] != 0), None)
        if piv is None:
            continue
        a[r], a[piv] = a[piv], a[r]
        for i in range(r + 1, n):
            f = a[i][c] / a[r][c]
            a[i] = [x - f * y for x, y in zip(a[i], a[r])]
        r += 1
    return r


def random_matrix(rng, n, d, bound=20):
    return tuple(tuple(rng.randint(-bound, bound) for _ in range(d)) for _ in range(n))


def random_nonsingular(rng, n, bound=20):
    while True:
        m = random_matrix(rng, n, n, bound)
        if det_cofactor(m) != 0:
            return m


# ---------------------------------------------------------------- primitive


def test_primitive_examples():
    assert la.primitive((0, 2, -2)) == (0, 1, -1)
    assert la.primitive((1, 1, 2)) == (1, 1, 2)
    # gcd computed directly: gcd(4, 6, 10) == 2
    assert gcd(4, gcd(6, 10)) == 2
    assert la.primitive((4, 6, 10)) == (2, 3, 5)


def test_primitive_zero_vector_rejected():
    with pytest.raises(ZeroVector):
        la.primitive((0, 0, 0))


@given(st.lists(st.integers(-10**6, 10**6), min_size=1, max_size=6))
def test_primitive_properties(entries):
    v = tuple(entries)
    if all(x == 0 for x in v):
        with pytest.raises(ZeroVector):
            la.primitive(v)
        return
    p = la.primitive(v)
    assert la.vec_gcd(p) == 1
    g = la.vec_gcd(v)
    assert tuple(x * g for x in p) == v


# ---------------------------------------------------------------- det


def test_det_examples():
    assert la.det(la.identity(3)) == 1
    assert la.det(((1, 0, 0), (0, 1, 0), (1, 1, 2))) == 2
    assert la.det(((1, 0, 0), (1, 2, 0), (1, 0, 2))) == 4


def test_det_not_square():
    with pytest.raises(NotSquare):
        la.det(((1, 2, 3), (4, 5, 6)))


def test_det_matches_cofactor_oracle():
    rng = random.Random(1)
    for _ in range(300):
        n = rng.randint(1, 5)
        m = random_matrix(rng, n, n)
        assert la.det(m) == det_cofactor(m)


# ---------------------------------------------------------------- adjugate


def test_adjugate_examples():
    assert la.adjugate(la.identity(4)) == la.identity(4)
    m = ((1, 0, 0), (0, 1, 0), (1, 1, 2))
    adj = la.adjugate(m)
    # columns (2,0,-1), (0,2,-1), (0,0,1)
    assert la.transpose(adj) == ((2, 0, -1), (0, 2, -1), (0, 0, 1))
    a, b, c, d = 3, -5, 7, 2
    assert la.adjugate(((a, b), (c, d))) == ((d, -b), (-c, a))


def test_adjugate_singular_rejected():
    with pytest.raises(Singular):
        la.adjugate(((1, 2), (2, 4)))


def test_adjugate_identity_product():
    rng = random.Random(2)
    for _ in range(1000):
        n = rng.randint(1, 4)
        m = random_nonsingular(rng, n, bound=9)
        d = la.det(m)
        expected = tuple(tuple(d if i == j else 0 for j in range(n)) for i in range(n))
        assert la.matmul(m, la.adjugate(m)) == expected


# ---------------------------------------------------------------- rank


def test_rank_matches_fraction_oracle():
    rng = random.Random(3)
    for _ in range(400):
        n = rng.randint(1, 6)
        d = rng.randint(1, 6)
        m = random_matrix(rng, n, d, bound=6)
        assert la.rank(m) == rank_fraction(m)


# ---------------------------------------------------------------- HNF


def check_column_hnf_shape(h):
    n = len(h)
    d = len(h[0])
    assert n == d
    for i in range(d):
        assert h[i][i] > 0
        for j in range(d):
            if j > i:
                assert h[i][j] == 0
            elif j < i:
                assert 0 <= h[i][j] < h[i][i]


def test_column_hnf_examples():
    for d in (1, 2, 4):
        h, u = la.column_hnf(la.identity(d))
        assert h == la.identity(d)
        assert u == la.identity(d)
    m = ((1, 0, 0), (1, 2, 0), (1, 0, 2))
    h, u = la.column_hnf(m)
    assert h == m
    assert u == la.identity(3)
    m = ((4, 7), (1, 2))
    h, u = la.column_hnf(m)
    assert h == la.identity(2)
    assert la.matmul(m, u) == h
    assert abs(la.det(u)) == 1


def test_column_hnf_rank_deficient():
    with pytest.raises(RankDeficient):
        la.column_hnf(((1, 2), (2, 4)))


def test_column_hnf_random_properties():
    rng = random.Random(4)
    for _ in range(300):
        d = rng.randint(1, 5)
        m = random_nonsingular(rng, d)
        h, u = la.column_hnf(m)
        assert la.matmul(m, u) == h
        assert abs(la.det(u)) == 1
        check_column_hnf_shape(h)
        h2, u2 = la.column_hnf(h)
        assert h2 == h
        assert u2 == la.identity(d)


def test_column_hnf_is_coset_invariant():
    # same canonical form for m and m @ w with w unimodular
    rng = random.Random(5)
    for _ in range(100):
        d = rng.randint(2, 4)
        m = random_nonsingular(rng, d)
        w = random_unimodular(rng, d)
        h1, _ = la.column_hnf(m)
        h2, _ = la.column_hnf(la.matmul(m, w))
        assert h1 == h2


def random_unimodular(rng, d, steps=12):
    u = [list(row) for row in la.identity(d)]
    for _ in range(steps):
        i, j = rng.sample(range(d), 2)
        q = rng.randint(-3, 3)
        u[i] = [x + q * y for x, y in zip(u[i], u[j])]
        if rng.random() < 0.3:
            u[i] = [-x for x in u[i]]
    return la.mat(u)


def test_row_hnf_examples():
    h, _ = la.row_hnf(((2, 0), (0, 2)))
    assert h == ((2, 0), (0, 2))
    h, _ = la.row_hnf(((1, 0, 0), (0, 1, 0), (2, 4, 7), (1, 1, 2)))
    nonzero = [row for row in h if any(row)]
    pivots = [next(x for x in row if x) for row in nonzero]
    assert pivots == [1, 1, 1]
    h, u = la.row_hnf(((3, 6),))
    assert h == ((3, 6),)
    assert u == ((1,),)


def test_row_hnf_random_properties():
    rng = random.Random(6)
    for _ in range(300):
        n = rng.randint(1, 5)
        d = rng.randint(1, 5)
        m = random_matrix(rng, n, d, bound=9)
        h, u = la.row_hnf(m)
        assert la.matmul(u, m) == h
        assert abs(la.det(u)) == 1
        # row lattice preserved: each is an integer combination of the other
        h2, _ = la.row_hnf(la.mat(list(h) + list(m)))
        h3, _ = la.row_hnf(h)
        assert [r for r in h2 if any(r)] == [r for r in h3 if any(r)]


# ---------------------------------------------------------------- index


def test_lattice_index_examples():
    assert la.lattice_index(la.identity(3)) == 1
    assert la.lattice_index(((1, 0, 0), (0, 1, 0), (1, 1, 5))) == 5
    assert la.lattice_index(((2, 0), (0, 2))) == 4


def test_lattice_index_not_full_rank():
    with pytest.raises(NotFullRank):
        la.lattice_index(((1, 2), (2, 4)))


def test_lattice_index_equals_abs_det():
    rng = random.Random(7)
    for _ in range(200):
        n = rng.randint(1, 5)
        m = random_nonsingular(rng, n, bound=9)
        assert la.lattice_index(m) == abs(la.det(m))


# ---------------------------------------------------------------- SNF


def check_snf(m, s, u, v):
    assert la.matmul(la.matmul(u, m), v) == s
    assert abs(la.det(u)) == 1
    assert abs(la.det(v)) == 1
    n, d = len(s), len(s[0]) if s else 0
    diag = [s[i][i] for i in range(min(n, d))]
    for i in range(n):
        for j in range(d):
            if i != j:
                assert s[i][j] == 0
    for a, b in zip(diag, diag[1:]):
        if a != 0:
            assert b % a == 0
        else:
            assert b == 0
    assert all(x >= 0 for x in diag)


def test_snf_examples():
    s, u, v = la.snf(la.identity(3))
    assert s == la.identity(3)
    s, _, _ = la.snf(((2, 0), (0, 3)))
    assert s == ((1, 0), (0, 6))
    m = ((1, 0, 0), (0, 1, 0), (1, 1, 2))
    s, u, v = la.snf(m)
    assert s == ((1, 0, 0), (0, 1, 0), (0, 0, 2))
    check_snf(m, s, u, v)


def test_snf_random_properties():
    rng = random.Random(8)
    for _ in range(300):
        n = rng.randint(1, 5)
        d = rng.randint(1, 5)
        m = random_matrix(rng, n, d, bound=9)
        s, u, v = la.snf(m)
        check_snf(m, s, u, v)


def test_snf_invariant_factor_product():
    rng = random.Random(9)
    for _ in range(200):
        n = rng.randint(1, 5)
        m = random_nonsingular(rng, n, bound=9)
        s, _, _ = la.snf(m)
        assert prod(s[i][i] for i in range(n)) == abs(la.det(m))


# ---------------------------------------------------------------- kernel


def test_kernel_basis():
    rng = random.Random(10)
    for _ in range(200):
        n = rng.randint(1, 4)
        d = rng.randint(1, 5)
        m = random_matrix(rng, n, d, bound=6)
        basis = la.kernel_basis(m)
        assert len(basis) == d - la.rank(m)
        for b in basis:
            assert la.mat_vec(m, b) == tuple([0] * n)
        if basis:
            assert la.rank(basis) == len(basis)


@settings(max_examples=60)
@given(st.integers(2, 4), st.integers(0, 10**9))
def test_unimodular_inverse(d, seed):
    rng = random.Random(seed)
    u = random_unimodular(rng, d)
    inv = la.unimodular_inverse(u)
    assert la.matmul(u, inv) == la.identity(d)
