from fractions import Fraction
from itertools import combinations, permutations, product
from math import gcd

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from grasstoric import linalg as la


def leibniz_det(m):
    """Determinant by permutation expansion; independent of the library's elimination."""
    size = len(m)
    total = 0
    for perm in permutations(range(size)):
        inversions = sum(1 for i in range(size) for j in range(i + 1, size) if perm[i] > perm[j])
        term = (-1) ** inversions
        for i, p in enumerate(perm):
            term *= m[i][p]
        total += term
    return total


def determinantal_divisors(m):
    """d_k = gcd of all k x k minors; the invariant factors are d_k / d_{k-1}."""
    rows, cols = len(m), len(m[0])
    out = []
    for k in range(1, min(rows, cols) + 1):
        g = 0
        for rs in combinations(range(rows), k):
            for cs in combinations(range(cols), k):
                g = gcd(g, leibniz_det([[m[i][j] for j in cs] for i in rs]))
        if g == 0:
            break
        out.append(g)
    return out


def factors_from_divisors(divs):
    prev, out = 1, []
    for d in divs:
        out.append(d // prev)
        prev = d
    return out


def is_row_hnf(h):
    last = -1
    zero_seen = False
    for row in h:
        nz = [j for j, x in enumerate(row) if x]
        if not nz:
            zero_seen = True
            continue
        if zero_seen:
            return False
        p = nz[0]
        if p <= last or row[p] <= 0:
            return False
        last = p
    for i, row in enumerate(h):
        nz = [j for j, x in enumerate(row) if x]
        if not nz:
            continue
        p = nz[0]
        for k in range(i):
            if not 0 <= h[k][p] < row[p]:
                return False
    return True


def matrices(max_rows=4, max_cols=4, bound=6):
    return st.integers(1, max_rows).flatmap(
        lambda r: st.integers(1, max_cols).flatmap(
            lambda c: st.lists(
                st.lists(st.integers(-bound, bound), min_size=c, max_size=c), min_size=r, max_size=r
            )
        )
    )


def unimodular(size):
    """Random unimodular matrices as products of elementary operations."""
    ops = st.lists(
        st.tuples(st.integers(0, size - 1), st.integers(0, size - 1), st.integers(-3, 3)), max_size=8
    )

    def build(steps):
        u = la.identity(size)
        for i, j, q in steps:
            if i != j:
                u[i] = [x + q * y for x, y in zip(u[i], u[j])]
        return u

    return ops.map(build)


# hermite normal form


def test_hnf_identity():
    h, u = la.hermite_normal_form(la.identity(3))
    assert h == la.identity(3)
    assert u == la.identity(3)


def test_hnf_rank_one():
    h, _ = la.hermite_normal_form([[2, 4], [4, 8]])
    assert h == [[2, 4], [0, 0]]


def test_hnf_permutation():
    h, u = la.hermite_normal_form([[0, 1], [1, 0]])
    assert h == [[1, 0], [0, 1]]
    assert sorted(map(tuple, u)) == [(0, 1), (1, 0)]


@given(matrices())
def test_hnf_properties(m):
    h, u = la.hermite_normal_form(m)
    assert la.matmul(u, m) == h
    assert abs(leibniz_det(u)) == 1
    assert is_row_hnf(h)


@given(matrices(3, 3), unimodular(3))
def test_hnf_canonical_under_row_operations(m, u):
    m3 = (m + [[0] * len(m[0])] * 3)[:3]
    assert la.hnf_basis(la.matmul(u, m3)) == la.hnf_basis(m3)


# smith normal form


def test_snf_diag():
    d, u, v = la.smith_normal_form([[2, 0], [0, 3]])
    assert d == [[1, 0], [0, 6]]
    assert la.matmul(la.matmul(u, [[2, 0], [0, 3]]), v) == d


def test_snf_zero():
    d, _, _ = la.smith_normal_form([[0, 0], [0, 0]])
    assert d == [[0, 0], [0, 0]]


def test_snf_rank_one():
    d, _, _ = la.smith_normal_form([[2, 4], [4, 8]])
    assert d == [[2, 0], [0, 0]]


@given(matrices(3, 4))
def test_snf_matches_determinantal_divisors(m):
    d, u, v = la.smith_normal_form(m)
    assert la.matmul(la.matmul(u, m), v) == d
    assert abs(leibniz_det(u)) == 1 and abs(leibniz_det(v)) == 1
    diag = [d[i][i] for i in range(min(len(d), len(d[0])))]
    assert all(d[i][j] == 0 for i in range(len(d)) for j in range(len(d[0])) if i != j)
    nonzero = [x for x in diag if x]
    assert nonzero == factors_from_divisors(determinantal_divisors(m))
    assert all(b % a == 0 for a, b in zip(nonzero, nonzero[1:]))


@given(matrices(3, 3), unimodular(3), unimodular(3))
@settings(max_examples=50)
def test_invariant_factors_stable_under_unimodular_maps(m, u, v):
    m3 = [(row + [0, 0, 0])[:3] for row in (m + [[0] * 3] * 3)[:3]]
    assert la.invariant_factors(la.matmul(la.matmul(u, m3), v)) == la.invariant_factors(m3)


# kernels and quotients


def test_kernel_small():
    assert la.integer_kernel([[1], [1]]) == [[1, -1]]
    assert la.integer_kernel(la.identity(3)) == []


@given(matrices(4, 3, 3))
def test_kernel_annihilates_and_has_right_size(m):
    ker = la.integer_kernel(m)
    assert all(not any(la.vecmat(k, m)) for k in ker)
    assert len(ker) == len(m) - la.rank(m)
    # saturated: every small integer kernel vector is an integer combination
    for x in product(range(-1, 2), repeat=len(m)):
        if not any(la.vecmat(x, m)) and ker:
            coeffs = la.solve_rational(ker, list(x))
            assert coeffs is not None and all(Fraction(c).denominator == 1 for c in coeffs)


def test_quotient_two_by_two():
    q = la.quotient_invariants(2, [[2, 0], [0, 2]])
    assert q.invariant_factors == (2, 2)
    assert q.order == 4


def test_quotient_nh_lemma_form():
    # n e_1, ..., n e_d together with one primitive vector
    n, d = 5, 4
    gens = [[n * int(i == j) for j in range(d)] for i in range(d)] + [[1, 2, 3, 1]]
    assert la.quotient_invariants(d, gens).invariant_factors == (n,) * (d - 1)


def test_quotient_infinite():
    with pytest.raises(ValueError, match="infinite quotient"):
        la.quotient_invariants(2, [[1, 0]])


@given(matrices(3, 3))
def test_quotient_order_is_determinant(m):
    m3 = [(row + [0, 0, 0])[:3] for row in (m + [[0] * 3] * 3)[:3]]
    det = leibniz_det(m3)
    if det == 0:
        return
    q = la.quotient_invariants(3, m3)
    assert q.order == abs(det)
    # the projection kills the sublattice
    for row in m3:
        assert not any(q.project(row))


def test_determinant_against_leibniz():
    m = [[2, -1, 0, 3], [1, 1, 4, -2], [0, 5, 1, 1], [3, 0, -1, 2]]
    assert la.determinant(m) == leibniz_det(m)


@given(matrices(3, 3), st.integers(2, 7), st.lists(st.integers(-5, 5), min_size=3, max_size=3))
def test_solve_mod(m, n, x):
    b = [v % n for v in la.vecmat(x[: len(m)], m)]
    sol = la.solve_mod(m, b, n)
    assert sol is not None
    assert [v % n for v in la.vecmat(sol, m)] == b
