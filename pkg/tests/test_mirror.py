from fractions import Fraction
from itertools import combinations
from math import comb, factorial

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from grasstoric.gc_polytopes import build_gc_polytopes
from grasstoric.ladder import build_ladder_quiver, partition_to_subset
from grasstoric.mirror import (
    LaurentPolynomial,
    classical_period,
    ehx_superpotential,
    expected_term_counts,
    frozen_partitions,
    is_cyclic_interval,
    monomial_map_formula,
    monomial_map_matrix,
    period_by_multinomials,
    pullback_formula,
    pullback_hypersurface,
    pullback_invariance,
    twin_generator,
    twin_period_check,
    znr_equation,
    znr_invariance,
)

SHAPES = [(4, 2), (5, 2), (6, 2), (6, 3), (7, 2), (7, 3)]


def naive_period(f, max_order):
    """Constant terms by full expansion of every power, with no pruning."""
    power = {tuple([0] * f.nvars): 1}
    out = [1]
    for _ in range(max_order):
        nxt = {}
        for e, c in power.items():
            for g, d in f.terms.items():
                key = tuple(x + y for x, y in zip(e, g))
                nxt[key] = nxt.get(key, 0) + c * d
        power = nxt
        out.append(power.get(tuple([0] * f.nvars), 0))
    return out


def laurent_polys():
    exps = st.lists(st.tuples(st.integers(-2, 2), st.integers(-2, 2)), min_size=1, max_size=5, unique=True)
    return exps.flatmap(
        lambda es: st.lists(st.integers(-3, 3).filter(bool), min_size=len(es), max_size=len(es)).map(
            lambda cs: LaurentPolynomial(["x", "y"], dict(zip(es + [(1, 1), (-1, -1)], cs + [1, 1])))
        )
    )


def test_one_variable_period():
    f = LaurentPolynomial(["x"], {(1,): 1, (-1,): 1})
    assert classical_period(f, 6) == [1, 0, 2, 0, 6, 0, 20]


def test_projective_plane_period():
    f = LaurentPolynomial(["x", "y"], {(1, 0): 1, (0, 1): 1, (-1, -1): 1})
    expected = [factorial(k) // factorial(k // 3) ** 3 if k % 3 == 0 else 0 for k in range(10)]
    assert classical_period(f, 9) == expected


@given(laurent_polys(), st.integers(0, 6))
@settings(max_examples=60)
def test_period_routes_agree(f, order):
    assert classical_period(f, order) == naive_period(f, order) == period_by_multinomials(f, order)


@given(laurent_polys())
@settings(max_examples=30)
def test_period_invariant_under_unimodular_change(f):
    g = f.transform([[2, 1], [1, 1]], ["u", "v"])
    assert classical_period(g, 5) == classical_period(f, 5)


def test_period_needs_origin_in_box():
    with pytest.raises(ValueError):
        classical_period(LaurentPolynomial(["x"], {(1,): 1}), 3)


def test_laurent_arithmetic():
    x = LaurentPolynomial.monomial(["x"], [1])
    xinv = LaurentPolynomial.monomial(["x"], [-1])
    assert (x * xinv).terms == {(0,): 1}
    assert ((x + xinv) * (x + xinv)).terms == {(-2,): 1, (0,): 2, (2,): 1}
    assert LaurentPolynomial(["x"], {(1,): 0}).terms == {}
    with pytest.raises(ValueError):
        LaurentPolynomial(["x"], {(1, 2): 1})
    with pytest.raises(ValueError):
        x + LaurentPolynomial.monomial(["y"], [1])


def test_grassmannian_of_planes_in_four_space_period():
    # regularized quantum period of the quadric fourfold: (4d)! (2d)! / d!^6
    expected = [0] * 9
    for d in range(3):
        expected[4 * d] = factorial(4 * d) * factorial(2 * d) // factorial(d) ** 6
    w = ehx_superpotential(4, 2)
    assert classical_period(w, 8) == expected
    assert period_by_multinomials(w, 8) == expected


@pytest.mark.parametrize("n,r", SHAPES)
def test_monomial_map(n, r):
    assert monomial_map_matrix(n, r) == monomial_map_formula(n, r)


@pytest.mark.parametrize("n,r", SHAPES)
def test_superpotential_newton_polytope(n, r):
    w = ehx_superpotential(n, r)
    assert len(w) == expected_term_counts(n, r)["superpotential"]
    assert w.newton_polytope() == build_gc_polytopes(n, r).p


@pytest.mark.parametrize("n,r", SHAPES)
def test_pullback(n, r):
    pulled = pullback_hypersurface(n, r)
    assert pulled == pullback_formula(n, r)
    assert len(pulled) == expected_term_counts(n, r)["pullback"]
    # no negative exponents survive clearing denominators
    assert all(min(e) >= 0 for e in pulled.terms)


@pytest.mark.parametrize("n,r", [(4, 2), (5, 2), (6, 3)])
def test_pullback_is_invariant(n, r):
    inv = pullback_invariance(n, r)
    assert inv.invariant and inv.weight_zero
    assert len(inv.generators) == r * (n - r)


@pytest.mark.parametrize("n,r", SHAPES)
def test_frozen_sets_are_the_cyclic_intervals(n, r):
    q = build_ladder_quiver(n, r)
    frozen = frozen_partitions(n, r)
    assert len(frozen) == n
    intervals = {tuple(sorted((s + i) % n + 1 for i in range(r))) for s in range(n)}
    assert {partition_to_subset(q, mu) for mu in frozen} == intervals


def test_cyclic_interval_examples():
    assert is_cyclic_interval((4, 5, 1), 5)
    assert is_cyclic_interval((2, 3), 5)
    assert not is_cyclic_interval((1, 3), 5)
    n = 6
    count = sum(is_cyclic_interval(s, n) for s in combinations(range(1, n + 1), 3))
    assert count == n


@pytest.mark.parametrize("n,r", SHAPES)
def test_znr(n, r):
    eq = znr_equation(n, r)
    assert len(eq.polynomial) == len(build_ladder_quiver(n, r).arrows) + 1
    res = znr_invariance(n, r)
    assert res.ok and res.frozen_count == n


def test_twin_generator_is_fractional():
    x = twin_generator(5, 2)
    assert all(isinstance(v, Fraction) for v in x)
    assert any(v.denominator == 5 for v in x)


def test_twin_periods_5_2():
    check = twin_period_check(5, 2, max_order=6)
    assert check.index == 5
    assert check.equal
    assert check.period == classical_period(ehx_superpotential(5, 2), 6)


def test_twin_with_trivial_overlattice():
    check = twin_period_check(4, 2, overlattice=[[0, 0, 0, 0]], max_order=4)
    assert check.index == 1
    assert check.twin == LaurentPolynomial(check.twin.variables, ehx_superpotential(4, 2).terms, "M~")


def test_json():
    doc = ehx_superpotential(4, 2).to_json()
    assert len(doc["terms"]) == 6
    assert doc["variables"] == ["t0_0", "t1_0", "t0_1", "t1_1"]
    assert expected_term_counts(4, 2)["partitions"] == comb(4, 2)
