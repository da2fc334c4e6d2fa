from itertools import product
from math import gcd

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from grasstoric import groups as gp
from grasstoric.gc_polytopes import weight_matrix
from grasstoric.ladder import build_ladder_quiver, index_set
from grasstoric.pluecker import degenerate_relations, shuffle_relations


def closure(gens, modulus, dim):
    """Subgroup generated by ``gens`` in (Z/modulus)^dim, by breadth-first search."""
    zero = (0,) * dim
    seen = {zero}
    frontier = [zero]
    gens = [tuple(x % modulus for x in g) for g in gens]
    while frontier:
        nxt = []
        for v in frontier:
            for g in gens:
                w = tuple((a + b) % modulus for a, b in zip(v, g))
                if w not in seen:
                    seen.add(w)
                    nxt.append(w)
        frontier = nxt
    return seen


def subgroup_data():
    return st.tuples(st.integers(2, 6), st.integers(1, 3)).flatmap(
        lambda md: st.tuples(
            st.just(md[0]),
            st.just(md[1]),
            st.lists(st.lists(st.integers(0, md[0] - 1), min_size=md[1], max_size=md[1]), max_size=3),
        )
    )


@given(subgroup_data())
def test_subgroup_order_and_membership(data):
    n, dim, gens = data
    sub = gp.Subgroup(n, dim, gens)
    elems = closure(gens, n, dim)
    assert sub.order == len(elems)
    for v in product(range(n), repeat=dim):
        assert sub.contains(v) == (v in elems)


@given(subgroup_data())
@settings(max_examples=50)
def test_annihilator_by_enumeration(data):
    n, dim, gens = data
    sub = gp.Subgroup(n, dim, gens)
    elems = closure(gens, n, dim)
    ann = {v for v in product(range(n), repeat=dim) if all(sum(a * b for a, b in zip(v, e)) % n == 0 for e in elems)}
    assert {v for v in product(range(n), repeat=dim) if sub.annihilator().contains(v)} == ann


@given(subgroup_data(), st.data())
@settings(max_examples=50)
def test_intersection_and_quotient(data, draw):
    n, dim, gens = data
    more = draw.draw(st.lists(st.lists(st.integers(0, n - 1), min_size=dim, max_size=dim), max_size=2))
    a, b = gp.Subgroup(n, dim, gens), gp.Subgroup(n, dim, more)
    inter = closure(gens, n, dim) & closure(more, n, dim)
    assert (a & b).order == len(inter)
    total = a + b
    quo = gp.Quotient(total, b)
    reps = [tuple(v) for v in quo.representatives()]
    assert len(reps) == quo.order == total.order // b.order
    # representatives lie in distinct cosets
    for i, u in enumerate(reps):
        assert total.contains(u)
        for w in reps[:i]:
            assert not b.contains([x - y for x, y in zip(u, w)])


def test_quotient_requires_containment():
    with pytest.raises(ValueError):
        gp.Quotient(gp.Subgroup(4, 1, [[2]]), gp.Subgroup(4, 1, [[1]]))


def relation_preimage_by_enumeration(n, r, relations):
    """Elements of (Z/n)^arrows with zero sum making each relation homogeneous."""
    q = build_ladder_quiver(n, r)
    m = len(q.arrows)
    paths = {lam: q.path_arrows(lam) for lam in q.partitions}
    out = []
    for g in product(range(n), repeat=m - 1):
        g = list(g) + [(-sum(g)) % n]
        ok = True
        for rel in relations:
            ws = {sum(g[a] for lam in mono for a in paths[lam]) % n for mono in rel.monomials}
            if len(ws) > 1:
                ok = False
                break
        if ok:
            out.append(tuple(g))
    return out


def test_orders_4_2_by_enumeration():
    n, r = 4, 2
    m = len(build_ladder_quiver(n, r).arrows)
    torus = closure(weight_matrix(build_ladder_quiver(n, r)), n, m)
    g_tilde = relation_preimage_by_enumeration(n, r, [])
    assert len(g_tilde) // len(torus) == 64 == gp.group_G(n, r).order
    pre = relation_preimage_by_enumeration(n, r, shuffle_relations(n, r))
    assert len(pre) // len(torus) == 32 == gp.compute_G_h(n, r).order
    assert set(pre) == {v for v in g_tilde if gp.compute_G_h(n, r).top.contains(v)}


@pytest.mark.parametrize("n,r", [(4, 2), (5, 2)])
def test_brute_force_agrees(n, r):
    bf = gp.brute_force_G_h(n, r)
    gh = gp.compute_G_h(n, r)
    assert bf.subgroup == gh.top
    assert bf.accepted == gh.order
    assert bf.closed


def test_brute_force_limit():
    with pytest.raises(ValueError):
        gp.brute_force_G_h(7, 3)


@pytest.mark.parametrize(
    "n,r,g,gh,components",
    [(4, 2, 64, 32, 2), (5, 2, 3125, 125, 25), (6, 2, 6**7, 2 * 6**4, None), (6, 3, 6**8, 3 * 6**4, None)],
)
def test_orders(n, r, g, gh, components):
    grp = gp.group_G(n, r)
    assert grp.order == g == n ** (r * (n - r) - 1)
    order_h = gp.compute_G_h(n, r).order
    assert order_h == gh == gcd(n, r) * n ** (n - 2)
    assert grp.order // order_h == n ** ((r - 1) * (n - r - 1) - 1) * n // gcd(n, r)
    if components is not None:
        assert grp.order // order_h == components


@pytest.mark.parametrize("n,r", [(4, 2), (5, 2), (6, 2), (6, 3), (7, 2), (7, 3)])
def test_homogeneous_group_is_psi_image(n, r):
    rep = gp.group_report(n, r)
    assert rep.equals_psi_image
    assert rep.psi_injective
    exp = gp.expected_orders(n, r)
    assert rep.order_G == exp["G"] and rep.order_G_h == exp["G_h"]


@given(st.sampled_from([(4, 2), (5, 2), (6, 3), (7, 3)]), st.data())
def test_psi_weights_match_pluecker_weights(shape, data):
    n, r = shape
    z = data.draw(st.lists(st.integers(0, n - 1), min_size=n, max_size=n))
    q = build_ladder_quiver(n, r)
    g = gp.psi(n, r, z)
    for lam in q.partitions:
        # the torus of the big cell scales p_I by the product of z_i over I
        assert gp.monomial_weight(n, r, g, [lam]) == sum(z[i - 1] for i in index_set(lam, n, r)) % n


@pytest.mark.parametrize("n,r", [(4, 2), (5, 2), (6, 3)])
def test_degenerate_binomials_invariant_under_all_of_G(n, r):
    grp = gp.group_G(n, r)
    rels = degenerate_relations(n, r)
    for g in grp.top.basis:
        assert all(gp.is_homogeneous(n, r, g, rel) for rel in rels)


def test_shuffle_relations_cut_out_exactly_G_h():
    n, r = 5, 2
    gh = gp.compute_G_h(n, r)
    rels = shuffle_relations(n, r)
    for g in gp.group_G(n, r).representatives():
        assert all(gp.is_homogeneous(n, r, g, rel) for rel in rels) == gh.contains(g)


def test_report_json_keys():
    doc = gp.group_report(4, 2).to_json()
    assert doc["order_G"] == 64 and doc["order_G_h"] == 32
    assert doc["G_h_preimage"]["equals_psi_image"] is True
