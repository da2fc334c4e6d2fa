import random
from itertools import combinations, permutations
from math import gcd

import pytest
from hypothesis import given
from hypothesis import strategies as st

from grasstoric import groups as gp
from grasstoric.ladder import build_ladder_quiver, comparable, index_set, join, meet
from grasstoric.pluecker import (
    Relation,
    box_relations,
    coefficient_weights,
    component_count,
    cut_out_subgroup,
    degenerate_relations,
    minors,
    p2_equation,
    random_matrix,
    shuffle_relations,
    sort_with_sign,
    vanishes_on_random_minors,
    vertex_relations,
)

SHAPES = [(4, 2), (5, 2), (6, 2), (6, 3), (7, 2), (7, 3)]
SMALL = [(4, 2), (5, 2), (6, 2), (6, 3)]


def parity(seq):
    return (-1) ** sum(1 for i, j in combinations(range(len(seq)), 2) if seq[i] > seq[j])


@given(st.permutations(list(range(1, 7))))
def test_sort_sign_is_permutation_parity(perm):
    sign, out = sort_with_sign(perm)
    assert out == tuple(range(1, 7))
    assert sign == parity(perm)


def test_sort_sign_zero_on_repeats():
    assert sort_with_sign([1, 2, 1]) == (0, ())


def test_incidence_relation_on_lines():
    (rel,) = shuffle_relations(4, 2)
    assert rel.to_text() == "p_{1,2}p_{3,4} - p_{1,3}p_{2,4} + p_{1,4}p_{2,3}"


def test_relation_vanishes_on_explicit_matrix():
    (rel,) = shuffle_relations(4, 2)
    m = minors([[1, 2, 0, 3], [0, 1, 5, -1]])
    assert rel.evaluate(m) == 0


@pytest.mark.parametrize("n,r", SHAPES)
def test_shuffle_relations_vanish(n, r):
    rels = shuffle_relations(n, r)
    assert rels
    assert vanishes_on_random_minors(rels, n, r, trials=20)


def test_perturbed_relation_does_not_vanish():
    (rel,) = shuffle_relations(4, 2)
    bad = Relation(4, 2, rel.terms[:-1] + ((rel.terms[-1][0], 2 * rel.terms[-1][1]),))
    assert not vanishes_on_random_minors([bad], 4, 2, trials=5)


def test_minors_against_permutation_expansion():
    rng = random.Random(3)
    m = random_matrix(3, 5, rng)
    got = minors(m)
    for cols in combinations(range(5), 3):
        det = sum(parity(p) * m[0][cols[p[0]]] * m[1][cols[p[1]]] * m[2][cols[p[2]]] for p in permutations(range(3)))
        assert got[tuple(c + 1 for c in cols)] == det


@pytest.mark.parametrize("n,r", SMALL)
def test_degenerate_binomials(n, r):
    parts = build_ladder_quiver(n, r).partitions
    rels = degenerate_relations(n, r)
    incomparable = [(a, b) for a, b in combinations(parts, 2) if not comparable(a, b)]
    assert len(rels) == len(incomparable)
    for rel, (a, b) in zip(rels, incomparable):
        assert len(rel.terms) == 2
        assert sorted(c for _, c in rel.terms) == [-1, 1]
        ix = lambda p: index_set(p, n, r)
        assert rel.coefficient((ix(a), ix(b))) == -rel.coefficient((ix(meet(a, b)), ix(join(a, b))))


@pytest.mark.parametrize("n,r", SHAPES)
def test_vertex_relations(n, r):
    q = build_ladder_quiver(n, r)
    locs = vertex_relations(n, r)
    assert [loc.vertex for loc in locs] == q.internal
    for loc in locs:
        ix = lambda p: index_set(p, n, r)
        for mono in (loc.pair, loc.meet_join, loc.border):
            assert loc.relation.coefficient(tuple(map(ix, mono)))
        assert not comparable(*loc.pair)
    assert vanishes_on_random_minors([loc.relation for loc in locs], n, r, trials=5)


@pytest.mark.parametrize("n,r", SHAPES)
def test_coefficient_weights_are_generated(n, r):
    system = coefficient_weights(n, r)
    assert len(system.vertex_weights) == len(build_ladder_quiver(n, r).internal)
    assert len(system.expressions) == len(system.coefficients)
    assert sum(len(c) for c in system.weight_classes()) == len(system.coefficients)


@pytest.mark.parametrize("n,r", SHAPES)
def test_vertex_and_box_weights_cut_out_G_h(n, r):
    assert cut_out_subgroup(n, r) == gp.compute_G_h(n, r).top


@pytest.mark.parametrize("n,r", [(4, 2), (6, 2), (6, 3)])
def test_box_relations_vanish(n, r):
    boxes = box_relations(n, r)
    assert boxes
    assert vanishes_on_random_minors([b.relation for b in boxes], n, r, trials=20)


@pytest.mark.parametrize("n,r", [(4, 2), (6, 2), (6, 3)])
def test_box_equation(n, r):
    eq = p2_equation(n, r)
    d = gcd(n, r)
    assert eq.d == d > 1
    assert not eq.trivial
    ix = lambda p: index_set(p, n, r)
    for box, wit in zip(eq.diagonal, eq.witnesses):
        assert wit.coefficient((ix(box.sigma_v), ix(box.mu_v)))
        assert wit.coefficient((ix(box.sigma), ix(box.mu)))
    assert eq.matches_border_formula
    assert (n // d) % eq.order == 0
    # the (n/d)-th power is trivial on G
    grp = gp.group_G(n, r)
    powered = [(n // d) * x for x in eq.weight]
    for g in grp.top.basis:
        assert sum(a * b for a, b in zip(powered, g)) % n == 0
    diagonal, weight = eq
    assert diagonal == eq.diagonal and weight == eq.weight


@pytest.mark.parametrize("n,r", [(5, 2), (7, 2), (7, 3)])
def test_box_equation_trivial_for_coprime(n, r):
    eq = p2_equation(n, r)
    assert eq.trivial and eq.diagonal == ()
    assert box_relations(n, r) == []


def test_component_count():
    assert component_count(5, 2) == 25
    assert component_count(4, 2) == 2
    for n, r in SHAPES:
        assert component_count(n, r) == gp.group_G(n, r).order // gp.compute_G_h(n, r).order


def test_relation_json():
    (rel,) = shuffle_relations(4, 2)
    doc = rel.to_json()
    assert [t["coefficient"] for t in doc["terms"]] == [1, -1, 1]
