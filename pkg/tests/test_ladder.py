from itertools import combinations
from math import comb

import pytest
from hypothesis import given
from hypothesis import strategies as st

from grasstoric.ladder import (
    RIGHT,
    TOP,
    all_crossing_diagrams,
    build_ladder_quiver,
    crossing_diagram_paths,
    dual_paths,
    index_set,
    is_m_covering,
    meet_join,
    partition_from_index_set,
    partition_to_subset,
    partitions,
    path_steps,
    transpose_partition,
)

SHAPES = [(4, 2), (5, 2), (6, 2), (6, 3), (7, 2), (7, 3)]


def shapes():
    return st.sampled_from(SHAPES)


def index_set_oracle(lam, r):
    """Positions of the vertical steps: lambda_{r+1-i} + i."""
    padded = tuple(lam) + (0,) * (r - len(lam))
    return tuple(padded[r - i] + i for i in range(1, r + 1))


@pytest.mark.parametrize("n,r", SHAPES)
def test_counts(n, r):
    q = build_ladder_quiver(n, r)
    k = n - r
    assert len(q.arrows) == 2 * (r - 1) * (k - 1) + n
    assert len(q.partitions) == comb(n, r)
    assert len(q.internal) == (r - 1) * (k - 1)
    assert len(q.excess_set) == comb(n, r) - len(q.arrows)


@pytest.mark.parametrize("n,r", SHAPES)
def test_index_sets_biject_with_subsets(n, r):
    subsets = {partition_to_subset(build_ladder_quiver(n, r), lam) for lam in partitions(n, r)}
    assert subsets == set(combinations(range(1, n + 1), r))


@given(shapes(), st.data())
def test_index_set_oracle_and_round_trip(shape, data):
    n, r = shape
    lam = data.draw(st.sampled_from(partitions(n, r)))
    assert index_set(lam, n, r) == index_set_oracle(lam, r)
    assert partition_from_index_set(index_set(lam, n, r), n, r) == lam
    steps = path_steps(lam, n, r)
    assert steps.count("U") == r and steps.count("R") == n - r
    assert tuple(i + 1 for i, s in enumerate(steps) if s == "U") == index_set(lam, n, r)


def test_index_set_example():
    assert index_set((2, 1), 7, 3) == (1, 3, 5)


def test_meet_join_example():
    assert meet_join((1, 1, 1), (4, 2)) == ((4, 2, 1), (1, 1))


@given(shapes(), st.data())
def test_meet_join_is_componentwise(shape, data):
    n, r = shape
    a = data.draw(st.sampled_from(partitions(n, r)))
    b = data.draw(st.sampled_from(partitions(n, r)))
    big, small = meet_join(a, b)
    pa, pb = (tuple(x) + (0,) * (r - len(x)) for x in (a, b))
    assert tuple(big) + (0,) * (r - len(big)) == tuple(map(max, pa, pb))
    assert tuple(small) + (0,) * (r - len(small)) == tuple(map(min, pa, pb))


def test_transpose():
    assert transpose_partition((3, 1)) == (2, 1, 1)
    assert transpose_partition(()) == ()


# the dual-quiver labelling of the (7,3) ladder, read off the picture
FIGURE_7_3 = {
    ((3, 0), RIGHT): (),
    ((2, 0), (3, 0)): (1, 1, 1),
    ((1, 0), (2, 0)): (2, 2, 2),
    ((0, 0), (1, 0)): (3, 3, 3),
    ((1, 1), (2, 1)): (3, 2, 2),
    ((0, 1), (1, 1)): (4, 3, 3),
    ((2, 1), (3, 1)): (2, 1, 1),
    ((0, 2), (1, 2)): (4, 4, 3),
    ((1, 2), (2, 2)): (3, 3, 2),
    ((2, 2), (3, 2)): (2, 2, 1),
    ((0, 1), (0, 0)): (4,),
    ((0, 2), (0, 1)): (4, 4),
    (TOP, (0, 2)): (4, 4, 4),
    ((1, 1), (1, 0)): (3,),
    ((1, 2), (1, 1)): (4, 3),
    ((2, 1), (2, 0)): (2,),
    ((2, 2), (2, 1)): (4, 2),
    ((3, 1), (3, 0)): (1,),
    ((3, 2), (3, 1)): (4, 1),
}


def test_labelling_matches_picture():
    q = build_ladder_quiver(7, 3)
    got = {(d.source, d.target): d.label for d in q.dual_arrows}
    assert got == FIGURE_7_3


def test_excess_set_6_3():
    assert build_ladder_quiver(6, 3).excess_set == [(1, 1), (2, 1), (2, 2), (3, 1, 1), (3, 2, 1), (3, 3, 1)]


@pytest.mark.parametrize("n,r", SHAPES)
def test_labelling_is_injective(n, r):
    q = build_ladder_quiver(n, r)
    assert len(set(q.phi)) == len(q.arrows)
    assert sorted(q.labelled_set + q.excess_set) == sorted(q.partitions)
    # the path of the empty partition is a single arrow
    assert len(q.path_arrows(())) == 1


@pytest.mark.parametrize("n,r", SHAPES)
def test_paths_decompose_into_arrows(n, r):
    q = build_ladder_quiver(n, r)
    for lam in q.partitions:
        arrows = [q.arrows[a] for a in q.path_arrows(lam)]
        assert "".join(a.steps for a in arrows) == path_steps(lam, n, r)
        assert arrows[0].source == q.source and arrows[-1].target == q.sink
        assert all(a.target == b.source for a, b in zip(arrows, arrows[1:]))


def test_crossing_diagram_example():
    q = build_ladder_quiver(5, 2)
    assert set(crossing_diagram_paths(q, ["X", "O"])) == {(), (1, 1), (2,), (3, 2), (3, 3)}


def test_crossing_diagram_rejects_bad_input():
    q = build_ladder_quiver(5, 2)
    with pytest.raises(ValueError):
        crossing_diagram_paths(q, ["X"])
    with pytest.raises(ValueError):
        crossing_diagram_paths(q, ["X", "Z"])


@pytest.mark.parametrize("n,r", SHAPES)
def test_crossing_diagrams_are_one_coverings(n, r):
    q = build_ladder_quiver(n, r)
    diagrams = list(all_crossing_diagrams(q))
    assert len(diagrams) == 2 ** len(q.internal)
    for _, paths in diagrams:
        assert is_m_covering(q, paths) == 1
        assert len(paths) == n


def test_m_covering_counts():
    q = build_ladder_quiver(4, 2)
    assert is_m_covering(q, q.partitions) is None
    assert is_m_covering(q, [()]) is None
    paths = crossing_diagram_paths(q, ["X"])
    assert is_m_covering(q, paths + paths) == 2


@pytest.mark.parametrize("n,r", SHAPES)
def test_dual_paths_cut_every_path_once(n, r):
    q = build_ladder_quiver(n, r)
    dp = dual_paths(q)
    assert len(dp) == comb(n - 2, r - 1)
    for d in dp:
        for lam in q.partitions:
            assert len(set(d) & set(q.path_arrows(lam))) == 1


def test_json_shape():
    doc = build_ladder_quiver(4, 2).to_json()
    assert set(doc) == {"n", "r", "vertices", "arrows"}
    assert len(doc["arrows"]) == 6


def test_rejects_degenerate_shapes():
    with pytest.raises(ValueError):
        build_ladder_quiver(4, 0)
