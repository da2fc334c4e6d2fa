"""The reflexive polytope of a Grassmannian toric degeneration and its duals.

The lattice ``M`` has one basis vector ``e'_c`` per unit box ``c`` of the
grid (the interior vertices of the dual quiver). A dual arrow ``c -> c'``
gives the vertex ``w = -e'_c + e'_c'`` of ``P`` (external vertices count as
zero). Coordinates are taken in the basis ``b_c = w_{a_c}``, where ``a_c`` is
the rightward dual arrow out of ``c`` when there is one and the downward arrow
otherwise. These arrows form a spanning tree rooted at the right external
vertex, so the change of basis is unimodular.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property, lru_cache
from math import comb, gcd

from . import linalg as la
from .ladder import (
    RIGHT,
    TOP,
    LadderQuiver,
    Partition,
    all_crossing_diagrams,
    build_ladder_quiver,
    is_m_covering,
)
from .polytopes import (
    Polytope,
    PrimitiveDual,
    is_reflexive,
    is_vertex_spanning,
    primitive_dual,
    unimodular_equivalence,
)


def _e(cells, c):
    v = [0] * len(cells)
    if c not in (TOP, RIGHT):
        v[cells.index(c)] = 1
    return v


class GCPolytopeSet:
    """The polytope ``P``, its dual and its primitive dual for ``Gr(r, n)``.

    Arrows of the dual quiver are indexed by the ladder arrows they cross, so
    ``arrow_vertices[a]`` is the vertex ``w_a`` of ``P`` for ladder arrow ``a``.

    Attributes:
        quiver: The ladder quiver.
        tree: For each box, the index of the ladder arrow crossed by ``a_c``.
        basis_change: Rows ``b_c`` in the box basis ``e'``; unimodular.
        h: The all-ones vector in dual coordinates.
    """

    def __init__(self, n: int, r: int):
        self.n, self.r = n, r
        self.quiver: LadderQuiver = build_ladder_quiver(n, r)
        q = self.quiver
        cells = q.cells
        self.tree: list[int] = []
        by_source = {}
        for d in q.dual_arrows:
            by_source.setdefault(d.source, []).append(d)
        for c in cells:
            outs = by_source[c]
            horiz = [d for d in outs if d.target == RIGHT or d.target[1] == c[1]]
            down = [d for d in outs if d.target != RIGHT and d.target[1] == c[1] - 1]
            self.tree.append((horiz or down)[0].crossed)
        self.arrow_vectors_e = [
            [y - x for x, y in zip(_e(cells, d.source), _e(cells, d.target))] for d in q.dual_arrows
        ]
        basis = [self.arrow_vectors_e[a] for a in self.tree]
        self.basis_change = basis
        self.h = tuple([1] * len(cells))
        if not la.is_unimodular(basis):
            raise AssertionError("tree basis is not unimodular")
        inv = la.rational_inverse(basis)
        self.arrow_vertices: list[tuple[int, ...]] = [
            tuple(int(x) for x in la.vecmat(w, inv)) for w in self.arrow_vectors_e
        ]

    @cached_property
    def p(self) -> Polytope:
        return Polytope(self.arrow_vertices, "M")

    def m_vector(self, lam: Partition) -> tuple[int, ...]:
        """Dual coordinates of ``m_lam``: which tree arrows the path of ``lam`` crosses."""
        path = set(self.quiver.path_arrows(lam))
        return tuple(int(a in path) for a in self.tree)

    def dual_vertex(self, lam: Partition) -> tuple[int, ...]:
        """The vertex ``n * m_lam - h`` of the dual polytope."""
        return tuple(self.n * x - 1 for x in self.m_vector(lam))

    @cached_property
    def dual_vertices(self) -> dict[Partition, tuple[int, ...]]:
        return {lam: self.dual_vertex(lam) for lam in self.quiver.partitions}

    @cached_property
    def p_dual(self) -> Polytope:
        return Polytope(self.dual_vertices.values(), "N")

    @cached_property
    def primitive(self) -> PrimitiveDual:
        return primitive_dual(self.p)

    @property
    def q(self) -> Polytope:
        return self.primitive.q

    @cached_property
    def q_vertices(self) -> dict[Partition, tuple[int, ...]]:
        """Vertices ``v_lam`` of the primitive dual, in its own lattice."""
        inv = la.rational_inverse([list(r) for r in self.primitive.inclusion])
        return {
            lam: tuple(int(x) for x in la.vecmat(u, inv)) for lam, u in self.dual_vertices.items()
        }

    @cached_property
    def pairing_matrix(self) -> list[list[int]]:
        """``<n m_mu - h, w_a>`` with rows indexed by arrows, columns by partitions."""
        parts = self.quiver.partitions
        return [[la.dot(self.dual_vertices[mu], w) for mu in parts] for w in self.arrow_vertices]

    @property
    def empty_arrow(self) -> int:
        """The single arrow on the path of the empty partition."""
        (a,) = self.quiver.path_arrows(())
        return a

    @cached_property
    def m_pairing_matrix(self) -> list[list[int]]:
        """``<m_lam, w_a>`` with rows indexed by arrows, columns by partitions."""
        ms = [self.m_vector(lam) for lam in self.quiver.partitions]
        return [[la.dot(m, w) for m in ms] for w in self.arrow_vertices]

    def m_pairing_formula(self) -> list[list[int]]:
        """Predicted ``<m_lam, w_a>``: crossing indicator, ``-1`` on the empty arrow, 0 for the empty partition."""
        q = self.quiver
        out = []
        for a in q.arrows:
            row = []
            for lam in q.partitions:
                if lam == ():
                    row.append(0)
                elif a.index == self.empty_arrow:
                    row.append(-1)
                else:
                    row.append(int(q.contains(lam, a.index)))
            out.append(row)
        return out

    def pairing_formula(self) -> list[list[int]]:
        """The same table predicted from path membership: ``n [a in mu] - 1``."""
        q = self.quiver
        return [
            [self.n * int(q.contains(mu, a.index)) - 1 for mu in q.partitions] for a in q.arrows
        ]


@lru_cache(maxsize=None)
def build_gc_polytopes(n: int, r: int) -> GCPolytopeSet:
    return GCPolytopeSet(n, r)


def pairing_table(n: int, r: int) -> list[list[int]]:
    return build_gc_polytopes(n, r).pairing_matrix


def quotient_factors(n: int, r: int) -> tuple[int, ...]:
    """Invariant factors of ``N`` modulo the sublattice spanned by the dual's vertices."""
    return build_gc_polytopes(n, r).primitive.invariant_factors


def weight_matrix(q: LadderQuiver) -> list[list[int]]:
    """Rows indexed by non-source vertices, columns by arrows.

    The row of ``v = (x, y)`` marks the arrows with a horizontal unit step
    from column ``x - 1`` to ``x`` at height at least ``y``, or a vertical
    unit step from row ``y - 1`` to ``y`` at position at least ``x``.
    """
    return [list(row) for row in _weight_matrix(q.n, q.r)]


@lru_cache(maxsize=None)
def _weight_matrix(n: int, r: int) -> tuple[tuple[int, ...], ...]:
    q = build_ladder_quiver(n, r)
    rows = []
    for x, y in q.non_source_vertices:
        row = []
        for a in q.arrows:
            hit = any(
                (s == "R" and px == x - 1 and py >= y) or (s == "U" and py == y - 1 and px >= x)
                for (px, py), s in a.unit_steps
            )
            row.append(int(hit))
        rows.append(tuple(row))
    return tuple(rows)


# relations among the vertices of the primitive dual


def covering_relation(q: LadderQuiver, paths) -> list[int]:
    """Multiplicity of each partition (in lexicographic order) among ``paths``.

    Raises:
        ValueError: If the paths do not cover every arrow equally often.
    """
    paths = list(paths)
    if is_m_covering(q, paths) is None:
        raise ValueError("paths do not form an m-covering")
    index = {p: i for i, p in enumerate(q.partitions)}
    v = [0] * len(index)
    for lam in paths:
        v[index[lam]] += 1
    return v


def relation_lattice(n: int, r: int) -> list[list[int]]:
    """Saturated lattice of integer relations among the vertices ``v_lam``."""
    data = build_gc_polytopes(n, r)
    return la.integer_kernel([list(data.q_vertices[p]) for p in data.quiver.partitions])


@dataclass(frozen=True)
class CoveringSpan:
    rank: int
    expected_rank: int
    index: int | None
    diagrams: int


def covering_span(n: int, r: int) -> CoveringSpan:
    """Span of the relations given by all crossing diagrams.

    ``index`` is the index of the spanned sublattice inside the full relation
    lattice, or None when the span has lower rank.
    """
    q = build_ladder_quiver(n, r)
    vecs = [covering_relation(q, paths) for _, paths in all_crossing_diagrams(q)]
    span = la.hnf_basis(vecs)
    full = relation_lattice(n, r)
    index = None
    if len(span) == len(full):
        coords = [[int(c) for c in la.solve_rational(full, v)] for v in span]
        index = abs(la.determinant(coords))
    return CoveringSpan(
        rank=len(span), expected_rank=comb(n, r) - r * (n - r), index=index, diagrams=len(vecs)
    )


def covering_span_rank(n: int, r: int) -> int:
    return covering_span(n, r).rank


@dataclass(frozen=True)
class ExcessDeletion:
    """Outcome of comparing ``P`` with the hull of the labelled vertices of the primitive dual.

    Attributes:
        relations_equal: The relation lattices of ``(w_a)`` and ``(v_phi(a))`` agree.
        transform: Integer ``U`` with ``w_a @ U == v_phi(a)`` for every arrow.
        unimodular: Whether ``U`` has determinant +-1.
        vertex_counts_equal: The hull has one vertex per arrow.
        fano: Both polytopes have primitive vertices and the origin inside.
        spanning: Both polytopes have vertices spanning their lattice.
    """

    relations_equal: bool
    transform: list[list[int]] | None
    unimodular: bool
    vertex_counts_equal: bool
    fano: bool
    spanning: bool

    @property
    def ok(self) -> bool:
        return all(
            (self.relations_equal, self.unimodular, self.vertex_counts_equal, self.fano, self.spanning)
        )


def reduced_dual(n: int, r: int) -> Polytope:
    """Hull of the vertices ``v_lam`` of the primitive dual with ``lam`` labelling an arrow."""
    data = build_gc_polytopes(n, r)
    return Polytope([data.q_vertices[lam] for lam in data.quiver.phi], "Nbar")


def _is_fano(p: Polytope) -> bool:
    return p.origin_interior() and all(la.vector_gcd(v) == 1 for v in p.vertices)


def verify_excess_deletion(n: int, r: int) -> ExcessDeletion:
    data = build_gc_polytopes(n, r)
    q = data.quiver
    w = [list(v) for v in data.arrow_vertices]
    v = [list(data.q_vertices[lam]) for lam in q.phi]
    rel_equal = la.integer_kernel(w) == la.integer_kernel(v)
    transform = None
    unimodular = False
    # explicit map: solve on independent arrows, then test on all of them
    _, piv = la.rational_row_reduce(la.transpose(w))
    if len(piv) == len(w[0]):
        inv = la.rational_inverse([w[i] for i in piv])
        u = la.matmul(inv, [v[i] for i in piv])
        if all(x.denominator == 1 for row in u for x in row):
            u = [[int(x) for x in row] for row in u]
            if all(la.vecmat(wa, u) == va for wa, va in zip(w, v)):
                transform = u
                unimodular = abs(la.determinant(u)) == 1
    red = reduced_dual(n, r)
    return ExcessDeletion(
        relations_equal=rel_equal,
        transform=transform,
        unimodular=unimodular,
        vertex_counts_equal=len(red.vertices) == len(data.p.vertices) == len(q.arrows),
        fano=_is_fano(red) and _is_fano(data.p),
        spanning=is_vertex_spanning(red) and is_vertex_spanning(data.p),
    )


def is_isomorphic_to_primal(n: int, r: int) -> bool:
    """Whether the primitive dual is unimodularly equivalent to ``P``."""
    data = build_gc_polytopes(n, r)
    return unimodular_equivalence(data.q, data.p) is not None


def polytope_summary(n: int, r: int) -> dict:
    data = build_gc_polytopes(n, r)
    p, qd = data.p, data.q
    return {
        "P_reflexive": is_reflexive(p),
        "P_spanning": is_vertex_spanning(p),
        "P_vertices": len(p.vertices),
        "P_facets": len(p.facets),
        "Q_reflexive": is_reflexive(qd),
        "Q_spanning": is_vertex_spanning(qd),
        "Q_vertices": len(qd.vertices),
        "Q_facets": len(qd.facets),
    }
