"""Lattice polytopes: vertex/facet conversion, duality and lattice changes.

Facets are computed with a double description routine working entirely in
integer arithmetic. A facet is stored as an integer primitive inner normal
``u`` with an offset ``c`` so that the polytope satisfies ``<u, x> >= -c``.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import Iterable, Sequence

from . import linalg as la

Point = tuple  # tuple of int or Fraction


def _primitive_int(v: Sequence[int]) -> tuple[int, ...]:
    g = 0
    for x in v:
        g = gcd(g, x)
    return tuple(x // g for x in v) if g > 1 else tuple(v)


def extreme_rays(constraints: Sequence[Sequence[int]]) -> list[tuple[tuple[int, ...], int]]:
    """Extreme rays of the pointed cone ``{x : A x >= 0}``.

    Double description method. Rays are kept as primitive integer vectors and
    adjacency is decided combinatorially from the sets of tight constraints.

    Args:
        constraints: Rows of ``A``; their rank must equal the ambient dimension.

    Returns:
        Pairs ``(ray, mask)`` where bit ``i`` of ``mask`` is set when
        constraint ``i`` is tight on ``ray``.
    """
    rows = [list(r) for r in constraints]
    dim = len(rows[0])
    # pivot columns of A^T are independent rows of A
    _, basis = la.rational_row_reduce(la.transpose(rows))
    if len(basis) < dim:
        raise ValueError("constraint matrix does not have full column rank")
    inv = la.rational_inverse([rows[i] for i in basis])
    rays = []
    for j in range(dim):
        col = _primitive_int(la.primitive([inv[i][j] for i in range(dim)]))
        rays.append(col)
    # masks over the basis rows
    masks = []
    for j in range(dim):
        m = 0
        for pos, i in enumerate(basis):
            if pos != j:
                m |= 1 << i
        masks.append(m)
    for idx, row in enumerate(rows):
        if idx in basis:
            continue
        vals = [la.dot(row, r) for r in rays]
        pos = [t for t, v in enumerate(vals) if v > 0]
        neg = [t for t, v in enumerate(vals) if v < 0]
        zero = [t for t, v in enumerate(vals) if v == 0]
        bit = 1 << idx
        new_rays = [rays[t] for t in pos] + [rays[t] for t in zero]
        new_masks = [masks[t] for t in pos] + [masks[t] | bit for t in zero]
        if neg and pos:
            cand = pos + zero + neg
            for p in pos:
                for q in neg:
                    common = masks[p] & masks[q]
                    if bin(common).count("1") < dim - 2:
                        continue
                    adjacent = True
                    for t in cand:
                        if t != p and t != q and masks[t] & common == common:
                            adjacent = False
                            break
                    if not adjacent:
                        continue
                    vp, vq = vals[p], -vals[q]
                    w = [vp * b + vq * a for a, b in zip(rays[p], rays[q])]
                    new_rays.append(_primitive_int(w))
                    new_masks.append(common | bit)
        rays, masks = new_rays, new_masks
    return list(zip(rays, masks))


@dataclass(frozen=True)
class Facet:
    normal: tuple[int, ...]
    offset: int | Fraction

    def value(self, x: Sequence) -> Fraction | int:
        return la.dot(self.normal, x) + self.offset


def _as_point(v: Iterable) -> Point:
    out = []
    for x in v:
        if isinstance(x, Fraction) and x.denominator == 1:
            out.append(int(x))
        else:
            out.append(x)
    return tuple(out)


def _facets_of_points(points: Sequence[Point]) -> list[tuple[Facet, frozenset[int]]]:
    """Facets of the convex hull of full-dimensional points with their tight point sets."""
    m = len(points)
    dim = len(points[0])
    den = 1
    for p in points:
        for x in p:
            if isinstance(x, Fraction):
                den = den * x.denominator // gcd(den, x.denominator)
    ip = [[int(x * den) for x in p] for p in points]
    total = [sum(col) for col in zip(*ip)]
    # m * p - total has the centroid at the origin, which is then interior
    shifted = [[m * x - t for x, t in zip(p, total)] for p in ip]
    if la.rank(shifted) < dim:
        raise ValueError("points are not full dimensional")
    cons = [[1] + s for s in shifted] + [[1] + [0] * dim]
    out = []
    for ray, mask in extreme_rays(cons):
        t, u = ray[0], ray[1:]
        if t == 0:
            raise ValueError("origin shift failed to be interior")
        # <u, m*den*x - total> >= -t  on the original points x
        normal = [m * den * c for c in u]
        offset = t - la.dot(u, total)
        g = la.vector_gcd(normal)
        normal = tuple(c // g for c in normal)
        offset = Fraction(offset, g)
        if offset.denominator == 1:
            offset = int(offset)
        tight = frozenset(i for i in range(m) if mask >> i & 1)
        out.append((Facet(normal, offset), tight))
    return out


class Polytope:
    """A full-dimensional polytope with rational vertices in a named lattice.

    Args:
        vertices: Vertex coordinates. Points that are not vertices are pruned.
        lattice: Name of the ambient lattice, used only for reporting.
    """

    def __init__(self, vertices: Iterable[Sequence], lattice: str = "M"):
        pts = sorted({_as_point(v) for v in vertices})
        if not pts:
            raise ValueError("empty polytope")
        self.lattice = lattice
        self.dim = len(pts[0])
        raw = _facets_of_points(pts)
        keep = set()
        for i in range(len(pts)):
            normals = [f.normal for f, tight in raw if i in tight]
            if normals and la.rank(normals) == self.dim:
                keep.add(i)
        self.vertices: tuple[Point, ...] = tuple(pts[i] for i in sorted(keep))
        index = {old: new for new, old in enumerate(sorted(keep))}
        self._facets = sorted(
            ((f, frozenset(index[i] for i in tight if i in index)) for f, tight in raw),
            key=lambda ft: (ft[0].normal, ft[0].offset),
        )

    @property
    def facets(self) -> list[Facet]:
        return [f for f, _ in self._facets]

    @property
    def facet_vertex_sets(self) -> list[frozenset[int]]:
        return [t for _, t in self._facets]

    @property
    def is_lattice(self) -> bool:
        return all(isinstance(x, int) for v in self.vertices for x in v)

    def contains(self, x: Sequence) -> bool:
        return all(f.value(x) >= 0 for f in self.facets)

    def origin_interior(self) -> bool:
        return all(f.offset > 0 for f in self.facets)

    def h_representation(self) -> list[tuple[tuple[int, ...], int | Fraction]]:
        return [(f.normal, f.offset) for f in self.facets]

    def __eq__(self, other) -> bool:
        return isinstance(other, Polytope) and self.vertices == other.vertices

    def __hash__(self) -> int:
        return hash(self.vertices)

    def __repr__(self) -> str:
        return f"Polytope(dim={self.dim}, vertices={len(self.vertices)}, facets={len(self.facets)})"

    def to_json(self) -> dict:
        def enc(x):
            return x if isinstance(x, int) else str(x)

        return {
            "lattice": self.lattice,
            "dim": self.dim,
            "vertices": [[enc(x) for x in v] for v in self.vertices],
            "facets": [{"normal": list(f.normal), "offset": enc(f.offset)} for f in self.facets],
        }


def polytope_from_points(points: Iterable[Sequence], lattice: str = "M") -> Polytope:
    return Polytope(points, lattice)


def dual_polytope(p: Polytope, lattice: str | None = None) -> Polytope:
    """Polar dual ``{u : <u, x> >= -1 for x in p}``.

    Raises:
        ValueError: If the origin is not in the strict interior of ``p``.
    """
    if not p.origin_interior():
        raise ValueError("origin is not in the strict interior")
    verts = [tuple(Fraction(c, 1) / f.offset for c in f.normal) for f in p.facets]
    name = lattice or ("N" if p.lattice == "M" else "M")
    return Polytope(verts, name)


def is_reflexive(p: Polytope) -> bool:
    """Lattice polytope with origin inside whose dual is again a lattice polytope."""
    return p.is_lattice and p.origin_interior() and all(f.offset == 1 for f in p.facets)


def is_vertex_spanning(p: Polytope) -> bool:
    """Whether the vertices generate the ambient lattice over Z."""
    if not p.is_lattice:
        return False
    return la.hnf_basis([list(v) for v in p.vertices]) == la.identity(p.dim)


@dataclass(frozen=True)
class PrimitiveDual:
    """Dual polytope rewritten in the lattice generated by its vertices.

    Attributes:
        q: The dual in coordinates of the vertex lattice.
        inclusion: Basis rows of the vertex lattice in ambient coordinates.
        quotient: The finite quotient of the ambient lattice by the vertex lattice.
    """

    q: Polytope
    inclusion: tuple[tuple[int, ...], ...]
    quotient: la.LatticeQuotient

    @property
    def invariant_factors(self) -> tuple[int, ...]:
        return self.quotient.invariant_factors


def primitive_dual(p: Polytope) -> PrimitiveDual:
    """Dual of a reflexive polytope, expressed in its own vertex lattice."""
    if not is_reflexive(p):
        raise ValueError("primitive dual needs a reflexive polytope")
    d = dual_polytope(p)
    rows = [list(v) for v in d.vertices]
    basis = la.hnf_basis(rows)
    inv = la.rational_inverse(basis)
    new = [tuple(int(x) for x in la.vecmat(v, inv)) for v in rows]
    quot = la.quotient_invariants(p.dim, basis)
    return PrimitiveDual(
        q=Polytope(new, d.lattice + "bar"),
        inclusion=tuple(tuple(r) for r in basis),
        quotient=quot,
    )


def _signatures(p: Polytope) -> list[tuple]:
    """Per-vertex multiset of lattice distances to the facets."""
    sig = []
    for v in p.vertices:
        sig.append(tuple(sorted(f.value(v) for f in p.facets)))
    return sig


def unimodular_equivalence(p: Polytope, q: Polytope) -> list[list[int]] | None:
    """Integer matrix ``U`` with ``det U = +-1`` mapping ``p`` onto ``q``.

    The map acts on row vectors, ``v -> v @ U``. Returns None when the
    polytopes are not equivalent by a linear unimodular map.
    """
    if p.dim != q.dim or len(p.vertices) != len(q.vertices) or len(p.facets) != len(q.facets):
        return None
    sp, sq = _signatures(p), _signatures(q)
    if sorted(sp) != sorted(sq):
        return None
    pv = [list(v) for v in p.vertices]
    qv = [list(v) for v in q.vertices]
    qset = {tuple(v) for v in qv}
    # independent vertices of p, chosen to have rare signatures first
    _, piv = la.rational_row_reduce(la.transpose(pv))
    base = list(piv)
    if len(base) < p.dim:
        return None
    freq = {}
    for s in sq:
        freq[s] = freq.get(s, 0) + 1
    base.sort(key=lambda i: freq[sp[i]])
    cands = [[j for j in range(len(qv)) if sq[j] == sp[i]] for i in base]
    inv = la.rational_inverse([pv[i] for i in base])

    def search(level, chosen):
        if level == len(base):
            u = la.matmul(inv, [qv[j] for j in chosen])
            if any(x.denominator != 1 for row in u for x in row):
                return None
            u = [[int(x) for x in row] for row in u]
            if abs(la.determinant(u)) != 1:
                return None
            if {tuple(la.vecmat(v, u)) for v in pv} != qset:
                return None
            return u
        for j in cands[level]:
            if j in chosen:
                continue
            got = search(level + 1, chosen + [j])
            if got is not None:
                return got
        return None

    return search(0, [])


def image_in_overlattice(p: Polytope, basis: Sequence[Sequence]) -> Polytope:
    """Rewrite ``p`` in coordinates of an overlattice.

    Args:
        p: A lattice polytope.
        basis: Rows spanning the overlattice, in ambient (possibly rational)
            coordinates.

    Raises:
        ValueError: If a vertex of ``p`` does not lie in the overlattice.
    """
    inv = la.rational_inverse([[Fraction(x) for x in row] for row in basis])
    new = []
    for v in p.vertices:
        img = la.vecmat(v, inv)
        if any(Fraction(x).denominator != 1 for x in img):
            raise ValueError("vertex is not in the overlattice")
        new.append(tuple(int(x) for x in img))
    return Polytope(new, p.lattice + "~")


def overlattice_basis(dim: int, extra: Sequence[Sequence[Fraction]]) -> list[list[Fraction]]:
    """HNF basis of ``Z^dim + span(extra)`` with rational entries."""
    den = 1
    for v in extra:
        for x in v:
            x = Fraction(x)
            den = den * x.denominator // gcd(den, x.denominator)
    rows = [[den * int(i == j) for j in range(dim)] for i in range(dim)]
    rows += [[int(Fraction(x) * den) for x in v] for v in extra]
    return [[Fraction(x, den) for x in row] for row in la.hnf_basis(rows)]


def lattice_points(p: Polytope) -> list[tuple[int, ...]]:
    """All lattice points of ``p`` by bounding-box scan (small polytopes only)."""
    lo = [min(v[i] for v in p.vertices) for i in range(p.dim)]
    hi = [max(v[i] for v in p.vertices) for i in range(p.dim)]
    ranges = [range(math.ceil(a), math.floor(b) + 1) for a, b in zip(lo, hi)]
    return [pt for pt in itertools.product(*ranges) if p.contains(pt)]
