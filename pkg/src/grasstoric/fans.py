"""Complete fans: spanning fans of polytopes, star subdivisions and the blow-up fan.

A fan is stored by its primitive ray generators and its maximal cones, each a
set of ray indices. All cones are full dimensional. Facets of a cone are found
as extreme rays of its dual cone.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from typing import Hashable, Sequence

from . import linalg as la
from .gc_polytopes import build_gc_polytopes, reduced_dual
from .ladder import Partition, build_ladder_quiver
from .polytopes import Polytope, extreme_rays

Ray = tuple[int, ...]


@lru_cache(maxsize=None)
def _cone_facets(gens: tuple[Ray, ...]) -> tuple[tuple[Ray, frozenset[int]], ...]:
    out = []
    for normal, mask in extreme_rays([list(g) for g in gens]):
        out.append((tuple(normal), frozenset(i for i in range(len(gens)) if mask >> i & 1)))
    return tuple(sorted(out))


def cone_facets(gens: Sequence[Sequence[int]]) -> list[tuple[Ray, frozenset[int]]]:
    """Inner facet normals of ``cone(gens)`` with the generators lying on each facet."""
    return list(_cone_facets(tuple(tuple(g) for g in gens)))


@dataclass
class Fan:
    """A complete fan given by its maximal cones.

    Attributes:
        rays: Primitive ray generators.
        cones: Maximal cones as sorted tuples of ray indices.
        lattice: Name of the ambient lattice.
        labels: Optional label for each maximal cone.
        functionals: For spanning fans, the facet normal ``u`` of each cone,
            with ``<u, x> >= -1`` on the polytope.
    """

    rays: list[Ray]
    cones: list[tuple[int, ...]]
    lattice: str = "N"
    labels: list[Hashable] | None = None
    functionals: list[Ray] | None = field(default=None, repr=False)

    @property
    def dim(self) -> int:
        return len(self.rays[0])

    def cone_label(self, i: int) -> Hashable:
        return self.labels[i] if self.labels is not None else i

    def generators(self, i: int) -> list[Ray]:
        return [self.rays[j] for j in self.cones[i]]

    def facets(self, i: int) -> list[tuple[Ray, frozenset[int]]]:
        """Facets of cone ``i`` with their rays given as global indices."""
        cone = self.cones[i]
        return [(u, frozenset(cone[t] for t in tight)) for u, tight in cone_facets(self.generators(i))]

    def contains(self, i: int, x: Sequence[int]) -> bool:
        return all(la.dot(u, x) >= 0 for u, _ in self.facets(i))

    def is_complete(self) -> bool:
        """Every facet of every maximal cone is a facet of exactly one other maximal cone."""
        count: dict[frozenset[int], int] = {}
        for i in range(len(self.cones)):
            for _, rays in self.facets(i):
                count[rays] = count.get(rays, 0) + 1
        return all(c == 2 for c in count.values())

    def ray_set(self) -> set[Ray]:
        return set(self.rays)

    def cone_sets(self) -> set[frozenset[Ray]]:
        return {frozenset(self.rays[j] for j in c) for c in self.cones}

    def same_as(self, other: "Fan") -> bool:
        return self.ray_set() == other.ray_set() and self.cone_sets() == other.cone_sets()

    def to_json(self) -> dict:
        out = {
            "lattice": self.lattice,
            "rays": [list(r) for r in self.rays],
            "cones": [list(c) for c in self.cones],
        }
        if self.labels is not None:
            out["labels"] = [_label_json(x) for x in self.labels]
        return out


def _label_json(x):
    return list(x) if isinstance(x, tuple) else x


def spanning_fan(p: Polytope, labels: Sequence[Hashable] | None = None) -> Fan:
    """Fan over the faces of a polytope with the origin in its interior.

    One maximal cone per facet, in the polytope's facet order. ``labels``
    names the cones in that order.
    """
    if not p.origin_interior():
        raise ValueError("origin is not in the strict interior")
    if not p.is_lattice:
        raise ValueError("spanning fan needs lattice vertices")
    rays = [tuple(v) for v in p.vertices]
    if any(la.vector_gcd(v) != 1 for v in rays):
        raise ValueError("vertices are not primitive")
    funcs = []
    for f in p.facets:
        if f.offset != 1:
            raise ValueError("polytope is not reflexive")
        funcs.append(tuple(f.normal))
    cones = [tuple(sorted(s)) for s in p.facet_vertex_sets]
    return Fan(rays, cones, p.lattice, list(labels) if labels is not None else None, funcs)


def cone_membership(f: Fan, x: Sequence[int]) -> set:
    """Labels of the maximal cones containing ``x``.

    For a spanning fan these are the cones whose functional is minimal at
    ``x``; otherwise each cone's facet inequalities are tested.
    """
    if f.functionals is not None:
        vals = [la.dot(u, x) for u in f.functionals]
        low = min(vals)
        return {f.cone_label(i) for i, v in enumerate(vals) if v == low}
    return {f.cone_label(i) for i in range(len(f.cones)) if f.contains(i, x)}


@lru_cache(maxsize=None)
def gc_spanning_fan(n: int, r: int) -> Fan:
    """Spanning fan of ``P`` in the lattice of the primitive dual, cones labelled by partitions.

    The rays are ``v_phi(a)`` and the cone of ``mu`` is spanned by the rays of
    the arrows not on the path of ``mu``.
    """
    data = build_gc_polytopes(n, r)
    q = data.quiver
    red = reduced_dual(n, r)
    pos = {v: i for i, v in enumerate(red.vertices)}
    ray_of_arrow = [pos[data.q_vertices[lam]] for lam in q.phi]
    by_rays = {}
    for mu in q.partitions:
        on = set(q.path_arrows(mu))
        key = frozenset(ray_of_arrow[a] for a in range(len(q.arrows)) if a not in on)
        by_rays[key] = mu
    labels = []
    for s in red.facet_vertex_sets:
        if s not in by_rays:
            raise AssertionError("facet does not match any partition")
        labels.append(by_rays[s])
    if len(set(labels)) != len(labels):
        raise AssertionError("two facets share a partition")
    return spanning_fan(red, labels)


def cones_containing(n: int, r: int, lam: Partition) -> set[Partition]:
    """Partitions ``mu`` whose maximal cone contains ``v_lam``, for an excess ``lam``."""
    q = build_ladder_quiver(n, r)
    lam = tuple(lam)
    if lam not in q.excess_set:
        raise ValueError(f"{lam} is not an excess partition")
    v = build_gc_polytopes(n, r).q_vertices[lam]
    return cone_membership(gc_spanning_fan(n, r), v)


@dataclass(frozen=True)
class Subdivision:
    """Bookkeeping for one star subdivision."""

    ray: Ray
    containing: int
    added: int
    cones_before: int
    cones_after: int

    @property
    def count_consistent(self) -> bool:
        return self.cones_after == self.cones_before - self.containing + self.added


def _star(f: Fan, new_ray: Sequence[int]) -> tuple[Fan, Subdivision]:
    v = tuple(new_ray)
    if len(v) != f.dim:
        raise ValueError("ray has the wrong dimension")
    if la.vector_gcd(v) != 1:
        raise ValueError("new ray is not primitive")
    if v in f.ray_set():
        raise ValueError("new ray is already a ray of the fan")
    rays = list(f.rays) + [v]
    vi = len(rays) - 1
    keep, keep_labels, new = [], [], []
    containing = 0
    for i, cone in enumerate(f.cones):
        facets = f.facets(i)
        if all(la.dot(u, v) >= 0 for u, _ in facets):
            containing += 1
            for u, tight in facets:
                if la.dot(u, v) > 0:
                    new.append(tuple(sorted(tight | {vi})))
        else:
            keep.append(cone)
            keep_labels.append(f.cone_label(i))
    if containing == 0:
        raise ValueError("ray lies in no cone; the fan is not complete")
    labels = None
    if f.labels is not None:
        labels = keep_labels + [None] * len(new)
    out = Fan(rays, keep + new, f.lattice, labels)
    return out, Subdivision(v, containing, len(new), len(f.cones), len(out.cones))


def star_subdivide(f: Fan, new_ray: Sequence[int]) -> Fan:
    """Star subdivision of ``f`` at a primitive vector.

    Every maximal cone containing the vector is replaced by the cones joining
    it to the facets that do not contain it. Labels of untouched cones are
    kept; new cones are labelled None.

    Raises:
        ValueError: If ``new_ray`` is already a ray or is not primitive.
    """
    return _star(f, new_ray)[0]


@dataclass
class VGITReport:
    """Outcome of blowing up the spanning fan at the excess vertices.

    Attributes:
        rays_match: The ray set equals the vertex set of the primitive dual.
        polytopes_match: The hull of the rays has the same facets as the primitive dual.
        complete: The final fan is complete.
        rays_are_vertices: Every ray generator is a vertex of the hull of the rays.
        counts_consistent: Each subdivision changed the cone count as predicted.
    """

    n: int
    r: int
    order: list[Partition]
    fan: Fan
    steps: list[Subdivision]
    rays_match: bool
    polytopes_match: bool
    complete: bool
    rays_are_vertices: bool
    counts_consistent: bool

    @property
    def ok(self) -> bool:
        return all(
            (self.rays_match, self.polytopes_match, self.complete, self.rays_are_vertices, self.counts_consistent)
        )

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "r": self.r,
            "order": [list(p) for p in self.order],
            "checks": {
                "rays_match": self.rays_match,
                "polytopes_match": self.polytopes_match,
                "complete": self.complete,
                "rays_are_vertices": self.rays_are_vertices,
                "counts_consistent": self.counts_consistent,
            },
            "ok": self.ok,
            "rays": len(self.fan.rays),
            "cones": len(self.fan.cones),
            "steps": [
                {"ray": list(s.ray), "containing": s.containing, "added": s.added, "cones": s.cones_after}
                for s in self.steps
            ],
            "fan": self.fan.to_json(),
        }


def blow_up_fan(n: int, r: int, order: Sequence[Partition] | None = None) -> tuple[Fan, list[Subdivision]]:
    """Subdivide the spanning fan at each excess vertex in turn (lexicographic by default)."""
    q = build_ladder_quiver(n, r)
    excess = list(q.excess_set)
    order = excess if order is None else [tuple(p) for p in order]
    if sorted(order) != sorted(excess) or len(set(order)) != len(order):
        raise ValueError("order must be a permutation of the excess partitions")
    verts = build_gc_polytopes(n, r).q_vertices
    f = gc_spanning_fan(n, r)
    steps = []
    for lam in order:
        f, step = _star(f, verts[lam])
        steps.append(step)
    return f, steps


def verify_vgit_theorem(n: int, r: int, order: Sequence[Partition] | None = None) -> VGITReport:
    """Compare the blown-up fan with the spanning fan of the primitive dual."""
    q = build_ladder_quiver(n, r)
    order = list(q.excess_set) if order is None else [tuple(p) for p in order]
    f, steps = blow_up_fan(n, r, order)
    target = build_gc_polytopes(n, r).q
    hull = Polytope(f.rays, target.lattice)
    return VGITReport(
        n=n,
        r=r,
        order=order,
        fan=f,
        steps=steps,
        rays_match=f.ray_set() == set(target.vertices),
        polytopes_match=hull.h_representation() == target.h_representation(),
        complete=f.is_complete(),
        rays_are_vertices=len(hull.vertices) == len(f.rays),
        counts_consistent=all(s.count_consistent for s in steps),
    )
