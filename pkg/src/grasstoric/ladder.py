"""The ladder quiver of a Grassmannian and its dual quiver.

Work on a grid of width ``k = n - r`` and height ``r``. A partition fitting in
an ``r x k`` box is drawn as a lattice path from ``(0, 0)`` to ``(k, r)``; its
part ``lam[i]`` (largest first) is the x position of the vertical step in row
``y = r - 1 - i``. Unit steps are numbered ``1..n`` along the path and the
numbers of the vertical steps give the Pluecker index set of the partition.

The ladder quiver has the source ``(0, 0)``, the sink ``(k, r)`` and the
internal grid points as vertices. Its arrows are the maximal monotone paths
between vertices that meet no other vertex.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property, lru_cache
from itertools import product
from typing import Iterable, Sequence

Partition = tuple[int, ...]
GridPoint = tuple[int, int]

TOP = "top"
RIGHT = "right"


def _trim(parts: Iterable[int]) -> Partition:
    out = list(parts)
    while out and out[-1] == 0:
        out.pop()
    return tuple(out)


def check_shape(n: int, r: int) -> None:
    if not (isinstance(n, int) and isinstance(r, int)) or not 0 < r < n:
        raise ValueError(f"need integers with 0 < r < n, got n={n}, r={r}")


def partitions(n: int, r: int) -> list[Partition]:
    """All partitions in an ``r x (n - r)`` box, in lexicographic order."""
    check_shape(n, r)
    k = n - r
    out = []

    def rec(prefix, bound):
        if len(prefix) == r:
            out.append(_trim(prefix))
            return
        for p in range(bound + 1):
            rec(prefix + [p], p)

    rec([], k)
    return sorted(out)


def path_steps(lam: Partition, n: int, r: int) -> str:
    """Step string of the lattice path of ``lam`` ("R" right, "U" up)."""
    k = n - r
    parts = list(lam) + [0] * (r - len(lam))
    if len(parts) > r or any(p > k or p < 0 for p in parts):
        raise ValueError(f"{lam} does not fit in a {r}x{k} box")
    if any(parts[i] < parts[i + 1] for i in range(r - 1)):
        raise ValueError(f"{lam} is not a partition")
    steps = []
    x = 0
    for y in range(r):
        target = parts[r - 1 - y]
        steps.append("R" * (target - x))
        steps.append("U")
        x = target
    steps.append("R" * (k - x))
    return "".join(steps)


def partition_from_steps(steps: str, r: int) -> Partition:
    parts = []
    x = 0
    for s in steps:
        if s == "R":
            x += 1
        else:
            parts.append(x)
    if len(parts) != r:
        raise ValueError("step string has the wrong number of vertical steps")
    return _trim(reversed(parts))


def index_set(lam: Partition, n: int, r: int) -> tuple[int, ...]:
    """Pluecker index set: positions of the vertical steps along the path."""
    return tuple(i + 1 for i, s in enumerate(path_steps(lam, n, r)) if s == "U")


def partition_from_index_set(indices: Iterable[int], n: int, r: int) -> Partition:
    idx = set(indices)
    if len(idx) != r or not idx <= set(range(1, n + 1)):
        raise ValueError(f"{sorted(idx)} is not an {r}-subset of 1..{n}")
    return partition_from_steps("".join("U" if i in idx else "R" for i in range(1, n + 1)), r)


def path_points(steps: str) -> list[GridPoint]:
    pts = [(0, 0)]
    x = y = 0
    for s in steps:
        if s == "R":
            x += 1
        else:
            y += 1
        pts.append((x, y))
    return pts


def meet_join(sigma: Partition, lam: Partition) -> tuple[Partition, Partition]:
    """``(wedge, vee)``: the smallest partition containing both, and the largest inside both."""
    return join(sigma, lam), meet(sigma, lam)


def meet(a: Partition, b: Partition) -> Partition:
    """Componentwise minimum."""
    m = max(len(a), len(b))
    a2, b2 = list(a) + [0] * (m - len(a)), list(b) + [0] * (m - len(b))
    return _trim(min(x, y) for x, y in zip(a2, b2))


def join(a: Partition, b: Partition) -> Partition:
    """Componentwise maximum."""
    m = max(len(a), len(b))
    a2, b2 = list(a) + [0] * (m - len(a)), list(b) + [0] * (m - len(b))
    return _trim(max(x, y) for x, y in zip(a2, b2))


def contained(a: Partition, b: Partition) -> bool:
    """Young diagram inclusion ``a <= b``."""
    return len(a) <= len(b) and all(x <= y for x, y in zip(a, b))


def comparable(a: Partition, b: Partition) -> bool:
    return contained(a, b) or contained(b, a)


def transpose_partition(lam: Partition) -> Partition:
    if not lam:
        return ()
    return tuple(sum(1 for p in lam if p > i) for i in range(lam[0]))


@dataclass(frozen=True)
class Arrow:
    """A ladder arrow: a monotone path between two quiver vertices."""

    index: int
    source: GridPoint
    target: GridPoint
    steps: str

    @cached_property
    def unit_steps(self) -> tuple[tuple[GridPoint, str], ...]:
        """Each unit step as ``(start point, direction)``."""
        out = []
        x, y = self.source
        for s in self.steps:
            out.append(((x, y), s))
            x, y = (x + 1, y) if s == "R" else (x, y + 1)
        return tuple(out)

    @cached_property
    def vertical_labels(self) -> tuple[int, ...]:
        """Step numbers ``x + y + 1`` of the vertical unit steps."""
        return tuple(x + y + 1 for (x, y), s in self.unit_steps if s == "U")

    def to_json(self) -> dict:
        return {
            "index": self.index,
            "source": list(self.source),
            "target": list(self.target),
            "steps": self.steps,
        }


@dataclass(frozen=True)
class DualArrow:
    """Arrow of the dual quiver together with the ladder arrow it crosses."""

    source: object
    target: object
    crossed: int
    label: Partition


class LadderQuiver:
    """Ladder quiver for the Grassmannian of ``r``-planes in ``n``-space."""

    def __init__(self, n: int, r: int):
        check_shape(n, r)
        self.n, self.r, self.k = n, r, n - r
        k = self.k
        self.source: GridPoint = (0, 0)
        self.sink: GridPoint = (k, r)
        self.internal: list[GridPoint] = [
            (x, y) for y in range(1, r) for x in range(1, k)
        ]
        self.vertices: list[GridPoint] = [self.source] + self.internal + [self.sink]
        vset = set(self.vertices)
        found = []

        def walk(start, x, y, steps):
            if steps and (x, y) in vset:
                found.append((start, (x, y), steps))
                return
            if x < k:
                walk(start, x + 1, y, steps + "R")
            if y < r:
                walk(start, x, y + 1, steps + "U")

        order = {v: i for i, v in enumerate(self.vertices)}
        for v in self.vertices[:-1]:
            walk(v, v[0], v[1], "")
        found.sort(key=lambda t: (order[t[0]], t[2]))
        self.arrows: list[Arrow] = [Arrow(i, s, t, st) for i, (s, t, st) in enumerate(found)]
        self._vertex_set = vset
        self._by_path = {(a.source, a.steps): a.index for a in self.arrows}
        # boundary segments can lie on several arrows; keep only unique ones
        seen: dict[tuple[GridPoint, str], list[int]] = {}
        for a in self.arrows:
            for seg in a.unit_steps:
                seen.setdefault(seg, []).append(a.index)
        self._by_segment = {seg: ids[0] for seg, ids in seen.items() if len(ids) == 1}
        self._path_cache: dict[Partition, tuple[int, ...]] = {}

    def __repr__(self) -> str:
        return f"LadderQuiver(n={self.n}, r={self.r})"

    @property
    def non_source_vertices(self) -> list[GridPoint]:
        return self.vertices[1:]

    def arrow_through(self, start: GridPoint, direction: str) -> int:
        """Index of the unique arrow containing a given unit segment.

        Raises:
            KeyError: If no arrow, or more than one, contains the segment.
        """
        return self._by_segment[(start, direction)]

    def path_arrows(self, lam: Partition) -> tuple[int, ...]:
        """Arrows making up the path of ``lam``, in order along the path."""
        got = self._path_cache.get(lam)
        if got is not None:
            return got
        steps = path_steps(lam, self.n, self.r)
        pts = path_points(steps)
        out = []
        start = 0
        for i in range(1, len(pts)):
            if pts[i] in self._vertex_set:
                out.append(self._by_path[(pts[start], steps[start:i])])
                start = i
        got = tuple(out)
        self._path_cache[lam] = got
        return got

    def contains(self, lam: Partition, arrow: int) -> bool:
        return arrow in self.path_arrows(lam)

    def arrow_indicator(self, lam: Partition) -> list[int]:
        v = [0] * len(self.arrows)
        for a in self.path_arrows(lam):
            v[a] = 1
        return v

    @cached_property
    def partitions(self) -> list[Partition]:
        return partitions(self.n, self.r)

    # dual quiver

    @cached_property
    def cells(self) -> list[GridPoint]:
        """Interior vertices of the dual quiver: the unit boxes ``(i, j)``."""
        return [(i, j) for j in range(self.r) for i in range(self.k)]

    @cached_property
    def dual_arrows(self) -> list[DualArrow]:
        """Dual arrows, listed in the order of the ladder arrows they cross."""
        k, r = self.k, self.r
        out: dict[int, DualArrow] = {}

        def add(src, tgt, seg, label):
            a = self._by_segment[seg]
            if a in out:
                raise AssertionError("two dual arrows cross the same ladder arrow")
            out[a] = DualArrow(src, tgt, a, label)

        for j in range(r):
            for i in range(k - 1):
                lab = transpose_partition(_trim((r,) * (k - 1 - i) + (j,)))
                add((i, j), (i + 1, j), ((i + 1, j), "U"), lab)
        add((k - 1, 0), RIGHT, ((k, 0), "U"), ())
        for j in range(r - 1):
            for i in range(k):
                lab = _trim((k,) * j + (k - i,))
                add((i, j + 1), (i, j), ((i, j + 1), "R"), lab)
        add(TOP, (0, r - 1), ((0, r), "R"), (k,) * r)
        if len(out) != len(self.arrows):
            raise AssertionError("dual arrows are not in bijection with ladder arrows")
        return [out[a.index] for a in self.arrows]

    @cached_property
    def phi(self) -> list[Partition]:
        """Partition labelling each arrow, indexed by ladder arrow."""
        return [d.label for d in self.dual_arrows]

    @cached_property
    def labelled_set(self) -> list[Partition]:
        """The labelling partitions, in lexicographic order."""
        return sorted(self.phi)

    @cached_property
    def excess_set(self) -> list[Partition]:
        """Partitions that label no arrow."""
        lab = set(self.phi)
        return [p for p in self.partitions if p not in lab]

    @cached_property
    def incidence_matrix(self) -> list[list[int]]:
        """``-e_source + e_target`` for each arrow, without the source row."""
        pos = {v: i for i, v in enumerate(self.non_source_vertices)}
        rows = [[0] * len(self.arrows) for _ in pos]
        for a in self.arrows:
            if a.source in pos:
                rows[pos[a.source]][a.index] -= 1
            rows[pos[a.target]][a.index] += 1
        return rows

    def vertical_label_matrix(self) -> list[list[int]]:
        """``E[j-1][a]`` counts vertical steps of arrow ``a`` labelled ``j``."""
        mat = [[0] * len(self.arrows) for _ in range(self.n)]
        for a in self.arrows:
            for lab in a.vertical_labels:
                mat[lab - 1][a.index] += 1
        return mat

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "r": self.r,
            "vertices": [list(v) for v in self.vertices],
            "arrows": [a.to_json() for a in self.arrows],
        }


@lru_cache(maxsize=None)
def build_ladder_quiver(n: int, r: int) -> LadderQuiver:
    """The ladder quiver with its dual quiver (cached per shape)."""
    return LadderQuiver(n, r)


def partition_to_subset(q: LadderQuiver, lam: Partition) -> tuple[int, ...]:
    return index_set(lam, q.n, q.r)


def subset_to_partition(q: LadderQuiver, indices: Iterable[int]) -> Partition:
    return partition_from_index_set(indices, q.n, q.r)


@dataclass(frozen=True)
class PhiLabeling:
    """Arrow labels with the labelled (arrow) partitions and the excess ones."""

    labels: dict[int, Partition]
    arrow_partitions: list[Partition]
    excess: list[Partition]


def phi_labeling(q: LadderQuiver) -> PhiLabeling:
    return PhiLabeling(dict(enumerate(q.phi)), q.labelled_set, q.excess_set)


# crossing diagrams

Diagram = tuple[str, ...]


def crossing_diagram_paths(q: LadderQuiver, assignment: Sequence[str]) -> list[Partition]:
    """Paths compatible with an assignment of "X" (straight) or "O" (turn).

    ``assignment`` lists one symbol per internal vertex, in the order of
    ``LadderQuiver.internal``.
    """
    n, r = q.n, q.r
    if len(assignment) != len(q.internal) or any(s not in "XO" for s in assignment):
        raise ValueError("assignment must give X or O for every internal vertex")
    rule = dict(zip(q.internal, assignment))
    out = []
    for lam in q.partitions:
        steps = path_steps(lam, n, r)
        pts = path_points(steps)
        ok = True
        for i in range(1, len(steps)):
            sym = rule.get(pts[i])
            if sym is None:
                continue
            straight = steps[i - 1] == steps[i]
            if straight != (sym == "X"):
                ok = False
                break
        if ok:
            out.append(lam)
    return out


def all_crossing_diagrams(q: LadderQuiver) -> Iterable[tuple[Diagram, list[Partition]]]:
    for assignment in product("XO", repeat=len(q.internal)):
        yield assignment, crossing_diagram_paths(q, assignment)


def is_m_covering(q: LadderQuiver, paths: Iterable[Partition]) -> int | None:
    """The ``m`` such that the paths use every arrow exactly ``m`` times, or None."""
    count = [0] * len(q.arrows)
    for lam in paths:
        for a in q.path_arrows(lam):
            count[a] += 1
    return count[0] if len(set(count)) == 1 and count[0] > 0 else None


def dual_paths(q: LadderQuiver) -> list[list[int]]:
    """Paths in the dual quiver from the top external vertex to the right one.

    Each path is the list of crossed ladder arrows.
    """
    out_of: dict[object, list[DualArrow]] = {}
    for d in q.dual_arrows:
        out_of.setdefault(d.source, []).append(d)
    paths = []

    def rec(v, acc):
        if v == RIGHT:
            paths.append(acc)
            return
        for d in out_of.get(v, []):
            rec(d.target, acc + [d.crossed])

    rec(TOP, [])
    return paths
