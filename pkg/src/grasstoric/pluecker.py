"""Quadratic Pluecker relations and their weights under the finite groups.

A Pluecker coordinate ``p_I`` is indexed by an ``r``-subset ``I`` of
``1..n``, or equivalently by the partition whose path has its vertical steps
at the positions in ``I``. Relations are quadratic, stored as integer
combinations of products ``p_I p_J`` with ``I <= J``.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations
from math import gcd
from typing import Iterable, Sequence

from . import linalg as la
from .groups import Subgroup, monomial_vector, ones, solutions_mod
from .ladder import (
    Partition,
    comparable,
    index_set,
    join,
    build_ladder_quiver,
    meet,
    partition_from_index_set,
    partition_from_steps,
)

IndexSet = tuple[int, ...]
Monomial = tuple[IndexSet, IndexSet]


def sort_with_sign(seq: Sequence[int]) -> tuple[int, IndexSet]:
    """Sign of the sorting permutation, and the sorted tuple (sign 0 on repeats)."""
    if len(set(seq)) < len(seq):
        return 0, ()
    s = list(seq)
    sign = 1
    for i in range(len(s)):
        for j in range(len(s) - 1 - i):
            if s[j] > s[j + 1]:
                s[j], s[j + 1] = s[j + 1], s[j]
                sign = -sign
    return sign, tuple(s)


@dataclass(frozen=True)
class Relation:
    """A quadratic relation ``sum c * p_I p_J = 0`` in canonical form."""

    n: int
    r: int
    terms: tuple[tuple[Monomial, int], ...]

    @staticmethod
    def from_terms(n: int, r: int, terms: Iterable[tuple[int, Sequence[int], Sequence[int]]]) -> "Relation | None":
        """Build from ``(coefficient, I, J)`` with possibly unsorted index sequences.

        Returns None if everything cancels.
        """
        acc: dict[Monomial, int] = {}
        for c, i, j in terms:
            si, ti = sort_with_sign(i)
            sj, tj = sort_with_sign(j)
            if c == 0 or si == 0 or sj == 0:
                continue
            key = (ti, tj) if ti <= tj else (tj, ti)
            acc[key] = acc.get(key, 0) + c * si * sj
        items = sorted((k, v) for k, v in acc.items() if v)
        if not items:
            return None
        g = 0
        for _, v in items:
            g = gcd(g, v)
        if items[0][1] < 0:
            g = -g
        return Relation(n, r, tuple((k, v // g) for k, v in items))

    @property
    def monomials(self) -> list[tuple[Partition, Partition]]:
        return [
            (partition_from_index_set(i, self.n, self.r), partition_from_index_set(j, self.n, self.r))
            for (i, j), _ in self.terms
        ]

    def coefficient(self, mono: Monomial) -> int:
        i, j = mono
        key = (i, j) if i <= j else (j, i)
        for k, v in self.terms:
            if k == key:
                return v
        return 0

    def evaluate(self, minors: dict[IndexSet, int]) -> int:
        return sum(c * minors[i] * minors[j] for (i, j), c in self.terms)

    def to_text(self) -> str:
        def p(idx):
            return "p_{" + ",".join(map(str, idx)) + "}"

        out = []
        for t, ((i, j), c) in enumerate(self.terms):
            sign = "-" if c < 0 else "+"
            mag = "" if abs(c) == 1 else f"{abs(c)}*"
            body = f"{mag}{p(i)}{p(j)}"
            out.append(body if t == 0 and c > 0 else f"{sign} {body}" if t else f"-{body}")
        return " ".join(out)

    def to_json(self) -> dict:
        return {
            "terms": [
                {"coefficient": c, "monomial": [list(i), list(j)]} for (i, j), c in self.terms
            ],
            "text": self.to_text(),
        }


def shuffle_relation(n: int, r: int, i_prime: Sequence[int], j_prime: Sequence[int]) -> Relation | None:
    """``sum_t (-1)^t p_{I' + j_t} p_{J' - j_t}`` for ``|I'| = r - 1``, ``|J'| = r + 1``."""
    terms = []
    jp = list(j_prime)
    for t, j in enumerate(jp):
        terms.append(((-1) ** t, list(i_prime) + [j], jp[:t] + jp[t + 1 :]))
    return Relation.from_terms(n, r, terms)


@lru_cache(maxsize=None)
def shuffle_relations(n: int, r: int) -> tuple[Relation, ...]:
    """All nonzero shuffle relations, deduplicated up to sign."""
    seen = {}
    for ip in combinations(range(1, n + 1), r - 1):
        for jp in combinations(range(1, n + 1), r + 1):
            rel = shuffle_relation(n, r, ip, jp)
            if rel is not None and rel.terms not in seen:
                seen[rel.terms] = rel
    return tuple(seen[k] for k in sorted(seen))


def incomparable_pairs(n: int, r: int) -> list[tuple[Partition, Partition]]:
    parts = build_ladder_quiver(n, r).partitions
    return [(a, b) for a, b in combinations(parts, 2) if not comparable(a, b)]


def degenerate_binomial(n: int, r: int, sigma: Partition, lam: Partition) -> Relation:
    """``p_sigma p_lam - p_meet p_join`` for an incomparable pair."""
    ix = lambda p: index_set(p, n, r)
    rel = Relation.from_terms(
        n, r, [(1, ix(sigma), ix(lam)), (-1, ix(meet(sigma, lam)), ix(join(sigma, lam)))]
    )
    assert rel is not None
    return rel


def degenerate_relations(n: int, r: int) -> list[Relation]:
    """One binomial ``p_sigma p_lam - p_meet p_join`` per incomparable pair."""
    return [degenerate_binomial(n, r, a, b) for a, b in incomparable_pairs(n, r)]


# evaluation on matrices


def minors(matrix: Sequence[Sequence[int]]) -> dict[IndexSet, int]:
    """All maximal minors ``p_I`` of an ``r x n`` matrix (1-based column sets)."""
    r = len(matrix)
    n = len(matrix[0])
    out = {}
    for cols in combinations(range(n), r):
        out[tuple(c + 1 for c in cols)] = la.determinant([[row[c] for c in cols] for row in matrix])
    return out


def random_matrix(r: int, n: int, rng: random.Random, bound: int = 9) -> list[list[int]]:
    return [[rng.randint(-bound, bound) for _ in range(n)] for _ in range(r)]


def vanishes_on_random_minors(relations: Iterable[Relation], n: int, r: int, trials: int = 20, seed: int = 0) -> bool:
    rng = random.Random(seed)
    rels = list(relations)
    for _ in range(trials):
        m = minors(random_matrix(r, n, rng))
        if any(rel.evaluate(m) != 0 for rel in rels):
            return False
    return True


# local relations and their coefficient weights


def _completed(prefix: str, middle: str, suffix: str, n: int, r: int) -> Partition:
    steps = prefix + middle + suffix
    assert len(steps) == n and steps.count("U") == r
    return partition_from_steps(steps, r)


def _outside(n: int, r: int, x0: int, y0: int, x1: int, y1: int) -> tuple[str, str]:
    """Fixed path pieces from the origin to ``(x0, y0)`` and from ``(x1, y1)`` to the corner."""
    k = n - r
    return "U" * y0 + "R" * x0, "R" * (k - x1) + "U" * (r - y1)


@dataclass(frozen=True)
class LocalRelation:
    """A three-term relation around an internal vertex.

    ``pair`` is the incomparable pair crossing at the vertex, ``border`` the
    monomial whose coefficient degenerates to zero.
    """

    vertex: tuple[int, int]
    pair: tuple[Partition, Partition]
    meet_join: tuple[Partition, Partition]
    border: tuple[Partition, Partition]
    relation: Relation


def vertex_relation(n: int, r: int, v: tuple[int, int]) -> LocalRelation:
    x, y = v
    pre, suf = _outside(n, r, x - 1, y - 1, x + 1, y + 1)
    c = lambda mid: _completed(pre, mid, suf, n, r)
    lam, sig = c("RUUR"), c("URRU")
    lo, hi = c("RURU"), c("URUR")
    a, b = c("UURR"), c("RRUU")
    i = x + y - 1  # first step number inside the box
    k_set = [j for j in index_set(lam, n, r) if j < i or j > i + 3]
    rel = shuffle_relation(n, r, k_set + [i], k_set + [i + 1, i + 2, i + 3])
    assert rel is not None
    return LocalRelation(v, (lam, sig), (lo, hi), (a, b), rel)


def vertex_relations(n: int, r: int) -> list[LocalRelation]:
    return [vertex_relation(n, r, v) for v in build_ladder_quiver(n, r).internal]


def weight_difference(n: int, r: int, m1, m2) -> list[int]:
    """Character vector of ``m1 / m2`` reduced mod ``n``."""
    a = monomial_vector(n, r, m1)
    b = monomial_vector(n, r, m2)
    return [(x - y) % n for x, y in zip(a, b)]


def vertex_weight(n: int, r: int, loc: LocalRelation) -> list[int]:
    """Weight of the coefficient ``d_v``: pair monomial over border monomial."""
    return weight_difference(n, r, loc.pair, loc.border)


def normalize_character(n: int, chi: Sequence[int]) -> tuple[int, ...]:
    """Representative of ``chi`` modulo ``n`` and the all-ones vector: first entry zero."""
    c = chi[0]
    return tuple((x - c) % n for x in chi)


@dataclass(frozen=True)
class Coefficient:
    relation: Relation
    binomial: tuple[Partition, Partition]
    monomial: tuple[Partition, Partition]
    weight: tuple[int, ...]


def degenerating_pair(rel: Relation) -> tuple[Partition, Partition] | None:
    """First incomparable pair in ``rel`` whose meet and join product also occurs."""
    mons = rel.monomials
    present = {frozenset(m) if m[0] != m[1] else frozenset([m[0]]) for m in mons}
    for a, b in mons:
        if a != b and not comparable(a, b):
            mj = (meet(a, b), join(a, b))
            if frozenset(mj) in present:
                return (a, b)
    return None


def coefficient_system(n: int, r: int, relations: Sequence[Relation] | None = None) -> list[Coefficient]:
    """Coefficients attached to the non-binomial monomials of each relation.

    The weight of a coefficient is that of the degenerating monomial divided
    by the monomial it multiplies, normalized modulo scalars.
    """
    rels = shuffle_relations(n, r) if relations is None else relations
    out = []
    for rel in rels:
        pair = degenerating_pair(rel)
        if pair is None:
            continue
        mj = {pair[0], pair[1]}
        mjm = {meet(*pair), join(*pair)}
        for m in rel.monomials:
            if set(m) == mj or set(m) == mjm:
                continue
            out.append(Coefficient(rel, pair, m, normalize_character(n, weight_difference(n, r, pair, m))))
    return out


def express_in_vertex_weights(n: int, r: int, chi: Sequence[int]) -> list[int] | None:
    """Exponents ``x_v`` with ``chi = sum x_v weight(d_v)`` modulo ``n`` and scalars."""
    rows = [vertex_weight(n, r, loc) for loc in vertex_relations(n, r)]
    m = len(chi)
    sol = la.solve_mod(rows + [ones(m)], list(chi), n)
    if sol is None:
        return None
    return sol[: len(rows)]


@dataclass(frozen=True)
class CoefficientSystem:
    """Weights of the degeneration coefficients and their expression in the ``d_v``.

    Attributes:
        coefficients: One entry per non-binomial monomial of a degenerating relation.
        vertex_weights: Weight of ``d_v`` for each internal vertex ``v``.
        expressions: For each coefficient, exponents ``x_v`` with
            ``weight = sum x_v weight(d_v)`` modulo ``n`` and scalars.
    """

    n: int
    r: int
    coefficients: tuple[Coefficient, ...]
    vertex_weights: dict[tuple[int, int], tuple[int, ...]]
    expressions: tuple[tuple[int, ...], ...]

    def weight_classes(self) -> list[list[int]]:
        """Indices of coefficients grouped by equal weight, in first-appearance order."""
        groups: dict[tuple[int, ...], list[int]] = {}
        for i, c in enumerate(self.coefficients):
            groups.setdefault(c.weight, []).append(i)
        return list(groups.values())


def coefficient_weights(n: int, r: int) -> CoefficientSystem:
    """Coefficient weights for the shuffle relations, written in the ``d_v`` weights.

    Raises:
        ValueError: If some coefficient weight is not a combination of the ``d_v`` weights.
    """
    coeffs = tuple(coefficient_system(n, r))
    vw = {loc.vertex: normalize_character(n, vertex_weight(n, r, loc)) for loc in vertex_relations(n, r)}
    exprs = []
    for c in coeffs:
        x = express_in_vertex_weights(n, r, c.weight)
        if x is None:
            raise ValueError(f"weight of coefficient on {c.monomial} is not generated by the vertex weights")
        exprs.append(tuple(x))
    return CoefficientSystem(n, r, coeffs, vw, tuple(exprs))


# box relations for gcd(n, r) > 1


@dataclass(frozen=True)
class BoxRelation:
    box: tuple[int, int]
    vertex: tuple[int, int]
    sigma_v: Partition
    mu_v: Partition
    sigma: Partition
    mu: Partition
    relation: Relation
    weight: tuple[int, ...]


def exchange_terms(alpha: Sequence[int], beta: Sequence[int], positions: Sequence[int]):
    """Terms of the exchange identity for ``det(alpha) det(beta)``.

    For a fixed set ``S`` of positions in ``alpha`` the identity reads
    ``det(alpha) det(beta) = sum_T det(alpha[S <- beta_T]) det(beta[T <- alpha_S])``
    over position sets ``T`` of ``beta`` of the same size. Returned as
    ``(coefficient, I, J)`` triples of the relation ``lhs - rhs = 0``.
    """
    s = list(positions)
    terms = [(1, list(alpha), list(beta))]
    for t in combinations(range(len(beta)), len(s)):
        a2, b2 = list(alpha), list(beta)
        for ps, pt in zip(s, t):
            a2[ps], b2[pt] = beta[pt], alpha[ps]
        terms.append((-1, a2, b2))
    return terms


def box_relations(n: int, r: int) -> list[BoxRelation]:
    """Relations containing ``p_{sigma_Bv} p_{mu_Bv}`` and ``p_{sigma_B} p_{mu_B}``.

    The grid is cut into ``d x d`` boxes with ``d = gcd(n, r)``; ``v`` runs
    over the interior diagonal points of each box.
    """
    d = gcd(n, r)
    k = n - r
    out = []
    if d == 1:
        return out
    for by in range(r // d):
        for bx in range(k // d):
            x0, y0 = bx * d, by * d
            pre, suf = _outside(n, r, x0, y0, x0 + d, y0 + d)
            c = lambda mid: _completed(pre, mid, suf, n, r)
            sigma, mu = c("U" * d + "R" * d), c("R" * d + "U" * d)
            for a in range(1, d):
                sv = c("U" * a + "R" * d + "U" * (d - a))
                mv = c("R" * a + "U" * d + "R" * (d - a))
                alpha, beta = index_set(sv, n, r), index_set(mv, n, r)
                x_set = set(alpha) - set(index_set(sigma, n, r))
                pos = [i for i, v in enumerate(alpha) if v in x_set]
                rel = Relation.from_terms(n, r, exchange_terms(alpha, beta, pos))
                assert rel is not None
                wt = weight_difference(n, r, (sv, mv), (sigma, mu))
                out.append(
                    BoxRelation((bx, by), (x0 + a, y0 + a), sv, mv, sigma, mu, rel, tuple(wt))
                )
    return out


def box_border_arrows(n: int, r: int) -> list[int]:
    """Arrows lying entirely on the borders of the ``d x d`` boxes."""
    d = gcd(n, r)
    q = build_ladder_quiver(n, r)
    out = []
    for a in q.arrows:
        ok = all(
            (s == "R" and py % d == 0) or (s == "U" and px % d == 0) for (px, py), s in a.unit_steps
        )
        if ok:
            out.append(a.index)
    return out


@dataclass(frozen=True)
class BoxProduct:
    """Weight of the product of all box coefficients.

    Attributes:
        weight: Sum of the box weights, reduced mod ``n``.
        matches_border_formula: Whether it equals ``-d`` times the indicator
            of the border arrows, modulo scalars.
        order: Order of the weight as a character modulo scalars.
    """

    weight: tuple[int, ...]
    matches_border_formula: bool
    order: int


def box_product(n: int, r: int) -> BoxProduct:
    d = gcd(n, r)
    q = build_ladder_quiver(n, r)
    m = len(q.arrows)
    total = [0] * m
    for br in box_relations(n, r):
        total = [(x + y) % n for x, y in zip(total, br.weight)]
    border = set(box_border_arrows(n, r))
    expected = [(-d if a in border else 0) % n for a in range(m)]
    match = normalize_character(n, total) == normalize_character(n, expected)
    order = 1
    while len(set((order * x) % n for x in total)) > 1:
        order += 1
    return BoxProduct(tuple(total), match, order)


def cut_out_subgroup(n: int, r: int) -> Subgroup:
    """Elements of ``G~`` fixing every vertex and box coefficient."""
    m = len(build_ladder_quiver(n, r).arrows)
    cons = [vertex_weight(n, r, loc) for loc in vertex_relations(n, r)]
    cons += [list(b.weight) for b in box_relations(n, r)]
    return solutions_mod(n, m, cons + [ones(m)])


@dataclass(frozen=True)
class P2Equation:
    """Box relations for ``d = gcd(n, r) > 1`` and the weight of their coefficient product.

    Iterating gives ``(diagonal, weight)``. ``witnesses[i]`` is a shuffle
    relation containing both monomials of ``diagonal[i]``.
    """

    d: int
    diagonal: tuple[BoxRelation, ...]
    witnesses: tuple[Relation, ...]
    weight: tuple[int, ...]
    matches_border_formula: bool
    order: int

    def __iter__(self):
        return iter((self.diagonal, self.weight))

    @property
    def trivial(self) -> bool:
        return self.d == 1


def p2_equation(n: int, r: int) -> P2Equation:
    """The second coefficient equation; trivial when ``gcd(n, r) = 1``.

    Raises:
        ValueError: If no shuffle relation contains both monomials of a box relation.
    """
    d = gcd(n, r)
    m = len(build_ladder_quiver(n, r).arrows)
    if d == 1:
        return P2Equation(1, (), (), tuple([0] * m), True, 1)
    boxes = box_relations(n, r)
    shuffles = shuffle_relations(n, r)
    ix = lambda p: index_set(p, n, r)
    witnesses = []
    for b in boxes:
        m1, m2 = (ix(b.sigma_v), ix(b.mu_v)), (ix(b.sigma), ix(b.mu))
        found = next((s for s in shuffles if s.coefficient(m1) and s.coefficient(m2)), None)
        if found is None:
            raise ValueError(f"no shuffle relation contains both monomials at {b.vertex}")
        witnesses.append(found)
    prod = box_product(n, r)
    return P2Equation(d, tuple(boxes), tuple(witnesses), prod.weight, prod.matches_border_formula, prod.order)


def component_count(n: int, r: int) -> int:
    """``n^((r-1)(n-r-1)) / gcd(n, r)``, the predicted value of ``|G / G_h|``."""
    num = n ** ((r - 1) * (n - r - 1))
    d = gcd(n, r)
    if num % d:
        raise ValueError("component count is not an integer")
    return num // d
