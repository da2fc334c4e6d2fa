"""Finite abelian groups acting on the toric degeneration.

Subgroups of ``(Z/n)^m`` are stored as integer lattices ``L`` with
``n Z^m <= L <= Z^m``, kept in Hermite normal form so that equality is a
direct comparison. Annihilators (``{x : x.y = 0 mod n for y in L}``) turn
linear congruences into lattice operations.

Names follow the ladder quiver:

* ``G~`` is ``{g in (Z/n)^arrows : sum(g) = 0}``; the torus part ``T n G~``
  is spanned by the rows of the weight matrix.
* ``G = G~ / (T n G~)`` acts on the toric variety of ``P``.
* ``H~ = {z in (Z/n)^n : r sum(z) = 0}`` and ``H`` is ``H~`` modulo scalars.
* ``Psi(z)_a`` adds the coordinates ``z_j`` over the vertical steps of
  arrow ``a``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property, lru_cache
from math import gcd
from typing import Iterable, Iterator, Sequence

from . import linalg as la
from .gc_polytopes import weight_matrix
from .ladder import LadderQuiver, Partition, build_ladder_quiver


class Subgroup:
    """Subgroup of ``(Z/n)^m`` given by generators."""

    def __init__(self, modulus: int, dim: int, generators: Iterable[Sequence[int]] = ()):
        self.modulus = modulus
        self.dim = dim
        self._basis = [[modulus * int(i == j) for j in range(dim)] for i in range(dim)]
        for g in generators:
            self._insert(g)
        self._reduce()

    def _insert(self, v: Sequence[int]) -> None:
        n = self.modulus
        v = [x % n for x in v]
        b = self._basis
        for j in range(self.dim):
            if v[j] == 0:
                continue
            g, s, t = la.xgcd(b[j][j], v[j])
            p, q = b[j][j] // g, v[j] // g
            row = [s * x + t * y for x, y in zip(b[j], v)]
            v = [p * y - q * x for x, y in zip(b[j], v)]
            b[j] = row
            # keep entries small; n Z^m lies in the lattice
            b[j] = [x % n if k > j else x for k, x in enumerate(b[j])]
            v = [x % n for x in v]

    def _reduce(self) -> None:
        b = self._basis
        for j in range(self.dim):
            for i in range(j):
                q = b[i][j] // b[j][j]
                if q:
                    b[i] = [x - q * y for x, y in zip(b[i], b[j])]

    @property
    def basis(self) -> list[list[int]]:
        """HNF basis of the lattice ``L`` (upper triangular, positive diagonal)."""
        return [list(row) for row in self._basis]

    @property
    def order(self) -> int:
        out = 1
        for j in range(self.dim):
            out *= self.modulus // self._basis[j][j]
        return out

    def generators(self) -> list[list[int]]:
        """Basis rows that are nonzero modulo ``n``."""
        return [row for row in self._basis if any(x % self.modulus for x in row)]

    def contains(self, v: Sequence[int]) -> bool:
        v = [x % self.modulus for x in v]
        for j in range(self.dim):
            if v[j] % self._basis[j][j]:
                return False
            q = v[j] // self._basis[j][j]
            if q:
                v = [x - q * y for x, y in zip(v, self._basis[j])]
        return True

    def __le__(self, other: "Subgroup") -> bool:
        return all(other.contains(row) for row in self._basis)

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, Subgroup)
            and self.modulus == other.modulus
            and self._basis == other._basis
        )

    def __hash__(self) -> int:
        return hash((self.modulus, tuple(map(tuple, self._basis))))

    def __add__(self, other: "Subgroup") -> "Subgroup":
        return Subgroup(self.modulus, self.dim, self._basis + other._basis)

    def annihilator(self) -> "Subgroup":
        """``{x : x . y = 0 (mod n) for all y}``, computed as ``n (L^-1)^T``."""
        inv = la.rational_inverse(self._basis)
        rows = [[int(self.modulus * inv[j][i]) for j in range(self.dim)] for i in range(self.dim)]
        return Subgroup(self.modulus, self.dim, rows)

    def __and__(self, other: "Subgroup") -> "Subgroup":
        return (self.annihilator() + other.annihilator()).annihilator()

    def __repr__(self) -> str:
        return f"Subgroup(modulus={self.modulus}, dim={self.dim}, order={self.order})"

    def to_json(self) -> dict:
        return {"modulus": self.modulus, "generators": self.generators(), "order": self.order}


def solutions_mod(modulus: int, dim: int, constraints: Iterable[Sequence[int]]) -> Subgroup:
    """All ``x`` with ``x . c = 0 (mod n)`` for every constraint vector ``c``."""
    return Subgroup(modulus, dim, constraints).annihilator()


class Quotient:
    """Finite quotient ``top / bottom`` of two subgroups of ``(Z/n)^m``."""

    def __init__(self, top: Subgroup, bottom: Subgroup):
        if not bottom <= top:
            raise ValueError("bottom is not contained in top")
        self.top, self.bottom = top, bottom

    @property
    def order(self) -> int:
        return self.top.order // self.bottom.order

    @cached_property
    def _smith(self):
        a = self.top.basis
        ainv = la.rational_inverse(a)
        x = [[int(c) for c in row] for row in la.matmul(self.bottom.basis, ainv)]
        d, u, v = la.smith_normal_form(x)
        vinv = [[int(c) for c in row] for row in la.rational_inverse(v)]
        f = la.matmul(vinv, a)
        return [d[i][i] for i in range(len(d))], f

    @property
    def invariant_factors(self) -> list[int]:
        return [x for x in self._smith[0] if x != 1]

    def representatives(self) -> Iterator[list[int]]:
        """One vector of ``top`` per coset, reduced modulo ``n``."""
        diag, f = self._smith
        n = self.top.modulus
        live = [(d, f[i]) for i, d in enumerate(diag) if d != 1]

        def rec(i, acc):
            if i == len(live):
                yield [x % n for x in acc]
                return
            d, row = live[i]
            for c in range(d):
                yield from rec(i + 1, [a + c * b for a, b in zip(acc, row)])

        yield from rec(0, [0] * self.top.dim)

    def contains(self, v: Sequence[int]) -> bool:
        return self.top.contains(v)

    def is_trivial(self, v: Sequence[int]) -> bool:
        return self.bottom.contains(v)

    def element_order(self, v: Sequence[int]) -> int:
        m = 1
        while not self.bottom.contains([m * x for x in v]):
            m += 1
        return m

    def __repr__(self) -> str:
        return f"Quotient(order={self.order}, invariants={self.invariant_factors})"


# groups attached to the ladder quiver


def ones(m: int) -> list[int]:
    return [1] * m


@lru_cache(maxsize=None)
def _quiver(n: int, r: int) -> LadderQuiver:
    return build_ladder_quiver(n, r)


def g_tilde(n: int, r: int) -> Subgroup:
    q = _quiver(n, r)
    return solutions_mod(n, len(q.arrows), [ones(len(q.arrows))])


def torus_intersection(b: Sequence[Sequence[int]], modulus: int) -> Subgroup:
    """The torus part ``T n G~``, spanned by the rows of the weight matrix mod ``n``."""
    return Subgroup(modulus, len(b[0]), b)


@lru_cache(maxsize=None)
def torus_part(n: int, r: int) -> Subgroup:
    return torus_intersection(weight_matrix(_quiver(n, r)), n)


@lru_cache(maxsize=None)
def group_G(n: int, r: int) -> Quotient:
    """``G = G~ / (T n G~)``."""
    return Quotient(g_tilde(n, r), torus_part(n, r))


def monomial_weight(n: int, r: int, g: Sequence[int], monomial: Iterable[Partition]) -> int:
    """Weight of a product of Pluecker coordinates under ``g`` in ``(Z/n)^arrows``."""
    q = _quiver(n, r)
    return sum(g[a] for lam in monomial for a in q.path_arrows(lam)) % n


def monomial_vector(n: int, r: int, monomial: Iterable[Partition]) -> list[int]:
    """Character vector of a monomial: arrow multiplicities over its paths."""
    q = _quiver(n, r)
    v = [0] * len(q.arrows)
    for lam in monomial:
        for a in q.path_arrows(lam):
            v[a] += 1
    return v


def h_tilde(n: int, r: int) -> Subgroup:
    return solutions_mod(n, n, [[r] * n])


def diagonal(n: int) -> Subgroup:
    return Subgroup(n, n, [ones(n)])


def psi_map(n: int, r: int) -> list[list[int]]:
    """Rows indexed by ``j = 1..n``: ``Psi(z) = z @ psi_map(n, r)``."""
    return _quiver(n, r).vertical_label_matrix()


def psi(n: int, r: int, zeta: Sequence[int]) -> list[int]:
    return [x % n for x in la.vecmat(zeta, psi_map(n, r))]


def psi_image(n: int, r: int) -> Subgroup:
    """``Psi(H~) + (T n G~)`` inside ``(Z/n)^arrows``."""
    gens = [psi(n, r, z) for z in h_tilde(n, r).basis]
    return Subgroup(n, len(_quiver(n, r).arrows), gens) + torus_part(n, r)


def psi_kernel(n: int, r: int) -> Subgroup:
    """``{z in H~ : Psi(z) in T n G~}``, solved as one system of congruences.

    Unknowns are ``(z, c)`` with ``z @ Psi - c @ B = 0``; the extra column
    imposes ``r sum(z) = 0``.
    """
    q = _quiver(n, r)
    e = psi_map(n, r)
    b = weight_matrix(q)
    rows = [list(row) + [r] for row in e] + [[-x for x in row] + [0] for row in b]
    sol = solutions_mod(n, len(rows), la.transpose(rows))
    return Subgroup(n, n, [row[:n] for row in sol.basis])


def relation_constraints(n: int, r: int, relations) -> list[list[int]]:
    """Differences of monomial character vectors within each relation."""
    out = []
    for rel in relations:
        mons = [monomial_vector(n, r, m) for m in rel.monomials]
        for m in mons[1:]:
            out.append([x - y for x, y in zip(m, mons[0])])
    return out


def homogeneous_subgroup(n: int, r: int, relations) -> Subgroup:
    """Elements of ``G~`` under which every relation is homogeneous."""
    m = len(_quiver(n, r).arrows)
    return solutions_mod(n, m, relation_constraints(n, r, relations) + [ones(m)])


def compute_G_h(n: int, r: int, relations=None) -> Quotient:
    """The subgroup ``G_h`` of ``G`` preserving the Pluecker ideal.

    ``relations`` defaults to the full set of shuffle relations.
    """
    from .pluecker import shuffle_relations

    rels = shuffle_relations(n, r) if relations is None else relations
    return Quotient(homogeneous_subgroup(n, r, rels), torus_part(n, r))


def is_homogeneous(n: int, r: int, g: Sequence[int], relation) -> bool:
    weights = {monomial_weight(n, r, g, m) for m in relation.monomials}
    return len(weights) == 1


@dataclass(frozen=True)
class BruteForce:
    accepted: int
    group_order: int
    subgroup: Subgroup
    closed: bool


BRUTE_FORCE_LIMIT = 10**6


def brute_force_G_h(n: int, r: int, relations=None, check_closure: bool = True) -> BruteForce:
    """Test every element of ``G`` against every relation.

    Raises:
        ValueError: If ``G`` has more than ``BRUTE_FORCE_LIMIT`` elements.
    """
    from .pluecker import shuffle_relations

    grp = group_G(n, r)
    if grp.order > BRUTE_FORCE_LIMIT:
        raise ValueError(f"|G| = {grp.order} is too large to enumerate")
    rels = shuffle_relations(n, r) if relations is None else relations
    cons = relation_constraints(n, r, rels)
    accepted = []
    for g in grp.representatives():
        if all(la.dot(g, c) % n == 0 for c in cons):
            accepted.append(g)
    sub = Subgroup(n, grp.top.dim, accepted + grp.bottom.basis)
    closed = True
    if check_closure:
        lim = accepted[:40]
        for a in lim:
            for b in lim:
                s = [(x + y) % n for x, y in zip(a, b)]
                if not all(la.dot(s, c) % n == 0 for c in cons):
                    closed = False
    return BruteForce(len(accepted), grp.order, sub, closed)


def expected_orders(n: int, r: int) -> dict[str, int | Fraction]:
    """Closed-form orders of ``G``, ``G_h`` and the number of components."""
    k = n - r
    d = gcd(n, r)
    return {
        "G": n ** (r * k - 1),
        "G_h": d * n ** (n - 2),
        "components": Fraction(n ** ((r - 1) * (k - 1)), d),
    }


@dataclass(frozen=True)
class GroupReport:
    n: int
    r: int
    order_G: int
    order_G_h: int
    components: int
    equals_psi_image: bool
    psi_injective: bool
    g_h: Subgroup

    def to_json(self) -> dict:
        exp = expected_orders(self.n, self.r)
        return {
            "n": self.n,
            "r": self.r,
            "order_G": self.order_G,
            "order_G_h": self.order_G_h,
            "components": self.components,
            "expected": {k: int(v) if Fraction(v).denominator == 1 else str(v) for k, v in exp.items()},
            "G_h_preimage": {**self.g_h.to_json(), "equals_psi_image": self.equals_psi_image},
            "psi_injective": self.psi_injective,
        }


def group_report(n: int, r: int) -> GroupReport:
    g = group_G(n, r)
    gh = compute_G_h(n, r)
    injective = psi_kernel(n, r) == diagonal(n) + Subgroup(n, n)
    return GroupReport(
        n=n,
        r=r,
        order_G=g.order,
        order_G_h=gh.order,
        components=g.order // gh.order,
        equals_psi_image=gh.top == psi_image(n, r) and psi_image(n, r) <= g_tilde(n, r),
        psi_injective=injective,
        g_h=gh.top,
    )
