"""Laurent polynomial mirrors: the superpotential, its compactification and periods."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import comb, factorial
from typing import Mapping, Sequence

from . import linalg as la
from .gc_polytopes import build_gc_polytopes
from .groups import h_tilde, psi
from .ladder import Partition, build_ladder_quiver, index_set, partition_to_subset
from .polytopes import Polytope, image_in_overlattice, overlattice_basis

Exponent = tuple[int, ...]


class LaurentPolynomial:
    """Sparse Laurent polynomial ``sum c_e x^e`` with exact coefficients.

    Args:
        variables: Variable names; exponent vectors have this length.
        terms: Map from exponent vectors to coefficients. Zero coefficients are dropped.
        lattice: Name of the exponent lattice.
    """

    def __init__(self, variables: Sequence[str], terms: Mapping[Sequence[int], int | Fraction], lattice: str = ""):
        self.variables = tuple(variables)
        self.lattice = lattice
        clean: dict[Exponent, int | Fraction] = {}
        for e, c in terms.items():
            e = tuple(int(x) for x in e)
            if len(e) != len(self.variables):
                raise ValueError("exponent length does not match the variables")
            if c:
                clean[e] = clean.get(e, 0) + c
        self.terms = {e: c for e, c in sorted(clean.items()) if c}

    @property
    def nvars(self) -> int:
        return len(self.variables)

    def __len__(self) -> int:
        return len(self.terms)

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, LaurentPolynomial)
            and self.variables == other.variables
            and self.terms == other.terms
        )

    def __repr__(self) -> str:
        return f"LaurentPolynomial({len(self.terms)} terms in {self.nvars} variables)"

    def __add__(self, other: "LaurentPolynomial") -> "LaurentPolynomial":
        self._check(other)
        out = dict(self.terms)
        for e, c in other.terms.items():
            out[e] = out.get(e, 0) + c
        return LaurentPolynomial(self.variables, out, self.lattice)

    def __mul__(self, other: "LaurentPolynomial") -> "LaurentPolynomial":
        self._check(other)
        return LaurentPolynomial(self.variables, _product(self.terms, other.terms), self.lattice)

    def _check(self, other):
        if self.variables != other.variables:
            raise ValueError("polynomials live in different variables")

    @classmethod
    def monomial(cls, variables: Sequence[str], exponent: Sequence[int], coefficient=1, lattice: str = ""):
        return cls(variables, {tuple(exponent): coefficient}, lattice)

    def constant_term(self) -> int | Fraction:
        return self.terms.get(tuple([0] * self.nvars), 0)

    def exponents(self) -> list[Exponent]:
        return list(self.terms)

    def newton_polytope(self) -> Polytope:
        return Polytope(self.exponents(), self.lattice or "M")

    def transform(self, matrix: Sequence[Sequence[int]], variables: Sequence[str] | None = None, lattice: str = "") -> "LaurentPolynomial":
        """Substitute monomials: the exponent ``e`` becomes ``e @ matrix``."""
        names = variables or [f"x{i}" for i in range(len(matrix[0]))]
        out: dict[Exponent, int | Fraction] = {}
        for e, c in self.terms.items():
            new = tuple(int(x) for x in la.vecmat(e, matrix))
            out[new] = out.get(new, 0) + c
        return LaurentPolynomial(names, out, lattice)

    def weight(self, exponent: Sequence[int], grading: Sequence) -> Fraction:
        return sum((Fraction(g) * x for g, x in zip(grading, exponent)), Fraction(0))

    def to_json(self) -> dict:
        def enc(c):
            return c if isinstance(c, int) else str(c)

        return {
            "lattice": self.lattice,
            "variables": list(self.variables),
            "terms": [{"exponent": list(e), "coefficient": enc(c)} for e, c in self.terms.items()],
        }


def _product(a: Mapping[Exponent, int], b: Mapping[Exponent, int], keep=None) -> dict[Exponent, int]:
    out: dict[Exponent, int] = {}
    for ea, ca in a.items():
        for eb, cb in b.items():
            e = tuple(x + y for x, y in zip(ea, eb))
            if keep is not None and not keep(e):
                continue
            out[e] = out.get(e, 0) + ca * cb
    return {e: c for e, c in out.items() if c}


def _cell_names(n: int, r: int) -> list[str]:
    return [f"t{i}_{j}" for i, j in build_ladder_quiver(n, r).cells]


def _partition_name(lam: Partition) -> str:
    return "z_" + ("".join(map(str, lam)) if lam else "0")


def ehx_superpotential(n: int, r: int) -> LaurentPolynomial:
    """``W = sum_a x^{w_a}`` with one term per vertex of ``P``."""
    data = build_gc_polytopes(n, r)
    return LaurentPolynomial(_cell_names(n, r), {w: 1 for w in data.arrow_vertices}, "M")


def monomial_map_matrix(n: int, r: int) -> list[list[int]]:
    """The product ``A_P^T A_{P dual}``: rows are arrows, columns partitions."""
    data = build_gc_polytopes(n, r)
    a_p = la.transpose([list(w) for w in data.arrow_vertices])
    a_dual = la.transpose([list(data.dual_vertices[mu]) for mu in data.quiver.partitions])
    return la.matmul(la.transpose(a_p), a_dual)


def monomial_map_formula(n: int, r: int) -> list[list[int]]:
    """Closed form ``n [a on the path of mu] - 1`` from the ladder quiver alone."""
    q = build_ladder_quiver(n, r)
    return [[n * int(a.index in q.path_arrows(mu)) - 1 for mu in q.partitions] for a in q.arrows]


def _z_names(n: int, r: int) -> list[str]:
    return [_partition_name(mu) for mu in build_ladder_quiver(n, r).partitions] + ["psi"]


def pullback_hypersurface(n: int, r: int) -> LaurentPolynomial:
    """``(W + psi) * prod_mu z_mu`` after substituting ``x -> z^{A_{P dual}}``.

    Variables are ``z_mu`` in partition order followed by ``psi``, which is
    kept as a formal exponent slot.
    """
    data = build_gc_polytopes(n, r)
    a_dual = la.transpose([list(data.dual_vertices[mu]) for mu in data.quiver.partitions])
    # append the psi slot as an extra zero column
    a_dual = [row + [0] for row in a_dual]
    names = _z_names(n, r)
    pulled = ehx_superpotential(n, r).transform(a_dual, names, "Cox")
    psi_term = LaurentPolynomial.monomial(names, [0] * (len(names) - 1) + [1], 1, "Cox")
    clear = LaurentPolynomial.monomial(names, [1] * (len(names) - 1) + [0], 1, "Cox")
    return (pulled + psi_term) * clear


def pullback_formula(n: int, r: int) -> LaurentPolynomial:
    """``sum_a prod_{mu on a} z_mu^n + psi prod_mu z_mu`` built from paths."""
    q = build_ladder_quiver(n, r)
    terms: dict[Exponent, int] = {}
    for a in q.arrows:
        e = tuple(n * int(a.index in q.path_arrows(mu)) for mu in q.partitions) + (0,)
        terms[e] = terms.get(e, 0) + 1
    terms[tuple([1] * len(q.partitions)) + (1,)] = 1
    return LaurentPolynomial(_z_names(n, r), terms, "Cox")


@dataclass(frozen=True)
class Invariance:
    """Weights of each monomial under each group generator (as fractions mod 1)."""

    generators: list[list]
    weights: list[list[Fraction]]

    @property
    def invariant(self) -> bool:
        return all(len(set(row)) <= 1 for row in self.weights)

    @property
    def weight_zero(self) -> bool:
        return all(all(w == 0 for w in row) for row in self.weights)


def pullback_invariance(n: int, r: int) -> Invariance:
    """Action of ``N / Nbar`` on the pulled-back hypersurface through Cox coordinates.

    A vector ``x`` of ``N`` is lifted to rational ``g`` with
    ``sum_mu g_mu (n m_mu - h) = x`` and acts on ``z_mu`` by ``exp(2 pi i g_mu)``.
    The hypersurface is invariant when every monomial gets the same phase.
    """
    data = build_gc_polytopes(n, r)
    parts = data.quiver.partitions
    u = [list(data.dual_vertices[mu]) for mu in parts]
    poly = pullback_hypersurface(n, r)
    dim = len(u[0])
    gens, weights = [], []
    for i in range(dim):
        x = [int(i == j) for j in range(dim)]
        g = la.solve_rational(u, x)
        if g is None:
            raise AssertionError("vertices do not span N over Q")
        gens.append(g)
        row = []
        for e in poly.terms:
            w = sum((Fraction(gi) * ei for gi, ei in zip(g, e)), Fraction(0))
            row.append(w - (w.numerator // w.denominator))
        weights.append(row)
    return Invariance(gens, weights)


# the compactified equation in Pluecker coordinates


def frozen_partitions(n: int, r: int) -> list[Partition]:
    """Rectangles that are as wide or as tall as the box allows."""
    k = n - r
    rect = lambda w, h: tuple([w] * h) if w and h else ()
    out = {rect(k, j) for j in range(r + 1)} | {rect(j, r) for j in range(k + 1)}
    return sorted(out)


def is_cyclic_interval(subset: Sequence[int], n: int) -> bool:
    s = set(subset)
    if not s or len(s) == n:
        return True
    starts = [j for j in s if (j - 2) % n + 1 not in s]
    return len(starts) == 1


@dataclass(frozen=True)
class ZnrEquation:
    """``sum_{lam arrow} p_lam^n + psi prod_{mu frozen} p_mu``.

    Attributes:
        polynomial: Variables ``p_lam`` in partition order followed by ``psi``.
        frozen: The frozen partitions.
        arrow_partitions: Partitions labelling arrows.
    """

    polynomial: LaurentPolynomial
    frozen: list[Partition]
    arrow_partitions: list[Partition]


def znr_equation(n: int, r: int) -> ZnrEquation:
    q = build_ladder_quiver(n, r)
    parts = q.partitions
    names = ["p_" + ("".join(map(str, lam)) if lam else "0") for lam in parts] + ["psi"]
    pos = {lam: i for i, lam in enumerate(parts)}
    terms: dict[Exponent, int] = {}
    for lam in q.labelled_set:
        e = [0] * (len(parts) + 1)
        e[pos[lam]] = n
        terms[tuple(e)] = terms.get(tuple(e), 0) + 1
    frozen = frozen_partitions(n, r)
    e = [0] * (len(parts) + 1)
    for mu in frozen:
        e[pos[mu]] += 1
    e[-1] = 1
    terms[tuple(e)] = 1
    return ZnrEquation(LaurentPolynomial(names, terms, "Pluecker"), frozen, list(q.labelled_set))


@dataclass(frozen=True)
class ZnrInvariance:
    frozen_count: int
    cyclic_intervals: bool
    termwise_subsets: bool
    termwise_arrows: bool

    @property
    def ok(self) -> bool:
        return self.cyclic_intervals and self.termwise_subsets and self.termwise_arrows


def znr_invariance(n: int, r: int) -> ZnrInvariance:
    """Every term of the equation has weight zero under each generator of ``H~``.

    Weights are computed twice: from the subsets ``I_lam`` directly, and from
    the image of ``H~`` in the arrow group via the path of each partition.
    """
    eq = znr_equation(n, r)
    q = build_ladder_quiver(n, r)
    parts = q.partitions
    subsets = [index_set(lam, n, r) for lam in parts]
    paths = [q.path_arrows(lam) for lam in parts]
    by_subset = by_arrow = True
    for zeta in h_tilde(n, r).basis:
        g = psi(n, r, zeta)
        for e in eq.polynomial.terms:
            ws = sum(c * sum(zeta[j - 1] for j in subsets[i]) for i, c in enumerate(e[:-1]))
            wa = sum(c * sum(g[a] for a in paths[i]) for i, c in enumerate(e[:-1]))
            by_subset &= ws % n == 0
            by_arrow &= wa % n == 0
    frozen_sets = [partition_to_subset(q, mu) for mu in eq.frozen]
    return ZnrInvariance(
        frozen_count=len(eq.frozen),
        cyclic_intervals=all(is_cyclic_interval(s, n) for s in frozen_sets),
        termwise_subsets=by_subset,
        termwise_arrows=by_arrow,
    )


# periods


def classical_period(f: LaurentPolynomial, max_order: int) -> list[int]:
    """Constant terms of ``f^0, ..., f^max_order``.

    Partial powers are pruned to exponents that can still cancel: after ``k``
    factors, each coordinate must lie in ``-(max_order - k)`` times the
    coordinate range of the exponents of ``f``.
    """
    if not f.terms:
        raise ValueError("zero polynomial")
    lo = [min(e[i] for e in f.terms) for i in range(f.nvars)]
    hi = [max(e[i] for e in f.terms) for i in range(f.nvars)]
    if any(a > 0 or b < 0 for a, b in zip(lo, hi)):
        raise ValueError("origin is outside the exponent box")
    zero = tuple([0] * f.nvars)
    out = [1]
    power = {zero: 1}
    for k in range(1, max_order + 1):
        left = max_order - k

        def keep(e, left=left):
            return all(-left * b <= x <= -left * a for x, a, b in zip(e, lo, hi))

        power = _product(power, f.terms, keep)
        out.append(power.get(zero, 0))
    return out


def _compositions(total: int, parts: int):
    if parts == 1:
        yield (total,)
        return
    for first in range(total + 1):
        for rest in _compositions(total - first, parts - 1):
            yield (first,) + rest


def period_by_multinomials(f: LaurentPolynomial, max_order: int) -> list[int]:
    """Constant terms of powers of ``f`` summed over term multiplicities.

    ``c_k = sum k! / prod m_i! * prod c_i^m_i`` over ``m`` with ``sum m = k``
    and ``sum m_i e_i = 0``. Exponential in the number of terms.
    """
    exps = list(f.terms)
    coeffs = [f.terms[e] for e in exps]
    out = []
    for k in range(max_order + 1):
        total = 0
        for m in _compositions(k, len(exps)):
            if any(sum(mi * e[j] for mi, e in zip(m, exps)) for j in range(f.nvars)):
                continue
            num, den = factorial(k), 1
            for mi, c in zip(m, coeffs):
                num *= c**mi
                den *= factorial(mi)
            total += num // den
        out.append(total)
    return out


@dataclass(frozen=True)
class TwinCheck:
    """Periods of ``W`` and of the same terms read in an overlattice of exponents."""

    index: int
    period: list[int]
    twin_period: list[int]
    twin: LaurentPolynomial

    @property
    def equal(self) -> bool:
        return self.period == self.twin_period


def twin_generator(n: int, r: int, zeta: Sequence[int] | None = None) -> list[Fraction]:
    """``(1/n) sum_a g_a w_a`` for ``g`` the image of ``zeta`` in the arrow group.

    The default ``zeta`` is ``(0, 1, ..., n - 1)``: right multiplication by
    ``diag(1, z, ..., z^(n-1))``.
    """
    zeta = list(range(n)) if zeta is None else list(zeta)
    g = psi(n, r, zeta)
    data = build_gc_polytopes(n, r)
    dim = len(data.arrow_vertices[0])
    x = [Fraction(0)] * dim
    for ga, w in zip(g, data.arrow_vertices):
        x = [xi + Fraction(ga * wi, n) for xi, wi in zip(x, w)]
    return x


def twin_period_check(n: int, r: int, overlattice: Sequence[Sequence] | None = None, max_order: int = 6) -> TwinCheck:
    """Compare the period of ``W`` with its twin in an overlattice of ``M``.

    Args:
        overlattice: Extra generators of the overlattice in ``M`` coordinates.
            Defaults to the single vector from ``twin_generator``.
    """
    w = ehx_superpotential(n, r)
    extra = [twin_generator(n, r)] if overlattice is None else [list(v) for v in overlattice]
    dim = w.nvars
    basis = overlattice_basis(dim, extra)
    index = abs(1 / la.determinant(basis))
    inv = la.rational_inverse(basis)
    terms = {}
    for e, c in w.terms.items():
        new = la.vecmat(e, inv)
        if any(Fraction(x).denominator != 1 for x in new):
            raise AssertionError("exponent not in the overlattice")
        terms[tuple(int(x) for x in new)] = c
    twin = LaurentPolynomial(w.variables, terms, "M~")
    # the twin's Newton polytope is the image of P in the new coordinates
    assert twin.newton_polytope() == image_in_overlattice(w.newton_polytope(), basis)
    return TwinCheck(
        index=int(index),
        period=classical_period(w, max_order),
        twin_period=classical_period(twin, max_order),
        twin=twin,
    )


def expected_term_counts(n: int, r: int) -> dict[str, int]:
    q = build_ladder_quiver(n, r)
    return {"superpotential": len(q.arrows), "pullback": len(q.arrows) + 1, "partitions": comb(n, r)}
