"""Exact integer and rational linear algebra.

Matrices are plain lists of rows of Python ints (arbitrary precision), or of
``fractions.Fraction`` where rational arithmetic is needed. All routines work
on copies and never mutate their inputs.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import Sequence

Matrix = list[list[int]]
Vector = list[int]


def _copy(m: Sequence[Sequence[int]]) -> Matrix:
    return [list(row) for row in m]


def identity(size: int) -> Matrix:
    return [[int(i == j) for j in range(size)] for i in range(size)]


def transpose(m: Sequence[Sequence]) -> list[list]:
    return [list(col) for col in zip(*m)]


def matmul(a: Sequence[Sequence], b: Sequence[Sequence]) -> list[list]:
    bt = transpose(b)
    return [[sum(x * y for x, y in zip(row, col)) for col in bt] for row in a]


def vecmat(v: Sequence, m: Sequence[Sequence]) -> list:
    """Row vector times matrix."""
    if not m:
        return []
    out = [0] * len(m[0])
    for coeff, row in zip(v, m):
        if coeff:
            for j, x in enumerate(row):
                out[j] += coeff * x
    return out


def dot(u: Sequence, v: Sequence):
    return sum(x * y for x, y in zip(u, v))


def vector_gcd(v: Sequence[int]) -> int:
    g = 0
    for x in v:
        g = gcd(g, x)
    return g


def primitive(v: Sequence) -> tuple[int, ...]:
    """Scale a nonzero rational vector to the primitive integer vector on its ray."""
    den = 1
    for x in v:
        if isinstance(x, Fraction):
            den = den * x.denominator // gcd(den, x.denominator)
    w = [int(x * den) for x in v]
    g = vector_gcd(w)
    if g == 0:
        raise ValueError("zero vector has no primitive representative")
    return tuple(x // g for x in w)


def hermite_normal_form(m: Sequence[Sequence[int]]) -> tuple[Matrix, Matrix]:
    """Row-style Hermite normal form.

    Returns ``(h, u)`` with ``u`` unimodular and ``u @ m == h``. The nonzero
    rows of ``h`` come first, each pivot is positive, entries above a pivot lie
    in ``[0, pivot)``, and zero rows are collected at the bottom.

    Args:
        m: Integer matrix given as a sequence of rows.

    Returns:
        The pair ``(h, u)``.
    """
    a = _copy(m)
    rows = len(a)
    cols = len(a[0]) if rows else 0
    u = identity(rows)
    p = 0
    for c in range(cols):
        if p == rows:
            break
        while True:
            nz = [i for i in range(p, rows) if a[i][c] != 0]
            if not nz:
                break
            best = min(nz, key=lambda i: abs(a[i][c]))
            if best != p:
                a[p], a[best] = a[best], a[p]
                u[p], u[best] = u[best], u[p]
            done = True
            piv = a[p][c]
            for i in range(p + 1, rows):
                if a[i][c]:
                    q = a[i][c] // piv
                    if q:
                        a[i] = [x - q * y for x, y in zip(a[i], a[p])]
                        u[i] = [x - q * y for x, y in zip(u[i], u[p])]
                    if a[i][c]:
                        done = False
            if done:
                break
        if a[p][c] == 0:
            continue
        if a[p][c] < 0:
            a[p] = [-x for x in a[p]]
            u[p] = [-x for x in u[p]]
        piv = a[p][c]
        for i in range(p):
            q = a[i][c] // piv
            if q:
                a[i] = [x - q * y for x, y in zip(a[i], a[p])]
                u[i] = [x - q * y for x, y in zip(u[i], u[p])]
        p += 1
    return a, u


def hnf_basis(m: Sequence[Sequence[int]]) -> Matrix:
    """Nonzero rows of the Hermite normal form: a canonical lattice basis."""
    if not m:
        return []
    h, _ = hermite_normal_form(m)
    return [row for row in h if any(row)]


def rank(m: Sequence[Sequence]) -> int:
    """Rank over the rationals."""
    if not m:
        return 0
    return len(rational_row_reduce(m)[1])


def smith_normal_form(m: Sequence[Sequence[int]]) -> tuple[Matrix, Matrix, Matrix]:
    """Smith normal form.

    Returns ``(d, u, v)`` with ``u`` and ``v`` unimodular, ``u @ m @ v == d``,
    ``d`` diagonal with nonnegative entries and ``d[i][i]`` dividing
    ``d[i+1][i+1]``.
    """
    a = _copy(m)
    rows = len(a)
    cols = len(a[0]) if rows else 0
    u = identity(rows)
    v = identity(cols)

    def swap_rows(i, j):
        a[i], a[j] = a[j], a[i]
        u[i], u[j] = u[j], u[i]

    def swap_cols(i, j):
        for row in a:
            row[i], row[j] = row[j], row[i]
        for row in v:
            row[i], row[j] = row[j], row[i]

    def add_row(dst, src, q):
        a[dst] = [x + q * y for x, y in zip(a[dst], a[src])]
        u[dst] = [x + q * y for x, y in zip(u[dst], u[src])]

    def add_col(dst, src, q):
        for row in a:
            row[dst] += q * row[src]
        for row in v:
            row[dst] += q * row[src]

    for t in range(min(rows, cols)):
        entries = [(abs(a[i][j]), i, j) for i in range(t, rows) for j in range(t, cols) if a[i][j]]
        if not entries:
            break
        _, i0, j0 = min(entries)
        swap_rows(t, i0)
        swap_cols(t, j0)
        while True:
            piv = a[t][t]
            clean = True
            for i in range(t + 1, rows):
                if a[i][t]:
                    add_row(i, t, -(a[i][t] // piv))
                    clean = clean and a[i][t] == 0
            for j in range(t + 1, cols):
                if a[t][j]:
                    add_col(j, t, -(a[t][j] // piv))
                    clean = clean and a[t][j] == 0
            if not clean:
                cands = [(abs(a[i][t]), i, t) for i in range(t + 1, rows) if a[i][t]]
                cands += [(abs(a[t][j]), t, j) for j in range(t + 1, cols) if a[t][j]]
                _, i1, j1 = min(cands)
                if i1 != t:
                    swap_rows(t, i1)
                else:
                    swap_cols(t, j1)
                continue
            bad = next(
                (i for i in range(t + 1, rows) for j in range(t + 1, cols) if a[i][j] % piv),
                None,
            )
            if bad is None:
                break
            add_row(t, bad, 1)
        if a[t][t] < 0:
            a[t] = [-x for x in a[t]]
            u[t] = [-x for x in u[t]]
    return a, u, v


def invariant_factors(m: Sequence[Sequence[int]]) -> list[int]:
    """Nonzero diagonal entries of the Smith normal form."""
    if not m:
        return []
    d, _, _ = smith_normal_form(m)
    return [d[i][i] for i in range(min(len(d), len(d[0]))) if d[i][i]]


def integer_kernel(m: Sequence[Sequence[int]]) -> Matrix:
    """Basis of the left kernel ``{x : x @ m == 0}`` in Hermite normal form.

    The basis comes from the transform rows of the HNF whose image vanishes,
    so the lattice it spans is saturated.
    """
    if not m:
        return []
    h, u = hermite_normal_form(m)
    ker = [u[i] for i, row in enumerate(h) if not any(row)]
    return hnf_basis(ker) if ker else []


def rational_row_reduce(m: Sequence[Sequence]) -> tuple[list[list[Fraction]], list[int]]:
    """Reduced row echelon form over Q and the list of pivot columns."""
    a = [[Fraction(x) for x in row] for row in m]
    rows = len(a)
    cols = len(a[0]) if rows else 0
    pivots = []
    p = 0
    for c in range(cols):
        if p == rows:
            break
        sel = next((i for i in range(p, rows) if a[i][c] != 0), None)
        if sel is None:
            continue
        a[p], a[sel] = a[sel], a[p]
        inv = 1 / a[p][c]
        a[p] = [x * inv for x in a[p]]
        for i in range(rows):
            if i != p and a[i][c] != 0:
                f = a[i][c]
                a[i] = [x - f * y for x, y in zip(a[i], a[p])]
        pivots.append(c)
        p += 1
    return a, pivots


def rational_inverse(m: Sequence[Sequence]) -> list[list[Fraction]]:
    size = len(m)
    aug = [list(row) + [int(i == j) for j in range(size)] for i, row in enumerate(m)]
    red, piv = rational_row_reduce(aug)
    if piv[:size] != list(range(size)) or len(piv) < size:
        raise ValueError("matrix is singular")
    return [row[size:] for row in red[:size]]


def determinant(m: Sequence[Sequence]) -> Fraction | int:
    """Determinant by fraction-free (Bareiss) elimination."""
    a = [list(row) for row in m]
    size = len(a)
    if size == 0:
        return 1
    sign = 1
    prev = 1
    for k in range(size - 1):
        if a[k][k] == 0:
            sel = next((i for i in range(k + 1, size) if a[i][k] != 0), None)
            if sel is None:
                return 0
            a[k], a[sel] = a[sel], a[k]
            sign = -sign
        for i in range(k + 1, size):
            for j in range(k + 1, size):
                num = a[i][j] * a[k][k] - a[i][k] * a[k][j]
                a[i][j] = num // prev if isinstance(num, int) and isinstance(prev, int) else num / prev
        prev = a[k][k]
    return sign * a[-1][-1]


def solve_rational(a: Sequence[Sequence], b: Sequence) -> list[Fraction] | None:
    """One solution ``x`` of ``x @ a == b`` over Q, or None if inconsistent."""
    rows = len(a)
    cols = len(b)
    # transpose system: a^T x^T = b^T
    aug = [[a[i][j] for i in range(rows)] + [b[j]] for j in range(cols)]
    red, piv = rational_row_reduce(aug)
    if rows in piv:
        return None
    x = [Fraction(0)] * rows
    for r_idx, c in enumerate(piv):
        x[c] = red[r_idx][rows]
    return x


def is_unimodular(m: Sequence[Sequence[int]]) -> bool:
    return len(m) == len(m[0]) and abs(determinant(m)) == 1 and all(
        isinstance(x, int) or x.denominator == 1 for row in m for x in row
    )


def same_lattice(a: Sequence[Sequence[int]], b: Sequence[Sequence[int]]) -> bool:
    """Whether two generating sets span the same integer lattice."""
    return hnf_basis(a) == hnf_basis(b)


@dataclass(frozen=True)
class LatticeQuotient:
    """The finite quotient ``Z^ambient_rank / L``.

    Attributes:
        ambient_rank: Rank of the ambient lattice.
        sublattice_basis: HNF basis of ``L``.
        invariant_factors: Nontrivial invariant factors, in divisibility order.
        projection: Matrix whose columns map an ambient vector to its
            coordinates in the cyclic factors (reduce column ``i`` modulo
            ``invariant_factors[i]``).
    """

    ambient_rank: int
    sublattice_basis: tuple[tuple[int, ...], ...]
    invariant_factors: tuple[int, ...]
    projection: tuple[tuple[int, ...], ...]

    @property
    def order(self) -> int:
        out = 1
        for d in self.invariant_factors:
            out *= d
        return out

    def project(self, v: Sequence[int]) -> tuple[int, ...]:
        img = vecmat(v, self.projection)
        return tuple(x % d for x, d in zip(img, self.invariant_factors))


def quotient_invariants(ambient_rank: int, generators: Sequence[Sequence[int]]) -> LatticeQuotient:
    """Structure of ``Z^ambient_rank`` modulo the span of ``generators``.

    Raises:
        ValueError: If the generators do not have full rank, in which case
            the quotient is infinite.
    """
    gens = [list(g) for g in generators]
    if not gens or rank(gens) < ambient_rank:
        raise ValueError("infinite quotient: generators are not of full rank")
    d, u, v = smith_normal_form(gens)
    diag = [d[i][i] for i in range(ambient_rank)]
    keep = [i for i, x in enumerate(diag) if x != 1]
    proj = tuple(tuple(row[i] for i in keep) for row in v)
    return LatticeQuotient(
        ambient_rank=ambient_rank,
        sublattice_basis=tuple(tuple(r) for r in hnf_basis(gens)),
        invariant_factors=tuple(diag[i] for i in keep),
        projection=proj,
    )


def xgcd(a: int, b: int) -> tuple[int, int, int]:
    """Return ``(g, s, t)`` with ``g = gcd(a, b) = s*a + t*b`` and ``g >= 0``."""
    s0, s1, t0, t1 = 1, 0, 0, 1
    while b:
        q, a, b = a // b, b, a % b
        s0, s1 = s1, s0 - q * s1
        t0, t1 = t1, t0 - q * t1
    if a < 0:
        return -a, -s0, -t0
    return a, s0, t0


def solve_mod(a: Sequence[Sequence[int]], b: Sequence[int], n: int) -> list[int] | None:
    """One integer solution of ``x @ a == b (mod n)``, or None.

    Uses the Smith form ``u a v = d``: writing ``y = x u^{-1}`` the system
    decouples into ``y_i d_i == (b v)_i (mod n)``.
    """
    rows = len(a)
    if rows == 0:
        return [] if all(x % n == 0 for x in b) else None
    d, u, v = smith_normal_form(a)
    target = vecmat(b, v)
    y = [0] * rows
    for i, t in enumerate(target):
        di = d[i][i] if i < min(rows, len(d[0])) else 0
        g = gcd(di, n)
        if t % g:
            return None
        m = n // g
        if m == 1:
            continue
        inv = pow(di // g, -1, m)
        y[i] = (t // g) * inv % m
    return [x % n for x in vecmat(y, u)]
