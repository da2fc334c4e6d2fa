"""
Periods of the superpotential
=============================

The superpotential W has one monomial per vertex of P. Its classical period
is the sequence of constant terms of W^k.
"""

# %%
from grasstoric.mirror import (
    classical_period,
    ehx_superpotential,
    period_by_multinomials,
    pullback_invariance,
    twin_period_check,
    znr_equation,
)

w = ehx_superpotential(4, 2)
print(w, w.terms)
print("period:", classical_period(w, 8))
print("by multinomials:", period_by_multinomials(w, 8))

# %%
# Substituting the dual vertices into W and clearing denominators gives a
# polynomial in one variable per partition.
inv = pullback_invariance(4, 2)
print("pullback invariant under N / Nbar:", inv.weight_zero)
print(znr_equation(4, 2).polynomial.to_json()["variables"])

# %%
# Reading the exponents of W in an index-5 overlattice gives a different
# Laurent polynomial with the same period.
check = twin_period_check(5, 2, max_order=6)
print("index", check.index)
print(check.period)
print(check.twin_period)
