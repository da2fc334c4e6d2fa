"""
Ladder quivers and their polytopes
==================================

Build the ladder quiver for 2-planes in 5-space, read off the polytope P
spanned by the dual-quiver arrows, and compare it with the primitive dual Q.
"""

# %%
from grasstoric.gc_polytopes import build_gc_polytopes, verify_excess_deletion
from grasstoric.ladder import build_ladder_quiver
from grasstoric.polytopes import is_reflexive, is_vertex_spanning

n, r = 5, 2
q = build_ladder_quiver(n, r)
print(q, "arrows:", len(q.arrows))
for a in q.arrows:
    print(f"  {a.index}: {a.source} -> {a.target} via {a.steps}   label {q.phi[a.index]}")
print("partitions labelling no arrow:", q.excess_set)

# %%
# P has one vertex per arrow and one facet per partition.
data = build_gc_polytopes(n, r)
p = data.p
print("P:", len(p.vertices), "vertices,", len(p.facets), "facets")
print("reflexive:", is_reflexive(p), " spanning:", is_vertex_spanning(p))

# %%
# The dual's vertices n*m - h span a sublattice of index n^(d-1).
print("quotient factors:", data.primitive.invariant_factors)
qd = data.q
print("Q:", len(qd.vertices), "vertices,", len(qd.facets), "facets")

# %%
# Pairing of m_lam with the arrow vertices: 1 where the path of lam uses the
# arrow, -1 on the arrow that is the whole path of the empty partition.
for a, row in enumerate(data.m_pairing_matrix):
    print(f"  arrow {a}:", " ".join(f"{x:2d}" for x in row))

# %%
# Dropping the excess vertex from Q leaves a copy of P.
res = verify_excess_deletion(n, r)
print("relation lattices agree:", res.relations_equal, " unimodular:", res.unimodular)
