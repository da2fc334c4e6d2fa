"""
The finite groups G and G_h
===========================

G acts on the toric variety of P. Only the subgroup G_h keeps the full
Pluecker ideal homogeneous, and it is the image of a diagonal torus action.
"""

# %%
from grasstoric.groups import brute_force_G_h, compute_G_h, group_G, group_report
from grasstoric.pluecker import component_count, shuffle_relations

n, r = 5, 2
g = group_G(n, r)
gh = compute_G_h(n, r)
print("|G| =", g.order, " invariant factors", g.invariant_factors)
print("|G_h| =", gh.order)
print("index:", g.order // gh.order, " closed form:", component_count(n, r))

# %%
rep = group_report(n, r)
print("G_h is the image of H:", rep.equals_psi_image)
print("H embeds:", rep.psi_injective)

# %%
# Enumerate G and test every element against every relation.
bf = brute_force_G_h(n, r)
print(f"{bf.accepted} of {bf.group_order} elements keep all {len(shuffle_relations(n, r))} relations homogeneous")
