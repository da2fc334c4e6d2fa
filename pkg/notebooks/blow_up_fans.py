"""
Blowing up the spanning fan
===========================

Star-subdivide the spanning fan of P at the excess vertices of Q, and check
that the rays of the result are exactly the vertices of Q.
"""

# %%
from grasstoric.fans import cones_containing, gc_spanning_fan, verify_vgit_theorem
from grasstoric.ladder import build_ladder_quiver

n, r = 6, 3
f = gc_spanning_fan(n, r)
print("spanning fan:", len(f.rays), "rays,", len(f.cones), "cones")
excess = build_ladder_quiver(n, r).excess_set
for lam in excess:
    print(f"  v{lam} lies in the cones of", sorted(cones_containing(n, r, lam)))

# %%
for order in (excess, list(reversed(excess))):
    rep = verify_vgit_theorem(n, r, order)
    print("order", order)
    print("  rays:", len(rep.fan.rays), " cones:", len(rep.fan.cones), " ok:", rep.ok)

# %%
# The two orders give the same rays but can give different cones.
a = verify_vgit_theorem(n, r, excess).fan
b = verify_vgit_theorem(n, r, list(reversed(excess))).fan
print("same rays:", a.ray_set() == b.ray_set(), " same cones:", a.same_as(b))
