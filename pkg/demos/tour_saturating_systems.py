"""A guided tour: fields, Moore systems, saturation, and duality.

Run as `python demos/tour_saturating_systems.py`.  Everything is desk-scale
and finishes in a few seconds.
"""

from ranksat.constructions import MooreParams, moore_saturate_witness, moore_system
from ranksat.gf import field_create
from ranksat.linset import linear_set
from ranksat.rankcov import (
    code_from_system,
    covering_radius,
    lower_bound,
    saturating_index,
    upper_bound,
)

# A tower F_2 <= F_2 <= F_8: the big field is F_8 with q = 2, m = 3.
fld = field_create(2, 1, 3)
print(fld.describe())
print(f"generator g = {fld.generator}, g^7 = {fld.pow(fld.generator, 7)}")

# The block-tower construction in V(4, 8): two blocks, rho = 2, so the
# expected rank is m(t-1) + rho = 5 and the saturating index is exactly 2.
params = MooreParams(fld, rho=2, t=2)
u = moore_system(params)
print(f"\nblock-tower system: ambient k = {u.k}, rank {u.rank}")
print(f"lower/upper bounds for (q=2, m=3, k=4, rho=2): "
      f"{lower_bound(2, 3, 4, 2)} / {upper_bound(3, 4, 2)}")
print(f"saturating index (brute force over the 585 points of PG(3,8)): "
      f"{saturating_index(u)}")

# The constructive witness: any target vector decomposes over rho = 2
# system vectors, found by one small linear solve per tower block.
target = [5, 3, 1, 6]
ws = moore_saturate_witness(params, target)
print(f"\nwitness vectors spanning {target}:")
for w in ws:
    print(f"  {list(w)}")

# Duality: the saturating index of U equals the rank covering radius of the
# dual of its associated code.
cr = covering_radius(code_from_system(u).dual())
print(f"\ndual code covering radius: {cr} (matches the index)")

# Linear-set geometry: the set is scattered here, all weights are 1.
ls = linear_set(u)
print(f"linear set size: {len(ls)} points, "
      f"max weight {max(ls.weight_index().values())}")
