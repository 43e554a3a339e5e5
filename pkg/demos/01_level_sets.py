"""Vertices of C_5^4 grouped by level signature.

Run: python3 demos/01_level_sets.py
"""
import numpy as np

from cyclespace import enumerate_vertices, feasible_signatures, level_set
from cyclespace.group import cardinality_formula_c5

t = enumerate_vertices(5, 4)
print(t.size, "vertices")

# level sets up to distance 3: sizes, closed form, 1-based index ranges
for sig in feasible_signatures(5, 4):
    if sig.distance > 3:
        continue
    r = level_set(5, 4, sig)
    print(f"{sig.label():<14} {len(r):>3} = {cardinality_formula_c5(4, sig.p, sig.q):>3}   {r.start + 1}-{r.stop}")

# a few vertices from the Sigma_{1,1} block
b = t.block((1, 1))
print(t.coords[b.start:b.start + 4])

# distance never decreases along the table order
d = t.distances
print("ordered by distance:", bool(np.all(d[1:] >= d[:-1])))
