"""Base spaces W, adjacency-invariant spaces V and their level matrices.

Run: python3 demos/03_invariant_spaces.py
"""
import numpy as np

from cyclespace import OperatorSet, build_V, build_W, enumerate_vertices, level_matrix, verify_invariance
from cyclespace.exact import rank
from cyclespace.invariant import all_V, level_matrix_check

# m = 3: V(r=0, lam=0) on C_3^2 and its tridiagonal level matrix
ops = OperatorSet(enumerate_vertices(3, 2))
W = build_W(ops, (0, 0))
V = build_V(ops, W)
print(V.label(), "dim", V.dim, "invariant", verify_invariance(V, ops.A))
print(level_matrix(3, 2, 0, 0).dense())

# m = 4: the chain A_+^k delta runs to k = 2N, so N + 1 slots do not close
ops = OperatorSet(enumerate_vertices(4, 2))
W = build_W(ops, (0, 0))
print("\nm=4 N=2 from the origin: dim V =", build_V(ops, W).dim)
print("level matrix of size 5 closes:", level_matrix_check(ops, W).passed)
print("level matrix of size 3 closes:", level_matrix_check(ops, W, truncated=True).passed)

# m = 5: every V(p, q, lam, mu) on C_5^3, and the sum of them
ops = OperatorSet(enumerate_vertices(5, 3))
spaces = all_V(ops)
for W, V in spaces:
    print(f"{V.label():<36} dim W={W.dim:<3} dim V={V.dim:<4} invariant={verify_invariance(V, ops.A)}")
print("total rank", rank(np.vstack([V.vectors for _, V in spaces])), "of", ops.table.size)
