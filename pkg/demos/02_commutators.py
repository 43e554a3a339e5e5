"""The commutator C = [A_-, A_+] on each level set, in exact integers.

For m = 3 and m = 4 the closed forms hold as written.  For m = 5 the scalar
and the sign of the R_1 term differ from the form (2(N-q)-3p) I + R_1; the
form that holds is (2N-2p-3q) I - R_1.

Run: python3 demos/02_commutators.py
"""
import numpy as np

from cyclespace import OperatorSet, enumerate_vertices
from cyclespace.theorems import commutator_theorem, neutral_commutator_checks

for m, N in [(3, 4), (4, 3)]:
    ops = OperatorSet(enumerate_vertices(m, N))
    ok = all(commutator_theorem(ops, s).is_exact_match for s in ops.table.signatures)
    print(f"m={m} N={N}: closed form exact on every level set: {ok}")

ops = OperatorSet(enumerate_vertices(5, 3))
t = ops.table
print("\nm=5 N=3   stated  corrected")
for sig in t.signatures:
    a = commutator_theorem(ops, sig, corrected=False)
    b = commutator_theorem(ops, sig, corrected=True)
    print(f"{sig.label():<14} {str(a.is_exact_match):<7} {b.is_exact_match}")

# diagonal of C on Sigma_{1,0}: every entry is 2N - 2p - 3q = 4
blk = ops.C.block(t, (1, 0), (1, 0))
print("\ndiag C on Sigma_{1,0}:", np.diag(blk))
print("off-diagonal entries (the -R_1 term):", sorted(set(blk[~np.eye(len(blk), dtype=bool)].tolist())))

# the neutral commutator identity holds as written
print("neutral commutator identity:", all(c.passed for c in neutral_commutator_checks(ops)))
