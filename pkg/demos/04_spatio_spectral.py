"""Spatio-spectral limiting on C_5^4 with the ball of radius 3.

Eigenvalues of PQ come in plateaus; each plateau is split by base level set
and R_1 eigenvalue, then matched against the invariant spaces.

Run: python3 demos/04_spatio_spectral.py
"""
from cyclespace import OperatorSet
from cyclespace.invariant import all_V
from cyclespace.ssl import (SslConfig, level_vector_check, link_to_invariant_spaces, plateau_lengths,
                            run, class_table_lines)

report = run(SslConfig(5, 4, 3))
print(report.rank, "nonzero eigenvalues")
print("largest", report.values[:3].round(6), "smallest", report.values[-2:])
print("plateau lengths", plateau_lengths(report.values))

print()
print("\n".join(class_table_lines(report)))

ok, n = level_vector_check(report)
print(f"\n{n} level vectors, constant on level sets: {ok}")

# eigenspaces against the invariant spaces
ops = OperatorSet(report.table)
spaces = {V.label(): V.matrix() for _, V in all_V(ops)}
for L in link_to_invariant_spaces(report, spaces):
    if len(L.parts) > 1 or L.dim > 6:
        print(f"indices {L.cluster[0] + 1}-{L.cluster[1]}: {L.parts}  residual {L.residual:.1e}")
