"""What goes wrong when a lattice is admissible for plan C but not for plan B.

On L = {0, 1} in one dimension the two-point lattice (n=2, z=1) folds the
frequency -1 onto +1. The cosine coefficient of T_1 is then counted twice:
mode b reports it doubled, mode c divides by the aliasing count and is exact.
"""

from lowerlattice import ChebSeries, LatticeConfig, LowerSet, Plan, Rank1Lattice, check_direct, first_violation, reconstruct
from lowerlattice.admissibility import aliasing_count_ck

s = LowerSet([(0,), (1,)])
cfg = LatticeConfig(2, (1,))
print("plan C:", check_direct(s, cfg, Plan.C), " plan B:", check_direct(s, cfg, Plan.B))
print("first plan B violation:", first_violation(s, cfg, Plan.B))
print("aliasing counts:", {k: aliasing_count_ck(k, cfg) for k in s})

f = ChebSeries(1, {(0,): 0.25, (1,): -0.5})
for mode in "bc":
    g = reconstruct(Rank1Lattice(cfg), f, s, mode)
    print(f"mode {mode}: {g.coeffs}  error {f.max_error(g):.2e}")
