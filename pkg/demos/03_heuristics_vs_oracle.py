"""Compare the dimensionwise and two-step searches with the optimum.

Anisotropic simplexes with weights (0.9, 0.8, 0.7) are built by cardinality
(ties broken lexicographically). Pass sizes on the command line; the
defaults run in a few seconds. Sizes 40 and 50 take several minutes.
"""

import sys

from lowerlattice import Plan, cbc_search, exhaustive_search, make_simplex_by_cardinality, mirror_cardinality, two_step

sizes = [int(a) for a in sys.argv[1:]] or [10, 20, 30]
print(f"{'#L':>4s} {'#M':>5s} {'plan':>4s} {'n*':>5s} {'cbc':>5s} {'two-step':>8s}")
errors = []
for N in sizes:
    s = make_simplex_by_cardinality("0.9,0.8,0.7", N)
    for plan in (Plan.A, Plan.B, Plan.C):
        opt = exhaustive_search(s, plan).n
        c = cbc_search(s, plan).n
        t = two_step(s, plan).n
        errors.append(abs(t - opt) / opt)
        print(f"{N:4d} {mirror_cardinality(s):5d} {str(plan):>4s} {opt:5d} {c:5d} {t:8d}")
print(f"two-step MAPE: {100 * sum(errors) / len(errors):.1f}%")
