"""Closed-form lattices against the exhaustive oracle.

Blocks, 2D simplexes and 2D crosses have explicit optimal plan-A lattices.
The oracle confirms that no smaller modulus works.
"""

from lowerlattice import Plan, check_direct, exhaustive_search, make_block, make_cross, make_simplex_iso
from lowerlattice.search import closed_form_block, closed_form_cross2d, closed_form_padua, closed_form_simplex2d

cases = [
    ("block (1,2)", make_block((1, 2)), closed_form_block((1, 2))),
    ("block (2,1,1)", make_block((2, 1, 1)), closed_form_block((2, 1, 1))),
    ("simplex k=3", make_simplex_iso(2, 3), closed_form_simplex2d(3)),
    ("simplex k=3, Padua z", make_simplex_iso(2, 3), closed_form_padua(3)),
    ("cross (2,3)", make_cross((2, 3)), closed_form_cross2d((2, 3))),
]

print(f"{'set':22s} {'closed form':>14s} {'admissible':>10s} {'oracle n*':>9s}")
for name, s, cfg in cases:
    ok = check_direct(s, cfg, Plan.A)
    n_star = exhaustive_search(s, Plan.A).n
    print(f"{name:22s} {str(cfg):>14s} {str(ok):>10s} {n_star:9d}")
