"""Exact discrepancy of finite point sets and its decay along the orbit
n alpha + beta n + gamma for the golden ratio.

Run:  python demos/02_discrepancy.py
"""
from fractions import Fraction as F

from pinrep.discrepancy import (
    discrepancy_decay,
    erdos_turan_bound,
    exact_discrepancy,
    loglog_slope,
    quad_points,
    quad_weyl_rhs,
    to_mpf,
    weyl_sum,
)
from pinrep.torus import golden

pts = [F(k, 8) for k in range(8)]
print("equally spaced k/8:", exact_discrepancy(pts).value)
rep = exact_discrepancy([F(0), F(1, 10), F(1, 5)])
print(f"three clustered points: D = {rep.value}, worst arc starts at {rep.left} with length {rep.length}")

alpha = golden(50)
N = 500
qpts, rad = quad_points(alpha, F(1, 3), F(1, 7), N)
s = weyl_sum(qpts, 1, rad)
print(f"\n|S_N|^2 for the quadratic orbit, N={N}: at most {float(s.upper ** 2):.1f}")
print(f"  right-hand side of the van der Corput bound: {float(to_mpf(quad_weyl_rhs(alpha, N))):.1f}")

# Erdos-Turan turns Weyl sums into a discrepancy upper bound.
lin = [F(k) * alpha.realized % 1 for k in range(1, 200)]
print("\nlinear orbit, N=199:")
print("  exact discrepancy:", float(exact_discrepancy(lin).value))
print("  Erdos-Turan bound, m=16, C=6:", float(erdos_turan_bound(lin, 16, 6)))

print("\ndecay along convergent denominators (a few seconds):")
rows = discrepancy_decay(alpha, 0, 0, 14)
for r in rows[-5:]:
    print(f"  q={r.q:5d}  D={float(r.D):.6f}")
print("  log-log slope over the tail:", loglog_slope(rows))
