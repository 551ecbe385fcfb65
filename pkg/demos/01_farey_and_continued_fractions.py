"""Farey sequences, continued fractions and how well an irrational can be
approximated by rationals.

Run:  python demos/01_farey_and_continued_fractions.py
"""
from fractions import Fraction as F

from pinrep.errors import NoWitness
from pinrep.numtheory import (
    cf_expand,
    convergents,
    farey,
    farey_witness,
    gap,
    pq_profile,
    roth_constant_probe,
    stau_construct,
    witness_denominators,
)
from pinrep.torus import Arc, CF, frac, golden

print("Farey sequence of order 5:")
print("  " + " ".join(str(x) for x in farey(5)))

# Consecutive terms a/b < c/d always satisfy bc - ad = 1.
seq = farey(5)
print("  determinants:", {u.denominator * v.numerator - u.numerator * v.denominator for u, v in zip(seq, seq[1:])})

x = F(355, 113)
digits = cf_expand(x - 3)
tab = convergents(digits)
print(f"\n355/113 - 3 = [0; {', '.join(map(str, digits))}]")
for k in range(1, len(digits) + 1):
    print(f"  k={k}  p/q = {tab.p[k]}/{tab.q[k]}")

# The golden ratio's digits are all 1, so its denominators are Fibonacci
# numbers and q<q alpha> stays bounded away from zero.
phi = golden(40)
print("\ngolden ratio, q <q alpha> along convergents:")
for q in [1, 2, 3, 5, 8, 13, 21, 34, 55, 89]:
    lo, hi = gap(phi, q)
    print(f"  q={q:3d}  q*<q alpha> in [{float(q * lo):.5f}, {float(q * hi):.5f}]")

print("\nlower bound for min q^2 <q alpha> over q <= 1000 (golden):",
      float(roth_constant_probe(phi, 0, 1000)))

# Very well approximable numbers: digits grow fast enough that <q alpha> < q^-tau.
alpha = stau_construct(F(5, 2), 3)
print("\nconstruction for tau = 5/2:", alpha)
top, digits = pq_profile(alpha)
print("  digits:", digits, " largest:", top)
for q in witness_denominators(alpha, 3):
    lo, hi = gap(alpha, q)
    print(f"  q={q:3d}  <q alpha> <= {float(hi):.3e}  q^-5/2 = {q ** -2.5:.3e}")

# The pigeonhole lemma: if J avoids kx + y for k <= n, some q < n is close to an integer multiple.
x, y, n = F(1, 97) * 30, F(0), 12
pts = sorted(frac(k * x + y) for k in range(1, n + 1))
J = Arc(pts[0] + F(1, 1000), F(1, 1000))
w = farey_witness(x, y, n, J)
print(f"\nwitness for x={x}, n={n}: q={w.q}, <q x> = {w.gap} < 1/n = {F(1, n)}")

# When x = r/n exactly, the points are equally spaced and no q < n works.
try:
    farey_witness(F(1, 5), 0, 5, Arc(F(1, 20), F(1, 10)))
except NoWitness as exc:
    print("x = 1/5, n = 5:", exc)
