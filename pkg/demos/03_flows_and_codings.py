"""Symbolic codings of interval exchanges and polynomial orbits, with every
symbol either certified or explicitly marked uncertified.

Run:  python demos/03_flows_and_codings.py
"""
from fractions import Fraction as F

from pinrep.flows import IET, iet_coding, parse_partition, poly_coding, stability_radius, veech_search
from pinrep.torus import golden

# A rotation by 13/21 seen as a two-interval exchange.
T = IET.rotation(F(13, 21))
P = parse_partition("halves")
w = iet_coding(T, F(1, 3), P, 10)
print("rotation by 13/21 from x0=1/3, n=-10..10:")
print("  " + "".join(str(s) for s in w.symbols))

rep = veech_search(T, F(1, 2), 30)
print("\nfirst (N, J) meeting the Veech-type conditions with eps=1/2:")
print(f"  N={rep.N}  J=[{rep.J[0]}, {rep.J[1]})" if rep else "  none up to N=30")

# alpha n^2 with alpha the golden ratio truncated at 30 digits. Positions far
# out lose certification once the error bound times n^2 nears a boundary.
alpha = golden(30)
win = poly_coding(alpha, 0, F(1, 4), 2, P, 60)
print("\nquadratic orbit, n=-60..60:")
print("  " + "".join(str(s) if ok else "?" for s, ok in zip(win.symbols, win.certified)))

deep = poly_coding(golden(12), 0, F(1, 4), 2, P, 200)
print(f"  with only 12 digits, {sum(not c for c in deep.certified)} of {len(deep.certified)} positions are uncertified")

# How far can alpha move before the certified symbols change?
delta = stability_radius(F(2, 5), 0, F(1, 5), 2, P, 20)
print(f"\nstability radius for alpha=2/5, W=20: {delta} (~{float(delta):.2e})")
