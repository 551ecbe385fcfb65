"""Repetition exponents: how long a prefix of the coding repeats after a shift
of n, one-sided (R_n) and two-sided around the origin (T_n).

Run:  python demos/04_repetitions.py
"""
from fractions import Fraction as F

from pinrep.flows import parse_partition, poly_coding
from pinrep.repetitions import exact_exponents_periodic, profile, r_n, t_finite_word, t_n
from pinrep.torus import golden

print("two-sided exponent of short words (centre at the middle letter):")
for word in ("aaa", "abcab", "abcde", "abaabab"):
    print(f"  {word:7s} {t_finite_word(word)}")

# Eventually periodic words have exact exponents in {1, 2, inf}.
def show(pair):
    return ", ".join(str(v) for v in pair)


print("\nexact exponents (R, T), left period ab, core a, right period ba:",
      show(exact_exponents_periodic("", "ab", "a", "ba", "")))
print("same right tail but the core letter never recurs:",
      show(exact_exponents_periodic("", "ab", "xyz", "ab", "")))

# A certified window of the linear orbit n*phi coded by thirds.
win = poly_coding(golden(60), 0, F(1, 7), 1, parse_partition("thirds"), 4000)
print("\nlinear golden orbit, W=4000:")
for n in (1, 2, 3, 5, 8, 13, 21, 34, 55, 89, 144, 233):
    r, t = r_n(win, n), t_n(win, n)
    print(f"  n={n:3d}  R: m={r.m:4d}{'+' if r.censored else ' '}  T: m={t.m:4d}{'+' if t.censored else ' '}")

prof = profile(win, (100, 1000))
best = max((s for s in prof.stats if not s.censored), key=lambda s: s.value)
print(f"largest uncensored R_n for 100 <= n <= 1000: {float(best.value):.3f} at n={best.n}")
