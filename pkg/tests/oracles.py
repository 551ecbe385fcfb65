"""Slow, independent reference implementations used only by the tests."""
from fractions import Fraction
from math import lcm

import numpy as np


def brute_discrepancy(points) -> Fraction:
    """Scan every arc with endpoints at data points, all four inclusion choices,
    plus the empty and full arcs. Integer arithmetic over a common denominator."""
    pts = [Fraction(p) % 1 for p in points]
    N = len(pts)
    L = lcm(*(p.denominator for p in pts))
    xs = sorted(int(p * L) for p in pts)
    vals = sorted(set(xs))
    best = Fraction(0)  # empty arc and full arc both give 0

    def count(a, b, left_closed, right_closed):
        # points in the arc from a to b going forward (wrapping when b <= a)
        c = 0
        for x in xs:
            d = (x - a) % L
            span = (b - a) % L
            if d == 0:
                c += left_closed or (span == 0 and right_closed)
            elif d < span:
                c += 1
            elif d == span:
                c += right_closed
        return c

    for a in vals:
        for b in vals:
            span = (b - a) % L
            for lc in (True, False):
                for rc in (True, False):
                    if span == 0:
                        if not (lc and rc):
                            continue  # only the degenerate closed arc {a}
                    c = count(a, b, lc, rc)
                    best = max(best, abs(Fraction(c, N) - Fraction(span, L)))
            if span == 0:
                # the open full circle minus the point a
                c = N - xs.count(a)
                best = max(best, abs(Fraction(c, N) - 1))
    return best


def brute_rt(symbols, certified, n):
    """(m_R, censored_R, m_T, censored_T) by a plain double loop over the centred array."""
    sym = np.asarray(symbols, dtype=object)
    ok = np.asarray(certified, dtype=bool)
    W = (len(sym) - 1) // 2

    def eq(i, j):
        return bool(ok[i + W] and ok[j + W] and sym[i + W] == sym[j + W])

    limit = W - n
    m_r = 0
    for k in range(1, limit + 1):
        if not eq(k, k + n):
            break
        m_r = k
    m_t = 0
    for k in range(1, limit + 1):
        if not (eq(k, k + n) and eq(n + 1 - k, 1 - k)):
            break
        m_t = k
    return m_r, m_r == limit, m_t, m_t == limit


def pairs_discrepancy(points) -> Fraction:
    """All-pairs enumeration, vectorised: every arc between data values u_i, u_j
    with each of the four endpoint inclusion choices, plus degenerate arcs."""
    pts = [Fraction(p) % 1 for p in points]
    N = len(pts)
    L = lcm(*(p.denominator for p in pts))
    # int64 holds count * L exactly while N * L stays below 2**62
    dtype = np.int64 if N * L < 2**62 else object
    vals, mult = np.unique(np.array([int(p * L) for p in pts], dtype=dtype), return_counts=True)
    mult = mult.astype(dtype)
    cum = np.concatenate([[0], np.cumsum(mult)])
    i, j = np.meshgrid(np.arange(len(vals)), np.arange(len(vals)), indexing="ij")
    fwd = i <= j
    closed = np.where(fwd, cum[j + 1] - cum[i], N - (cum[i] - cum[j + 1]))
    length = np.where(fwd, vals[j] - vals[i], L - (vals[i] - vals[j]))
    same = i == j
    ci, cj = mult[i], mult[j]
    cands = [
        (closed, length),  # [u_i, u_j]
        (np.where(same, closed, closed - ci), length),  # (u_i, u_j]
        (np.where(same, closed, closed - cj), length),  # [u_i, u_j)
        (np.where(same, N - ci, closed - ci - cj), np.where(same, L, length)),  # (u_i, u_j), full circle when i == j
    ]
    best_num = 0
    for count, ln in cands:
        dev = np.abs(count * L - ln * N)  # |count/N - ln/L| * N * L
        best_num = max(best_num, int(dev.max()))
    return Fraction(best_num, N * L)
