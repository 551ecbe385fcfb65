"""Discrepancy of finite point sets on T and the exponential sums that bound it."""
from __future__ import annotations

import io
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import NamedTuple, Sequence

import mpmath
import numpy as np

from .errors import EnclosureTooWide, ZeroGap
from .flows import poly_orbit
from .numtheory import convergents, gap
from .torus import CF, Exact, as_param, as_rat, frac

WEYL_DPS = 40
# per-term rounding at WEYL_DPS digits is ~1e-40; this is a generous cap
_ROUNDING = mpmath.mpf(10) ** -30


@dataclass(frozen=True)
class DiscrepancyReport:
    """The worst arc: closed ``[left, left + length]`` holding ``count_inside`` points.

    ``length == 0`` is the degenerate arc at a single data point.
    """

    value: Fraction
    left: Fraction
    length: Fraction
    count_inside: int
    N: int


def exact_discrepancy(points: Sequence) -> DiscrepancyReport:
    """sup over arcs I of |#{x_n in I}/N - |I||, exactly.

    With data values u_0 < ... < u_{M-1}, cumulative counts C_i (points below
    u_i) and multiplicities c_i, the excess of the closed arc from u_i to u_j
    (wrapping or not) is A_j - B_i where A_j = (C_j + c_j)/N - u_j and
    B_i = C_i/N - u_i; the deficit of the complementary open arc is the same
    number.  So the supremum is max A - min B.
    """
    pts = [frac(p) for p in points]
    N = len(pts)
    if N == 0:
        raise ValueError("empty point set")
    pts.sort()
    values, mult = [], []
    for p in pts:
        if values and values[-1] == p:
            mult[-1] += 1
        else:
            values.append(p)
            mult.append(1)
    best_a = best_b = None
    ja = ib = 0
    below = 0
    for idx, (u, c) in enumerate(zip(values, mult)):
        b = Fraction(below, N) - u
        a = Fraction(below + c, N) - u
        if best_b is None or b < best_b:
            best_b, ib = b, idx
        if best_a is None or a > best_a:
            best_a, ja = a, idx
        below += c
    left, right = values[ib], values[ja]
    length = (right - left) % 1
    cum = np.cumsum([0] + mult)
    if ib <= ja:
        count = int(cum[ja + 1] - cum[ib])
    else:
        count = N - int(cum[ib] - cum[ja + 1])
    value = best_a - best_b
    assert value == Fraction(count, N) - length
    return DiscrepancyReport(value, left, length, count, N)


def to_mpf(x) -> mpmath.mpf:
    x = as_rat(x)
    return mpmath.mpf(x.numerator) / x.denominator


class WeylSum(NamedTuple):
    """|sum e(h x_n)| evaluated in multiprecision; the true value lies within ``radius``."""

    value: mpmath.mpf
    radius: mpmath.mpf

    @property
    def upper(self):
        return self.value + self.radius

    @property
    def lower(self):
        return max(mpmath.mpf(0), self.value - self.radius)


def weyl_sum(points: Sequence, h: int, point_radius=0) -> WeylSum:
    """|sum_n exp(2 pi i h x_n)| for exact rational points.

    ``point_radius`` bounds how far each true point may sit from the given one;
    it enters the error as 2 pi h * radius * N.
    """
    N = len(points)
    with mpmath.workdps(WEYL_DPS):
        re = im = mpmath.mpf(0)
        for x in points:
            t = frac(h * as_rat(x))
            ang = 2 * mpmath.mpf(t.numerator) / t.denominator
            re += mpmath.cospi(ang)
            im += mpmath.sinpi(ang)
        val = mpmath.sqrt(re * re + im * im)
        rad = N * _ROUNDING + 2 * mpmath.pi * h * N * to_mpf(point_radius)
        return WeylSum(+val, +rad)


def erdos_turan_bound(points: Sequence, m: int, C=6, point_radius=0):
    """C (1/m + sum_{h<=m} |(1/N) sum_n e(h x_n)| / h), rounded up through the
    Weyl-sum error radii."""
    if m < 1:
        raise ValueError("m must be >= 1")
    N = len(points)
    with mpmath.workdps(WEYL_DPS):
        total = mpmath.mpf(1) / m
        for h in range(1, m + 1):
            total += weyl_sum(points, h, point_radius).upper / (h * N)
        return to_mpf(C) * total


def quad_weyl_rhs(alpha, N: int) -> Fraction:
    """N + sum_{n<=N} min(2N, 1/(2 <n alpha>)), using certified lower bounds of
    <n alpha>, so the value dominates the same expression at the true alpha."""
    alpha = as_param(alpha)
    total = Fraction(N)
    cap = Fraction(2 * N)
    for n in range(1, N + 1):
        lo, _ = gap(alpha, n)
        if lo == 0:
            if isinstance(alpha, Exact):
                raise ZeroGap(f"{n} * alpha is an integer")
            total += cap
        else:
            total += min(cap, 1 / (2 * lo))
    return total


def quad_points(alpha, beta, gamma, N: int) -> tuple[list[Fraction], Fraction]:
    """x_n = alpha n^2 + beta n + gamma for n = 1..N at the realized parameters,
    with a radius valid for every point."""
    pts = [poly_orbit(alpha, beta, gamma, 2, n)[0] for n in range(1, N + 1)]
    return pts, poly_orbit(alpha, beta, gamma, 2, N)[1]


@dataclass(frozen=True)
class DecayRow:
    k: int
    q: int
    D: Fraction
    error: Fraction  # |D at true alpha - D| <= error

    def csv_fields(self) -> list:
        lq = math.log(self.q)
        lD = math.log(self.D)
        return [self.k, self.q, self.D.numerator, self.D.denominator, float(self.D), lq, lD]


def discrepancy_decay(alpha: CF, beta=0, gamma=0, depth: int = 10, rel_tol=Fraction(1, 10)) -> list[DecayRow]:
    """D_{q_k} of the first q_k quadratic points, for each convergent denominator
    q_k with k = 1..depth.

    Points are computed at the realized alpha; moving every point by at most
    rho moves D by at most 2 rho.  The prefix must keep that error below
    ``rel_tol / q_k`` (a fraction of the 1/N floor of D).
    """
    alpha = as_param(alpha)
    if isinstance(alpha, CF) and depth > alpha.depth:
        raise ValueError(f"alpha has only {alpha.depth} digits")
    digits = alpha.digits if isinstance(alpha, CF) else _exact_digits(alpha)
    beta, gamma = Exact(frac(as_rat(beta))), Exact(frac(as_rat(gamma)))
    qs = convergents(digits[:depth]).q[1:]
    rows = []
    for k, q in enumerate(qs, start=1):
        pts, rad = quad_points(alpha, beta, gamma, q)
        err = 2 * rad
        if err * q >= rel_tol:
            raise EnclosureTooWide(f"prefix too short to certify D at q={q}")
        rows.append(DecayRow(k, q, exact_discrepancy(pts).value, err))
    return rows


def _exact_digits(alpha: Exact):
    from .numtheory import cf_expand

    return cf_expand(frac(alpha.value))


def loglog_slope(rows: Sequence[DecayRow], tail: float = 0.5) -> float | None:
    """Least-squares slope of log D against log q over the last ``tail`` of the rows
    (distinct q only).  None when fewer than three points remain."""
    uniq = {}
    for r in rows:
        uniq[r.q] = r
    rows = sorted(uniq.values(), key=lambda r: r.q)
    start = int(len(rows) * (1 - tail))
    sel = rows[start:]
    if len(sel) < 3:
        return None
    x = np.log([float(r.q) for r in sel])
    y = np.log([float(r.D) for r in sel])
    slope, _ = np.polyfit(x, y, 1)
    return float(slope)


def decay_csv(rows: Sequence[DecayRow]) -> str:
    buf = io.StringIO()
    buf.write("k,q_k,D_num,D_den,D_float,log_q,log_D\n")
    for r in rows:
        f = r.csv_fields()
        buf.write(f"{f[0]},{f[1]},{f[2]},{f[3]},{f[4]!r},{f[5]!r},{f[6]!r}\n")
    return buf.getvalue()
