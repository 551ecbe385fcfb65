"""Symbolic codings: interval exchanges, rotations and polynomial sequences.

Everything is exact.  Parameters given as continued-fraction prefixes make
each orbit point known only up to a radius; positions whose radius reaches a
partition boundary are recorded as uncertified rather than guessed.
"""
from __future__ import annotations

import bisect
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .errors import OutOfDomain, ZeroRadius
from .torus import (
    AMBIGUOUS,
    Exact,
    RealParam,
    TorusPartition,
    as_param,
    as_rat,
    classify,
    fmt_rat,
    frac,
)


# --- symbolic windows ---------------------------------------------------------


@dataclass
class SymbolicWindow:
    """Symbols omega_n for -W <= n <= W.

    ``certified[i]`` is False where the coding could not be decided; such
    positions never match anything in the repetition statistics.
    """

    half_width: int
    symbols: list
    certified: list

    def __post_init__(self):
        size = 2 * self.half_width + 1
        if len(self.symbols) != size or len(self.certified) != size:
            raise ValueError(f"window of half-width {self.half_width} needs {size} entries")

    def __getitem__(self, n: int):
        return self.symbols[n + self.half_width]

    def ok(self, n: int) -> bool:
        return self.certified[n + self.half_width]

    def uncertified_fraction(self) -> float:
        return self.certified.count(False) / len(self.certified)

    def crop(self, W: int) -> "SymbolicWindow":
        """The central sub-window of half-width W."""
        if not 0 <= W <= self.half_width:
            raise ValueError(f"cannot crop half-width {self.half_width} to {W}")
        s = slice(self.half_width - W, self.half_width + W + 1)
        return SymbolicWindow(W, self.symbols[s], self.certified[s])

    def to_json(self) -> dict:
        return {"symbols": list(self.symbols), "certified": [bool(c) for c in self.certified]}

    @classmethod
    def from_json(cls, data: dict) -> "SymbolicWindow":
        symbols = list(data["symbols"])
        certified = [bool(c) for c in data.get("certified", [True] * len(symbols))]
        if len(symbols) % 2 == 0:
            raise ValueError("window length must be odd")
        return cls((len(symbols) - 1) // 2, symbols, certified)

    @classmethod
    def from_function(cls, W: int, f) -> "SymbolicWindow":
        syms = [f(n) for n in range(-W, W + 1)]
        return cls(W, syms, [True] * len(syms))


# --- interval exchange transformations -----------------------------------------


def _partial_sums(xs):
    out = [Fraction(0)]
    for x in xs:
        out.append(out[-1] + x)
    return out


@dataclass(frozen=True)
class IET:
    """The interval exchange T_{lambda, pi} on [0, |lambda|).

    ``perm`` is one-based: ``perm[j-1] = pi(j)``.  Interval j is moved to
    position pi(j) in the image.
    """

    lengths: tuple
    perm: tuple
    beta: tuple = field(init=False, repr=False)
    beta_pi: tuple = field(init=False, repr=False)
    shift: tuple = field(init=False, repr=False)

    def __post_init__(self):
        lengths = tuple(as_rat(x) for x in self.lengths)
        perm = tuple(int(p) for p in self.perm)
        m = len(lengths)
        if m < 1 or any(x <= 0 for x in lengths):
            raise ValueError("lengths must be positive")
        if sorted(perm) != list(range(1, m + 1)):
            raise ValueError(f"{perm} is not a permutation of 1..{m}")
        inv = [0] * m
        for j, pj in enumerate(perm, start=1):
            inv[pj - 1] = j
        lam_pi = [lengths[inv[i] - 1] for i in range(m)]
        beta = _partial_sums(lengths)
        beta_pi = _partial_sums(lam_pi)
        shift = tuple(beta_pi[perm[j] - 1] - beta[j] for j in range(m))
        object.__setattr__(self, "lengths", lengths)
        object.__setattr__(self, "perm", perm)
        object.__setattr__(self, "beta", tuple(beta))
        object.__setattr__(self, "beta_pi", tuple(beta_pi))
        object.__setattr__(self, "shift", shift)

    @classmethod
    def rotation(cls, theta) -> "IET":
        """x -> x + theta mod 1 as the 2-IET with lengths (1 - theta, theta)."""
        theta = as_rat(theta)
        if not 0 < theta < 1:
            raise ValueError("rotation angle must lie in (0, 1)")
        return cls((1 - theta, theta), (2, 1))

    @property
    def m(self) -> int:
        return len(self.lengths)

    @property
    def total(self) -> Fraction:
        return self.beta[-1]

    @property
    def discontinuities(self) -> tuple:
        """Interior cut points beta_1..beta_{m-1}."""
        return self.beta[1:-1]

    def interval_of(self, x) -> int:
        x = as_rat(x)
        if not 0 <= x < self.total:
            raise OutOfDomain(f"{x} outside [0, {self.total})")
        return bisect.bisect_right(self.beta, x) - 1

    def __call__(self, x) -> Fraction:
        x = as_rat(x)
        return x + self.shift[self.interval_of(x)]

    def inverse(self, y) -> Fraction:
        y = as_rat(y)
        if not 0 <= y < self.total:
            raise OutOfDomain(f"{y} outside [0, {self.total})")
        i = bisect.bisect_right(self.beta_pi, y) - 1  # image slot i+1 holds interval pi^{-1}(i+1)
        j = self.perm.index(i + 1)
        return y - self.shift[j]

    def image(self, intervals: Sequence[tuple]) -> list[tuple]:
        """Image of a finite union of half-open intervals, as sorted disjoint pieces."""
        out = []
        for a, b in intervals:
            j = bisect.bisect_right(self.beta, a) - 1
            while a < b:
                end = min(b, self.beta[j + 1])
                out.append((a + self.shift[j], end + self.shift[j]))
                a = end
                j += 1
        return merge_intervals(out)

    def is_linear_on(self, a, b) -> bool:
        """True when [a, b) meets no interior discontinuity."""
        return not any(a < c < b for c in self.discontinuities)


def iet_apply(T: IET, x) -> Fraction:
    return T(x)


def iet_irreducible(perm: Sequence[int]) -> bool:
    """pi({1..k}) = {1..k} only for k = m."""
    m = len(perm)
    seen = 0
    for k, p in enumerate(perm, start=1):
        seen = max(seen, p)
        if seen == k and k < m:
            return False
    return True


def merge_intervals(intervals) -> list[tuple]:
    out = []
    for a, b in sorted(i for i in intervals if i[0] < i[1]):
        if out and a <= out[-1][1]:
            if b > out[-1][1]:
                out[-1] = (out[-1][0], b)
        else:
            out.append((a, b))
    return out


def measure(intervals) -> Fraction:
    return sum((b - a for a, b in merge_intervals(intervals)), Fraction(0))


def intersect(xs, ys) -> list[tuple]:
    xs, ys = merge_intervals(xs), merge_intervals(ys)
    out, i, j = [], 0, 0
    while i < len(xs) and j < len(ys):
        a, b = max(xs[i][0], ys[j][0]), min(xs[i][1], ys[j][1])
        if a < b:
            out.append((a, b))
        if xs[i][1] < ys[j][1]:
            i += 1
        else:
            j += 1
    return out


def iet_coding(T: IET, x0, partition: TorusPartition, W: int, margin=0) -> SymbolicWindow:
    """Labels of T^n x0 for -W <= n <= W; ``partition`` lives on [0, |lambda|)."""
    x0 = as_rat(x0)
    T.interval_of(x0)
    if partition.period != T.total:
        raise ValueError("partition must cover [0, |lambda|)")
    fwd, bwd = [x0], []
    x = x0
    for _ in range(W):
        x = T(x)
        fwd.append(x)
    x = x0
    for _ in range(W):
        x = T.inverse(x)
        bwd.append(x)
    orbit = bwd[::-1] + fwd
    labs = [classify(y, partition, margin) for y in orbit]
    cert = [lab is not AMBIGUOUS for lab in labs]
    return SymbolicWindow(W, [None if lab is AMBIGUOUS else lab for lab in labs], cert)


# --- Veech conditions -----------------------------------------------------------


@dataclass(frozen=True)
class VeechReport:
    N: int
    J: tuple
    eps: Fraction
    cond_i: bool
    cond_ii: bool
    cond_iii: bool
    cond_iv: bool
    union_measure: Fraction  # |T^0 J u ... u T^{N-1} J|
    return_measure: Fraction  # |J n T^N J|
    overlap_measure: Fraction  # largest |J n T^l J| over 1 <= l < N

    @property
    def passed(self) -> bool:
        return self.cond_i and self.cond_ii and self.cond_iii and self.cond_iv

    def recheck(self, total) -> bool:
        """Recompute the four booleans from the recorded measures."""
        eps, length = self.eps, self.J[1] - self.J[0]
        return (
            (self.overlap_measure == 0) == self.cond_i
            and (self.union_measure > (1 - eps) * total) == self.cond_iii
            and (self.return_measure > (1 - eps) * length) == self.cond_iv
        )


def veech_check(T: IET, N: int, J: tuple, eps) -> VeechReport:
    """Evaluate conditions (i)-(iv) exactly for the interval J = [a, b)."""
    eps = as_rat(eps)
    a, b = as_rat(J[0]), as_rat(J[1])
    if not 0 <= a < b <= T.total:
        raise OutOfDomain(f"J = [{a}, {b}) is not a subinterval of [0, {T.total})")
    if N < 1:
        raise ValueError("N must be >= 1")
    base = [(a, b)]
    cur = base
    pieces = []
    linear = True
    overlap = Fraction(0)
    for l in range(N):
        if l:
            overlap = max(overlap, measure(intersect(base, cur)))
        linear = linear and all(T.is_linear_on(x, y) for x, y in cur) and len(cur) == 1
        pieces.extend(cur)
        cur = T.image(cur)
    union = measure(pieces)
    ret = measure(intersect(base, cur))
    return VeechReport(
        N=N,
        J=(a, b),
        eps=eps,
        cond_i=overlap == 0,
        cond_ii=linear,
        cond_iii=union > (1 - eps) * T.total,
        cond_iv=ret > (1 - eps) * (b - a),
        union_measure=union,
        return_measure=ret,
        overlap_measure=overlap,
    )


def cylinder_points(T: IET, depth: int) -> list[Fraction]:
    """Backward orbit of the cut points beta_0..beta_{m-1} up to depth-1 steps, plus |lambda|."""
    pts = set()
    frontier = list(T.beta[:-1])
    for _ in range(max(depth, 1)):
        pts.update(frontier)
        frontier = [T.inverse(x) for x in frontier]
    pts.add(T.total)
    return sorted(pts)


def veech_search(T: IET, eps, N_max: int) -> VeechReport | None:
    """First (N, J) passing all four conditions, or None.

    Candidates: N = 1..N_max; J = [u, v) with u < v cylinder points, ordered by
    u then v.  Two necessary conditions prune the scan before the exact check:
    J sits inside one exchanged interval, and (1 - eps)|lambda|/N < |J| <= |lambda|/N.
    """
    eps = as_rat(eps)
    if not 0 < eps < 1:
        raise ValueError("eps must lie in (0, 1)")
    pts = cylinder_points(T, N_max)
    total = T.total
    for N in range(1, N_max + 1):
        lo_len, hi_len = (1 - eps) * total / N, total / N
        for i, u in enumerate(pts):
            for v in pts[i + 1 :]:
                length = v - u
                if length > hi_len:
                    break
                if length <= lo_len or not T.is_linear_on(u, v):
                    continue
                rep = veech_check(T, N, (u, v), eps)
                if rep.passed:
                    return rep
    return None


# --- polynomial orbits ------------------------------------------------------------


def poly_orbit(alpha, beta, gamma, r: int, n: int) -> tuple[Fraction, Fraction]:
    """``(x_n, radius)`` with x_n = alpha n^r + beta n + gamma mod 1 evaluated at the
    realized parameters and |true x_n - x_n| < radius (radius 0 when exact)."""
    alpha, beta, gamma = as_param(alpha), as_param(beta), as_param(gamma)
    nr = n**r
    x = frac(alpha.realized * nr + beta.realized * n + gamma.realized)
    rad = alpha.error_bound * abs(nr) + beta.error_bound * abs(n) + gamma.error_bound
    return x, rad


def _lcm(*xs: int) -> int:
    out = 1
    for x in xs:
        out = out * x // math.gcd(out, x)
    return out


def _poly_scan(alpha, beta, gamma, r, partition, margin, W):
    """Yield ``(n, label index, boundary distance, effective margin)`` for
    -W <= n <= W, all distances scaled by a common denominator ``L``.

    Integer arithmetic throughout; returns ``(L, rows)``.
    """
    alpha, beta, gamma = as_param(alpha), as_param(beta), as_param(gamma)
    margin = as_rat(margin)
    if partition.period != 1:
        raise ValueError("polynomial codings use a partition of the unit torus")
    vals = [alpha.realized, beta.realized, gamma.realized]
    errs = [alpha.error_bound, beta.error_bound, gamma.error_bound]
    L = _lcm(*(v.denominator for v in vals + errs + [margin]), *(c.denominator for c in partition.cuts))
    A, B, G = (int(v * L) for v in vals)
    EA, EB, EG = (int(e * L) for e in errs)
    M = int(margin * L)
    cuts = [int(c * L) for c in partition.cuts]
    first, last = cuts[0], cuts[-1]
    k = len(cuts)
    rows = []
    for n in range(-W, W + 1):
        nr = n**r
        X = (A * nr + B * n + G) % L
        i = bisect.bisect_right(cuts, X)
        below = cuts[i - 1] if i else last - L
        above = cuts[i] if i < k else first + L
        dist = min(X - below, above - X)
        rad = EA * abs(nr) + EB * abs(n) + EG
        rows.append((n, (i - 1) % k, dist, max(M, rad)))
    return L, rows


def poly_coding(alpha, beta, gamma, r: int, partition: TorusPartition, W: int, margin=0) -> SymbolicWindow:
    """Coding of alpha n^r + beta n + gamma against ``partition`` on [-W, W].

    A position is certified when its boundary distance is at least
    max(margin, radius); the radius bound is strict, so the true point then
    lies in the same arc.
    """
    _, rows = _poly_scan(alpha, beta, gamma, r, partition, margin, W)
    labels = partition.labels
    syms, cert = [], []
    for _, idx, dist, eff in rows:
        ok = not (eff > 0 and dist < eff)
        syms.append(labels[idx] if ok else None)
        cert.append(ok)
    return SymbolicWindow(W, syms, cert)


def stability_radius(alpha, beta, gamma, r: int, partition: TorusPartition, W: int, margin=0) -> Fraction:
    """delta > 0 such that every alpha' with |alpha' - alpha| < delta yields the
    same certified coding on [-W, W].

    delta = (smallest slack over |n| <= W) / W^r, where the slack of a position is
    its distance to a boundary (minus the margin, if any), since moving alpha
    by d moves x_n by at most d |n|^r.
    """
    params = [as_param(p) for p in (alpha, beta, gamma)]
    if not all(isinstance(p, Exact) for p in params):
        raise TypeError("stability_radius needs exact parameters")
    if W < 1:
        raise ValueError("W must be >= 1")
    margin = as_rat(margin)
    L, rows = _poly_scan(*params, r, partition, margin, W)
    M = int(margin * L)
    slack = min(abs(dist - M) for _, _, dist, _ in rows)
    if slack == 0:
        raise ZeroRadius("an orbit point sits on a partition boundary or on the margin")
    return Fraction(slack, L * W**r)


def window_json(window: SymbolicWindow, **meta) -> dict:
    out = dict(meta)
    out.update(window.to_json())
    return out


def parse_partition(text: str) -> TorusPartition:
    """``halves`` (labels 1, 0 as in chi_[0,1/2)), ``thirds``, ``uniform:k`` or
    ``cuts:c1,c2,...`` (labels 0..k-1)."""
    s = text.strip()
    if s == "halves":
        return TorusPartition.from_cuts([0, Fraction(1, 2)], [1, 0])
    if s == "thirds":
        return TorusPartition.uniform(3)
    if s.startswith("uniform:"):
        return TorusPartition.uniform(int(s[8:]))
    if s.startswith("cuts:"):
        cuts = [Fraction(t) for t in s[5:].split(",") if t.strip()]
        return TorusPartition.from_cuts(cuts, list(range(len(cuts))))
    raise ValueError(f"unknown partition {text!r}")


def describe_partition(P: TorusPartition) -> str:
    return ";".join(f"[{fmt_rat(a.left)},{fmt_rat(a.right)})->{lab}" for a, lab in zip(P.arcs, P.labels))
