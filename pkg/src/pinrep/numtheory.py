"""Farey sequences, continued fractions and Diophantine probes."""
from __future__ import annotations

import io
from dataclasses import dataclass
from fractions import Fraction

from .errors import EnclosureTooWide, HypothesisFails, NoWitness
from .torus import CF, Arc, Exact, RealParam, as_param, as_rat, frac, norm_range, torus_norm


def farey(n: int) -> list[Fraction]:
    """The Farey sequence F_n in increasing order.

    Generated with the neighbour recurrence: if a/b < c/d are adjacent in F_n,
    the next term is (k c - a)/(k d - b) with k = (n + b) // d.
    """
    if n < 1:
        raise ValueError("Farey order must be >= 1")
    a, b, c, d = 0, 1, 1, n
    out = [Fraction(0)]
    while c <= n:
        out.append(Fraction(c, d))
        k = (n + b) // d
        a, b, c, d = c, d, k * c - a, k * d - b
    return out


def cf_expand(x) -> list[int]:
    """Continued-fraction digits of a rational in (0, 1); last digit >= 2."""
    x = as_rat(x)
    if not 0 < x < 1:
        raise ValueError(f"cf_expand needs 0 < x < 1, got {x}")
    p, q = x.numerator, x.denominator
    digits = []
    while p:
        a, r = divmod(q, p)
        digits.append(a)
        q, p = p, r
    return digits


@dataclass(frozen=True)
class ConvergentTable:
    """Rows ``(k, a_k, p_k, q_k)`` for k = 0..K, with a_0 = 0."""

    rows: tuple

    @property
    def p(self) -> list[int]:
        return [r[2] for r in self.rows]

    @property
    def q(self) -> list[int]:
        return [r[3] for r in self.rows]

    def convergent(self, k: int) -> Fraction:
        return Fraction(self.rows[k][2], self.rows[k][3])

    def to_csv(self) -> str:
        buf = io.StringIO()
        buf.write("k,a_k,p_k,q_k\n")
        for row in self.rows:
            buf.write(",".join(map(str, row)) + "\n")
        return buf.getvalue()


def convergents(digits) -> ConvergentTable:
    digits = [int(a) for a in digits]
    if any(a < 1 for a in digits):
        raise ValueError("partial quotients must be >= 1")
    rows = [(0, 0, 0, 1)]
    if digits:
        rows.append((1, digits[0], 1, digits[0]))
    for k, a in enumerate(digits[1:], start=2):
        _, _, p1, q1 = rows[-1]
        _, _, p0, q0 = rows[-2]
        rows.append((k, a, a * p1 + p0, a * q1 + q0))
    return ConvergentTable(tuple(rows))


def gap(alpha, q: int) -> tuple[Fraction, Fraction]:
    """Certified enclosure ``(lo, hi)`` of <q alpha>."""
    alpha = as_param(alpha)
    if q < 1:
        raise ValueError("q must be positive")
    if isinstance(alpha, Exact):
        g = torus_norm(q * alpha.value)
        return g, g
    if q * alpha.error_bound >= Fraction(1, 4):
        raise EnclosureTooWide(f"CF prefix of depth {alpha.depth} cannot resolve q={q}")
    lo, hi = alpha.enclosure()
    return norm_range(q * lo, q * hi)


# --- Farey lemma -------------------------------------------------------------


@dataclass(frozen=True)
class FareyWitness:
    q: int
    p: int
    lower: Fraction  # Farey neighbours of order n-1 bracketing x
    upper: Fraction
    distance: Fraction  # |x - p/q|
    gap: Fraction  # <q x>


def farey_neighbours(x, order: int) -> tuple[Fraction, Fraction]:
    """Adjacent fractions r1/s1 <= x <= r2/s2 of F_order (equal if x is in F_order)."""
    x = as_rat(x)
    if not 0 <= x <= 1:
        raise ValueError("x must lie in [0, 1]")
    r1, s1, r2, s2 = 0, 1, 1, 1
    while True:
        m_r, m_s = r1 + r2, s1 + s2
        if m_s > order:
            lo, hi = Fraction(r1, s1), Fraction(r2, s2)
            if x in (lo, hi):
                return x, x
            return lo, hi
        med = Fraction(m_r, m_s)
        if x == med:
            return med, med
        # step as far as possible toward x in one go, respecting the order bound
        if x < med:
            # upper moves to (r2 + t r1)/(s2 + t s1) while that stays >= x
            num = x * s2 - r2
            den = r1 - x * s1
            cap = (order - s2) // s1
            t = max(1, min(int(num // den), cap)) if den else cap
            r2, s2 = r2 + t * r1, s2 + t * s1
        else:
            num = r1 - x * s1
            den = x * s2 - r2
            cap = (order - s1) // s2
            t = max(1, min(int(num // den), cap)) if den else cap
            r1, s1 = r1 + t * r2, s1 + t * s2


def farey_witness(x, y, n: int, J: Arc) -> FareyWitness:
    """Small q with <q x> < 1/n, given that {k x + y : 1 <= k <= n} misses J.

    Raises HypothesisFails when some k x + y lands in J, and NoWitness when x
    has reduced denominator exactly n (the mediant of the Farey neighbours then
    has denominator n and the strict estimate degenerates to equality).
    """
    x, y = frac(x), frac(y)
    if n < 2:
        raise ValueError("n must be >= 2")
    for k in range(1, n + 1):
        if J.contains(frac(k * x + y)):
            raise HypothesisFails(f"{k}x+y lies in the arc")
    if x.denominator == n:
        raise NoWitness(f"x = {x} has denominator n; every q < n has <q x> >= 1/n")
    lower, upper = farey_neighbours(x, n - 1)
    if lower == upper:
        pq = lower
    else:
        mediant = Fraction(lower.numerator + upper.numerator, lower.denominator + upper.denominator)
        pq = lower if x <= mediant else upper
    p, q = pq.numerator, pq.denominator
    dist = abs(x - pq)
    g = torus_norm(q * x)
    # these follow from the hypothesis; a failure here is a bug, not bad input
    assert dist < Fraction(1, q * n), (x, n, pq)
    assert q < n and g < Fraction(1, n), (x, n, q)
    assert q * J.length < 2, (x, n, q, J)
    return FareyWitness(q, p, lower, upper, dist, g)


# --- approximation-type probes ------------------------------------------------


def pq_profile(alpha, depth: int | None = None) -> tuple[int, list[int]]:
    """``(max digit, digits a_1..a_K)`` of alpha's continued fraction."""
    alpha = as_param(alpha)
    if isinstance(alpha, CF):
        digits = list(alpha.digits)
        if depth is not None:
            if depth > len(digits):
                raise ValueError(f"only {len(digits)} digits known")
            digits = digits[:depth]
    else:
        digits = cf_expand(frac(alpha.value)) if frac(alpha.value) else []
        if depth is not None:
            digits = digits[:depth]
    return (max(digits) if digits else 0), digits


def iroot(n: int, k: int) -> int:
    """floor(n ** (1/k)) for integers n >= 0, k >= 1."""
    if n < 0 or k < 1:
        raise ValueError("iroot needs n >= 0, k >= 1")
    if n < 2 or k == 1:
        return n
    x = 1 << -(-n.bit_length() // k)  # >= true root
    while True:
        y = ((k - 1) * x + n // x ** (k - 1)) // k
        if y >= x:
            return x
        x = y


def rpow_floor(q: int, e: Fraction, scale: int = 10**12) -> Fraction:
    """Rational lower bound of q**e (e >= 0) with absolute accuracy 1/scale."""
    e = as_rat(e)
    if e < 0:
        raise ValueError("exponent must be non-negative")
    a, b = e.numerator, e.denominator
    return Fraction(iroot(q**a * scale**b, b), scale)


def rpow_ceil_int(q: int, e: Fraction) -> int:
    """Smallest integer A with A >= q**e (e >= 0)."""
    e = as_rat(e)
    a, b = e.numerator, e.denominator
    target = q**a
    r = iroot(target, b)
    return r if r**b == target else r + 1


def below_neg_power(g: Fraction, q: int, tau: Fraction) -> bool:
    """Exact test of g < q**(-tau)."""
    tau = as_rat(tau)
    if g < 0:
        return True
    a, b = tau.numerator, tau.denominator
    return g**b < Fraction(q) ** (-a)


def roth_constant_probe(alpha, epsilon, Q: int) -> Fraction:
    """min over q <= Q of (lower bound of <q alpha>) * q**(1 + epsilon).

    The power is rounded down, so the result is a certified lower bound of the
    same minimum taken at the true alpha.
    """
    alpha = as_param(alpha)
    epsilon = as_rat(epsilon)
    best = None
    for q in range(1, Q + 1):
        lo, _ = gap(alpha, q)
        v = lo * q * rpow_floor(q, epsilon)
        if best is None or v < best:
            best = v
    return best


@dataclass(frozen=True)
class StauWitness:
    q: int
    gap: Fraction  # certified upper bound on <q alpha>
    tau: Fraction

    @property
    def threshold(self) -> float:
        return float(self.q) ** -float(self.tau)


def stau_witnesses(alpha, tau, Q: int) -> list[StauWitness]:
    """Odd q <= Q whose certified <q alpha> is below q**(-tau)."""
    alpha = as_param(alpha)
    tau = as_rat(tau)
    out = []
    for q in range(1, Q + 1, 2):
        _, hi = gap(alpha, q)
        if below_neg_power(hi, q, tau):
            out.append(StauWitness(q, hi, tau))
    return out


def stau_construct(tau, K: int) -> CF:
    """A continued-fraction prefix with K odd convergent denominators q
    satisfying <q alpha> < q**(-tau) for every continuation.

    Each digit is at least q_{k-1}**(tau - 1), which forces
    <q_{k-1} alpha> < 1/q_k <= q_{k-1}**(-tau); a digit is bumped by one when
    that keeps q_k odd.
    """
    tau = as_rat(tau)
    if tau <= 1:
        raise ValueError("tau must exceed 1")
    if K < 1:
        raise ValueError("K must be >= 1")
    digits = [1]
    q_prev, q = 1, 1  # q_0, q_1
    for i in range(1, K + 1):
        a = max(1, rpow_ceil_int(q, tau - 1))
        if i < K and (a * q + q_prev) % 2 == 0:
            a += 1  # q_{i-1} and q_i are coprime, so q is odd here and this flips parity
        digits.append(a)
        q_prev, q = q, a * q + q_prev
    return CF(tuple(digits))


def witness_denominators(alpha: CF, K: int) -> list[int]:
    """Convergent denominators q_1..q_K of a constructed S_tau prefix."""
    return convergents(alpha.digits).q[1 : K + 1]
