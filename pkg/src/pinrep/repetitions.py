"""Pinned repetition statistics R_n, T_n on finite windows and periodic inputs.

For a two-sided sequence omega,

    R_n = 1 + sup{m : omega_k = omega_{k+n}, 1 <= k <= m} / n
    T_n = 1 + sup{m : additionally omega_{n+1-k} = omega_{1-k}} / n

with sup of the empty set taken as 0.  On a finite window the scan may run
into the edge; the statistic is then *censored* and only a lower bound.
Uncertified positions never match.
"""
from __future__ import annotations

import io
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .errors import EvenLength, WindowTooSmall
from .flows import SymbolicWindow

INFINITE = math.inf


@dataclass(frozen=True)
class RepStat:
    n: int
    m: int
    censored: bool

    @property
    def value(self) -> Fraction:
        return 1 + Fraction(self.m, self.n)


def _match(w: SymbolicWindow, i: int, j: int) -> bool:
    return w.ok(i) and w.ok(j) and w[i] == w[j]


def r_n(w: SymbolicWindow, n: int) -> RepStat:
    W = w.half_width
    if not 1 <= n <= W:
        raise WindowTooSmall(f"n={n} needs half-width >= n (have {W})")
    limit = W - n  # k + n must stay inside the window
    k = 1
    while k <= limit and _match(w, k, k + n):
        k += 1
    m = k - 1
    return RepStat(n, m, m == limit)


def t_n(w: SymbolicWindow, n: int) -> RepStat:
    W = w.half_width
    if not 1 <= n <= W:
        raise WindowTooSmall(f"n={n} needs half-width >= n (have {W})")
    limit = W - n  # the right-hand scan binds; the left one reaches 1 - m >= -W
    k = 1
    while k <= limit and _match(w, k, k + n) and _match(w, n + 1 - k, 1 - k):
        k += 1
    m = k - 1
    return RepStat(n, m, m == limit)


@dataclass(frozen=True)
class RepProfile:
    """Statistics over a range of n.

    ``r_hat`` is the largest value seen.  When ``any_censored`` is set the
    censored entries are lower bounds, so ``r_hat`` is a lower bound for the
    finite-range maximum and says nothing about the limsup from above.
    """

    kind: str
    stats: tuple

    @property
    def r_hat(self) -> Fraction:
        return max((s.value for s in self.stats), default=Fraction(1))

    @property
    def argmax_n(self) -> int | None:
        if not self.stats:
            return None
        return max(self.stats, key=lambda s: (s.value, -s.n)).n

    @property
    def any_censored(self) -> bool:
        return any(s.censored for s in self.stats)

    def uncensored(self, n_min: int = 1) -> list[RepStat]:
        return [s for s in self.stats if not s.censored and s.n >= n_min]

    def best_uncensored(self, n_min: int = 1) -> Fraction:
        return max((s.value for s in self.uncensored(n_min)), default=Fraction(1))

    def to_csv(self) -> str:
        buf = io.StringIO()
        buf.write("n,m,value_num,value_den,censored\n")
        for s in self.stats:
            v = s.value
            buf.write(f"{s.n},{s.m},{v.numerator},{v.denominator},{int(s.censored)}\n")
        return buf.getvalue()


def profile(w: SymbolicWindow, n_range: tuple[int, int] | None = None, kind: str = "one_sided") -> RepProfile:
    """RepStats for n in ``n_range`` (default ``[1, W // 4]``)."""
    W = w.half_width
    lo, hi = n_range if n_range is not None else (1, max(1, W // 4))
    if hi > W:
        raise WindowTooSmall(f"n up to {hi} needs half-width >= {hi} (have {W})")
    if kind not in ("one_sided", "two_sided"):
        raise ValueError("kind must be 'one_sided' or 'two_sided'")
    stat = r_n if kind == "one_sided" else t_n
    return RepProfile(kind, tuple(stat(w, n) for n in range(lo, hi + 1)))


def t_finite_word(word: Sequence) -> Fraction:
    """Two-sided pinned exponent of an odd-length word, computed inside the word.

    The central letter is omega_1, so a word of length 2L+1 spans indices
    1-L..1+L; only comparisons that fit are counted, never censored.
    """
    size = len(word)
    if size % 2 == 0:
        raise EvenLength("word length must be odd")
    L = (size - 1) // 2
    lo, hi = 1 - L, 1 + L

    def at(i):
        return word[i - lo]

    best = Fraction(1)
    for n in range(1, L + 1):
        m = 0
        k = 1
        while k + n <= hi and 1 - k >= lo and at(k) == at(k + n) and at(n + 1 - k) == at(1 - k):
            m = k
            k += 1
        best = max(best, 1 + Fraction(m, n))
    return best


# --- eventually periodic sequences --------------------------------------------------


@dataclass(frozen=True)
class EventuallyPeriodic:
    """... P_L P_L pre_L | core pre_R P_R P_R ...

    ``core`` starts at index 1; the left part ends at index 0.
    """

    pre_left: tuple
    period_left: tuple
    core: tuple
    period_right: tuple
    pre_right: tuple

    def __post_init__(self):
        if not self.period_left or not self.period_right:
            raise ValueError("periods must be non-empty")

    @property
    def right_start(self) -> int:
        """First index of the right periodic part."""
        return 1 + len(self.core) + len(self.pre_right)

    @property
    def left_end(self) -> int:
        """Last index of the left periodic part."""
        return -len(self.pre_left)

    def __getitem__(self, i: int):
        if i >= 1:
            head = self.core + self.pre_right
            if i <= len(head):
                return head[i - 1]
            p = self.period_right
            return p[(i - self.right_start) % len(p)]
        j = -i  # 0 -> last symbol of pre_left
        if j < len(self.pre_left):
            return self.pre_left[len(self.pre_left) - 1 - j]
        p = self.period_left
        off = j - len(self.pre_left)  # 0 -> last symbol of the left period
        return p[len(p) - 1 - off % len(p)]

    def shifted(self, s: int = 1) -> "EventuallyPeriodic":
        """The sequence S^s omega, (S omega)_k = omega_{k+1}, for s >= 0."""
        seq = self
        for _ in range(s):
            head = seq.core + seq.pre_right
            if head:
                first, rest = head[0], head[1:]
                core_len = max(len(seq.core) - 1, 0)
                seq = EventuallyPeriodic(
                    seq.pre_left + (first,), seq.period_left, rest[:core_len], seq.period_right, rest[core_len:]
                )
            else:
                p = seq.period_right
                seq = EventuallyPeriodic(seq.pre_left + (p[0],), seq.period_left, (), p[1:] + p[:1], ())
        return seq

    def window(self, W: int) -> SymbolicWindow:
        return SymbolicWindow.from_function(W, self.__getitem__)


def _m_right(seq: EventuallyPeriodic, n: int) -> float:
    """sup{m : omega_k = omega_{k+n}, k <= m}; infinite once a full right period matches
    past the point where both sides are periodic."""
    horizon = seq.right_start + len(seq.period_right)
    for k in range(1, horizon + 1):
        if seq[k] != seq[k + n]:
            return k - 1
    return INFINITE


def _m_left(seq: EventuallyPeriodic, n: int) -> float:
    """sup{m : omega_{n+1-k} = omega_{1-k}, k <= m}."""
    # once n+1-k <= left_end both indices are in the left periodic part
    horizon = n + 1 - seq.left_end + len(seq.period_left)
    for k in range(1, horizon + 1):
        if seq[n + 1 - k] != seq[1 - k]:
            return k - 1
    return INFINITE


def _limsup(seq: EventuallyPeriodic, two_sided: bool):
    P = math.lcm(len(seq.period_left), len(seq.period_right))
    # past every preperiod by at least one full period on each side
    base = 4 * P + 2 * (len(seq.core) + len(seq.pre_left) + len(seq.pre_right)) + 2

    def m_of(n):
        mr = _m_right(seq, n)
        return min(mr, _m_left(seq, n)) if two_sided else mr

    best = Fraction(1)
    for rho in range(P):
        ms = [m_of(base + rho + t * P) for t in range(3)]
        if any(m == INFINITE for m in ms):
            if all(m == INFINITE for m in ms):
                return INFINITE
            raise AssertionError("residue class not yet in its eventual regime")
        d1, d2 = ms[1] - ms[0], ms[2] - ms[1]
        if d1 != d2:
            raise AssertionError("residue class not yet in its eventual regime")
        # m_n = a n + b along the class, so 1 + m_n/n -> 1 + a
        best = max(best, 1 + Fraction(d1, P))
    return best


def exact_exponents_periodic(pre_left, period_left, core, period_right, pre_right):
    """Exact ``(R, T)`` of an eventually periodic two-sided sequence
    ``... P_L P_L pre_L | core pre_R P_R P_R ...`` (core starts at index 1).

    Along each residue class of n modulo lcm(|P_L|, |P_R|) the pinned sup is
    eventually either infinite or affine in n, so the limsup is read off three
    members of every class past all preperiods.  Values are Fractions or
    ``INFINITE``.
    """
    seq = EventuallyPeriodic(tuple(pre_left), tuple(period_left), tuple(core), tuple(period_right), tuple(pre_right))
    return _limsup(seq, False), _limsup(seq, True)
