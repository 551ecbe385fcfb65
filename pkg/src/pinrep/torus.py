"""Exact arithmetic on the circle T = R/Z.

Scalars are :class:`fractions.Fraction`; a point of the torus is a Fraction
in ``[0, 1)``.  Irrational parameters only enter through :class:`CF`, a
continued-fraction prefix that carries a certified error radius.
"""
from __future__ import annotations

import bisect
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Hashable, Sequence, Union

Rat = Fraction


class _Ambiguous:
    __slots__ = ()

    def __repr__(self):
        return "AMBIGUOUS"

    def __reduce__(self):
        return (_ambiguous, ())


def _ambiguous():
    return AMBIGUOUS


AMBIGUOUS = object.__new__(_Ambiguous)


def as_rat(x) -> Fraction:
    """Coerce ints, Fractions and ``"p/q"`` strings to a Fraction.

    Floats are rejected: every scalar in this package is exact.
    """
    if isinstance(x, Fraction):
        return x
    if isinstance(x, bool):
        raise TypeError("bool is not a rational")
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x.strip())
    raise TypeError(f"expected an exact rational, got {type(x).__name__}")


def frac(x) -> Fraction:
    """x mod 1, exact."""
    x = as_rat(x)
    return x - (x.numerator // x.denominator)


def torus_norm(x) -> Fraction:
    """Distance from x to the nearest integer."""
    f = frac(x)
    return min(f, 1 - f)


def torus_dist(x, y) -> Fraction:
    return torus_norm(as_rat(x) - as_rat(y))


def fmt_rat(x: Fraction) -> str:
    """Serialize as ``"p/q"`` (denominator always written)."""
    return f"{x.numerator}/{x.denominator}"


@dataclass(frozen=True)
class Arc:
    """The half-open arc ``[left, left + length)`` on a circle of
    circumference ``period`` (1 for the torus)."""

    left: Fraction
    length: Fraction
    period: Fraction = Fraction(1)

    def __post_init__(self):
        object.__setattr__(self, "left", as_rat(self.left))
        object.__setattr__(self, "length", as_rat(self.length))
        object.__setattr__(self, "period", as_rat(self.period))
        if not 0 <= self.left < self.period:
            raise ValueError(f"arc left endpoint {self.left} outside [0, {self.period})")
        if not 0 < self.length <= self.period:
            raise ValueError(f"arc length {self.length} outside (0, {self.period}]")

    @property
    def right(self) -> Fraction:
        return self.left + self.length

    def contains(self, x) -> bool:
        x = as_rat(x)
        off = (x - self.left) % self.period
        return off < self.length


Label = Hashable


@dataclass(frozen=True)
class TorusPartition:
    """Finitely many disjoint half-open arcs covering the circle.

    For interval exchanges the same structure is used on ``[0, |lambda|)``
    by setting ``period`` to the total length.
    """

    arcs: tuple
    labels: tuple
    _cuts: tuple = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        arcs = tuple(self.arcs)
        labels = tuple(self.labels)
        if not arcs:
            raise ValueError("partition needs at least one arc")
        if len(arcs) != len(labels):
            raise ValueError("one label per arc")
        if len(set(labels)) != len(labels):
            raise ValueError("labels must be distinct")
        period = arcs[0].period
        if any(a.period != period for a in arcs):
            raise ValueError("arcs live on different circles")
        if any(a.left >= b.left for a, b in zip(arcs, arcs[1:])):
            raise ValueError("arcs must be sorted by left endpoint")
        if sum(a.length for a in arcs) != period:
            raise ValueError("arc lengths must sum to the period")
        for a, b in zip(arcs, arcs[1:] + arcs[:1]):
            if (a.right - b.left) % period != 0:
                raise ValueError("arcs must tile the circle without gaps or overlaps")
        object.__setattr__(self, "arcs", arcs)
        object.__setattr__(self, "labels", labels)
        object.__setattr__(self, "_cuts", tuple(a.left for a in arcs))

    @property
    def period(self) -> Fraction:
        return self.arcs[0].period

    @property
    def cuts(self) -> tuple:
        """Left endpoints of the arcs, i.e. the boundary points."""
        return self._cuts

    @classmethod
    def from_cuts(cls, cuts: Sequence, labels: Sequence, period=1) -> "TorusPartition":
        """Build from sorted boundary points; arc ``i`` is ``[cuts[i], cuts[i+1])``."""
        period = as_rat(period)
        cuts = [as_rat(c) % period for c in cuts]
        cuts.sort()
        arcs = []
        for i, c in enumerate(cuts):
            nxt = cuts[i + 1] if i + 1 < len(cuts) else cuts[0] + period
            arcs.append(Arc(c, nxt - c, period))
        return cls(tuple(arcs), tuple(labels))

    @classmethod
    def uniform(cls, k: int, labels: Sequence | None = None) -> "TorusPartition":
        """``k`` equal arcs ``[i/k, (i+1)/k)``."""
        labels = list(range(k)) if labels is None else labels
        return cls.from_cuts([Fraction(i, k) for i in range(k)], labels)

    def label_index(self, x) -> int:
        x = as_rat(x) % self.period
        i = bisect.bisect_right(self._cuts, x) - 1
        return i % len(self._cuts)  # x below the first cut sits in the wrapping arc

    def boundary_distance(self, x) -> Fraction:
        x = as_rat(x) % self.period
        cuts = self._cuts
        i = bisect.bisect_right(cuts, x)
        below = cuts[i - 1] if i > 0 else cuts[-1] - self.period
        above = cuts[i] if i < len(cuts) else cuts[0] + self.period
        return min(x - below, above - x)

    def max_length(self) -> Fraction:
        return max(a.length for a in self.arcs)

    def to_json(self) -> list:
        return [
            {"left": fmt_rat(a.left), "length": fmt_rat(a.length), "label": lab}
            for a, lab in zip(self.arcs, self.labels)
        ]

    @classmethod
    def from_json(cls, data: list, period=1) -> "TorusPartition":
        arcs = tuple(Arc(Fraction(d["left"]), Fraction(d["length"]), as_rat(period)) for d in data)
        return cls(arcs, tuple(d["label"] for d in data))


def classify(p, partition: TorusPartition, margin=0):
    """Label of the arc containing ``p``, or AMBIGUOUS when ``p`` lies closer
    than ``margin`` to a boundary point."""
    margin = as_rat(margin)
    if margin < 0:
        raise ValueError("margin must be non-negative")
    if margin > 0 and partition.boundary_distance(p) < margin:
        return AMBIGUOUS
    return partition.labels[partition.label_index(p)]


# --- real parameters -------------------------------------------------------


@dataclass(frozen=True)
class Exact:
    """A real parameter known exactly."""

    value: Fraction

    def __post_init__(self):
        object.__setattr__(self, "value", as_rat(self.value))

    @property
    def realized(self) -> Fraction:
        return self.value

    @property
    def error_bound(self) -> Fraction:
        return Fraction(0)

    def enclosure(self) -> tuple[Fraction, Fraction]:
        return self.value, self.value

    def __str__(self):
        return fmt_rat(self.value)


@dataclass(frozen=True)
class CF:
    """An irrational in (0, 1) known through the prefix ``[0; a_1, ..., a_K]``.

    ``realized`` is ``p_K/q_K``; ``error_bound`` is ``1/(q_K (q_K + q_{K-1}))``,
    the worst case ``a_{K+1} = 1``, so ``|alpha - realized| < error_bound`` for
    every continuation of the digit stream.
    """

    digits: tuple
    realized: Fraction = field(init=False)
    error_bound: Fraction = field(init=False)
    _other_end: Fraction = field(init=False, repr=False)

    def __post_init__(self):
        digits = tuple(int(a) for a in self.digits)
        if not digits:
            raise ValueError("CF needs at least one partial quotient")
        if any(a < 1 for a in digits):
            raise ValueError("partial quotients must be >= 1")
        p0, q0, p1, q1 = 0, 1, 1, digits[0]
        for a in digits[1:]:
            p0, q0, p1, q1 = p1, q1, a * p1 + p0, a * q1 + q0
        object.__setattr__(self, "digits", digits)
        object.__setattr__(self, "realized", Fraction(p1, q1))
        object.__setattr__(self, "error_bound", Fraction(1, q1 * (q1 + q0)))
        # the cylinder of all continuations runs from p_K/q_K to the mediant-type point
        object.__setattr__(self, "_other_end", Fraction(p1 + p0, q1 + q0))

    @property
    def depth(self) -> int:
        return len(self.digits)

    def enclosure(self) -> tuple[Fraction, Fraction]:
        """Closed interval containing every real with this digit prefix.

        Tighter than the symmetric ball and nested under deepening."""
        a, b = self.realized, self._other_end
        return (a, b) if a <= b else (b, a)

    def extend(self, more: Sequence[int]) -> "CF":
        return CF(self.digits + tuple(more))

    def __str__(self):
        return "cf:" + ",".join(map(str, self.digits))


RealParam = Union[Exact, CF]


def golden(depth: int) -> CF:
    """Prefix of (sqrt(5) - 1)/2 = [0; 1, 1, 1, ...]."""
    return CF((1,) * depth)


def parse_real(text) -> RealParam:
    """Parse ``"p/q"``, ``"cf:a1,a2,..."`` or ``"golden:K"``."""
    if isinstance(text, (Exact, CF)):
        return text
    if not isinstance(text, str):
        return Exact(as_rat(text))
    s = text.strip()
    if s.startswith("cf:"):
        return CF(tuple(int(t) for t in s[3:].split(",") if t.strip()))
    if s.startswith("golden:"):
        return golden(int(s[7:]))
    return Exact(Fraction(s))


def as_param(x) -> RealParam:
    if isinstance(x, (Exact, CF)):
        return x
    return parse_real(x) if isinstance(x, str) else Exact(as_rat(x))


def norm_range(lo: Fraction, hi: Fraction) -> tuple[Fraction, Fraction]:
    """Exact range of the nearest-integer distance over the real interval [lo, hi]."""
    if hi < lo:
        raise ValueError("empty interval")
    if hi - lo >= 1:
        return Fraction(0), Fraction(1, 2)
    contains_int = math.floor(hi) >= math.ceil(lo)
    contains_half = math.floor(hi - Fraction(1, 2)) >= math.ceil(lo - Fraction(1, 2))
    ends = (torus_norm(lo), torus_norm(hi))
    low = Fraction(0) if contains_int else min(ends)
    high = Fraction(1, 2) if contains_half else max(ends)
    return low, high
