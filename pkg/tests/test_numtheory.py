from fractions import Fraction as F
from math import gcd

import mpmath
import pytest
from hypothesis import given
from hypothesis import strategies as st

from pinrep.errors import EnclosureTooWide, HypothesisFails, NoWitness
from pinrep.numtheory import (
    below_neg_power,
    cf_expand,
    convergents,
    farey,
    farey_neighbours,
    farey_witness,
    gap,
    iroot,
    pq_profile,
    roth_constant_probe,
    rpow_ceil_int,
    rpow_floor,
    stau_construct,
    stau_witnesses,
    witness_denominators,
)
from pinrep.torus import CF, Arc, Exact, golden, torus_norm


def brute_farey(n):
    return sorted({F(a, b) for b in range(1, n + 1) for a in range(0, b + 1)})


def test_farey_examples():
    assert farey(1) == [F(0), F(1)]
    assert farey(4) == [F(0), F(1, 4), F(1, 3), F(1, 2), F(2, 3), F(3, 4), F(1)]
    assert len(farey(5)) == 11
    with pytest.raises(ValueError):
        farey(0)


@pytest.mark.parametrize("n", [1, 2, 3, 7, 12, 30])
def test_farey_matches_brute_force(n):
    assert farey(n) == brute_farey(n)


def test_cf_examples():
    assert cf_expand(F(1, 3)) == [3]
    assert cf_expand(F(5, 7)) == [1, 2, 2]
    assert convergents([2]).convergent(1) == F(1, 2)
    assert convergents([1, 2, 2]).convergent(3) == F(5, 7)
    assert convergents([1] * 10).q[:10] == [1, 1, 2, 3, 5, 8, 13, 21, 34, 55]
    for bad in (F(0), F(1), F(3, 2)):
        with pytest.raises(ValueError):
            cf_expand(bad)


def test_convergent_csv():
    assert convergents([1, 2, 2]).to_csv().splitlines() == ["k,a_k,p_k,q_k", "0,0,0,1", "1,1,1,1", "2,2,2,3", "3,2,5,7"]


@given(st.fractions(min_value=0, max_value=1, max_denominator=10**9).filter(lambda x: 0 < x < 1))
def test_cf_round_trip(x):
    digits = cf_expand(x)
    assert digits[-1] >= 2 or digits == [1] and x == 1
    assert convergents(digits).convergent(len(digits)) == x


def test_gap_examples():
    assert gap(Exact(F(1, 3)), 3) == (0, 0)
    assert gap(Exact(F(1, 3)), 1) == (F(1, 3), F(1, 3))
    lo, hi = gap(golden(20), 5)
    with mpmath.workdps(40):
        true = 5 * (mpmath.sqrt(5) - 1) / 2
        true = abs(true - mpmath.nint(true))
        assert mpmath.mpf(lo.numerator) / lo.denominator <= true <= mpmath.mpf(hi.numerator) / hi.denominator
    assert abs(float(lo) - 0.0902) < 1e-3


def test_gap_too_wide():
    with pytest.raises(EnclosureTooWide):
        gap(golden(5), 100)


@given(st.lists(st.integers(1, 20), min_size=3, max_size=10), st.integers(1, 5), st.integers(1, 40))
def test_gap_enclosures_nest(prefix, extra, q):
    short = CF(tuple(prefix))
    longer = short.extend([2] * extra)
    try:
        lo, hi = gap(short, q)
    except EnclosureTooWide:
        return
    lo2, hi2 = gap(longer, q)
    assert lo <= lo2 <= hi2 <= hi


def test_farey_neighbours():
    assert farey_neighbours(F(2, 5), 3) == (F(1, 3), F(1, 2))
    assert farey_neighbours(F(1, 3), 3) == (F(1, 3), F(1, 3))
    assert farey_neighbours(F(1, 1000), 10) == (F(0), F(1, 10))
    for x in (F(3, 17), F(99, 101), F(1, 2), F(1, 3), F(0), F(1), F(2, 9)):
        for n in (1, 3, 4, 9):
            lo, hi = farey_neighbours(x, n)
            f = farey(n)
            if x in f:
                assert lo == hi == x
            else:
                assert f.index(hi) == f.index(lo) + 1 and lo < x < hi


def test_farey_witness_examples():
    w = farey_witness(F(1, 100), 0, 10, Arc(F(1, 4), F(1, 2)))
    assert w.q == 1 and w.gap == F(1, 100)
    with pytest.raises(HypothesisFails):
        farey_witness(F(1, 3), F(0), 5, Arc(F(1, 4), F(1, 4)))


@pytest.mark.parametrize("x,n", [(F(1, 5), 5), (F(3, 10), 10), (F(7, 12), 12)])
def test_farey_witness_boundary_counterexample(x, n):
    # hypothesis holds: an arc strictly inside one of the equal gaps
    pts = sorted({(k * x) % 1 for k in range(1, n + 1)})
    J = Arc(pts[0] + F(1, 4 * n), F(1, 2 * n))
    assert not any(J.contains((k * x) % 1) for k in range(1, n + 1))
    # and no admissible q exists at all
    assert all(torus_norm(q * x) >= F(1, n) for q in range(1, n))
    with pytest.raises(NoWitness):
        farey_witness(x, 0, n, J)


def test_pq_profile():
    assert pq_profile(golden(30))[0] == 1
    assert pq_profile(Exact(F(5, 7))) == (2, [1, 2, 2])
    assert pq_profile(CF((1, 2, 1, 1, 4, 1, 1, 6, 1)), 8)[0] == 6


def test_roth_probe():
    assert roth_constant_probe(golden(40), 0, 100) >= F(1, 3)
    assert roth_constant_probe(Exact(F(1, 2)), F(1, 2), 10) == 0
    liouville = CF((1, 10, 100, 10**4, 10**8))
    qs = convergents(liouville.digits).q
    vals = [roth_constant_probe(liouville, F(1, 2), q) for q in qs[1:4]]
    assert vals == sorted(vals, reverse=True) and vals[-1] < vals[0] / 10


def test_integer_roots_and_powers():
    for n in range(0, 2000, 7):
        for k in (1, 2, 3, 5):
            r = iroot(n, k)
            assert r**k <= n < (r + 1) ** k
    assert rpow_ceil_int(9, F(1, 2)) == 3 and rpow_ceil_int(10, F(1, 2)) == 4
    assert rpow_floor(2, F(1, 2)) <= F(14142135623731, 10**13)
    assert below_neg_power(F(1, 9), 3, 2) is False
    assert below_neg_power(F(1, 10), 3, 2) is True


def test_stau_witness_examples():
    assert stau_witnesses(golden(10), F(5), 1)[0].q == 1
    assert 3 in [w.q for w in stau_witnesses(Exact(F(1, 3)), 2, 10)]
    for w in stau_witnesses(golden(30), F(3, 2), 200):
        assert w.q % 2 == 1 and float(w.gap) < w.threshold


@pytest.mark.parametrize("tau,K", [(F(2), 3), (F(3), 4), (F(5, 2), 3), (F(3), 2), (F(7, 4), 6)])
def test_stau_construct_verifies(tau, K):
    alpha = stau_construct(tau, K)
    qs = witness_denominators(alpha, K)
    assert all(q % 2 for q in qs)
    if max(qs) <= 5000:
        found = {w.q for w in stau_witnesses(alpha, tau, max(qs))}
        assert set(qs) <= found and len(found) >= K
    # the guarantee must survive any continuation, so check extensions too
    for a in (alpha, alpha.extend([1]), alpha.extend([1] * 6), alpha.extend([10**6])):
        for q in qs:
            assert below_neg_power(gap(a, q)[1], q, tau)


def test_stau_construct_shapes():
    assert stau_construct(3, 2).digits == (1, 2, 9)
    assert stau_construct(F(5, 2), 3).digits == (1, 2, 6, 83)
    alpha = stau_construct(3, 4)
    tab = convergents(alpha.digits)
    for k in range(2, len(alpha.digits) + 1):
        assert tab.rows[k][1] >= tab.q[k - 1] ** 2


def test_convergent_identities_small():
    tab = convergents([3, 1, 4, 1, 5, 9, 2, 6])
    for k in range(1, len(tab.rows)):
        assert tab.p[k] * tab.q[k - 1] - tab.p[k - 1] * tab.q[k] == (-1) ** (k + 1)
        assert gcd(tab.p[k], tab.q[k]) == 1
    assert torus_norm(tab.q[3] * tab.convergent(8)) < F(1, tab.q[4])
