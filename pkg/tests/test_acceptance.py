"""Acceptance suite: one test per criterion, each tagged so the terminal summary
prints a PASS/FAIL line for it. Runtime budgets are asserted alongside the
mathematical checks."""
import time
from fractions import Fraction as F

import numpy as np
import pytest

from oracles import brute_rt, pairs_discrepancy
from pinrep.discrepancy import (
    discrepancy_decay,
    erdos_turan_bound,
    exact_discrepancy,
    loglog_slope,
    quad_points,
    quad_weyl_rhs,
    to_mpf,
    weyl_sum,
)
from pinrep.errors import ZeroRadius
from pinrep.experiments import EXPERIMENTS, ExperimentConfig, run
from pinrep.flows import IET, SymbolicWindow, parse_partition, poly_coding, stability_radius, veech_check, veech_search
from pinrep.numtheory import cf_expand, convergents, farey, farey_witness
from pinrep.repetitions import r_n, t_n
from pinrep.torus import Arc, frac, golden, torus_norm


class Budget:
    def __init__(self, seconds):
        self.seconds = seconds

    def __enter__(self):
        self.t0 = time.perf_counter()
        return self

    def __exit__(self, *exc):
        self.elapsed = time.perf_counter() - self.t0
        if exc[0] is None:
            assert self.elapsed < self.seconds, f"took {self.elapsed:.1f}s, budget {self.seconds}s"


def test_farey_golden_values(criterion):
    criterion("Farey golden values and neighbour laws (n <= 200)")
    with Budget(5):
        assert farey(1) == [F(0), F(1)]
        assert farey(2) == [F(0), F(1, 2), F(1)]
        assert farey(3) == [F(0), F(1, 3), F(1, 2), F(2, 3), F(1)]
        assert farey(4) == [F(0), F(1, 4), F(1, 3), F(1, 2), F(2, 3), F(3, 4), F(1)]
        for n in range(1, 201):
            seq = farey(n)
            for u, v in zip(seq, seq[1:]):
                a, b, c, d = u.numerator, u.denominator, v.numerator, v.denominator
                assert b + d > n
                assert b * c - a * d == 1  # |a/b - c/d| = 1/(bd) with c/d > a/b


def test_continued_fractions(criterion):
    criterion("Continued fractions: round trip, identities, two-sided estimate (1000 rationals)")
    rng = np.random.default_rng(2024)
    with Budget(10):
        for _ in range(1000):
            q = int(rng.integers(2, 10**12))
            p = int(rng.integers(1, q))
            x = F(p, q)
            digits = cf_expand(x)
            tab = convergents(digits)
            K = len(digits)
            assert tab.convergent(K) == x
            assert cf_expand(tab.convergent(K)) == digits
            assert tab.p[:2] == [0, 1] and tab.q[0] == 1 and tab.q[1] == digits[0]
            for k in range(2, K + 1):
                a = digits[k - 1]
                assert tab.p[k] == a * tab.p[k - 1] + tab.p[k - 2]
                assert tab.q[k] == a * tab.q[k - 1] + tab.q[k - 2]
                assert tab.q[k] > tab.q[k - 1]
            for k in range(1, K + 1):
                assert tab.p[k] * tab.q[k - 1] - tab.p[k - 1] * tab.q[k] == (-1) ** (k + 1)
            for k in range(1, K):
                err = abs(x - tab.convergent(k))
                qk, qk1 = tab.q[k], tab.q[k + 1]
                assert F(1, qk * (qk + qk1)) < err
                if k <= K - 2:
                    assert err < F(1, qk * qk1)
                else:
                    # x = p_K/q_K itself, so the upper estimate is attained exactly
                    assert err == F(1, qk * qk1)


def _avoiding_case(rng):
    """(x, y, n, J) with J inside the largest gap of {kx + y : 1 <= k <= n}.

    x is drawn with a denominator that can never reduce to n itself (97, a
    large prime, or a power-of-two grain); x = r/n is a genuine counterexample
    to the lemma and is pinned separately in the unit suite.
    """
    den = int(rng.choice([97, 9973, 2**20, 2**40]))
    x = F(int(rng.integers(0, den)), den)
    y = F(int(rng.integers(0, 1000)), 1000)
    n = int(rng.integers(2, 51))
    pts = sorted({frac(k * x + y) for k in range(1, n + 1)})
    gaps = [((pts[i + 1] if i + 1 < len(pts) else pts[0] + 1) - pts[i], pts[i]) for i in range(len(pts))]
    g, start = max(gaps)
    t = F(int(rng.integers(1, 100)), 100)
    s = F(int(rng.integers(1, 101)), 100)
    left = start + t * g
    length = s * (g - t * g)
    return x, y, n, Arc(frac(left), length)


def test_farey_lemma_oracle(criterion):
    criterion("Farey lemma oracle (500 cases)")
    rng = np.random.default_rng(77)
    with Budget(30):
        for _ in range(500):
            x, y, n, J = _avoiding_case(rng)
            assert x.denominator != n
            assert not any(J.contains(frac(k * x + y)) for k in range(1, n + 1))
            w = farey_witness(x, y, n, J)
            assert 0 < w.q < n and w.q * J.length < 2
            assert torus_norm(w.q * x) < F(1, n)


def test_exact_discrepancy_brute_force(criterion):
    criterion("Exact discrepancy vs brute force (300 sets, N <= 200)")
    rng = np.random.default_rng(303)
    with Budget(60):
        for _ in range(300):
            N = int(rng.integers(1, 201))
            den = int(rng.choice([13, 256, 10**6, 2**40]))
            draw = rng.integers(0, den, N, dtype=np.int64)
            if rng.random() < 0.2:
                draw[: N // 2] = draw[0]  # heavy multiplicities
            pts = [F(int(v), den) for v in draw]
            assert exact_discrepancy(pts).value == pairs_discrepancy(pts)


def test_weyl_lemma(criterion):
    criterion("Weyl-sum lemma: |S|^2 <= N + sum min(2N, 1/(2<n alpha>)) (100 cases, N <= 2000)")
    rng = np.random.default_rng(42)
    with Budget(60):
        for _ in range(100):
            depth = int(rng.integers(30, 60))
            alpha = golden(depth)
            beta, gamma = (F(int(v), 2**40) for v in rng.integers(0, 2**40, 2, dtype=np.int64))
            N = int(rng.integers(1, 2001))
            pts, rad = quad_points(alpha, beta, gamma, N)
            s = weyl_sum(pts, 1, rad)
            # the true sum is at least s.lower, so this certifies the inequality at the true alpha
            assert s.lower ** 2 <= to_mpf(quad_weyl_rhs(alpha, N))


def test_erdos_turan_domination(criterion):
    criterion("Erdos-Turan domination with C = 6 (200 cases)")
    rng = np.random.default_rng(6)
    with Budget(60):
        for _ in range(200):
            N = int(rng.integers(1, 501))
            m = int(rng.integers(1, 33))
            den = int(rng.choice([7, 128, 10**5]))
            pts = [F(int(v), den) for v in rng.integers(0, den, N)]
            assert erdos_turan_bound(pts, m, 6) >= to_mpf(exact_discrepancy(pts).value)


def test_discrepancy_decay(criterion):
    criterion("Discrepancy decay: golden alpha, slope <= -1/4 up to q ~ 10^4")
    with Budget(300):
        rows = discrepancy_decay(golden(60), 0, 0, 20)
        assert rows[-1].q == 10946
        slope = loglog_slope(rows)
        assert slope is not None and slope <= -0.25, slope


def test_repetition_oracle(criterion):
    criterion("Repetition estimators vs brute-force scan (1000 windows)")
    rng = np.random.default_rng(1000)
    with Budget(60):
        for case in range(1000):
            W = int(rng.integers(1, 5000)) if case % 10 == 0 else int(rng.integers(1, 400))
            period = int(rng.integers(1, 9))
            base = rng.integers(0, 3, period)
            idx = np.arange(-W, W + 1)
            syms = base[idx % period].copy()
            syms[rng.random(2 * W + 1) < rng.choice([0.0, 0.002, 0.05, 0.5])] ^= 1
            cert = rng.random(2 * W + 1) > rng.choice([0.0, 0.001, 0.05])
            w = SymbolicWindow(W, syms.tolist(), cert.tolist())
            for n in {1, int(rng.integers(1, W + 1)), int(rng.integers(1, W + 1))}:
                m_r, c_r, m_t, c_t = brute_rt(w.symbols, w.certified, n)
                rs, ts = r_n(w, n), t_n(w, n)
                assert (rs.m, rs.censored) == (m_r, c_r)
                assert (ts.m, ts.censored) == (m_t, c_t)
                assert ts.value <= rs.value
                if n < W and not (w.ok(1) and w.ok(1 + n) and w[1] == w[1 + n]):
                    assert rs.value == 1 and ts.value == 1


def _run(name, text):
    return run(name, ExperimentConfig.parse(text, name=name))


def test_badly_approximable_no_repetitions(criterion):
    criterion("Badly approximable shadow: r_n <= 1.6 for n >= 100 (20 samples, W = 10^5)")
    with Budget(600):
        res = _run("badly_approx", "alpha = golden:60\npartition = thirds\nsamples = 20\nwindow = 100000\nn_min = 100\nthreshold = 8/5\n")
        assert len(res.records) == 20
        assert all(F(r["best_num"], r["best_den"]) <= F(8, 5) for r in res.records), res.summary
        assert res.verdict == "PASS"


def test_rational_alpha_repetitions(criterion):
    criterion("Rational alpha shadow: >= 15/20 samples with t_n >= 2, monotone in W")
    with Budget(600):
        res = _run("rational_alpha", "alpha = 1/2\nbeta = cf:1,2,3,4,5,6,7,8,9,10,11,12\nsamples = 20\nwindow = 100000\nmin_hits = 15\n")
        hits = sum(1 for r in res.records if F(r["best_full_num"], r["best_full_den"]) >= 2)
        assert hits >= 15, res.summary
        for r in res.records:
            assert F(r["best_full_num"], r["best_full_den"]) >= F(r["best_half_num"], r["best_half_den"])
        assert res.verdict == "PASS"


def test_stau_monomial_repetitions(criterion):
    criterion("S_tau shadow: stau_construct(5/2, 3), r = 2, t_q certifies m >= 2q")
    with Budget(600):
        res = _run("stau_poly", "r = 2\neps = 1/2\nK = 3\nm_target = 2\nwindow = 100000\n")
        q = res.summary["largest_fitting_witness"]
        rec = next(r for r in res.records if r["q"] == q)
        assert rec["m"] >= 2 * q, f"q={q}: certified m={rec['m']} < {2 * q}"
        assert res.verdict == "PASS"


def test_veech_conditions(criterion):
    criterion("Veech conditions: rotation 13/21, eps 1/4, N_max 21; degenerate cases")
    with Budget(60):
        T = IET.rotation(F(13, 21))
        rep = veech_search(T, F(1, 4), 21)
        assert rep is not None and rep.passed
        again = veech_check(T, rep.N, rep.J, rep.eps)
        assert again == rep and again.recheck(T.total)
        ident = IET((F(8, 21), F(13, 21)), (1, 2))
        assert veech_search(ident, F(1, 4), 21) is None
        full = veech_check(T, 2, (F(0), T.total), F(1, 4))
        assert not full.cond_i and not full.passed


def test_stability_soundness(criterion):
    criterion("Stability radius soundness (100 exact configurations)")
    rng = np.random.default_rng(100)
    parts = [parse_partition(p) for p in ("halves", "thirds", "cuts:0,1/5,1/2,4/5")]
    with Budget(300):
        done = 0
        while done < 100:
            a, b, c = (F(int(rng.integers(0, d)), int(d)) for d in rng.choice([97, 1024, 10007], 3))
            r = int(rng.choice([1, 2, 3]))
            W = int(rng.integers(1, 60))
            P = parts[done % 3]
            try:
                delta = stability_radius(a, b, c, r, P, W)
            except ZeroRadius:
                continue
            base = poly_coding(a, b, c, r, P, W)
            for s in (-1, 1):
                assert poly_coding(a + s * delta / 2, b, c, r, P, W) == base
            done += 1


def test_determinism(criterion, tmp_path):
    criterion("Determinism: byte-identical outputs for identical configs")
    for name in sorted(EXPERIMENTS):
        blobs = []
        for tag in ("a", "b"):
            res = run(name, ExperimentConfig.parse("seed = 12345\n", name=name))
            js, cs = res.write(tmp_path / f"{name}_{tag}")
            blobs.append((js.read_bytes(), cs.read_bytes()))
        assert blobs[0] == blobs[1], name
