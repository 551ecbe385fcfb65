"""Seeded desk-scale experiments, one per repetition or discrepancy claim.

A run is a pure function of its config: sample ``i`` draws from the stream
``SeedSequence([seed, i])`` and records are aggregated in sample order, so
two runs with the same config write identical bytes.
"""
from __future__ import annotations

import csv
import io
import json
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path

import numpy as np

from . import __version__
from .discrepancy import discrepancy_decay, loglog_slope
from .errors import ConfigError, ZeroRadius
from .flows import (
    IET,
    TorusPartition,
    describe_partition,
    iet_coding,
    parse_partition,
    poly_coding,
    stability_radius,
    veech_search,
)
from .numtheory import pq_profile, stau_construct, stau_witnesses, witness_denominators
from .repetitions import profile, t_n
from .torus import CF, Exact, as_rat, fmt_rat, parse_real

VERDICTS = ("PASS", "FAIL", "SKIPPED")


@dataclass
class ExperimentConfig:
    name: str
    seed: int = 0
    window: int = 100_000
    n_min: int = 1
    n_max: int = 0  # 0 -> window // 4
    samples: int = 20
    grain_bits: int = 40
    params: dict = field(default_factory=dict)
    output: str = ""

    _INT_KEYS = ("seed", "window", "n_min", "n_max", "samples", "grain_bits")

    @classmethod
    def parse(cls, text: str, name: str | None = None) -> "ExperimentConfig":
        """Flat ``key = value`` lines; ``#`` starts a comment."""
        raw = {}
        for lineno, line in enumerate(text.splitlines(), start=1):
            line = line.split("#", 1)[0].strip()
            if not line:
                continue
            if "=" not in line:
                raise ConfigError(f"line {lineno}: expected key = value")
            key, value = (s.strip() for s in line.split("=", 1))
            if key in raw:
                raise ConfigError(f"line {lineno}: duplicate key {key!r}")
            raw[key] = value
        name = name or raw.pop("name", None)
        raw.pop("name", None)
        if not name:
            raise ConfigError("experiment name missing")
        kwargs = {"name": name}
        for key in cls._INT_KEYS:
            if key in raw:
                try:
                    kwargs[key] = int(raw.pop(key))
                except ValueError as exc:
                    raise ConfigError(f"{key} must be an integer") from exc
        kwargs["output"] = raw.pop("output", "")
        kwargs["params"] = raw
        cfg = cls(**kwargs)
        if cfg.window < 1 or cfg.samples < 0 or cfg.grain_bits < 1:
            raise ConfigError("window, samples and grain_bits must be positive")
        return cfg

    @property
    def n_hi(self) -> int:
        return self.n_max or max(1, self.window // 4)

    def get(self, key, default):
        return self.params.get(key, default)

    def echo(self) -> dict:
        out = {k: getattr(self, k) for k in ("name", "seed", "window", "n_min", "n_max", "samples", "grain_bits")}
        out["params"] = dict(sorted(self.params.items()))
        return out


@dataclass
class ExperimentResult:
    name: str
    records: list
    summary: dict
    verdict: str
    config: dict

    def summary_json(self) -> str:
        doc = {
            "experiment": self.name,
            "verdict": self.verdict,
            "summary": self.summary,
            "config": self.config,
            "version": __version__,
        }
        return json.dumps(doc, indent=2, sort_keys=True) + "\n"

    def records_csv(self) -> str:
        if not self.records:
            return ""
        buf = io.StringIO()
        writer = csv.DictWriter(buf, fieldnames=list(self.records[0]), lineterminator="\n")
        writer.writeheader()
        writer.writerows(self.records)
        return buf.getvalue()

    def write(self, prefix: str | os.PathLike) -> tuple[Path, Path]:
        prefix = Path(prefix)
        prefix.parent.mkdir(parents=True, exist_ok=True)
        js, cs = prefix.parent / f"{prefix.name}.json", prefix.parent / f"{prefix.name}.csv"
        js.write_text(self.summary_json())
        cs.write_text(self.records_csv())
        return js, cs


# --- helpers --------------------------------------------------------------------------


def sample_rng(seed: int, index: int) -> np.random.Generator:
    return np.random.default_rng(np.random.SeedSequence([seed, index]))


def grain_point(rng: np.random.Generator, bits: int) -> Fraction:
    """Uniform rational in [0, 1) with denominator 2**bits."""
    return Fraction(int(rng.integers(0, 2**bits, dtype=np.uint64)), 2**bits)


def _workers(n_tasks: int) -> int:
    cap = os.environ.get("PINREP_THREADS")
    cpus = os.cpu_count() or 1
    limit = int(cap) if cap else cpus
    return max(1, min(limit, cpus, n_tasks))


def pmap(fn, items: list) -> list:
    """Order-preserving map, spread over processes up to PINREP_THREADS."""
    items = list(items)
    workers = _workers(len(items))
    if workers == 1:
        return [fn(x) for x in items]
    with ProcessPoolExecutor(max_workers=workers) as ex:
        return list(ex.map(fn, items))


def _param(cfg, key, default):
    try:
        return parse_real(cfg.get(key, default))
    except (ValueError, ZeroDivisionError) as exc:
        raise ConfigError(f"{key}: {exc}") from exc


def _partition(cfg, default) -> TorusPartition:
    try:
        return parse_partition(cfg.get("partition", default))
    except ValueError as exc:
        raise ConfigError(str(exc)) from exc


def _rat(cfg, key, default) -> Fraction:
    try:
        return as_rat(cfg.get(key, default))
    except (ValueError, ZeroDivisionError) as exc:
        raise ConfigError(f"{key}: {exc}") from exc


def _fr(x: Fraction) -> str:
    return fmt_rat(x)


# --- no repetitions for badly approximable / Roth-type alpha --------------------------


def _one_sided_sample(job):
    cfg, alpha, partition, idx = job
    rng = sample_rng(cfg.seed, idx)
    beta, gamma = grain_point(rng, cfg.grain_bits), grain_point(rng, cfg.grain_bits)
    w = poly_coding(alpha, beta, gamma, 2, partition, cfg.window)
    prof = profile(w, (cfg.n_min, cfg.n_hi), "one_sided")
    unc = prof.uncensored(cfg.n_min)
    best = max(unc, key=lambda s: (s.value, -s.n)) if unc else None
    value = best.value if best else Fraction(1)
    return {
        "sample": idx,
        "beta": _fr(beta),
        "gamma": _fr(gamma),
        "best_num": value.numerator,
        "best_den": value.denominator,
        "best_float": float(value),
        "best_n": best.n if best else 0,
        "n_censored": sum(s.censored for s in prof.stats),
        "uncertified": w.certified.count(False),
    }


def _no_repetition_run(cfg: ExperimentConfig, alpha_default, threshold_default) -> ExperimentResult:
    alpha = _param(cfg, "alpha", alpha_default)
    if not isinstance(alpha, CF):
        raise ConfigError("alpha must be a continued-fraction prefix (irrational proxy)")
    partition = _partition(cfg, "thirds")
    if partition.max_length() >= Fraction(1, 2):
        raise ConfigError("every partition arc must be shorter than 1/2")
    threshold = _rat(cfg, "threshold", threshold_default)
    if cfg.n_hi > cfg.window or cfg.n_min > cfg.n_hi:
        raise ConfigError("need n_min <= n_max <= window")
    records = pmap(_one_sided_sample, [(cfg, alpha, partition, i) for i in range(cfg.samples)])
    verdict = no_repetition_verdict(records, threshold)
    bests = [r["best_float"] for r in records]
    summary = {
        "alpha": str(alpha),
        "max_partial_quotient": pq_profile(alpha)[0],
        "partition": describe_partition(partition),
        "threshold": _fr(threshold),
        "max_best": max(bests) if bests else None,
        "min_best": min(bests) if bests else None,
        "quantiles_best": _quantiles(bests),
        "n_range": [cfg.n_min, cfg.n_hi],
    }
    return ExperimentResult(cfg.name, records, summary, verdict, cfg.echo())


def no_repetition_verdict(records, threshold) -> str:
    threshold = as_rat(threshold)
    ok = all(Fraction(r["best_num"], r["best_den"]) <= threshold for r in records)
    return "PASS" if ok else "FAIL"


def run_badly_approx(cfg: ExperimentConfig) -> ExperimentResult:
    cfg.n_min = cfg.n_min if cfg.n_min > 1 else 100
    return _no_repetition_run(cfg, "golden:60", "8/5")


def run_roth(cfg: ExperimentConfig) -> ExperimentResult:
    cfg.n_min = cfg.n_min if cfg.n_min > 1 else 300
    return _no_repetition_run(cfg, "cf:" + ",".join(str(k) for k in range(1, 16)), "9/5")


def _quantiles(xs):
    if not xs:
        return None
    return [float(v) for v in np.quantile(np.array(xs, dtype=float), [0.0, 0.25, 0.5, 0.75, 1.0])]


# --- rational alpha, generic beta -----------------------------------------------------


def _two_sided_sample(job):
    cfg, alpha, beta, partition, idx = job
    rng = sample_rng(cfg.seed, idx)
    gamma = grain_point(rng, cfg.grain_bits)
    W = cfg.window
    w = poly_coding(alpha, beta, gamma, 2, partition, W)
    out = {"sample": idx, "gamma": _fr(gamma)}
    for tag, width in (("half", W // 2), ("full", W)):
        sub = w.crop(width)
        prof = profile(sub, (cfg.n_min, max(cfg.n_min, width // 4)), "two_sided")
        unc = prof.uncensored(cfg.n_min)
        best = max(unc, key=lambda s: (s.value, -s.n)) if unc else None
        value = best.value if best else Fraction(1)
        out[f"best_{tag}_num"] = value.numerator
        out[f"best_{tag}_den"] = value.denominator
        out[f"best_{tag}_float"] = float(value)
        out[f"best_{tag}_n"] = best.n if best else 0
        out[f"count_ge2_{tag}"] = sum(1 for s in unc if s.value >= 2)
    return out


def rational_alpha_verdict(records, min_hits: int) -> str:
    hits = sum(1 for r in records if Fraction(r["best_full_num"], r["best_full_den"]) >= 2)
    monotone = all(
        Fraction(r["best_full_num"], r["best_full_den"]) >= Fraction(r["best_half_num"], r["best_half_den"])
        for r in records
    )
    return "PASS" if hits >= min_hits and monotone else "FAIL"


def run_rational_alpha(cfg: ExperimentConfig) -> ExperimentResult:
    alpha = _param(cfg, "alpha", "1/2")
    if not isinstance(alpha, Exact):
        raise ConfigError("alpha must be an exact rational")
    beta = _param(cfg, "beta", "cf:" + ",".join(str(k) for k in range(1, 13)))
    if not isinstance(beta, CF):
        raise ConfigError("beta must be a continued-fraction prefix (proxy for unbounded partial quotients)")
    partition = _partition(cfg, "halves")
    min_hits = int(cfg.get("min_hits", str(-(-3 * cfg.samples // 4))))
    if cfg.window < 8 or cfg.n_min < 1:
        raise ConfigError("window too small")
    records = pmap(_two_sided_sample, [(cfg, alpha, beta, partition, i) for i in range(cfg.samples)])
    verdict = rational_alpha_verdict(records, min_hits)
    bests = [r["best_full_float"] for r in records]
    summary = {
        "alpha": str(alpha),
        "beta": str(beta),
        "partition": describe_partition(partition),
        "hits_t_ge_2": sum(1 for b in bests if b >= 2),
        "min_hits": min_hits,
        "median_best": float(np.median(bests)) if bests else None,
        "quantiles_best": _quantiles(bests),
        "note": "min_hits is a desk-scale policy threshold; sampling cannot separate 'almost every' from 'most'",
    }
    return ExperimentResult(cfg.name, records, summary, verdict, cfg.echo())


# --- S_tau alpha and the monomial coding ----------------------------------------------


def stau_poly_verdict(records, m_target: int) -> str:
    if m_target <= 0:
        return "PASS"
    fitting = [r for r in records if r["fits"]]
    if not fitting:
        return "FAIL"
    last = max(fitting, key=lambda r: r["q"])
    return "PASS" if last["m"] >= m_target * last["q"] else "FAIL"


def run_stau_poly(cfg: ExperimentConfig) -> ExperimentResult:
    r = int(cfg.get("r", "2"))
    eps = _rat(cfg, "eps", "1/2")
    K = int(cfg.get("K", "3"))
    m_target = int(cfg.get("m_target", "2"))
    if r < 1 or eps <= 0 or K < 1:
        raise ConfigError("need r >= 1, eps > 0, K >= 1")
    tau = r + eps
    alpha = stau_construct(tau, K)
    qs = witness_denominators(alpha, K)
    certified = {w.q for w in stau_witnesses(alpha, tau, max(qs))}
    if not set(qs) <= certified:
        raise AssertionError("constructed alpha failed its own witness check")
    W = cfg.window
    partition = TorusPartition.from_cuts([0, Fraction(1, 2)], [1, 0])
    gamma = Fraction(1, 4)
    w = poly_coding(alpha, 0, gamma, r, partition, W)
    records = []
    for q in qs:
        fits = q <= W and q * (max(m_target, 0) + 1) <= W
        stat = t_n(w, q) if q <= W else None
        records.append(
            {
                "q": q,
                "fits": fits,
                "m": stat.m if stat else -1,
                "censored": stat.censored if stat else False,
                "value_float": float(stat.value) if stat else float("nan"),
            }
        )
    verdict = stau_poly_verdict(records, m_target)
    fitting = [rec["q"] for rec in records if rec["fits"]]
    summary = {
        "alpha": str(alpha),
        "tau": _fr(tau),
        "witnesses": qs,
        "largest_fitting_witness": max(fitting) if fitting else None,
        "window_too_small_for": [rec["q"] for rec in records if not rec["fits"]],
        "m_target": m_target,
        "uncertified": w.certified.count(False),
    }
    return ExperimentResult(cfg.name, records, summary, verdict, cfg.echo())


# --- discrepancy decay ----------------------------------------------------------------


def decay_verdict(records, slope_max) -> str:
    slopes = {}
    for r in records:
        slopes.setdefault(r["series"], r["slope"])
    vals = list(slopes.values())
    if not vals or any(v == "" for v in vals):
        return "SKIPPED"
    return "PASS" if all(float(v) <= float(as_rat(slope_max)) for v in vals) else "FAIL"


def _decay_series(job):
    alpha, beta, gamma, depth, series = job
    rows = discrepancy_decay(alpha, beta, gamma, depth)
    slope = loglog_slope(rows)
    return [
        {
            "series": series,
            "beta": _fr(beta),
            "gamma": _fr(gamma),
            "k": row.k,
            "q_k": row.q,
            "D_num": row.D.numerator,
            "D_den": row.D.denominator,
            "D_float": float(row.D),
            "D_error_float": float(row.error),
            "slope": "" if slope is None else slope,
        }
        for row in rows
    ]


def run_discrepancy_decay(cfg: ExperimentConfig) -> ExperimentResult:
    alpha = _param(cfg, "alpha", "golden:60")
    if not isinstance(alpha, CF):
        raise ConfigError("alpha must be a continued-fraction prefix")
    depth = int(cfg.get("depth", "20"))
    slope_max = _rat(cfg, "slope_max", "-1/4")
    jobs = [(alpha, _rat(cfg, "beta", "0"), _rat(cfg, "gamma", "0"), depth, 0)]
    extra = int(cfg.get("random_pairs", "0"))
    for i in range(extra):
        rng = sample_rng(cfg.seed, i)
        jobs.append((alpha, grain_point(rng, cfg.grain_bits), grain_point(rng, cfg.grain_bits), depth, i + 1))
    records = [row for series in pmap(_decay_series, jobs) for row in series]
    verdict = decay_verdict(records, slope_max)
    slopes = {}
    for rec in records:
        slopes.setdefault(rec["series"], rec["slope"])
    summary = {
        "alpha": str(alpha),
        "depth": depth,
        "slope_max": _fr(slope_max),
        "slopes": [slopes[k] for k in sorted(slopes)],
        "q_max": max(rec["q_k"] for rec in records),
    }
    return ExperimentResult(cfg.name, records, summary, verdict, cfg.echo())


# --- Veech-type property probe --------------------------------------------------------


def _parse_iet(cfg) -> IET:
    spec = cfg.get("iet", "rotation:13/21")
    try:
        if spec.startswith("rotation:"):
            return IET.rotation(Fraction(spec[9:]))
        lengths = [Fraction(t) for t in cfg.get("lengths", "").split(",") if t.strip()]
        perm = [int(t) for t in cfg.get("perm", "").split(",") if t.strip()]
        return IET(tuple(lengths), tuple(perm))
    except (ValueError, ZeroDivisionError) as exc:
        raise ConfigError(f"bad IET: {exc}") from exc


def veech_verdict(records) -> str:
    return "PASS" if all(r["found"] for r in records) else "FAIL"


def run_veech_probe(cfg: ExperimentConfig) -> ExperimentResult:
    T = _parse_iet(cfg)
    eps_list = [Fraction(t) for t in cfg.get("eps_list", "1/2,1/4,1/8").split(",") if t.strip()]
    N_max = int(cfg.get("N_max", "50"))
    rng = sample_rng(cfg.seed, 0)
    x0 = grain_point(rng, cfg.grain_bits) * T.total
    partition = TorusPartition.from_cuts(T.beta[:-1], list(range(T.m)), period=T.total)
    W = cfg.window
    window = iet_coding(T, x0, partition, W) if eps_list else None
    records = []
    for eps in eps_list:
        rep = veech_search(T, eps, N_max)
        rec = {"eps": _fr(eps), "found": rep is not None}
        if rep is not None:
            rec.update(
                N=rep.N,
                J_left=_fr(rep.J[0]),
                J_right=_fr(rep.J[1]),
                union_measure=_fr(rep.union_measure),
                return_measure=_fr(rep.return_measure),
            )
            if rep.N <= W:
                stat = t_n(window, rep.N)
                rec.update(t_N_m=stat.m, t_N_value=float(stat.value), t_N_censored=stat.censored)
        records.append(rec)
    keys = []
    for rec in records:
        keys += [k for k in rec if k not in keys]
    records = [{k: rec.get(k, "") for k in keys} for rec in records]
    verdict = veech_verdict(records)
    summary = {
        "lengths": [_fr(x) for x in T.lengths],
        "perm": list(T.perm),
        "x0": _fr(x0),
        "N_max": N_max,
        "found": sum(1 for r in records if r["found"]),
        "searched": len(records),
    }
    return ExperimentResult(cfg.name, records, summary, verdict, cfg.echo())


# --- stability radii ------------------------------------------------------------------


def stability_verdict(records) -> str:
    return "PASS" if all(r["sound"] for r in records) else "FAIL"


def run_stability_table(cfg: ExperimentConfig) -> ExperimentResult:
    alphas = [Fraction(t) for t in cfg.get("alphas", "1/3,2/5,3/8,5/13,8/21").split(",") if t.strip()]
    widths = [int(t) for t in cfg.get("widths", "10,20,40,80").split(",") if t.strip()]
    beta = _rat(cfg, "beta", "0")
    gamma = _rat(cfg, "gamma", "1/5")
    r = int(cfg.get("r", "2"))
    partition = _partition(cfg, "halves")
    records = []
    for a in alphas:
        for W in widths:
            try:
                delta = stability_radius(a, beta, gamma, r, partition, W)
            except ZeroRadius:
                records.append({"alpha": _fr(a), "W": W, "delta": "0", "delta_float": 0.0, "sound": True})
                continue
            base = poly_coding(a, beta, gamma, r, partition, W)
            sound = all(poly_coding(a + s * delta / 2, beta, gamma, r, partition, W) == base for s in (-1, 1))
            records.append({"alpha": _fr(a), "W": W, "delta": _fr(delta), "delta_float": float(delta), "sound": sound})
    verdict = stability_verdict(records)
    summary = {
        "beta": _fr(beta),
        "gamma": _fr(gamma),
        "r": r,
        "partition": describe_partition(partition),
        "zero_radius": sum(1 for rec in records if rec["delta"] == "0"),
    }
    return ExperimentResult(cfg.name, records, summary, verdict, cfg.echo())


EXPERIMENTS = {
    "stability_table": run_stability_table,
    "badly_approx": run_badly_approx,
    "roth": run_roth,
    "rational_alpha": run_rational_alpha,
    "stau_poly": run_stau_poly,
    "discrepancy_decay": run_discrepancy_decay,
    "veech_probe": run_veech_probe,
}


def recompute_verdict(name: str, records: list, config: dict) -> str:
    """The verdict of a finished run, from its emitted records and config echo alone."""
    params = config.get("params", {})
    if name == "badly_approx":
        return no_repetition_verdict(records, params.get("threshold", "8/5"))
    if name == "roth":
        return no_repetition_verdict(records, params.get("threshold", "9/5"))
    if name == "rational_alpha":
        samples = config.get("samples", len(records))
        return rational_alpha_verdict(records, int(params.get("min_hits", -(-3 * samples // 4))))
    if name == "stau_poly":
        return stau_poly_verdict(records, int(params.get("m_target", "2")))
    if name == "discrepancy_decay":
        return decay_verdict(records, params.get("slope_max", "-1/4"))
    if name == "veech_probe":
        return veech_verdict(records)
    if name == "stability_table":
        return stability_verdict(records)
    raise ConfigError(f"unknown experiment {name!r}")


def run(name: str, cfg: ExperimentConfig | None = None) -> ExperimentResult:
    if name not in EXPERIMENTS:
        raise ConfigError(f"unknown experiment {name!r}; choose from {sorted(EXPERIMENTS)}")
    cfg = cfg or ExperimentConfig(name)
    cfg.name = name
    return EXPERIMENTS[name](cfg)
