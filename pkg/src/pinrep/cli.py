"""Command-line front end: ``pinrep <command> ...``."""
from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from pathlib import Path

from .discrepancy import decay_csv, discrepancy_decay
from .errors import ConfigError, PinrepError
from .experiments import EXPERIMENTS, ExperimentConfig, run
from .flows import IET, SymbolicWindow, iet_coding, parse_partition, poly_coding
from .numtheory import cf_expand, convergents, farey, stau_construct
from .repetitions import profile
from .torus import TorusPartition, as_rat, fmt_rat, parse_real


def _kv(tokens) -> dict:
    out = {}
    for tok in tokens:
        if "=" not in tok:
            raise ConfigError(f"expected key=value, got {tok!r}")
        k, v = tok.split("=", 1)
        out[k.strip()] = v.strip()
    return out


def _fractions(text: str) -> list[Fraction]:
    return [Fraction(t) for t in text.split(",") if t.strip()]


def _cmd_farey(args):
    print(json.dumps([fmt_rat(x) for x in farey(args.n)]))


def _cmd_cf(args):
    digits = cf_expand(as_rat(args.x))
    if args.csv:
        sys.stdout.write(convergents(digits).to_csv())
    else:
        print(json.dumps(digits))


def _cmd_stau(args):
    alpha = stau_construct(as_rat(args.tau), args.count)
    print(json.dumps(list(alpha.digits)))


def _cmd_discrepancy(args):
    rows = discrepancy_decay(parse_real(args.alpha), as_rat(args.beta), as_rat(args.gamma), args.depth)
    sys.stdout.write(decay_csv(rows))


def _build_window(model: str, params: dict, W: int) -> SymbolicWindow:
    margin = as_rat(params.get("margin", "0"))
    if model == "iet":
        if "rotation" in params:
            T = IET.rotation(as_rat(params["rotation"]))
        else:
            T = IET(tuple(_fractions(params["lengths"])), tuple(int(t) for t in params["perm"].split(",")))
        if "partition" in params:
            P = parse_partition(params["partition"])
            if P.period != T.total:
                P = TorusPartition.from_cuts([c * T.total for c in P.cuts], P.labels, period=T.total)
        else:
            P = TorusPartition.from_cuts(T.beta[:-1], list(range(T.m)), period=T.total)
        return iet_coding(T, as_rat(params.get("x0", "0")), P, W, margin)
    r = 2 if model == "quad" else int(params.get("r", "2"))
    alpha = parse_real(params.get("alpha", "0"))
    beta = parse_real(params.get("beta", "0"))
    gamma = parse_real(params.get("gamma", "0"))
    P = parse_partition(params.get("partition", "halves"))
    return poly_coding(alpha, beta, gamma, r, P, W, margin)


def _cmd_generate(args):
    w = _build_window(args.model, _kv(args.params), args.width)
    json.dump(w.to_json(), sys.stdout)
    sys.stdout.write("\n")


def _cmd_profile(args):
    src = sys.stdin if args.window == "-" else open(args.window)
    with src:
        w = SymbolicWindow.from_json(json.load(src))
    n_range = (args.n_min, args.n_max) if args.n_max else None
    sys.stdout.write(profile(w, n_range, args.kind).to_csv())


def _cmd_run(args):
    text = Path(args.config).read_text() if args.config else ""
    cfg = ExperimentConfig.parse(text, name=args.experiment)
    result = run(args.experiment, cfg)
    out = args.out or cfg.output
    if out:
        result.write(out)
    else:
        sys.stdout.write(result.summary_json())
    print(f"{args.experiment}: {result.verdict}", file=sys.stderr)
    return 1 if result.verdict == "FAIL" else 0


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="pinrep", description="Exact tools for pinned repetitions in codings of torus orbits.")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("farey", help="Farey sequence F_n as a JSON array")
    s.add_argument("n", type=int)
    s.set_defaults(func=_cmd_farey)

    s = sub.add_parser("cf", help="continued-fraction digits of p/q in (0,1)")
    s.add_argument("x")
    s.add_argument("--csv", action="store_true", help="emit the convergent table instead")
    s.set_defaults(func=_cmd_cf)

    s = sub.add_parser("stau-construct", help="CF digits with fast-approximating odd denominators")
    s.add_argument("--tau", required=True)
    s.add_argument("--count", type=int, required=True)
    s.set_defaults(func=_cmd_stau)

    s = sub.add_parser("discrepancy", help="D_{q_k} series for the quadratic sequence, as CSV")
    s.add_argument("--alpha", default="golden:60")
    s.add_argument("--beta", default="0")
    s.add_argument("--gamma", default="0")
    s.add_argument("--depth", type=int, default=12)
    s.set_defaults(func=_cmd_discrepancy)

    s = sub.add_parser("generate", help="coding window as JSON {symbols, certified}")
    s.add_argument("--model", choices=["iet", "quad", "poly"], required=True)
    s.add_argument("--params", nargs="*", default=[], metavar="KEY=VALUE")
    s.add_argument("--width", type=int, required=True, help="half-width W")
    s.set_defaults(func=_cmd_generate)

    s = sub.add_parser("profile", help="R_n or T_n over a window file, as CSV")
    s.add_argument("window", help="window JSON file, or - for stdin")
    s.add_argument("--kind", choices=["one_sided", "two_sided"], default="one_sided")
    s.add_argument("--n-min", type=int, default=1)
    s.add_argument("--n-max", type=int, default=0)
    s.set_defaults(func=_cmd_profile)

    s = sub.add_parser("run", help="run a seeded experiment")
    s.add_argument("experiment", choices=sorted(EXPERIMENTS))
    s.add_argument("--config", help="flat key=value file")
    s.add_argument("--out", help="output prefix; writes PREFIX.json and PREFIX.csv")
    s.set_defaults(func=_cmd_run)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args) or 0
    except (ConfigError, FileNotFoundError, KeyError) as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return 2
    except (PinrepError, ValueError, ZeroDivisionError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2 if args.command == "run" else 1


if __name__ == "__main__":
    sys.exit(main())
