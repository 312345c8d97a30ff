"""Command-line interface.

Subcommands: ``exact`` (collision-pmf | occupied-pmf | balls-needed),
``simulate`` (throws | embed | arrivals | size-bias), ``asym`` (gamma | beta |
g | cdf | moments), ``bounds`` (crucial | azuma | ghosh | centered),
``verify`` and ``table``.  Tabular output is RFC-4180 CSV, structured output
is JSON; stochastic commands require an explicit --seed and embed it in every
output row so any run is reproducible from its own output.

Exit codes: 0 success, 1 verification-scenario failure, 2 usage/config error.
"""

from __future__ import annotations

import argparse
import csv
import json
import sys

from . import asymptotics as asym
from . import bounds as bnd
from .exact import balls_needed_pmf, collision_pmf, occupied_pmf, pmf_moment, pmf_quantile
from .simulate import (
    sample_arrivals,
    Seed,
    simulate_throws,
    size_biased_collision_pair,
)
from .embedding import embed_path
from .verify import default_config, run_verification_suite, VerifyConfig


def _fmt(x: float, digits: int) -> str:
    return f"{x:.{digits}g}"


def _open_out(path):
    return open(path, "w", newline="") if path else sys.stdout


def _emit(args, text: str) -> None:
    if getattr(args, "out", None):
        with open(args.out, "w") as fh:
            fh.write(text if text.endswith("\n") else text + "\n")
    else:
        print(text)


def _cmd_exact(args) -> int:
    if args.which == "collision-pmf":
        pmf = collision_pmf(args.n, args.b)
    elif args.which == "occupied-pmf":
        pmf = occupied_pmf(args.n, args.b)
    else:
        pmf = balls_needed_pmf(args.n, args.c)
    if args.quantile is not None:
        _emit(args, str(pmf_quantile(pmf, args.quantile)))
    elif args.mean:
        _emit(args, _fmt(pmf_moment(pmf, 1), args.digits))
    elif args.variance:
        _emit(args, _fmt(pmf.variance(), args.digits))
    elif args.moment is not None:
        _emit(args, _fmt(pmf_moment(pmf, args.moment, center=args.center), args.digits))
    else:
        _emit(args, pmf.to_json())
    return 0


def _cmd_simulate_throws(args) -> int:
    with _open_out(args.out) as fh:
        w = csv.writer(fh)
        w.writerow(["seed", "stream", "n", "stop", "target", "run", "balls", "collisions"])
        stop = "collisions" if args.collisions is not None else "balls"
        target = args.collisions if args.collisions is not None else args.balls
        for run in range(args.runs):
            sd = Seed(args.seed, args.stream + run)
            if stop == "collisions":
                tr = simulate_throws(sd, args.n, collisions=args.collisions)
            else:
                tr = simulate_throws(sd, args.n, balls=args.balls)
            w.writerow([args.seed, args.stream + run, args.n, stop, target,
                        run, tr.b_thrown, tr.collisions])
    return 0


def _cmd_simulate_embed(args) -> int:
    fh = _open_out(args.out)
    try:
        meta = {"seed": args.seed, "stream": args.stream, "n": args.n,
                "c_max": args.c_max, "runs": args.runs}
        fh.write(json.dumps(meta) + "\n")
        for run in range(args.runs):
            sd = Seed(args.seed, args.stream + run)
            arrivals = sample_arrivals(sd, args.c_max)
            path = embed_path(arrivals, args.n, args.c_max)
            for rec in path.records():
                rec["run"] = run
                fh.write(json.dumps(rec) + "\n")
    finally:
        if fh is not sys.stdout:
            fh.close()
    return 0


def _cmd_simulate_arrivals(args) -> int:
    seq = sample_arrivals(Seed(args.seed, args.stream), args.count)
    with _open_out(args.out) as fh:
        w = csv.writer(fh)
        w.writerow(["seed", "stream", "index", "time"])
        for k, t in enumerate(seq.times, start=1):
            w.writerow([args.seed, args.stream, k, repr(float(t))])
    return 0


def _cmd_simulate_size_bias(args) -> int:
    c0, c1 = size_biased_collision_pair(Seed(args.seed, args.stream), args.n, args.b, args.pairs)
    with _open_out(args.out) as fh:
        w = csv.writer(fh)
        w.writerow(["seed", "stream", "n", "b", "pair", "C", "C_sb"])
        for k in range(args.pairs):
            w.writerow([args.seed, args.stream, args.n, args.b, k, int(c0[k]), int(c1[k])])
    return 0


def _cmd_asym(args) -> int:
    d = args.digits
    if args.which == "gamma":
        val = asym.gamma_c_series(args.c) if args.series else asym.gamma_c(args.c)
        _emit(args, _fmt(val, d))
    elif args.which == "beta":
        _emit(args, _fmt(asym.beta_center(args.c, args.n), d))
    elif args.which == "g":
        _emit(args, _fmt(asym.g_eval(args.x), d))
    elif args.which == "cdf":
        kind = {"rayleigh": "rayleigh", "chi2c": "chi_2c", "normal": "standard_normal"}[args.law]
        law = asym.LimitLaw(kind, args.c if args.law == "chi2c" else None)
        _emit(args, _fmt(asym.limit_cdf(law, args.x), d))
    else:
        regime = asym.RegimeSpec(args.regime, args.alpha0)
        mean, var = asym.moments_approx(args.c, args.n, regime)
        _emit(args, json.dumps({"mean": mean, "variance": var}))
    return 0


def _cmd_bounds(args) -> int:
    d = args.digits
    if args.which == "crucial":
        val = bnd.crucial_tail_bound(args.c, args.n, args.t, args.K, args.variant)
    elif args.which == "azuma":
        val = bnd.azuma_bound(args.b, args.t)
    elif args.which == "ghosh":
        val = bnd.ghosh_bound(args.n, args.b, args.t, args.side)
    else:
        val = bnd.centered_tail_bound(args.y)
        print(f"note: {bnd.CENTERED_CAVEAT}", file=sys.stderr)
    _emit(args, _fmt(val, d))
    return 0


def _cmd_verify(args) -> int:
    if args.config:
        try:
            with open(args.config) as fh:
                config = VerifyConfig.from_json(fh.read())
        except (OSError, ValueError, KeyError) as exc:
            print(f"config error: {exc}", file=sys.stderr)
            return 2
    else:
        config = default_config()
    report = run_verification_suite(config)
    print(report.table())
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(report.to_json() + "\n")
    return 0 if report.all_passed else 1


def _cmd_table(args) -> int:
    with _open_out(args.out) as fh:
        w = csv.writer(fh)
        if args.which == "gamma":
            w.writerow(["c", "gamma"])
            for c in range(1, args.c_max + 1):
                w.writerow([c, repr(asym.gamma_c(c))])
        else:
            w.writerow(["c", "variance_coefficient"])
            for c in range(1, args.c_max + 1):
                g = asym.gamma_c(c)
                w.writerow([c, repr(2 * c * (1 - g * g))])
    return 0


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="ballsbins",
                                description="balls-into-bins collision process toolkit")
    p.add_argument("--digits", type=int, default=6, help="significant digits for scalar output")
    sub = p.add_subparsers(dest="command", required=True)

    # exact ----------------------------------------------------------------
    p_exact = sub.add_parser("exact", help="exact finite-n laws")
    se = p_exact.add_subparsers(dest="which", required=True)
    for name in ("collision-pmf", "occupied-pmf", "balls-needed"):
        q = se.add_parser(name)
        q.add_argument("--n", type=int, required=True)
        if name == "balls-needed":
            q.add_argument("--c", type=int, required=True)
        else:
            q.add_argument("--b", type=int, required=True)
        q.add_argument("--quantile", type=float)
        q.add_argument("--mean", action="store_true")
        q.add_argument("--variance", action="store_true")
        q.add_argument("--moment", type=int)
        q.add_argument("--center", type=float, default=0.0)
        q.add_argument("--out")
        q.set_defaults(func=_cmd_exact)

    # simulate ---------------------------------------------------------------
    p_sim = sub.add_parser("simulate", help="seeded Monte Carlo")
    ss = p_sim.add_subparsers(dest="which", required=True)

    q = ss.add_parser("throws")
    q.add_argument("--seed", type=int, required=True)
    q.add_argument("--stream", type=int, default=0)
    q.add_argument("--n", type=int, required=True)
    grp = q.add_mutually_exclusive_group(required=True)
    grp.add_argument("--balls", type=int)
    grp.add_argument("--collisions", type=int)
    q.add_argument("--runs", type=int, default=1)
    q.add_argument("--out")
    q.set_defaults(func=_cmd_simulate_throws)

    q = ss.add_parser("embed")
    q.add_argument("--seed", type=int, required=True)
    q.add_argument("--stream", type=int, default=0)
    q.add_argument("--n", type=int, required=True)
    q.add_argument("--c-max", dest="c_max", type=int, required=True)
    q.add_argument("--runs", type=int, default=1)
    q.add_argument("--out")
    q.set_defaults(func=_cmd_simulate_embed)

    q = ss.add_parser("arrivals")
    q.add_argument("--seed", type=int, required=True)
    q.add_argument("--stream", type=int, default=0)
    q.add_argument("--count", type=int, required=True)
    q.add_argument("--out")
    q.set_defaults(func=_cmd_simulate_arrivals)

    q = ss.add_parser("size-bias")
    q.add_argument("--seed", type=int, required=True)
    q.add_argument("--stream", type=int, default=0)
    q.add_argument("--n", type=int, required=True)
    q.add_argument("--b", type=int, required=True)
    q.add_argument("--pairs", type=int, default=1)
    q.add_argument("--out")
    q.set_defaults(func=_cmd_simulate_size_bias)

    # asym -------------------------------------------------------------------
    p_asym = sub.add_parser("asym", help="asymptotic constants and limit laws")
    sa = p_asym.add_subparsers(dest="which", required=True)
    q = sa.add_parser("gamma")
    q.add_argument("--c", type=int, required=True)
    q.add_argument("--series", action="store_true")
    q.add_argument("--out")
    q.set_defaults(func=_cmd_asym)
    q = sa.add_parser("beta")
    q.add_argument("--c", type=float, required=True)
    q.add_argument("--n", type=float, required=True)
    q.add_argument("--out")
    q.set_defaults(func=_cmd_asym)
    q = sa.add_parser("g")
    q.add_argument("--x", type=float, required=True)
    q.add_argument("--out")
    q.set_defaults(func=_cmd_asym)
    q = sa.add_parser("cdf")
    q.add_argument("--law", choices=["rayleigh", "chi2c", "normal"], required=True)
    q.add_argument("--c", type=int)
    q.add_argument("--x", type=float, required=True)
    q.add_argument("--out")
    q.set_defaults(func=_cmd_asym)
    q = sa.add_parser("moments")
    q.add_argument("--c", type=int, required=True)
    q.add_argument("--n", type=int, required=True)
    q.add_argument("--regime", choices=["fixed_c", "growing_sublinear", "central"],
                   required=True)
    q.add_argument("--alpha0", type=float, default=0.0)
    q.add_argument("--out")
    q.set_defaults(func=_cmd_asym)

    # bounds -----------------------------------------------------------------
    p_b = sub.add_parser("bounds", help="tail and concentration bounds")
    sb = p_b.add_subparsers(dest="which", required=True)
    q = sb.add_parser("crucial")
    q.add_argument("--c", type=int, required=True)
    q.add_argument("--n", type=int, required=True)
    q.add_argument("--t", type=float, required=True)
    q.add_argument("--K", type=float, required=True)
    q.add_argument("--variant", choices=["statement", "proof"], default="statement")
    q.add_argument("--out")
    q.set_defaults(func=_cmd_bounds)
    q = sb.add_parser("azuma")
    q.add_argument("--b", type=int, required=True)
    q.add_argument("--t", type=float, required=True)
    q.add_argument("--out")
    q.set_defaults(func=_cmd_bounds)
    q = sb.add_parser("ghosh")
    q.add_argument("--n", type=int, required=True)
    q.add_argument("--b", type=int, required=True)
    q.add_argument("--t", type=float, required=True)
    q.add_argument("--side", choices=["lower", "upper"], required=True)
    q.add_argument("--out")
    q.set_defaults(func=_cmd_bounds)
    q = sb.add_parser("centered")
    q.add_argument("--y", type=float, required=True)
    q.add_argument("--out")
    q.set_defaults(func=_cmd_bounds)

    # verify / table ----------------------------------------------------------
    q = sub.add_parser("verify", help="run the verification suite")
    q.add_argument("--config", help="JSON scenario config (default: shipped battery)")
    q.add_argument("--out", help="write the JSON report here")
    q.set_defaults(func=_cmd_verify)

    q = sub.add_parser("table", help="emit the gamma / variance coefficient tables")
    st = q.add_subparsers(dest="which", required=True)
    for name in ("gamma", "variance"):
        r = st.add_parser(name)
        r.add_argument("--c-max", dest="c_max", type=int, default=5)
        r.add_argument("--out")
        r.set_defaults(func=_cmd_table)

    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (ValueError, ArithmeticError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
