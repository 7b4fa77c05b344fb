"""Command-line front end.

Subcommands:
  verify             run the verification suites for one configuration
  poincare           emit the Poincare comparison tables (JSON + TSV)
  demo-distinctness  the rank-one curve separating shifted Bethe algebras
                     from shift pullbacks
  bench              time the heavy kernels

Exit codes: 0 all checks passed, 1 verification failure, 2 usage error.
"""

import argparse
import json
import os
import sys
import time

from .report import canonical_json
from .shift import AntidominanceError
from .suite import ALL_SUITES, SuiteConfig, poincare_tsv, run_suite

CACHE_ENV = "BETHE_LAB_CACHE_DIR"


class UsageError(Exception):
    pass


def _parse_int_list(text):
    try:
        return tuple(int(x) for x in text.split(","))
    except ValueError as exc:
        raise UsageError(f"expected a comma-separated integer list, got {text!r}") from exc


def _parse_window(text):
    parts = text.split(":")
    if len(parts) != 2:
        raise UsageError(f"expected a window lo:hi, got {text!r}")
    try:
        lo, hi = int(parts[0]), int(parts[1])
    except ValueError as exc:
        raise UsageError(f"window bounds must be integers: {text!r}") from exc
    if lo > hi:
        raise UsageError(f"empty window {text!r}")
    return (lo, hi)


def _add_common(p):
    p.add_argument("--n", type=int, default=2, help="matrix size")
    p.add_argument("--mu", default="-1,0", help="shift vector, comma-separated (antidominant)")
    p.add_argument("--twist", default="1,2", help="diagonal of the twist matrix, comma-separated rationals")
    p.add_argument("--trunc", type=int, default=1, help="level-truncation depth N")
    p.add_argument("--window", default="-2:4", help="exponent window lo:hi")
    p.add_argument("--degree-cap", type=int, default=4)
    p.add_argument("--q-cap", type=int, default=6)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", default=None, help="write the JSON report here instead of stdout")
    p.add_argument("--cache-dir", default=None)
    p.add_argument("--suites", default=",".join(ALL_SUITES), help="comma-separated subset of suites")


def _config_from(args):
    mu = _parse_int_list(args.mu)
    twist = tuple(args.twist.split(","))
    window = _parse_window(args.window)
    suites = tuple(s for s in args.suites.split(",") if s)
    cache_dir = args.cache_dir or os.environ.get(CACHE_ENV)
    cfg = SuiteConfig(
        n=args.n,
        mu=mu,
        twist=twist,
        N=args.trunc,
        u_window=window,
        z_window=(window[0] - 6, window[1] + 6),
        degree_cap=args.degree_cap,
        q_cap=args.q_cap,
        suites=suites,
        seed=args.seed,
        cache_dir=cache_dir,
    )
    try:
        return cfg.validated()
    except (AntidominanceError, ValueError) as exc:
        raise UsageError(str(exc)) from exc


def _emit(doc, out):
    text = json.dumps(doc, indent=2, sort_keys=True) + "\n"
    if out:
        with open(out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def cmd_verify(args):
    cfg = _config_from(args)
    rep, doc = run_suite(cfg)
    _emit(doc, args.out)
    if not args.out:
        sys.stdout.write(rep.render() + "\n")
    return 0 if rep.passed else 1


def cmd_poincare(args):
    cfg = _config_from(args)
    cfg.suites = ("poincare",)
    rep, doc = run_suite(cfg)
    tsv = poincare_tsv(cfg)
    doc["tsv"] = tsv
    _emit(doc, args.out)
    if args.tsv:
        with open(args.tsv, "w") as fh:
            fh.write(tsv)
    elif not args.out:
        sys.stdout.write(tsv)
    return 0 if rep.passed else 1


def cmd_demo(args):
    from .classical_slice import pullback_distinctness_demo

    try:
        rep = pullback_distinctness_demo(args.n_shift, args.h)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    doc = {"report": rep.to_json()}
    _emit(doc, args.out)
    if not args.out:
        sys.stdout.write(rep.render() + "\n")
    return 0 if rep.passed else 1


def cmd_bench(args):
    from .shift import TwistMatrix
    from .yangian_universal import YContext, normal_form, tau_universal

    timings = {}
    ctx = YContext(2, 1, (-2, 4))
    C = TwistMatrix.diagonal(["1", "2"])
    t0 = time.time()
    x = tau_universal(C, 2, 3, ctx)
    y = tau_universal(C, 1, 2, ctx)
    timings["tau_build_seconds"] = time.time() - t0
    t0 = time.time()
    z = normal_form(x * y - y * x, ctx)
    timings["tau_commutator_seconds"] = time.time() - t0
    timings["commutator_zero"] = z.is_zero()
    _emit({"bench": timings}, args.out)
    return 0


def build_parser():
    parser = argparse.ArgumentParser(prog="bethe-lab", description=__doc__)
    sub = parser.add_subparsers(dest="command")
    p_verify = sub.add_parser("verify", help="run verification suites")
    _add_common(p_verify)
    p_verify.set_defaults(fn=cmd_verify)
    p_poin = sub.add_parser("poincare", help="Poincare comparison tables")
    _add_common(p_poin)
    p_poin.add_argument("--tsv", default=None, help="write the TSV table here")
    p_poin.set_defaults(fn=cmd_poincare)
    p_demo = sub.add_parser("demo-distinctness", help="rank-one distinctness demo")
    p_demo.add_argument("--n-shift", type=int, default=1)
    p_demo.add_argument("--h", default="1", help="nonzero twist parameter")
    p_demo.add_argument("--out", default=None)
    p_demo.set_defaults(fn=cmd_demo)
    p_bench = sub.add_parser("bench", help="time the heavy kernels")
    p_bench.add_argument("--out", default=None)
    p_bench.set_defaults(fn=cmd_bench)
    return parser


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    if not getattr(args, "fn", None):
        parser.print_help()
        return 2
    try:
        return args.fn(args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
