"""Command-line front end. CSV goes to stdout, diagnostics to stderr.

Exit codes: 0 success, 1 failed verification, 2 bad flags, 3 numerical
integrity or truncation failure.
"""

from __future__ import annotations

import argparse
import csv
import sys

from . import __version__
from .discrimination import DiscriminationProblem
from .errors import IntegrityError, TruncationError
from .fock import TAU_TRUNC
from .receiver import ReceiverConfig, kennedy_error, optimal_threshold, receiver_error, simulate
from .states import DnsParams
from .sweeps import (
    ENERGY_RULE,
    FIG3_GAPS,
    FIG3_KS,
    FIG_DMAX,
    FIG_DSTEP,
    FIG_PAIRS,
    OOK_COLUMNS,
    OOK_HS,
    OOK_NTS,
    Point,
    SweepResult,
    fig_points,
    ook_rows,
    run_points,
)
from .verify import PRESETS, run_checks


def _fmt(value) -> str:
    if value is None:
        return ""
    if isinstance(value, float):
        return f"{value + 0.0:.17g}"
    return str(value)


def _complex(text: str) -> complex:
    parts = text.split(",")
    if len(parts) > 2:
        raise argparse.ArgumentTypeError(f"expected re[,im], got {text!r}")
    try:
        vals = [float(p) for p in parts]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected re[,im], got {text!r}") from None
    return complex(vals[0], vals[1] if len(vals) == 2 else 0.0)


def _int_list(text: str) -> tuple:
    return tuple(int(v) for v in text.split(","))


def _float_list(text: str) -> tuple:
    return tuple(float(v) for v in text.split(","))


def _pairs(text: str) -> tuple:
    out = []
    for item in text.split(","):
        k, h = item.split(":")
        out.append((int(k), int(h)))
    return tuple(out)


def _prior(text: str) -> float:
    p0 = float(text)
    if not 0.0 <= p0 <= 1.0:
        raise argparse.ArgumentTypeError(f"p0 must lie in [0, 1], got {p0}")
    return p0


class _Writer:
    def __init__(self, stream, args, extra_comments=()):
        self.stream = stream
        self.writer = csv.writer(stream, lineterminator="\n")
        stream.write(f"# dnsdisc {__version__}\n")
        stream.write(f"# command: {_describe(args)}\n")
        for line in extra_comments:
            stream.write(f"# {line}\n")

    def header(self, names):
        self.writer.writerow(names)

    def row(self, values):
        self.writer.writerow([_fmt(v) for v in values])


def _describe(args) -> str:
    skip = {"func", "workers"}
    items = sorted((k, v) for k, v in vars(args).items() if k not in skip)
    return " ".join(f"{k}={v}" for k, v in items)


def _problem(args) -> DiscriminationProblem:
    return DiscriminationProblem(
        DnsParams(args.xi, args.h, args.nt), DnsParams(args.mu, args.k, args.nt), args.p0
    )


def _point(args, trials=None) -> Point:
    return Point(
        DnsParams(args.xi, args.h, args.nt),
        DnsParams(args.mu, args.k, args.nt),
        args.p0,
        args.dim,
        args.tol,
        trials,
        args.seed,
    )


def _emit_results(args, results):
    out = _Writer(sys.stdout, args)
    out.header(SweepResult.columns(args.timing))
    for res in results:
        out.row(res.row(args.timing))


def cmd_helstrom(args) -> int:
    _emit_results(args, [run_points([_point(args)], workers=1)[0]])
    return 0


def cmd_simulate(args) -> int:
    _emit_results(args, run_points([_point(args, trials=args.trials)], workers=1))
    return 0


def cmd_kennedy(args) -> int:
    problem = _problem(args).normalized()
    columns = ["xi_re", "xi_im", "h", "mu_re", "mu_im", "k", "nt", "p0",
               "beta_re", "beta_im", "n_th", "optimal", "pe_receiver"]
    if problem.same_displacement and args.beta is None:
        beta = -problem.state1.mu
        n_th = optimal_threshold(problem) if args.nth is None else args.nth
        pe = kennedy_error(problem, n_th)
        optimal = int(args.nth is None)
    else:
        if args.nth is None:
            raise _UsageError("--nth is required when xi != mu or --beta is given")
        beta = -problem.state1.mu if args.beta is None else args.beta
        n_th = args.nth
        pe = receiver_error(problem, ReceiverConfig(beta, n_th))
        optimal = 0
    s0, s1 = problem.state0, problem.state1
    out = _Writer(sys.stdout, args)
    out.header(columns)
    out.row([s0.mu.real, s0.mu.imag, s0.k, s1.mu.real, s1.mu.imag, s1.k, s1.nt, problem.p0,
             beta.real, beta.imag, n_th, optimal, pe])
    return 0


def cmd_sweep(args) -> int:
    if args.fig == 4:
        return cmd_ook(args)
    points = fig_points(
        args.fig, nt=args.nt_fig, p0=args.p0, pairs=args.pairs, d_max=args.dmax,
        d_step=args.dstep, ks=args.ks, gaps=args.gaps, mu=args.mu_fig, dim=args.dim, tol=args.tol,
    )
    _emit_results(args, run_points(points, workers=args.workers))
    return 0


def cmd_ook(args) -> int:
    rows = ook_rows(args.hs, args.nts, p0=0.5, tol=args.tol, workers=args.workers)
    out = _Writer(sys.stdout, args, [f"energy matching: {ENERGY_RULE}"])
    out.header(OOK_COLUMNS)
    for row in rows:
        out.row(row)
    return 0


def cmd_verify(args) -> int:
    results = run_checks(PRESETS[args.grid], args.check_tol)
    total = sum(r.count for r in results)
    if total == 0:
        print("warning: 0 checks run", file=sys.stderr)
    out = _Writer(sys.stdout, args)
    out.header(["check", "count", "worst", "tol", "status", "worst_point"])
    failed = False
    for r in results:
        if r.count == 0:
            continue
        out.row([r.name, r.count, r.worst, r.tol, "pass" if r.passed else "FAIL", r.worst_point])
        for point, dev in r.failures:
            failed = True
            print(f"FAIL {r.name}: {point} deviation {dev:.3e} > {r.tol:.3e}", file=sys.stderr)
    return 1 if failed else 0


class _UsageError(Exception):
    pass


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--mu", type=_complex, default=0j, help="hypothesis-1 displacement, re[,im]")
    common.add_argument("--xi", type=_complex, default=0j, help="hypothesis-0 displacement, re[,im]")
    common.add_argument("--k", type=int, default=0, help="hypothesis-1 photon additions")
    common.add_argument("--h", type=int, default=0, help="hypothesis-0 photon additions")
    common.add_argument("--nt", type=float, default=0.0, help="mean thermal photon number")
    common.add_argument("--p0", type=_prior, default=0.5, help="prior of hypothesis 0; p1 = 1 - p0")
    common.add_argument("--dim", type=int, default=None, help="override the truncation dimension")
    common.add_argument("--tol", type=float, default=TAU_TRUNC, help="truncation tail tolerance")
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--trials", type=int, default=100_000)
    common.add_argument("--workers", type=int, default=None, help="processes for sweeps (default: all cores)")
    common.add_argument("--timing", action="store_true", help="add a wall_ms column (not byte-stable)")

    parser = argparse.ArgumentParser(
        prog="dnsdisc", description="Discrimination of noisy displaced number states."
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("helstrom", parents=[common], help="error probability by every applicable method")
    p.set_defaults(func=cmd_helstrom)

    p = sub.add_parser("kennedy", parents=[common], help="Kennedy threshold receiver error")
    p.add_argument("--nth", type=int, default=None, help="count threshold (default: optimal)")
    p.add_argument("--beta", type=_complex, default=None, help="receiver displacement (default: -mu)")
    p.set_defaults(func=cmd_kennedy)

    p = sub.add_parser("simulate", parents=[common], help="Monte Carlo run of the optimal Kennedy receiver")
    p.set_defaults(func=cmd_simulate)

    p = sub.add_parser("sweep", parents=[common], help="figure grids")
    p.add_argument("--fig", type=int, choices=(1, 2, 3, 4), required=True)
    p.add_argument("--pairs", type=_pairs, default=FIG_PAIRS, help="k:h pairs for figs 1-2")
    p.add_argument("--dmax", type=float, default=FIG_DMAX)
    p.add_argument("--dstep", type=float, default=FIG_DSTEP)
    p.add_argument("--ks", type=_int_list, default=FIG3_KS, help="k values for fig 3")
    p.add_argument("--gaps", type=_int_list, default=FIG3_GAPS, help="h - k values for fig 3")
    p.add_argument("--hs", type=_int_list, default=OOK_HS, help="h values for fig 4")
    p.add_argument("--nts", type=_float_list, default=OOK_NTS, help="nt values for fig 4")
    p.add_argument("--fig-nt", dest="nt_fig", type=float, default=None,
                   help="thermal photons for figs 1-3 (defaults 0, 0.2, 0.2)")
    p.add_argument("--fig-mu", dest="mu_fig", type=float, default=1.0, help="common displacement for fig 3")
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("ook", parents=[common], help="DNS versus coherent on-off keying")
    p.add_argument("--hs", type=_int_list, default=OOK_HS)
    p.add_argument("--nts", type=_float_list, default=OOK_NTS)
    p.set_defaults(func=cmd_ook)

    p = sub.add_parser("verify", parents=[common], help="oracle checks; exit 0 iff all pass")
    p.add_argument("--grid", choices=sorted(PRESETS), default="default")
    p.add_argument("--check-tol", type=float, default=None, help="replace every check tolerance")
    p.set_defaults(func=cmd_verify)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (_UsageError, ValueError) as exc:
        if isinstance(exc, TruncationError):
            print(f"error: {exc}", file=sys.stderr)
            return 3
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (IntegrityError, TruncationError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())
