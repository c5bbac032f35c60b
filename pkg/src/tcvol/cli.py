"""Command-line front end: ``tcvol {simulate,estimate,tune,bench}``.

Exit codes: 0 success, 2 configuration error, 3 data-format error,
4 numerical degeneracy.
"""
from __future__ import annotations

import argparse
import sys

import numpy as np

from . import io
from .bench import BenchSettings, run_bench
from .charfn import DEFAULT_FLOOR
from .errors import ConfigurationError, NumericalDegeneracy, TcvolError
from .models import (
    CompoundPoisson,
    Constant,
    GaussianJumps,
    LevyTriplet,
    NoiseSpec,
    PiecewiseSmooth,
    Sine,
    SymmetricStable,
    TwoPoint,
)
from .pipeline import estimate
from .simulate import simulate_ito_sm, simulate_tc_levy
from .smoothing import KERNELS, SmoothingConfig
from .tuning import GCV_FORMS, TuneGrid, default_grid, robust_scale, tune

DEFAULT_H1 = 0.25
DEFAULT_H2 = 1.0
DEFAULT_H = 0.4


def _floats(text: str) -> list:
    try:
        return [float(v) for v in text.split(",") if v.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated numbers, got {text!r}") from None


def _ints(text: str) -> list:
    try:
        return [int(v) for v in text.split(",") if v.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}") from None


# ---------------------------------------------------------------------------
# model flags
# ---------------------------------------------------------------------------

def _model_parent() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(add_help=False)
    g = p.add_argument_group("simulation model")
    g.add_argument("--n", type=int, help="number of observations")
    g.add_argument("--seed", type=int, help="random seed")
    g.add_argument("--model", choices=("tc", "sm"), default="tc",
                   help="time-changed Lévy (tc) or semimartingale with idiosyncratic jumps (sm)")
    g.add_argument("--drift", type=float, default=0.0)
    g.add_argument("--c", type=float, default=1.0, help="Lévy volatility c")
    g.add_argument("--rate", choices=("constant", "sine", "piecewise"), default="constant")
    g.add_argument("--amplitude", type=float, default=0.5)
    g.add_argument("--frequency", type=int, default=1)
    g.add_argument("--knots", type=_floats, help="piecewise rate knots, from 0 to 1")
    g.add_argument("--values", type=_floats, help="piecewise rate values at the knots")
    g.add_argument("--jumps", choices=("none", "twopoint", "gaussian", "stable"), default="none")
    g.add_argument("--jump-intensity", type=float, default=1.0)
    g.add_argument("--jump-a", type=float, default=1.0, help="two-point jump size")
    g.add_argument("--jump-p", type=float, default=0.5, help="two-point probability of +a")
    g.add_argument("--jump-mean", type=float, default=0.0)
    g.add_argument("--jump-sd", type=float, default=0.1)
    g.add_argument("--stable-index", type=float, default=1.5)
    g.add_argument("--stable-scale", type=float, default=0.5)
    g.add_argument("--noise", choices=("none", "gaussian", "rademacher"), default="none")
    g.add_argument("--sigma", type=float, default=0.0)
    return p


def _rate(args):
    if args.rate == "constant":
        return Constant()
    if args.rate == "sine":
        return Sine(args.amplitude, args.frequency)
    if not args.knots or not args.values:
        raise ConfigurationError("piecewise rate needs --knots and --values")
    return PiecewiseSmooth(tuple(args.knots), tuple(args.values))


def _jumps(args):
    if args.jumps == "none":
        return None
    if args.jumps == "twopoint":
        return CompoundPoisson(args.jump_intensity, TwoPoint(args.jump_a, args.jump_p))
    if args.jumps == "gaussian":
        return CompoundPoisson(args.jump_intensity, GaussianJumps(args.jump_mean, args.jump_sd))
    return SymmetricStable(args.stable_index, args.stable_scale)


def _simulator(args):
    rate = _rate(args)
    jumps = _jumps(args)
    noise = NoiseSpec(args.noise, args.sigma)
    if args.model == "tc":
        triplet = LevyTriplet(args.drift, args.c, jumps)
        return lambda n, seed: simulate_tc_levy(triplet, rate, noise, n, seed)
    if not args.c > 0:
        raise ConfigurationError("semimartingale model needs c > 0")

    def vol(t, c=args.c):
        return c * rate.value(t)

    def drift(t, b=args.drift):
        return np.full_like(np.asarray(t, dtype=float), b)

    return lambda n, seed: simulate_ito_sm(vol, drift, jumps, noise, n, seed)


def _series(args):
    if args.input and args.n is not None:
        raise ConfigurationError("give either --input or a simulation spec (--n/--seed), not both")
    if args.input:
        return io.ingest_csv(args.input)
    if args.n is None:
        raise ConfigurationError("need --input or a simulation spec (--n and --seed)")
    if args.seed is None:
        raise ConfigurationError("--seed is required when simulating")
    return _simulator(args)(args.n, args.seed)


# ---------------------------------------------------------------------------
# subcommands
# ---------------------------------------------------------------------------

def cmd_simulate(args):
    if args.n is None or args.seed is None:
        raise ConfigurationError("simulate needs --n and --seed")
    series = _simulator(args)(args.n, args.seed)
    io.write_series_csv(args.output, series)
    if args.truth:
        io.write_truth_csv(args.truth, series)
    return 0


def _local_guard_fraction(weights, guard_ok):
    active = weights != 0
    return (active & ~guard_ok[None, :]).sum(axis=1) / np.maximum(active.sum(axis=1), 1)


def _resolve_u(args, series):
    if args.u is not None:
        return args.u
    scale = robust_scale(series)
    return 1.0 / scale if scale > 0 else 1.0


def cmd_estimate(args):
    from .smoothing import default_grid as curve_grid, weight_matrix

    series = _series(args)
    u = _resolve_u(args, series)
    cfg = SmoothingConfig(args.kernel, args.order, args.h)
    est = estimate(series, u, args.h1, args.h2, cfg, args.floor, allow_degenerate=True)
    grid = curve_grid(est.layout.n2)
    w, _ = weight_matrix(grid, est.layout.n2, cfg)
    io.write_curve_csv(args.output, grid, est.curve.c_tilde, est.curve.r_tilde,
                       _local_guard_fraction(w, est.local.guard_ok))
    summary = {
        "command": "estimate",
        "params": {"u": u, "h1": args.h1, "h2": args.h2, "h": args.h, "order": args.order,
                   "kernel": args.kernel, "floor": args.floor},
        "layout": est.layout.as_dict(),
        "denom": est.curve.denom,
        "degenerate": est.degenerate,
        "flags": {"ridge_points": int(np.count_nonzero(est.curve.flagged)),
                  "guard_failures": int(np.count_nonzero(~est.local.guard_ok)),
                  "guard_fraction": est.local.guard_fraction},
    }
    io.write_json(args.summary, summary)
    if est.degenerate:
        print("estimate: degenerate normalisation, r_tilde omitted", file=sys.stderr)
        return NumericalDegeneracy.exit_code
    return 0


def cmd_tune(args):
    series = _series(args)
    grid = default_grid(series)
    grid = TuneGrid(u=args.u_grid or grid.u, h1=args.h1_grid or grid.h1,
                    h2=args.h2_grid or grid.h2, h=args.h_grid or grid.h)
    cfg = SmoothingConfig(args.kernel, args.order)
    res = tune(series, grid, cfg, args.floor, args.gcv_form)
    u, h1, h2, h = res.best
    io.write_json(args.output, {
        "command": "tune",
        "best": {"u": u, "h1": h1, "h2": h2, "h": h},
        "score": res.score,
        "gcv_form": args.gcv_form,
        "table": [{"u": p[0], "h1": p[1], "h2": p[2], "h": p[3], "score": s} for p, s in res.table],
    })
    return 0


def cmd_bench(args):
    if args.seed is None:
        raise ConfigurationError("bench needs --seed")
    if len(args.ladder) < 1:
        raise ConfigurationError("empty --ladder")
    settings = BenchSettings(u=args.u, h1=args.h1, h2=args.h2, h0=args.h0, alpha=args.alpha,
                             kernel=args.kernel, order=args.order, floor=args.floor, gcv=args.gcv)
    report = run_bench(_simulator(args), args.ladder, args.replicates, args.seed, settings)
    io.write_json(args.output, {"command": "bench", **report.as_dict()})
    return 0


def build_parser() -> argparse.ArgumentParser:
    model = _model_parent()
    smooth = argparse.ArgumentParser(add_help=False)
    g = smooth.add_argument_group("estimator")
    g.add_argument("--kernel", choices=KERNELS, default="epanechnikov")
    g.add_argument("--order", type=int, default=1, help="local polynomial order N (degree N-1)")
    g.add_argument("--floor", type=float, default=DEFAULT_FLOOR)

    parser = argparse.ArgumentParser(prog="tcvol", description="Spot and normalised volatility from noisy high-frequency prices.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("simulate", parents=[model], help="write simulated observations as CSV")
    p.add_argument("--output", required=True)
    p.add_argument("--truth", help="also write ground truth t,r,c,x")
    p.set_defaults(func=cmd_simulate)

    p = sub.add_parser("estimate", parents=[model, smooth], help="estimate c~ and r~ on a grid")
    p.add_argument("--input")
    p.add_argument("--output", required=True, help="curve CSV t,c_tilde,r_tilde,guard_fraction")
    p.add_argument("--summary", default="-", help="JSON summary path ('-' for stdout)")
    p.add_argument("--u", type=float, help="frequency (default: 1 / robust scale of increments)")
    p.add_argument("--h1", type=float, default=DEFAULT_H1)
    p.add_argument("--h2", type=float, default=DEFAULT_H2)
    p.add_argument("--h", type=float, default=DEFAULT_H)
    p.set_defaults(func=cmd_estimate)

    p = sub.add_parser("tune", parents=[model, smooth], help="GCV grid search over (u, h1, h2, h)")
    p.add_argument("--input")
    p.add_argument("--output", default="-")
    p.add_argument("--u-grid", type=_floats)
    p.add_argument("--h1-grid", type=_floats)
    p.add_argument("--h2-grid", type=_floats)
    p.add_argument("--h-grid", type=_floats)
    p.add_argument("--gcv-form", choices=GCV_FORMS, default="self_weight")
    p.set_defaults(func=cmd_tune)

    p = sub.add_parser("bench", parents=[model, smooth], help="Monte Carlo convergence benchmark")
    p.add_argument("--ladder", type=_ints, default=[4096, 16384, 65536])
    p.add_argument("--replicates", type=int, default=50)
    p.add_argument("--output", default="-")
    p.add_argument("--u", type=float, default=0.5)
    p.add_argument("--h1", type=float, default=0.25)
    p.add_argument("--h2", type=float, default=2.0)
    p.add_argument("--h0", type=float, default=1.0)
    p.add_argument("--alpha", type=float, default=0.5)
    p.add_argument("--gcv", action="store_true", help="choose h per replicate by GCV")
    p.set_defaults(func=cmd_bench)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return ConfigurationError.exit_code if exc.code else 0
    try:
        return args.func(args)
    except TcvolError as exc:
        print(f"tcvol {args.command}: {exc}", file=sys.stderr)
        return exc.exit_code


if __name__ == "__main__":
    sys.exit(main())
