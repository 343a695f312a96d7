"""Command-line interface.

Subcommands: denoise, pd, bottleneck, convolve, bounds, simulate, sweep.
Exit codes: 0 success, 1 infeasible configuration, 2 bad arguments.
Diagnostics go to stderr; data outputs are CSV files or stdout.
"""

from __future__ import annotations

import argparse
import json
import math
import os
import sys
from pathlib import Path

import numpy as np

from . import experiments as exp
from . import matching, persistence, svg
from .bounds import BoundInputs, deterministic_bound, expected_bound
from .noise import InfeasibleNoiseConfig
from .operators import ShiftParams, convolve_box, denoise, grid_radii
from .signal import load_csv as load_signal_csv

OUT_DIR_ENV = "GENEODENOISE_OUT"


def _out_path(args, name: str) -> Path:
    base = Path(args.out) if args.out else Path(os.environ.get(OUT_DIR_ENV, "."))
    base.mkdir(parents=True, exist_ok=True)
    return base / name


def _load_input_signal(spec: str, step):
    if spec in ("sine", "quintic"):
        return exp.demo_functions(spec, step).signal
    return load_signal_csv(spec)


def _cmd_denoise(args) -> int:
    s = _load_input_signal(args.input, args.step)
    if args.epsilon is not None and args.delta is not None:
        params = ShiftParams(args.epsilon, args.delta)
    else:
        params = grid_radii(args.sigma, args.beta, s.step)
        print(f"auto radii: epsilon={params.epsilon} delta={params.delta}",
              file=sys.stderr)
    out = denoise(s, params)
    path = _out_path(args, args.output)
    out.to_csv(path)
    if args.svg:
        svg.plot_signals(_out_path(args, args.svg), [s, out],
                         ["input", "denoised"])
    print(f"wrote {path}", file=sys.stderr)
    return 0


def _cmd_pd(args) -> int:
    s = _load_input_signal(args.input, args.step)
    d = persistence.sublevel_pd0(s)
    path = _out_path(args, args.output)
    d.to_csv(path)
    print(f"wrote {path} ({len(d.finite)} finite, {len(d.essential)} essential)",
          file=sys.stderr)
    return 0


def _cmd_bottleneck(args) -> int:
    d1 = persistence.load_csv(args.diagram1)
    d2 = persistence.load_csv(args.diagram2)
    res = matching.bottleneck(d1, d2)
    print(res.distance)
    if args.witness:
        import csv as _csv

        with open(_out_path(args, args.witness), "w", newline="") as f:
            w = _csv.writer(f)
            w.writerow(["birth1", "death1", "birth2", "death2"])
            for p, q in res.witness or ():
                row = list(p) if p else ["diag", "diag"]
                row += list(q) if q else ["diag", "diag"]
                w.writerow(row)
    return 0


def _cmd_convolve(args) -> int:
    s = _load_input_signal(args.input, args.step)
    out = convolve_box(s, args.h)
    path = _out_path(args, args.output)
    out.to_csv(path)
    print(f"wrote {path}", file=sys.stderr)
    return 0


def _cmd_bounds(args) -> int:
    sb = args.sigma / args.beta
    eps = args.epsilon if args.epsilon is not None else 2.0 * sb
    delta = args.delta if args.delta is not None else sb
    inp = BoundInputs(L=args.L, sigma=args.sigma, beta=args.beta,
                      theta=args.theta, k=args.k, ell=args.ell,
                      alpha_bar=args.alpha_bar, epsilon=eps, delta=delta)
    det = deterministic_bound(inp)
    excp = expected_bound(inp)
    print(f"deterministic: value={det.value} valid={det.valid} "
          f"violated={list(det.violated_conditions)}")
    print(f"expected:      value={excp.value} valid={excp.valid} "
          f"violated={list(excp.violated_conditions)}")
    return 0


def _cmd_simulate(args) -> int:
    cfg = exp.TrialConfig(
        demo=args.demo, L=args.L, ell=args.ell, step=args.step, sigma=args.sigma,
        noise=exp.demo_noise_preset(
            args.ell if args.demo is None else exp.demo_functions(args.demo).ell,
            args.sigma),
        compute_diagrams=args.diagrams,
    )
    hist, records = exp.run_histogram(cfg, args.trials, args.seed,
                                      bins=args.bins, n_jobs=args.jobs)
    exp.trials_to_csv(records, _out_path(args, "trials.csv"))
    hist.to_csv(_out_path(args, "histogram.csv"))
    print(f"{len(records)} trials; wrote trials.csv and histogram.csv",
          file=sys.stderr)
    return 0


def _cmd_sweep(args) -> int:
    kwargs = {}
    if args.config:
        with open(args.config) as f:
            kwargs = json.load(f)
        for key in ("alpha_set", "beta_set", "L_set"):
            if key in kwargs:
                kwargs[key] = tuple(kwargs[key])
    if args.trials is not None:
        kwargs["trials_per_cell"] = args.trials
    kwargs.setdefault("seed", args.seed)
    kwargs.setdefault("sigma", args.sigma)
    if args.step is not None:
        kwargs.setdefault("step", args.step)
    kwargs.setdefault("n_jobs", args.jobs)
    cfg = exp.SweepConfig(**kwargs)
    records, marginals = exp.run_sweep(cfg)
    exp.marginals_to_csv(marginals, _out_path(args, "sweep_marginals.csv"))
    exp.trials_to_csv([r.trial for r in records], _out_path(args, "sweep_trials.csv"))
    print(f"{len(records)} trials over "
          f"{len(cfg.alpha_set) * len(cfg.beta_set) * len(cfg.L_set)} cells",
          file=sys.stderr)
    return 0


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="geneodenoise",
                                description="Impulsive-noise removal and "
                                            "persistence-diagram stability toolkit")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--step", type=float, default=None,
                   help="grid step for demo signals (default ell/4000)")
    p.add_argument("--sigma", type=float, default=1.1)
    p.add_argument("--out", type=str, default=None,
                   help=f"output directory (default $" + OUT_DIR_ENV + " or .)")
    sub = p.add_subparsers(dest="command", required=True)

    d = sub.add_parser("denoise", help="apply the min/max shift denoiser")
    d.add_argument("input", help="signal CSV path, or 'sine'/'quintic'")
    d.add_argument("--epsilon", type=float)
    d.add_argument("--delta", type=float)
    d.add_argument("--beta", type=float, default=11.0,
                   help="for auto radii (2,1)*sigma/beta")
    d.add_argument("--output", default="denoised.csv")
    d.add_argument("--svg", default=None, help="optional SVG overlay filename")
    d.set_defaults(fn=_cmd_denoise)

    d = sub.add_parser("pd", help="degree-0 sublevel persistence diagram")
    d.add_argument("input")
    d.add_argument("--output", default="diagram.csv")
    d.set_defaults(fn=_cmd_pd)

    d = sub.add_parser("bottleneck", help="bottleneck distance of two diagram CSVs")
    d.add_argument("diagram1")
    d.add_argument("diagram2")
    d.add_argument("--witness", default=None, help="optional witness CSV filename")
    d.set_defaults(fn=_cmd_bottleneck)

    d = sub.add_parser("convolve", help="box-kernel convolution baseline")
    d.add_argument("input")
    d.add_argument("--h", type=float, required=True)
    d.add_argument("--output", default="convolved.csv")
    d.set_defaults(fn=_cmd_convolve)

    d = sub.add_parser("bounds", help="print deterministic and expected bounds")
    d.add_argument("--L", type=float, required=True)
    d.add_argument("--beta", type=float, required=True)
    d.add_argument("--theta", type=float, default=math.inf)
    d.add_argument("--k", type=int, default=1)
    d.add_argument("--ell", type=float, default=20.0)
    d.add_argument("--alpha-bar", type=float, default=0.0)
    d.add_argument("--epsilon", type=float)
    d.add_argument("--delta", type=float)
    d.set_defaults(fn=_cmd_bounds)

    d = sub.add_parser("simulate", help="Monte Carlo overestimation histogram")
    d.add_argument("--demo", choices=["sine", "quintic"], default=None)
    d.add_argument("--L", type=float, default=1.0)
    d.add_argument("--ell", type=float, default=20.0)
    d.add_argument("--trials", type=int, default=1000)
    d.add_argument("--bins", type=int, default=10)
    d.add_argument("--jobs", type=int, default=1)
    d.add_argument("--diagrams", action="store_true",
                   help="also record per-trial bottleneck distances")
    d.set_defaults(fn=_cmd_simulate)

    d = sub.add_parser("sweep", help="parameter sweep with marginal means")
    d.add_argument("--config", default=None, help="JSON with SweepConfig fields")
    d.add_argument("--trials", type=int, default=None)
    d.add_argument("--jobs", type=int, default=1)
    d.set_defaults(fn=_cmd_sweep)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.fn(args)
    except InfeasibleNoiseConfig as e:
        print(f"error: infeasible configuration: {e}", file=sys.stderr)
        return 1
    except (OSError, ValueError) as e:
        print(f"error: {e}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
