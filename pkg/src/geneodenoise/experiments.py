"""Monte Carlo experiments: random Lipschitz signals, denoising trials,
histograms of the bound overestimation, and parameter sweeps.

Every trial owns a 64-bit seed derived from the run seed, so results are
byte-identical regardless of execution order or worker count.
"""

from __future__ import annotations

import csv
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field, replace

import numpy as np

from . import signal as sig
from .bounds import BoundInputs, canonical_bound, expected_bound
from .matching import bottleneck
from .noise import DEFAULT_SIGMA, NoiseSampleConfig, render_noise, sample_noise
from .operators import convolve_box, denoise, grid_radii
from .persistence import sublevel_pd0
from .signal import Signal, add, sup_dist

GRID_POINTS = 4000  # default grid resolution: step = ell / 4000


# -- reference signals -----------------------------------------------------


@dataclass(frozen=True)
class DemoSignal:
    signal: Signal
    L: float
    ell: float  # noise is added on [-ell, ell] (sine/quintic) or [0, ell]


def demo_functions(name: str, step: float | None = None) -> DemoSignal:
    """Named demo signals, sampled on their natural interval, zero outside."""
    if name == "sine":
        ell = 4.0 * math.pi
        if step is None:
            step = ell / GRID_POINTS
        s = sig.from_function(np.sin, -ell, ell, step)
        return DemoSignal(s, L=1.0, ell=ell)
    if name == "quintic":
        ell = 5.0

        def f(x):
            return (x - 5) * (x - 3) * (x + 1) * (x + 4) * (x + 5) / 1000.0

        if step is None:
            step = ell / GRID_POINTS
        s = sig.from_function(f, -ell, ell, step)
        return DemoSignal(s, L=27.0 / 25.0, ell=ell)
    raise ValueError(f"unknown demo signal {name!r} (expected 'sine' or 'quintic')")


def gen_lipschitz(rng: np.random.Generator, L: float, N: int, ell: float,
                  step: float | None = None) -> Signal:
    """Random L-Lipschitz PL function on [0, ell], pinned to 0 at both ends.

    Knot ordinates are drawn uniformly inside the window that still allows
    an L-Lipschitz continuation reaching 0 at x = ell.
    """
    if L <= 0 or ell <= 0 or N < 0:
        raise ValueError("need L > 0, ell > 0, N >= 0")
    if step is None:
        step = ell / GRID_POINTS
    xs = np.sort(rng.uniform(0.0, ell, size=N))
    knots_x = np.concatenate([[0.0], xs, [ell]])
    knots_y = np.zeros(N + 2)
    for i in range(1, N + 1):
        dx = knots_x[i] - knots_x[i - 1]
        tail = ell - knots_x[i]
        lo = max(knots_y[i - 1] - L * dx, -L * tail)
        hi = min(knots_y[i - 1] + L * dx, L * tail)
        knots_y[i] = rng.uniform(lo, hi)
    n = int(round(ell / step)) + 1
    grid = step * np.arange(n)
    return Signal(0.0, step, np.interp(grid, knots_x, knots_y))


# -- single trials ---------------------------------------------------------


@dataclass(frozen=True)
class TrialConfig:
    demo: str | None = None          # 'sine'/'quintic'; None -> random Lipschitz
    L: float = 1.0
    N_range: tuple[int, int] = (1, 10)
    ell: float = 20.0
    step: float | None = None
    sigma: float = DEFAULT_SIGMA
    noise: NoiseSampleConfig = field(default_factory=NoiseSampleConfig)
    # shift radii default to (2, 1) * sigma / beta with the per-draw beta;
    # beta_for_radii pins them (and the bounds) to a fixed beta instead
    beta_for_radii: float | None = None
    compute_diagrams: bool = True


@dataclass(frozen=True)
class TrialRecord:
    seed: int
    L: float
    N: int                 # knot count of the random signal, -1 for demos
    k: int
    beta: float
    eta: float
    alpha_bar: float
    raw_error: float
    denoised_error: float
    det_bound: float
    in_family: bool
    pd_distance: float


def demo_noise_preset(ell: float, sigma: float = DEFAULT_SIGMA) -> NoiseSampleConfig:
    """Signed-amplitude noise on [-ell, ell] with the family rejection gate."""
    return NoiseSampleConfig(
        k_range=(1, 10), a_range=(-100.0, 100.0), b_range=(0.0, 100.0),
        c_range=(-ell, ell), c_margin=1.0, sigma=sigma, family_gate=True,
    )


def sweep_noise_preset(ell: float, alpha: float, beta: float,
                       sigma: float = DEFAULT_SIGMA) -> NoiseSampleConfig:
    """Positive-amplitude noise on [0, ell], no rejection (unconditioned)."""
    return NoiseSampleConfig(
        k_range=(1, 10), a_range=(0.0, alpha), b_range=(beta, 20.0),
        c_range=(0.0, ell), c_margin=3.0, sigma=sigma, family_gate=False,
    )


def run_trial(seed: int, cfg: TrialConfig) -> TrialRecord:
    rng = np.random.default_rng(seed)
    if cfg.demo is not None:
        demo = demo_functions(cfg.demo, cfg.step)
        phi, L, n_knots = demo.signal, demo.L, -1
    else:
        n_knots = int(rng.integers(cfg.N_range[0], cfg.N_range[1] + 1))
        phi = gen_lipschitz(rng, cfg.L, n_knots, cfg.ell, cfg.step)
        L = cfg.L

    spec = sample_noise(rng, cfg.noise)
    beta = cfg.beta_for_radii if cfg.beta_for_radii is not None else spec.beta
    phat = add(phi, render_noise(spec, phi))
    den = denoise(phat, grid_radii(cfg.sigma, beta, phi.step))

    raw = sup_dist(phat, phi)
    denerr = sup_dist(den, phi)
    det = canonical_bound(L, cfg.sigma, beta)
    in_family = spec.eta >= 8.0 * cfg.sigma / spec.beta
    pd_dist = math.nan
    if cfg.compute_diagrams:
        pd_dist = bottleneck(sublevel_pd0(phi), sublevel_pd0(den)).distance
    return TrialRecord(
        seed=int(seed), L=L, N=n_knots, k=spec.k, beta=spec.beta, eta=spec.eta,
        alpha_bar=spec.alpha_bar, raw_error=raw, denoised_error=denerr,
        det_bound=det, in_family=in_family, pd_distance=pd_dist,
    )


def trial_seeds(seed: int, n: int) -> np.ndarray:
    """n per-trial 64-bit seeds, a pure function of the run seed."""
    return np.random.SeedSequence(seed).generate_state(n, dtype=np.uint64)


def _map_trials(fn, tasks, n_jobs: int):
    if n_jobs <= 1:
        return [fn(t) for t in tasks]
    with ThreadPoolExecutor(max_workers=n_jobs) as pool:
        return list(pool.map(fn, tasks))


def run_trials(cfg: TrialConfig, n_trials: int, seed: int,
               n_jobs: int = 1) -> list[TrialRecord]:
    seeds = trial_seeds(seed, n_trials)
    return _map_trials(lambda s: run_trial(int(s), cfg), seeds, n_jobs)


# -- histogram experiment --------------------------------------------------


@dataclass(frozen=True)
class Histogram:
    counts: np.ndarray
    edges: np.ndarray
    overestimations: np.ndarray  # det_bound - denoised_error per trial

    def to_csv(self, path) -> None:
        with open(path, "w", newline="") as f:
            w = csv.writer(f)
            w.writerow(["bin_lo", "bin_hi", "count"])
            for lo, hi, c in zip(self.edges[:-1], self.edges[1:], self.counts):
                w.writerow([repr(float(lo)), repr(float(hi)), int(c)])


def run_histogram(cfg: TrialConfig, n_trials: int, seed: int, bins: int = 10,
                  n_jobs: int = 1) -> tuple[Histogram, list[TrialRecord]]:
    """Overestimation histogram of the closed-form bound over seeded trials."""
    records = run_trials(replace(cfg, compute_diagrams=cfg.compute_diagrams),
                         n_trials, seed, n_jobs)
    over = np.array([r.det_bound - r.denoised_error for r in records])
    if over.size == 0:
        return Histogram(np.zeros(bins, dtype=int), np.linspace(0, 1, bins + 1),
                         over), records
    counts, edges = np.histogram(over, bins=bins)
    return Histogram(counts, edges, over), records


# -- parameter sweep -------------------------------------------------------


@dataclass(frozen=True)
class SweepConfig:
    alpha_set: tuple = tuple(range(50, 101, 5))
    beta_set: tuple = tuple(range(3, 14))
    L_set: tuple = tuple(range(1, 11))
    trials_per_cell: int = 100
    ell: float = 20.0
    sigma: float = DEFAULT_SIGMA
    step: float | None = None
    seed: int = 0
    n_jobs: int = 1


@dataclass(frozen=True)
class SweepCellRecord:
    alpha: float
    beta: float
    L: float
    trial: TrialRecord
    bound: float  # expected-error bound with the cell parameters and trial k


def run_sweep(cfg: SweepConfig) -> tuple[list[SweepCellRecord], list[tuple]]:
    """All cell trials plus the marginal-mean table.

    The marginal table has rows (var, value, mean_raw, mean_denoised,
    mean_bound): for each value of one swept variable, means over every
    trial of every cell with that value.
    """
    cells = [(a, b, L) for a in cfg.alpha_set for b in cfg.beta_set for L in cfg.L_set]
    n_total = len(cells) * cfg.trials_per_cell
    seeds = trial_seeds(cfg.seed, n_total)

    def one(task) -> SweepCellRecord:
        idx, (alpha, beta, L) = task
        tc = TrialConfig(
            demo=None, L=float(L), ell=cfg.ell, step=cfg.step, sigma=cfg.sigma,
            noise=sweep_noise_preset(cfg.ell, float(alpha), float(beta), cfg.sigma),
            beta_for_radii=float(beta), compute_diagrams=False,
        )
        rec = run_trial(int(seeds[idx]), tc)
        bound = expected_bound(BoundInputs(
            L=float(L), sigma=cfg.sigma, beta=float(beta), k=rec.k,
            ell=cfg.ell, alpha_bar=float(alpha))).value
        return SweepCellRecord(float(alpha), float(beta), float(L), rec, bound)

    tasks = []
    idx = 0
    for cell in cells:
        for _ in range(cfg.trials_per_cell):
            tasks.append((idx, cell))
            idx += 1
    records = _map_trials(one, tasks, cfg.n_jobs)

    marginals = []
    for var, values, key in (
        ("alpha", cfg.alpha_set, lambda r: r.alpha),
        ("beta", cfg.beta_set, lambda r: r.beta),
        ("L", cfg.L_set, lambda r: r.L),
    ):
        for val in values:
            grp = [r for r in records if key(r) == float(val)]
            marginals.append((
                var, float(val),
                float(np.mean([r.trial.raw_error for r in grp])),
                float(np.mean([r.trial.denoised_error for r in grp])),
                float(np.mean([r.bound for r in grp])),
            ))
    return records, marginals


# -- baselines -------------------------------------------------------------


def convolution_errors(phat: Signal, phi: Signal, h_values) -> dict[float, float]:
    """Sup-norm error of the box-convolution baseline for each kernel width."""
    return {float(h): sup_dist(convolve_box(phat, h), phi) for h in h_values}


# -- CSV output ------------------------------------------------------------

TRIAL_CSV_HEADER = ["seed", "L", "N", "k", "beta", "eta", "raw_error",
                    "denoised_error", "det_bound", "in_family", "pd_distance"]


def trials_to_csv(records: list[TrialRecord], path) -> None:
    with open(path, "w", newline="") as f:
        w = csv.writer(f)
        w.writerow(TRIAL_CSV_HEADER)
        for r in records:
            w.writerow([r.seed, repr(r.L), r.N, r.k, repr(r.beta), repr(r.eta),
                        repr(r.raw_error), repr(r.denoised_error),
                        repr(r.det_bound), int(r.in_family),
                        "nan" if math.isnan(r.pd_distance) else repr(r.pd_distance)])


def marginals_to_csv(marginals: list[tuple], path) -> None:
    with open(path, "w", newline="") as f:
        w = csv.writer(f)
        w.writerow(["var", "value", "mean_raw", "mean_denoised", "mean_bound"])
        for var, val, raw, den, bound in marginals:
            w.writerow([var, repr(val), repr(raw), repr(den), repr(bound)])
