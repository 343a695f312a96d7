"""Impulsive noise built from scaled, shifted, squeezed copies of a mother bump.

A noise function is ``R(x) = sum_i a_i * psi(b_i * (x - c_i))`` where psi is
a continuous bump with 0 <= psi <= 1 supported inside (-sigma, sigma).  The
family constraints (pairwise center gap >= eta, squeeze factors >= beta)
are what the error bounds in :mod:`geneodenoise.bounds` rely on.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field

import numpy as np

from .signal import Signal

DEFAULT_SIGMA = 1.1
MAX_REJECTION_ATTEMPTS = 10**5


class InfeasibleNoiseConfig(RuntimeError):
    """Rejection sampling failed to produce an admissible draw."""


def mother_bump(x):
    """Reference bump: exp(1 - 1/(1 - x^2)) inside (-1, 1), zero outside."""
    x_arr = np.asarray(x, dtype=float)
    scalar = x_arr.ndim == 0
    x_arr = np.atleast_1d(x_arr)
    out = np.zeros_like(x_arr)
    inside = np.abs(x_arr) < 1.0
    with np.errstate(divide="ignore", over="ignore"):
        xi = x_arr[inside]
        out[inside] = np.exp(1.0 - 1.0 / (1.0 - xi * xi))
    return float(out[0]) if scalar else out


def validate_mother(psi, sigma: float, n_probe: int = 10001) -> None:
    """Check the bump axioms on a probe grid: 0 <= psi <= 1, support in (-sigma, sigma)."""
    x = np.linspace(-2.0 * sigma, 2.0 * sigma, n_probe)
    y = np.asarray(psi(x), dtype=float)
    if np.any(y < 0) or np.any(y > 1.0 + 1e-12):
        raise ValueError("mother bump must take values in [0, 1]")
    outside = np.abs(x) >= sigma
    if np.any(y[outside] != 0):
        raise ValueError("mother bump must vanish outside (-sigma, sigma)")


@dataclass(frozen=True)
class NoiseSpec:
    bumps: tuple  # of (a, b, c) triples
    sigma: float = DEFAULT_SIGMA

    def __post_init__(self):
        if self.sigma <= 0:
            raise ValueError("sigma must be positive")
        cleaned = []
        for a, b, c in self.bumps:
            if b <= 0:
                raise ValueError(f"squeeze factor must be positive, got {b}")
            if a != 0:  # zero-amplitude bumps contribute nothing; drop them
                cleaned.append((float(a), float(b), float(c)))
        object.__setattr__(self, "bumps", tuple(cleaned))

    @property
    def k(self) -> int:
        return len(self.bumps)

    @property
    def beta(self) -> float:
        return min((b for _, b, _ in self.bumps), default=math.inf)

    @property
    def eta(self) -> float:
        cs = sorted(c for _, _, c in self.bumps)
        if len(cs) <= 1:
            return math.inf
        return min(c2 - c1 for c1, c2 in zip(cs, cs[1:]))

    @property
    def alpha_bar(self) -> float:
        return max((abs(a) for a, _, _ in self.bumps), default=0.0)

    def support_set(self) -> list[tuple[float, float]]:
        """Open intervals (c_i - sigma/beta, c_i + sigma/beta) containing the noise."""
        r = self.sigma / self.beta if self.bumps else 0.0
        return [(c - r, c + r) for _, _, c in self.bumps]

    def to_json(self, path) -> None:
        obj = {"sigma": self.sigma,
               "bumps": [{"a": a, "b": b, "c": c} for a, b, c in self.bumps]}
        with open(path, "w") as f:
            json.dump(obj, f, indent=2)


def load_json(path) -> NoiseSpec:
    with open(path) as f:
        obj = json.load(f)
    bumps = tuple((d["a"], d["b"], d["c"]) for d in obj["bumps"])
    return NoiseSpec(bumps=bumps, sigma=obj["sigma"])


def render_noise(spec: NoiseSpec, like: Signal, psi=mother_bump) -> Signal:
    """Sample R on the grid of ``like``."""
    x = like.grid
    out = np.zeros_like(x)
    for a, b, c in spec.bumps:
        out += a * psi(b * (x - c))
    return like.with_values(out)


def check_family(spec: NoiseSpec, eta: float, beta: float) -> bool:
    """Centers pairwise >= eta apart and every squeeze factor >= beta."""
    if eta <= 0 or beta <= 0:
        raise ValueError("eta and beta must be positive")
    return spec.eta >= eta and all(b >= beta for _, b, _ in spec.bumps)


@dataclass(frozen=True)
class NoiseSampleConfig:
    k_range: tuple[int, int] = (1, 10)
    a_range: tuple[float, float] = (-100.0, 100.0)
    b_range: tuple[float, float] = (0.0, 100.0)
    c_range: tuple[float, float] = (-10.0, 10.0)
    # centers are drawn from c_range shrunk on both sides by
    # c_margin * sigma / min(b_i), keeping bumps clear of the boundary
    c_margin: float = 0.0
    sigma: float = DEFAULT_SIGMA
    reject_below_eta: float | None = None
    # when True the rejection threshold is 8*sigma/beta with beta = min b_i
    # recomputed for each draw
    family_gate: bool = False
    max_attempts: int = MAX_REJECTION_ATTEMPTS


def sample_noise(rng: np.random.Generator, cfg: NoiseSampleConfig) -> NoiseSpec:
    """Draw a NoiseSpec with uniform laws, optionally rejecting small center gaps."""
    for _ in range(cfg.max_attempts):
        k = int(rng.integers(cfg.k_range[0], cfg.k_range[1] + 1))
        a = rng.uniform(*cfg.a_range, size=k)
        b = rng.uniform(*cfg.b_range, size=k)
        if k == 0:
            return NoiseSpec(bumps=(), sigma=cfg.sigma)
        if np.any(a == 0) or np.any(b <= 0):
            continue
        margin = cfg.c_margin * cfg.sigma / b.min()
        c_lo, c_hi = cfg.c_range[0] + margin, cfg.c_range[1] - margin
        if c_lo >= c_hi:
            continue
        c = rng.uniform(c_lo, c_hi, size=k)
        spec = NoiseSpec(bumps=tuple(zip(a, b, c)), sigma=cfg.sigma)
        threshold = cfg.reject_below_eta
        if cfg.family_gate:
            gate = 8.0 * cfg.sigma / spec.beta
            threshold = gate if threshold is None else max(threshold, gate)
        if threshold is None or spec.eta > threshold:
            return spec
    raise InfeasibleNoiseConfig(
        f"no admissible draw in {cfg.max_attempts} attempts; "
        "the rejection threshold is likely infeasible for this configuration"
    )


def split_centers(spec: NoiseSpec, rho: float, sign: int) -> NoiseSpec:
    """Closed-form min- or max-shift of a family noise function.

    For admissible rho the min-shift (sign < 0) keeps only negative bumps,
    duplicated at centers c -/+ rho; the max-shift (sign > 0) keeps the
    positive ones.  Returns the resulting NoiseSpec (same mother bump).
    """
    keep = [(a, b, c) for a, b, c in spec.bumps if (a < 0) == (sign < 0)]
    bumps = []
    for a, b, c in keep:
        bumps.append((a, b, c - rho))
        bumps.append((a, b, c + rho))
    return NoiseSpec(bumps=tuple(bumps), sigma=spec.sigma)
