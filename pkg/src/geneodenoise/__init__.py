"""Impulsive-noise removal for 1D Lipschitz signals via shift operators,
with degree-0 persistence diagrams, bottleneck distances and closed-form
error guarantees."""

from .bounds import (
    BoundInputs,
    BoundReport,
    canonical_bound,
    deterministic_bound,
    expected_bound,
    matching_expected_bound,
    min_gap_prob,
)
from .estimators import BoxConvolver, ShiftDenoiser, SublevelDiagram
from .matching import MatchResult, bottleneck, bottleneck_brute, point_delta
from .noise import NoiseSampleConfig, NoiseSpec, mother_bump, render_noise, sample_noise
from .operators import (
    ShiftParams,
    convolve_box,
    denoise,
    grid_radii,
    max_shift,
    min_shift,
    tau_schedule,
)
from .persistence import Diagram, sublevel_pd0
from .signal import EdgePolicy, Signal, measure_lipschitz, sup_dist

__version__ = "0.1.0"

__all__ = [
    "BoundInputs", "BoundReport", "BoxConvolver", "Diagram", "EdgePolicy",
    "MatchResult", "NoiseSampleConfig", "NoiseSpec", "ShiftDenoiser",
    "ShiftParams", "Signal", "SublevelDiagram", "bottleneck",
    "bottleneck_brute", "convolve_box", "canonical_bound", "denoise",
    "deterministic_bound", "expected_bound", "grid_radii",
    "matching_expected_bound",
    "max_shift", "measure_lipschitz", "min_gap_prob", "min_shift",
    "mother_bump", "point_delta", "render_noise", "sample_noise",
    "sublevel_pd0", "sup_dist", "tau_schedule",
]
