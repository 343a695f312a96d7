"""Shift-based denoising operators and the box-convolution baseline.

The two building blocks replace each sample by the max (resp. min) of the
signal evaluated one shift-radius to the left and right.  Shift radii are
snapped to integer multiples of the grid step so that equivariance,
duality and non-expansivity hold exactly on the grid instead of only up
to interpolation error.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass

import numpy as np

from .signal import EdgePolicy, Signal


@dataclass(frozen=True)
class ShiftParams:
    epsilon: float  # inner min-shift radius
    delta: float    # outer max-shift radius

    def __post_init__(self):
        if self.epsilon <= 0 or self.delta <= 0:
            raise ValueError("shift radii must be positive")


def snap_shift(shift: float, step: float) -> int:
    """Snap a shift radius to the nearest whole number of grid steps."""
    if shift <= 0:
        raise ValueError(f"shift radius must be positive, got {shift}")
    m = int(round(shift / step))
    snapped = m * step
    if abs(snapped - shift) > step / 2 + 1e-12 * step or m == 0:
        warnings.warn(
            f"shift {shift} snapped to {snapped} ({m} grid steps); "
            "grid too coarse for this radius",
            stacklevel=3,
        )
    return m


def _shifted(values: np.ndarray, m: int, policy: EdgePolicy) -> np.ndarray:
    """Array a with a[i] = values[i + m], padded per edge policy."""
    n = values.size
    if m == 0:
        return values
    out = np.empty_like(values)
    if m > 0:
        k = min(m, n)
        out[: n - k] = values[k:]
        out[n - k:] = 0.0 if policy is EdgePolicy.ZERO else values[-1]
    else:
        k = min(-m, n)
        out[k:] = values[: n - k]
        out[:k] = 0.0 if policy is EdgePolicy.ZERO else values[0]
    return out


def max_shift(s: Signal, eps: float) -> Signal:
    """out(x) = max(s(x - eps), s(x + eps)), eps snapped to the grid."""
    m = snap_shift(eps, s.step)
    return s.with_values(
        np.maximum(_shifted(s.values, -m, s.edge_policy),
                   _shifted(s.values, m, s.edge_policy))
    )


def min_shift(s: Signal, eps: float) -> Signal:
    """out(x) = min(s(x - eps), s(x + eps)), eps snapped to the grid."""
    m = snap_shift(eps, s.step)
    return s.with_values(
        np.minimum(_shifted(s.values, -m, s.edge_policy),
                   _shifted(s.values, m, s.edge_policy))
    )


def denoise(s: Signal, params: ShiftParams) -> Signal:
    """Min-shift then max-shift: cuts upward bumps, then downward ones.

    The composition only reads the signal at x +/- delta +/- epsilon, so
    radii on *half*-step multiples with epsilon +/- delta on whole steps
    are evaluated exactly from samples via the expanded four-point form.
    Other radii fall back to composing the two snapped shift operators.
    """
    half = s.step / 2.0
    e = params.epsilon / half
    d = params.delta / half
    ei, di = int(round(e)), int(round(d))
    if (abs(e - ei) < 1e-9 and abs(d - di) < 1e-9 and ei > 0 and di > 0
            and (ei + di) % 2 == 0):
        p = (ei + di) // 2  # (epsilon + delta) in whole steps
        q = (ei - di) // 2  # (epsilon - delta) in whole steps
        v, pol = s.values, s.edge_policy
        left = np.minimum(_shifted(v, -p, pol), _shifted(v, q, pol))
        right = np.minimum(_shifted(v, -q, pol), _shifted(v, p, pol))
        return s.with_values(np.maximum(left, right))
    return max_shift(min_shift(s, params.epsilon), params.delta)


def grid_radii(sigma: float, beta: float, step: float) -> ShiftParams:
    """Canonical radii (2, 1) * sigma / beta, snapped for `denoise`.

    Radii land on half-step multiples with epsilon - delta a whole number
    of steps, the finest granularity `denoise` evaluates exactly.  Each
    rounds to the nearest multiple but never below the inequalities
    needed to clear every bump of support radius at most 1/beta:
    delta >= 1/beta, so the outer shift always finds a sample outside a
    residual dip, and epsilon - delta >= 1/beta, so the two dip copies
    made by the inner shift never cover both points of the outer one.
    Plain nearest rounding can break these and leave a bump of full
    height behind; plain rounding up inflates the L*(epsilon + delta)
    error envelope well past 3*L*sigma/beta.
    """
    if sigma <= 0 or beta <= 0 or step <= 0:
        raise ValueError("sigma, beta and step must be positive")
    half = step / 2.0
    u = sigma / (beta * half)                      # canonical delta, half-steps
    r = int(np.ceil(1.0 / (beta * half) - 1e-9))   # support radius, half-steps
    d = max(int(round(u)), r, 1)
    e = max(int(round(2.0 * u)), d + r)
    if (e - d) % 2:  # epsilon +/- delta must land on whole steps
        e += -1 if e - 1 >= d + r else 1
    return ShiftParams(epsilon=e * half, delta=d * half)


def translate(s: Signal, g: float) -> Signal:
    """Shift the domain by g, which must be a whole number of steps."""
    m = round(g / s.step)
    if abs(m * s.step - g) > 1e-9 * max(s.step, abs(g), 1.0):
        raise ValueError(f"translation {g} is not a multiple of step {s.step}")
    return Signal(s.x_min + m * s.step, s.step, s.values, s.edge_policy)


def reflect(s: Signal, center: float | None = None) -> Signal:
    """Reflect about a grid point (defaults to the domain midpoint)."""
    if center is None:
        center = s.x_min + ((len(s) - 1) // 2) * s.step
    pos = (center - s.x_min) / s.step
    if abs(pos - round(pos)) > 1e-9:
        raise ValueError(f"reflection center {center} is not a grid point")
    new_x_min = 2.0 * center - s.x_max
    return Signal(new_x_min, s.step, s.values[::-1], s.edge_policy)


def convolve_box(s: Signal, h: float) -> Signal:
    """Convolution with the box kernel of height h/2 on [-1/h, 1/h].

    out(x) = (h/2) * integral of s over [x - 1/h, x + 1/h], computed from
    the exact integral of the PL interpolant (trapezoids between grid
    points plus the exact partial segment at each endpoint).
    """
    if h <= 0:
        raise ValueError(f"kernel parameter h must be positive, got {h}")
    r = 1.0 / h
    v = s.values
    step = s.step
    # cumulative integral of the interpolant at grid points
    cum = np.concatenate([[0.0], np.cumsum((v[1:] + v[:-1]) * (step / 2.0))])
    total = cum[-1]

    def integral_upto(u: np.ndarray) -> np.ndarray:
        """Integral of the (edge-extended) signal from x_min to u."""
        pos = (u - s.x_min) / step
        n = v.size
        i0 = np.clip(np.floor(pos).astype(int), 0, n - 2)
        t = (pos - i0) * step  # offset into segment i0, in x units
        v0 = v[i0]
        slope = (v[i0 + 1] - v0) / step
        inner = cum[i0] + v0 * t + 0.5 * slope * t * t
        if s.edge_policy is EdgePolicy.ZERO:
            inner = np.where(pos < 0, 0.0, inner)
            inner = np.where(pos > n - 1, total, inner)
        else:
            inner = np.where(pos < 0, pos * step * v[0], inner)
            inner = np.where(pos > n - 1, total + (pos - (n - 1)) * step * v[-1], inner)
        return inner

    x = s.grid
    out = (h / 2.0) * (integral_upto(x + r) - integral_upto(x - r))
    return s.with_values(out)


def tau_schedule(n: int, sigma: float, beta: float, theta: float) -> float:
    """Shift-radius schedule interpolating from theta/2 - 2*sigma/beta
    (n = 1) down to the limit 2*sigma/beta as n grows."""
    if n < 1:
        raise ValueError(f"n must be >= 1, got {n}")
    if sigma <= 0 or beta <= 0:
        raise ValueError("sigma and beta must be positive")
    base = 2.0 * sigma / beta
    if theta < 8.0 * sigma / beta:
        raise ValueError(
            f"theta = {theta} < 8*sigma/beta = {8.0 * sigma / beta}: empty schedule range"
        )
    return (1.0 - 1.0 / n) * base + (1.0 / n) * (theta / 2.0 - base)
