"""Uniformly sampled piecewise-linear signals on a closed interval.

A :class:`Signal` stores samples on the grid ``x_min + i*step`` and is
interpreted as the piecewise-linear interpolant of those samples.  Outside
the sample interval the value is given by the edge policy (zero or clamped
to the boundary sample).  All operations are pure; the sample array is
frozen after construction so signals can be shared freely.
"""

from __future__ import annotations

import csv
import enum
from dataclasses import dataclass, field

import numpy as np

#: relative tolerance used when deciding whether two grids coincide
GRID_RTOL = 1e-9


class EdgePolicy(enum.Enum):
    ZERO = "zero"
    CLAMP = "clamp"


class GridMismatchError(ValueError):
    """Two signals do not share the same sampling grid."""


class NonUniformGridError(ValueError):
    """Loaded sample abscissae are not an (approximately) uniform grid."""


def _grid_scale(s: "Signal") -> float:
    return max(abs(s.x_min), abs(s.x_max), s.step, 1.0)


@dataclass(frozen=True)
class Signal:
    x_min: float
    step: float
    values: np.ndarray
    edge_policy: EdgePolicy = EdgePolicy.ZERO

    def __post_init__(self):
        if self.step <= 0:
            raise ValueError(f"step must be positive, got {self.step}")
        vals = np.asarray(self.values, dtype=float)
        if vals.ndim != 1 or vals.size < 2:
            raise ValueError("values must be a 1D sequence of length >= 2")
        vals = vals.copy()
        vals.flags.writeable = False
        object.__setattr__(self, "values", vals)

    # -- basic geometry ----------------------------------------------------

    def __len__(self) -> int:
        return self.values.size

    @property
    def x_max(self) -> float:
        return self.x_min + (self.values.size - 1) * self.step

    @property
    def grid(self) -> np.ndarray:
        return self.x_min + self.step * np.arange(self.values.size)

    def same_grid(self, other: "Signal") -> bool:
        if len(self) != len(other):
            return False
        tol = GRID_RTOL * _grid_scale(self)
        return abs(self.x_min - other.x_min) <= tol and abs(self.step - other.step) <= tol

    def with_values(self, values: np.ndarray) -> "Signal":
        return Signal(self.x_min, self.step, values, self.edge_policy)

    # -- evaluation --------------------------------------------------------

    def eval(self, x) -> np.ndarray | float:
        """Evaluate the PL interpolant at ``x`` (scalar or array)."""
        x_arr = np.asarray(x, dtype=float)
        scalar = x_arr.ndim == 0
        x_arr = np.atleast_1d(x_arr)
        v = self.values
        n = v.size
        pos = (x_arr - self.x_min) / self.step
        i0 = np.floor(pos).astype(int)
        i0c = np.clip(i0, 0, n - 2)
        out = v[i0c] * (1.0 - (pos - i0c)) + v[i0c + 1] * (pos - i0c)
        inside = (x_arr >= self.x_min) & (x_arr <= self.x_max)
        if self.edge_policy is EdgePolicy.ZERO:
            out = np.where(inside, out, 0.0)
        else:
            out = np.where(x_arr < self.x_min, v[0], out)
            out = np.where(x_arr > self.x_max, v[-1], out)
        # exact values at grid points, immune to rounding of pos
        nearest = np.rint(pos)
        exact = np.abs(pos - nearest) < 1e-9
        idx = np.clip(nearest.astype(int), 0, n - 1)
        out = np.where(exact & inside, v[idx], out)
        return float(out[0]) if scalar else out

    # -- serialization -----------------------------------------------------

    def to_csv(self, path) -> None:
        with open(path, "w", newline="") as f:
            w = csv.writer(f)
            w.writerow(["x", "value"])
            for x, v in zip(self.grid, self.values):
                w.writerow([repr(float(x)), repr(float(v))])


def eval(s: Signal, x):
    return s.eval(x)


def load_csv(path, edge_policy: EdgePolicy = EdgePolicy.ZERO) -> Signal:
    """Load a two-column (x, value) CSV; the grid must be uniform."""
    xs, vs = [], []
    with open(path, newline="") as f:
        r = csv.reader(f)
        header = next(r)
        if header and _is_number(header[0]):  # headerless file
            xs.append(float(header[0]))
            vs.append(float(header[1]))
        for row in r:
            if not row:
                continue
            xs.append(float(row[0]))
            vs.append(float(row[1]))
    x = np.asarray(xs)
    if x.size < 2:
        raise NonUniformGridError("need at least two samples")
    d = np.diff(x)
    step = d.mean()
    scale = max(abs(x[0]), abs(x[-1]), abs(step), 1.0)
    if step <= 0 or np.any(np.abs(d - step) > GRID_RTOL * scale):
        raise NonUniformGridError("sample abscissae are not a uniform grid")
    return Signal(float(x[0]), float(step), np.asarray(vs), edge_policy)


def _is_number(tok: str) -> bool:
    try:
        float(tok)
        return True
    except ValueError:
        return False


# -- metric and arithmetic -------------------------------------------------


class CombineKind(enum.Enum):
    ADD = "add"
    SUB = "sub"
    POINT_MAX = "point_max"
    POINT_MIN = "point_min"


def _require_same_grid(s1: Signal, s2: Signal) -> None:
    if not s1.same_grid(s2):
        raise GridMismatchError(
            f"grids differ: ({s1.x_min}, {s1.step}, {len(s1)}) vs "
            f"({s2.x_min}, {s2.step}, {len(s2)})"
        )


def sup_dist(s1: Signal, s2: Signal, allow_resample: bool = False) -> float:
    """Sup-norm distance of two signals sampled on the same grid."""
    if not s1.same_grid(s2):
        if not allow_resample:
            raise GridMismatchError("signals do not share a grid (resampling disabled)")
        s1, s2 = _common_grid(s1, s2)
    return float(np.max(np.abs(s1.values - s2.values)))


def measure_lipschitz(s: Signal) -> float:
    """Lipschitz constant of the PL interpolant (max chord slope)."""
    return float(np.max(np.abs(np.diff(s.values))) / s.step)


def combine(s1: Signal, s2: Signal, kind: CombineKind) -> Signal:
    _require_same_grid(s1, s2)
    a, b = s1.values, s2.values
    if kind is CombineKind.ADD:
        out = a + b
    elif kind is CombineKind.SUB:
        out = a - b
    elif kind is CombineKind.POINT_MAX:
        out = np.maximum(a, b)
    elif kind is CombineKind.POINT_MIN:
        out = np.minimum(a, b)
    else:
        raise ValueError(f"unknown combine kind {kind!r}")
    return s1.with_values(out)


def add(s1: Signal, s2: Signal) -> Signal:
    return combine(s1, s2, CombineKind.ADD)


def sub(s1: Signal, s2: Signal) -> Signal:
    return combine(s1, s2, CombineKind.SUB)


def negate(s: Signal) -> Signal:
    return s.with_values(-s.values)


def scale(s: Signal, c: float) -> Signal:
    return s.with_values(c * s.values)


def resample(s: Signal, x_min: float, step: float, n: int) -> Signal:
    """Resample onto a new uniform grid by PL interpolation."""
    x_new = x_min + step * np.arange(n)
    return Signal(x_min, step, s.eval(x_new), s.edge_policy)


def _common_grid(s1: Signal, s2: Signal):
    step = min(s1.step, s2.step)
    x_min = min(s1.x_min, s2.x_min)
    x_max = max(s1.x_max, s2.x_max)
    n = int(round((x_max - x_min) / step)) + 1
    return resample(s1, x_min, step, n), resample(s2, x_min, step, n)


def from_function(f, x_min: float, x_max: float, step: float,
                  edge_policy: EdgePolicy = EdgePolicy.ZERO) -> Signal:
    """Sample a callable on the uniform grid covering [x_min, x_max]."""
    n = int(round((x_max - x_min) / step)) + 1
    x = x_min + step * np.arange(n)
    return Signal(x_min, step, np.asarray(f(x), dtype=float), edge_policy)
