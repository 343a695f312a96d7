"""Degree-0 sublevel-set persistence of PL signals via the elder rule.

Vertices are processed by increasing value (ties broken by grid index, so
the leftmost of two equal minima is the elder).  When two components merge
the one with the larger minimum dies, emitting a (birth, death) pair; the
global minimum's component never dies and is recorded as an essential
point with death = infinity.
"""

from __future__ import annotations

import csv
import math
from dataclasses import dataclass

import numpy as np

from .signal import Signal


@dataclass(frozen=True)
class Diagram:
    finite: np.ndarray     # shape (n, 2): (birth, death) with birth < death
    essential: np.ndarray  # shape (m,): births of never-dying classes

    def __post_init__(self):
        fin = np.asarray(self.finite, dtype=float).reshape(-1, 2)
        ess = np.asarray(self.essential, dtype=float).reshape(-1)
        if fin.size and np.any(fin[:, 0] >= fin[:, 1]):
            raise ValueError("finite points must satisfy birth < death")
        fin.flags.writeable = False
        ess.flags.writeable = False
        object.__setattr__(self, "finite", fin)
        object.__setattr__(self, "essential", ess)

    def points(self) -> list[tuple[float, float]]:
        """All off-diagonal points, deaths of essential classes as +inf."""
        pts = [(float(b), float(d)) for b, d in self.finite]
        pts += [(float(b), math.inf) for b in self.essential]
        return pts

    def to_csv(self, path) -> None:
        with open(path, "w", newline="") as f:
            w = csv.writer(f)
            w.writerow(["birth", "death"])
            for b, d in sorted(self.points()):
                w.writerow([repr(b), "inf" if math.isinf(d) else repr(d)])


def load_csv(path) -> Diagram:
    finite, essential = [], []
    with open(path, newline="") as f:
        r = csv.reader(f)
        next(r)  # header
        for row in r:
            if not row:
                continue
            b = float(row[0])
            if row[1].strip().lower() in ("inf", "+inf", "infinity"):
                essential.append(b)
            else:
                finite.append((b, float(row[1])))
    return Diagram(np.asarray(finite, dtype=float).reshape(-1, 2),
                   np.asarray(essential, dtype=float))


def _collapse_plateaus(values: np.ndarray) -> np.ndarray:
    """Merge runs of equal adjacent samples into one vertex."""
    keep = np.concatenate([[True], np.diff(values) != 0])
    return values[keep]


def sublevel_pd0(s: Signal) -> Diagram:
    """Persistence diagram of the sublevel filtration on the sample interval."""
    v = _collapse_plateaus(np.asarray(s.values, dtype=float))
    n = v.size
    if n == 1:
        return Diagram(np.empty((0, 2)), np.array([v[0]]))

    order = np.argsort(v, kind="stable")  # ties by index: leftmost is elder
    parent = np.arange(n)
    # (min value, min index) of each component, stored at the root
    comp_min_val = v.copy()
    comp_min_idx = np.arange(n)
    active = np.zeros(n, dtype=bool)
    finite = []

    def find(i: int) -> int:
        root = i
        while parent[root] != root:
            root = parent[root]
        while parent[i] != root:
            parent[i], i = root, parent[i]
        return root

    for i in order:
        i = int(i)
        active[i] = True
        for j in (i - 1, i + 1):
            if 0 <= j < n and active[j]:
                ri, rj = find(i), find(j)
                if ri == rj:
                    continue
                # elder = smaller (min value, min index)
                ki = (comp_min_val[ri], comp_min_idx[ri])
                kj = (comp_min_val[rj], comp_min_idx[rj])
                elder, younger = (ri, rj) if ki <= kj else (rj, ri)
                birth = comp_min_val[younger]
                death = v[i]
                if birth < death:  # zero-persistence pairs are not emitted
                    finite.append((birth, death))
                parent[younger] = elder
        # ensure i's component tracks its minimum (i is the newest, so the
        # root minimum is already <= v[i]; nothing to update)

    root = find(0)
    essential = np.array([comp_min_val[root]])
    finite_arr = np.asarray(finite, dtype=float).reshape(-1, 2)
    return Diagram(finite_arr, essential)
