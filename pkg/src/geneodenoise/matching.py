"""Bottleneck distance between persistence diagrams.

Point-to-point cost is the pseudo-metric

    delta(p, q) = min{ max{|x - x'|, |y - y'|}, max{|x - y|/2, |x' - y'|/2} }

with the infinity conventions spelled out in :func:`point_delta`.  The
distance is the smallest radius r such that a perfect matching exists in
the diagonal-augmented bipartite graph whose edges have cost <= r; since
the optimum is attained at one of the finitely many pairwise costs, a
binary search over those candidates yields the exact value.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass

Point = tuple[float, float]
INF = math.inf


@dataclass(frozen=True)
class MatchResult:
    distance: float
    # pairs (p, q) where either side may be None, meaning "the diagonal"
    witness: tuple | None = None


def _check_point(p: Point) -> None:
    if p[0] > p[1]:
        raise ValueError(f"malformed diagram point {p}: birth > death")


def _persistence_half(p: Point) -> float:
    # |x - y| / 2 with |−inf| = inf and inf/2 = inf
    if math.isinf(p[1]):
        return INF
    return (p[1] - p[0]) / 2.0


def point_delta(p: Point, q: Point) -> float:
    """The delta pseudo-metric between two diagram points (death may be +inf)."""
    _check_point(p)
    _check_point(q)
    if math.isinf(p[1]) and math.isinf(q[1]):
        dy = 0.0  # inf - inf = 0
    else:
        dy = abs(p[1] - q[1])  # inf - finite = inf
    term_direct = max(abs(p[0] - q[0]), dy)
    term_diag = max(_persistence_half(p), _persistence_half(q))
    return min(term_direct, term_diag)


def _essential_cost(b1: list[float], b2: list[float]) -> float:
    """Optimal matching cost among essential classes.

    Cross-matching essential to finite or diagonal costs +inf under the
    conventions, so essentials pair among themselves; sorted order is
    optimal for the max of |birth - birth'| in one dimension.
    """
    if len(b1) != len(b2):
        return INF
    if not b1:
        return 0.0
    return max(abs(x - y) for x, y in zip(sorted(b1), sorted(b2)))


def _split(diagram) -> tuple[list[Point], list[float]]:
    finite, ess = [], []
    for b, d in diagram.points():
        _check_point((b, d))
        if math.isinf(d):
            ess.append(b)
        else:
            finite.append((b, d))
    return finite, ess


def _feasible(n: int, m: int, cost_pq, diag1, diag2, r: float):
    """Perfect matching of the diagonal-augmented graph at radius r.

    Left vertices: n real points of D1 then m diagonal slots.
    Right vertices: m real points of D2 then n diagonal slots.
    Returns the matching (right index per left vertex) or None.
    """
    size = n + m
    match_right = [-1] * size  # right -> left
    match_left = [-1] * size

    def neighbors(u: int):
        if u < n:  # real left point
            for vtx in range(m):
                if cost_pq[u][vtx] <= r:
                    yield vtx
            if diag1[u] <= r:
                for vtx in range(m, size):
                    yield vtx
        else:  # diagonal slot on the left
            if diag2[u - n] <= r:
                yield u - n
            yield from range(m, size)  # diagonal-diagonal costs 0

    def augment(u: int, seen: list[bool]) -> bool:
        for vtx in neighbors(u):
            if not seen[vtx]:
                seen[vtx] = True
                if match_right[vtx] == -1 or augment(match_right[vtx], seen):
                    match_right[vtx] = u
                    match_left[u] = vtx
                    return True
        return False

    matched = 0
    for u in range(size):
        if augment(u, [False] * size):
            matched += 1
        else:
            return None
    return match_left if matched == size else None


def bottleneck(d1, d2) -> MatchResult:
    """Exact bottleneck distance with an optional witness pairing."""
    fin1, ess1 = _split(d1)
    fin2, ess2 = _split(d2)
    ess_cost = _essential_cost(ess1, ess2)
    if math.isinf(ess_cost):
        return MatchResult(INF, None)

    n, m = len(fin1), len(fin2)
    diag1 = [_persistence_half(p) for p in fin1]
    diag2 = [_persistence_half(q) for q in fin2]
    cost_pq = [[point_delta(p, q) for q in fin2] for p in fin1]

    candidates = {0.0, ess_cost}
    candidates.update(diag1)
    candidates.update(diag2)
    for row in cost_pq:
        candidates.update(row)
    cand = sorted(c for c in candidates if c >= ess_cost)

    lo, hi = 0, len(cand) - 1
    best_match = None
    while lo < hi:
        mid = (lo + hi) // 2
        ml = _feasible(n, m, cost_pq, diag1, diag2, cand[mid])
        if ml is not None:
            best_match = ml
            hi = mid
        else:
            lo = mid + 1
    if best_match is None or lo != hi:
        best_match = _feasible(n, m, cost_pq, diag1, diag2, cand[lo])
    dist = cand[lo]

    witness = []
    for b1, b2 in zip(sorted(ess1), sorted(ess2)):
        witness.append(((b1, INF), (b2, INF)))
    if best_match is not None:
        for u, vtx in enumerate(best_match):
            if u < n:
                witness.append((fin1[u], fin2[vtx] if vtx < m else None))
            elif vtx < m:
                witness.append((None, fin2[vtx]))
    return MatchResult(dist, tuple(witness))


BRUTE_SIZE_CAP = 8


def bottleneck_brute(d1, d2) -> float:
    """Exhaustive oracle: minimum over all diagonal-augmented bijections."""
    fin1, ess1 = _split(d1)
    fin2, ess2 = _split(d2)
    if len(fin1) > BRUTE_SIZE_CAP or len(fin2) > BRUTE_SIZE_CAP:
        raise ValueError(
            f"brute-force oracle capped at {BRUTE_SIZE_CAP} off-diagonal points per side"
        )
    if len(ess1) != len(ess2):
        return INF
    ess_cost = 0.0
    if ess1:
        ess_cost = min(
            max(abs(x - y) for x, y in zip(ess1, perm))
            for perm in itertools.permutations(ess2)
        )

    n, m = len(fin1), len(fin2)
    diag1 = [_persistence_half(p) for p in fin1]
    diag2 = [_persistence_half(q) for q in fin2]
    cost = [[point_delta(p, q) for q in fin2] for p in fin1]
    all_to_diag = max(diag1 + diag2, default=0.0)
    best = all_to_diag  # match everything to the diagonal

    # depth-first over injections {subset of D1} -> {points of D2};
    # unmatched points pay their diagonal cost
    used = [False] * m

    def rec(i: int, current: float):
        nonlocal best
        if current >= best:
            return
        if i == n:
            worst = current
            for j in range(m):
                if not used[j]:
                    worst = max(worst, diag2[j])
                    if worst >= best:
                        return
            best = worst
            return
        # option: send fin1[i] to the diagonal
        rec(i + 1, max(current, diag1[i]))
        for j in range(m):
            if not used[j]:
                c = max(current, cost[i][j])
                if c < best:
                    used[j] = True
                    rec(i + 1, c)
                    used[j] = False

    rec(0, 0.0)
    return max(ess_cost, best)
