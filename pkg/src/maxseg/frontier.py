"""Trade-off analysis between penalty and length-budget formulations.

The budgeted problem traced over K and the penalized problem traced over
delta form two solution families in (length, weight) space. Penalized optima
land on the upper convex hull of the budgeted frontier; strictly interior
frontier points are never a penalized argmax for any delta (a duality gap).
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .core1d import (
    Solution,
    as_weight_array,
    max_subarray_constrained,
    max_subarray_penalized,
)

# weights snap to this grid before exact integer orientation tests
WEIGHT_GRID = 1e-9


@dataclass(frozen=True)
class FrontierPoint:
    """One traced solution: produced either by a budget K or by a penalty delta."""

    k: int | None
    delta: float | None
    length: int
    raw_weight: float

    def __post_init__(self) -> None:
        if (self.k is None) == (self.delta is None):
            raise ValueError("exactly one of k and delta identifies the point")


@dataclass(frozen=True)
class BudgetResult:
    """Bisection outcome for a length budget."""

    solution: Solution
    delta_used: float
    feasible: bool
    gap_note: float | None


@dataclass(frozen=True)
class HullRow:
    """Per-budget frontier entry with its hull membership flags."""

    k: int
    length: int
    raw_weight: float
    on_hull: bool
    is_vertex: bool
    attained_by_delta: float | None


@dataclass(frozen=True)
class HullReport:
    rows: list[HullRow]
    vertices: list[tuple[int, float]]
    deltas: list[float]
    all_penalized_on_hull: bool
    all_vertices_attained: bool


def constrained_frontier(values) -> list[FrontierPoint]:
    """Exact best weight and solution length for every budget K = 1..N."""
    w = as_weight_array(values)
    points = []
    for k in range(1, int(w.size) + 1):
        sol = max_subarray_constrained(w, k)
        points.append(
            FrontierPoint(k=k, delta=None, length=sol.interval.length, raw_weight=sol.raw_weight)
        )
    return points


def penalized_frontier(values, deltas) -> list[FrontierPoint]:
    """Penalized solutions over a delta grid, deduplicated by (length, weight)."""
    w = as_weight_array(values)
    seen: set[tuple[int, float]] = set()
    points = []
    for delta in deltas:
        delta = float(delta)
        if not math.isfinite(delta):
            raise ValueError("deltas must be finite")
        sol = max_subarray_penalized(w, delta)
        key = (sol.interval.length, sol.raw_weight)
        if key not in seen:
            seen.add(key)
            points.append(
                FrontierPoint(k=None, delta=delta, length=key[0], raw_weight=key[1])
            )
    return points


def _grid(weight: float) -> int:
    return round(weight / WEIGHT_GRID)


def upper_convex_hull(points) -> list[tuple[int, float]]:
    """Vertices of the upper hull of (length, weight) points, increasing length.

    Duplicate lengths keep their maximum weight first. Orientation tests run
    in exact integer arithmetic on grid-rounded weights, so points that sit on
    a hull edge are excluded deterministically.
    """
    by_length: dict[int, float] = {}
    for length, weight in points:
        length = int(length)
        weight = float(weight)
        if length not in by_length or weight > by_length[length]:
            by_length[length] = weight
    if not by_length:
        raise ValueError("need at least one point")
    pts = sorted(by_length.items())
    hull: list[tuple[int, float]] = []
    for x, y in pts:
        gy = _grid(y)
        while len(hull) >= 2:
            (x1, y1), (x2, y2) = hull[-2], hull[-1]
            # middle point must lie strictly above the chord to stay a vertex
            if (x2 - x1) * (gy - _grid(y1)) - (_grid(y2) - _grid(y1)) * (x - x1) >= 0:
                hull.pop()
            else:
                break
        hull.append((x, y))
    return hull


def solve_with_length_budget(values, k: int, tol: float | None = None) -> BudgetResult:
    """Feasible solution for a length budget via bisection on the penalty.

    Bisects delta on [0, max(w) + tol], keeping the best feasible solution
    (length <= k) encountered at any evaluated delta. The returned weight can
    fall short of the exact budgeted optimum when that optimum sits on a hull
    edge; ``gap_note`` records the shortfall.
    """
    w = as_weight_array(values)
    n = int(w.size)
    k = int(k)
    if not (1 <= k <= n):
        raise ValueError(f"k must be in [1, {n}], got {k}")
    if tol is None:
        tol = 1e-6 * (1.0 + float(np.abs(w).max()))
    tol = float(tol)
    if not (math.isfinite(tol) and tol > 0):
        raise ValueError("tol must be positive and finite")

    sol0 = max_subarray_penalized(w, 0.0)
    if sol0.interval.length <= k:
        incumbent, delta_used = sol0, 0.0
    else:
        lo_delta = 0.0
        hi_delta = float(w.max()) + tol
        incumbent = max_subarray_penalized(w, hi_delta)  # length 1, always feasible
        delta_used = hi_delta
        while hi_delta - lo_delta > tol:
            mid = 0.5 * (lo_delta + hi_delta)
            sol = max_subarray_penalized(w, mid)
            if sol.interval.length <= k:
                hi_delta = mid
                delta_used = mid
                if sol.raw_weight > incumbent.raw_weight:
                    incumbent = sol
            else:
                lo_delta = mid
    exact = max_subarray_constrained(w, k)
    gap = exact.raw_weight - incumbent.raw_weight
    return BudgetResult(solution=incumbent, delta_used=delta_used, feasible=True, gap_note=gap)


def breakpoint_deltas(frontier_points) -> list[float]:
    """Candidate penalties: pairwise frontier slopes plus 0 and max weight + 1."""
    by_length: dict[int, float] = {}
    max_w = -math.inf
    for p in frontier_points:
        if p.length not in by_length or p.raw_weight > by_length[p.length]:
            by_length[p.length] = p.raw_weight
        max_w = max(max_w, p.raw_weight)
    pts = sorted(by_length.items())
    deltas = {0.0, max_w + 1.0}
    for i in range(len(pts)):
        for j in range(i + 1, len(pts)):
            (l1, w1), (l2, w2) = pts[i], pts[j]
            deltas.add((w2 - w1) / (l2 - l1))
    return sorted(deltas)


def _on_hull(vertices: list[tuple[int, float]], length: int, weight: float) -> tuple[bool, bool]:
    """(on hull polyline, is a vertex) for one point, on the rounded grid."""
    gw = _grid(weight)
    for i, (vx, vy) in enumerate(vertices):
        if length == vx:
            return (gw == _grid(vy), gw == _grid(vy))
        if i + 1 < len(vertices) and vx < length < vertices[i + 1][0]:
            (x1, y1), (x2, y2) = vertices[i], vertices[i + 1]
            collinear = (x2 - x1) * (gw - _grid(y1)) == (_grid(y2) - _grid(y1)) * (length - x1)
            return (collinear, False)
    return (False, False)


def hull_check(values) -> HullReport:
    """Audit the frontier/hull relationship for one weight array.

    Checks that (a) every penalized solution over the breakpoint penalties
    lies on the upper hull of the budgeted frontier, and (b) every hull vertex
    is attained by some breakpoint penalty.
    """
    w = as_weight_array(values)
    frontier = constrained_frontier(w)
    vertices = upper_convex_hull([(p.length, p.raw_weight) for p in frontier])
    deltas = breakpoint_deltas(frontier)

    attained: dict[tuple[int, int], float] = {}
    all_on_hull = True
    for delta in deltas:
        sol = max_subarray_penalized(w, delta)
        length, weight = sol.interval.length, sol.raw_weight
        on, _ = _on_hull(vertices, length, weight)
        all_on_hull = all_on_hull and on
        key = (length, _grid(weight))
        if key not in attained:
            attained[key] = delta

    rows = []
    for p in frontier:
        on, vertex = _on_hull(vertices, p.length, p.raw_weight)
        rows.append(
            HullRow(
                k=p.k,
                length=p.length,
                raw_weight=p.raw_weight,
                on_hull=on,
                is_vertex=vertex,
                attained_by_delta=attained.get((p.length, _grid(p.raw_weight))),
            )
        )
    all_attained = all((vx, _grid(vy)) in attained for vx, vy in vertices)
    return HullReport(
        rows=rows,
        vertices=vertices,
        deltas=deltas,
        all_penalized_on_hull=all_on_hull,
        all_vertices_attained=all_attained,
    )
