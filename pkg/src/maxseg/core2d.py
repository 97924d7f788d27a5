"""2D maximum-subrectangle solver and iterative multi-region detection."""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .core1d import _best_interval, _tied


@dataclass(frozen=True)
class Rect:
    """Inclusive 0-based rectangle: rows [top, bottom], columns [left, right]."""

    top: int
    bottom: int
    left: int
    right: int

    def __post_init__(self) -> None:
        if not (0 <= self.top <= self.bottom and 0 <= self.left <= self.right):
            raise ValueError(
                f"invalid rect (top={self.top}, bottom={self.bottom}, "
                f"left={self.left}, right={self.right})"
            )

    @property
    def area(self) -> int:
        return (self.bottom - self.top + 1) * (self.right - self.left + 1)


@dataclass(frozen=True)
class RectSolution:
    rect: Rect
    penalized_weight: float
    raw_weight: float


def as_matrix(values) -> np.ndarray:
    """Validate a 2D matrix: nonempty, all finite. Returns float64 array."""
    m = np.asarray(values, dtype=float)
    if m.ndim != 2:
        raise ValueError("matrix must be two-dimensional")
    if m.size == 0:
        raise ValueError("matrix must be nonempty")
    if not np.all(np.isfinite(m)):
        raise ValueError("matrix values must all be finite")
    return m


def _improves_rect(cand, best) -> bool:
    """(sum, area, (top, left, bottom, right)) comparison with sum ties
    breaking to the smaller area, then the lexicographically smaller rect."""
    s_c, a_c, r_c = cand
    s_b, a_b, r_b = best
    if _tied(s_c, s_b):
        return (a_c, r_c) < (a_b, r_b)
    return s_c > s_b


def max_subrect_penalized(values, delta: float) -> RectSolution:
    """Exact best axis-aligned rectangle of sum(value - delta), O(R^2 * C).

    Each row pair collapses to column sums solved by the 1D scan. Ties break
    to the smallest area, then lexicographic (top, left, bottom, right).
    """
    m = as_matrix(values)
    delta = float(delta)
    if not math.isfinite(delta):
        raise ValueError("delta must be finite")
    shifted = m - delta
    n_rows, n_cols = shifted.shape
    best = None
    best_rect = (0, 0, 0, 0)
    for top in range(n_rows):
        acc = np.zeros(n_cols)
        for bottom in range(top, n_rows):
            acc += shifted[bottom]
            s, left, right = _best_interval(acc.tolist())
            height = bottom - top + 1
            cand = (s, height * (right - left + 1), (top, left, bottom, right))
            if best is None or _improves_rect(cand, best):
                best = cand
                best_rect = (top, left, bottom, right)
    top, left, bottom, right = best_rect
    rect = Rect(top=top, bottom=bottom, left=left, right=right)
    return RectSolution(
        rect=rect,
        penalized_weight=float(shifted[top : bottom + 1, left : right + 1].sum()),
        raw_weight=float(m[top : bottom + 1, left : right + 1].sum()),
    )


def detect_regions(values, delta: float, max_regions: int) -> list[RectSolution]:
    """Iteratively detect disjoint elevated rectangles by masking each find.

    Detected cells are replaced with a sentinel low enough that no optimal
    rectangle can cover them again. Stops once the best penalized weight
    drops to zero or ``max_regions`` regions are found.
    """
    m = as_matrix(values).copy()
    delta = float(delta)
    if not math.isfinite(delta):
        raise ValueError("delta must be finite")
    max_regions = int(max_regions)
    if max_regions < 1:
        raise ValueError("max_regions must be at least 1")
    sentinel = -(1.0 + float(np.abs(m).sum()) + abs(delta) * m.size)
    regions: list[RectSolution] = []
    for _ in range(max_regions):
        sol = max_subrect_penalized(m, delta)
        if sol.penalized_weight <= 0.0:
            break
        regions.append(sol)
        r = sol.rect
        m[r.top : r.bottom + 1, r.left : r.right + 1] = sentinel
    return regions
