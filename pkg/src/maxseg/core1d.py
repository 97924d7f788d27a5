"""Exact 1D maximum-subarray solvers: plain, penalized, and length-constrained."""
from __future__ import annotations

import math
from collections import deque
from dataclasses import dataclass

import numpy as np

# Two sums a, b are treated as tied when |a - b| <= TIE_RTOL * (1 + |a|).
# Absorbs prefix-sum arithmetic noise; ties then break to shorter, then leftmost.
TIE_RTOL = 1e-9


def _tied(a: float, b: float) -> bool:
    return abs(a - b) <= TIE_RTOL * (1.0 + abs(a))


def _improves(cand: tuple[float, int, int], best: tuple[float, int, int]) -> bool:
    """True if (sum, length, lo) candidate beats the incumbent."""
    s_c, n_c, lo_c = cand
    s_b, n_b, lo_b = best
    if _tied(s_c, s_b):
        return (n_c, lo_c) < (n_b, lo_b)
    return s_c > s_b


@dataclass(frozen=True)
class Interval:
    """Inclusive 0-based index range [lo, hi]."""

    lo: int
    hi: int

    def __post_init__(self) -> None:
        if not (0 <= self.lo <= self.hi):
            raise ValueError(f"invalid interval [{self.lo}, {self.hi}]")

    @property
    def length(self) -> int:
        return self.hi - self.lo + 1


@dataclass(frozen=True)
class Solution:
    """A solver result: the chosen interval with penalized and raw sums."""

    interval: Interval
    penalized_weight: float
    raw_weight: float


def as_weight_array(values) -> np.ndarray:
    """Validate a 1D weight sequence: nonempty, all finite. Returns float64 array."""
    w = np.asarray(values, dtype=float)
    if w.ndim != 1:
        raise ValueError("weights must be one-dimensional")
    if w.size == 0:
        raise ValueError("weights must be nonempty")
    if not np.all(np.isfinite(w)):
        raise ValueError("weights must all be finite")
    return w


def _best_interval(vals: list[float]) -> tuple[float, int, int]:
    """Kadane scan returning (sum, lo, hi) of the best nonempty interval.

    Ties on sum break to the shortest interval, then the smallest lo.
    """
    best_sum, best_lo, best_hi = vals[0], 0, 0
    cur_sum, cur_lo = vals[0], 0
    for i in range(1, len(vals)):
        x = vals[i]
        ext = cur_sum + x
        # restarting at i gives a shorter interval, so it also wins sum ties
        if x > ext or _tied(x, ext):
            cur_sum, cur_lo = x, i
        else:
            cur_sum = ext
        if _improves(
            (cur_sum, i - cur_lo + 1, cur_lo),
            (best_sum, best_hi - best_lo + 1, best_lo),
        ):
            best_sum, best_lo, best_hi = cur_sum, cur_lo, i
    return best_sum, best_lo, best_hi


def max_subarray(values) -> Solution:
    """Best nonempty interval by element sum, in O(N).

    Always returns an interval, even when every weight is negative (the
    single largest element wins in that case).
    """
    w = as_weight_array(values)
    _, lo, hi = _best_interval(w.tolist())
    raw = float(w[lo : hi + 1].sum())
    return Solution(Interval(lo, hi), penalized_weight=raw, raw_weight=raw)


def max_subarray_penalized(values, delta: float) -> Solution:
    """Best interval after subtracting ``delta`` from every element.

    ``penalized_weight`` is the optimal shifted sum; ``raw_weight`` is the sum
    of the original weights over the same interval.
    """
    w = as_weight_array(values)
    delta = float(delta)
    if not math.isfinite(delta):
        raise ValueError("delta must be finite")
    shifted = w - delta
    _, lo, hi = _best_interval(shifted.tolist())
    return Solution(
        Interval(lo, hi),
        penalized_weight=float(shifted[lo : hi + 1].sum()),
        raw_weight=float(w[lo : hi + 1].sum()),
    )


def max_subarray_constrained(values, k: int) -> Solution:
    """Best interval of length at most ``k``, exact, in O(N) time and O(K) space.

    Uses prefix sums with a monotone sliding-window minimum over the last
    ``k`` prefix positions. Same tie-breaking as :func:`max_subarray`.
    """
    w = as_weight_array(values)
    n = int(w.size)
    k = int(k)
    if not (1 <= k <= n):
        raise ValueError(f"k must be in [1, {n}], got {k}")
    vals = w.tolist()
    prefix = [0.0] * (n + 1)
    for i, x in enumerate(vals):
        prefix[i + 1] = prefix[i] + x

    # window holds prefix indices with increasing sums; equal-within-tolerance
    # entries keep the later index, which yields the shorter interval
    window: deque[int] = deque()
    best: tuple[float, int, int] | None = None
    best_lo = best_hi = 0
    for hi in range(n):
        p_new = prefix[hi]
        while window and (prefix[window[-1]] > p_new or _tied(prefix[window[-1]], p_new)):
            window.pop()
        window.append(hi)
        while window[0] < hi - k + 1:
            window.popleft()
        lo = window[0]
        cand = (prefix[hi + 1] - prefix[lo], hi - lo + 1, lo)
        if best is None or _improves(cand, best):
            best = cand
            best_lo, best_hi = lo, hi
    raw = float(w[best_lo : best_hi + 1].sum())
    return Solution(Interval(best_lo, best_hi), penalized_weight=raw, raw_weight=raw)


def glr_statistic(values, pair) -> float:
    """Generalized likelihood-ratio score for "some elevated interval exists".

    ``pair`` supplies natural parameters ``eta0 < eta1`` and the penalty
    ``delta`` (see :mod:`maxseg.expfam`). The score is
    ``(eta1 - eta0) * max(0, best penalized sum)``; the floor at zero covers
    the empty-interval (null) option. Compare against a caller-chosen
    threshold to decide detection.
    """
    eta0 = float(pair.eta0)
    eta1 = float(pair.eta1)
    if not eta1 > eta0:
        raise ValueError("pair must satisfy eta0 < eta1")
    sol = max_subarray_penalized(values, pair.delta)
    return (eta1 - eta0) * max(0.0, sol.penalized_weight)
