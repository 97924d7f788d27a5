"""Independent brute-force oracles used to verify the fast solvers.

These deliberately enumerate every candidate and apply the documented
tie-break (larger sum, then shorter, then smaller start) with the same
tolerance rule, but share no code with the solvers.
"""
from __future__ import annotations

import numpy as np

TIE_RTOL = 1e-9


def tied(a: float, b: float) -> bool:
    return abs(a - b) <= TIE_RTOL * (1.0 + abs(a))


def brute_max_subarray(values, delta: float = 0.0, max_len: int | None = None):
    """Enumerate all intervals; returns (lo, hi, shifted_sum)."""
    vals = [float(v) - delta for v in values]
    n = len(vals)
    best = None
    for lo in range(n):
        running = 0.0
        for hi in range(lo, n):
            running += vals[hi]
            if max_len is not None and hi - lo + 1 > max_len:
                break
            cand = (running, hi - lo + 1, lo, hi)
            if best is None:
                best = cand
                continue
            if tied(cand[0], best[0]):
                if (cand[1], cand[2]) < (best[1], best[2]):
                    best = cand
            elif cand[0] > best[0]:
                best = cand
    lo, hi = best[2], best[3]
    exact = float(np.sum(np.asarray(values, dtype=float)[lo : hi + 1] - delta))
    return lo, hi, exact


def brute_max_subrect(matrix, delta: float = 0.0):
    """Enumerate all rectangles; returns ((top, left, bottom, right), shifted_sum).

    Sum ties break to the smaller area, then lexicographic (top, left,
    bottom, right).
    """
    m = np.asarray(matrix, dtype=float) - delta
    n_rows, n_cols = m.shape
    best = None
    for top in range(n_rows):
        for bottom in range(top, n_rows):
            for left in range(n_cols):
                for right in range(left, n_cols):
                    s = float(m[top : bottom + 1, left : right + 1].sum())
                    area = (bottom - top + 1) * (right - left + 1)
                    cand = (s, area, (top, left, bottom, right))
                    if best is None:
                        best = cand
                        continue
                    if tied(cand[0], best[0]):
                        if (cand[1], cand[2]) < (best[1], best[2]):
                            best = cand
                    elif cand[0] > best[0]:
                        best = cand
    return best[2], best[0]
