"""Locally weighted linear smoothing with tricube weights.

Each point is fit by weighted least squares over its ``ceil(span * N)``
nearest neighbors (ties broken leftward), the classic local-regression
construction. The default span of 0.4 targets large-scale patterns.
"""

from __future__ import annotations

import math

import numpy as np

from .core import TimeSeries
from .errors import ParameterError

DEFAULT_SPAN = 0.4


def window_size(n: int, span: float) -> int:
    if not (0.0 < span <= 1.0):
        raise ParameterError(f"span must be in (0, 1], got {span}")
    if span * n < 3:
        raise ParameterError(f"span {span} over {n} samples leaves fewer than 3 neighbors")
    return min(n, math.ceil(span * n))


def _window_starts(xs: np.ndarray, w: int) -> np.ndarray:
    """Start index of each point's w-nearest-neighbor window.

    xs is strictly increasing, so the nearest neighbors form a contiguous
    run; slide it left-to-right, preferring the left candidate on distance
    ties (matching a stable nearest-first sort).
    """
    n = len(xs)
    starts = np.empty(n, dtype=int)
    lo = 0
    for i in range(n):
        # Advance while the point just past the window is strictly closer
        # than the window's left edge; ties keep the leftward point.
        while lo + w < n and xs[lo + w] - xs[i] < xs[i] - xs[lo]:
            lo += 1
        starts[i] = lo
    return starts


def estimate_trend_loess(series: TimeSeries, span: float = DEFAULT_SPAN) -> TimeSeries:
    """Tricube-weighted local linear fit evaluated at every sample."""
    xs, ys = series.xs, series.ys
    n = len(xs)
    w = window_size(n, span)
    starts = _window_starts(xs, w)
    fitted = np.empty(n)
    offsets = np.arange(w)
    for i in range(n):
        idx = starts[i] + offsets
        x_local = xs[idx] - xs[i]
        y_local = ys[idx]
        d = np.abs(x_local)
        dmax = d[-1] if d[-1] >= d[0] else d[0]
        u = d / dmax
        weights = (1.0 - u**3) ** 3
        s0 = weights.sum()
        s1 = float(weights @ x_local)
        s2 = float(weights @ (x_local * x_local))
        sy = float(weights @ y_local)
        sxy = float(weights @ (x_local * y_local))
        denom = s0 * s2 - s1 * s1
        if denom <= 1e-12 * max(s0 * s2, 1e-300):
            # Degenerate window (e.g. both extremes zero-weighted): fall back
            # to the weighted mean.
            fitted[i] = sy / s0
        else:
            fitted[i] = (s2 * sy - s1 * sxy) / denom
    return series.with_ys(fitted)
