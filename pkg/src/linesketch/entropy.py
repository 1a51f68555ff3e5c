"""Pixel approximate entropy: perceived complexity of a rendered line.

The ordinates are quantized to the canvas's integer pixel rows and standard
approximate entropy ApEn(m, r * sigma) is computed over that row sequence.
Higher values track visual noisiness; a perfectly regular (constant) line
scores zero.
"""

from __future__ import annotations

import numpy as np

from .core import CanvasSpec, TimeSeries
from .errors import ParameterError

DEFAULT_WINDOW = 2
DEFAULT_TOLERANCE_FRACTION = 0.2

_BLOCK = 512  # template rows per chunk when counting matches


def quantize_to_pixel_rows(series: TimeSeries, canvas: CanvasSpec) -> np.ndarray:
    """Map ordinates onto integer pixel rows 0 .. height-1."""
    ys = series.ys
    lo, hi = float(ys.min()), float(ys.max())
    rows = int(canvas.height)
    if rows < 1:
        raise ParameterError("canvas height must be at least 1 pixel")
    if hi == lo:
        return np.zeros(len(ys), dtype=np.int64)
    return np.rint((ys - lo) / (hi - lo) * (rows - 1)).astype(np.int64)


def approximate_entropy(sequence: np.ndarray, m: int, r: float) -> float:
    """Textbook ApEn with self-matches and Chebyshev template distance."""
    x = np.asarray(sequence, dtype=float)
    n = len(x)
    if m < 1:
        raise ParameterError("template length m must be >= 1")
    if n < m + 2:
        raise ParameterError(f"need at least m + 2 = {m + 2} samples, got {n}")
    if r < 0:
        raise ParameterError("tolerance must be nonnegative")
    phi_m = _phi(x, m, r)
    phi_m1 = _phi(x, m + 1, r)
    return max(phi_m - phi_m1, 0.0)


def _phi(x: np.ndarray, m: int, r: float) -> float:
    """Mean log fraction of templates within r of each template."""
    n = len(x)
    count = n - m + 1
    # templates[i] = x[i : i + m], laid out as m shifted views.
    views = [x[j : j + count] for j in range(m)]
    counts = np.zeros(count, dtype=np.int64)
    for start in range(0, count, _BLOCK):
        stop = min(start + _BLOCK, count)
        within = np.ones((stop - start, count), dtype=bool)
        for v in views:
            np.logical_and(within, np.abs(v[start:stop, None] - v[None, :]) <= r, out=within)
        counts[start:stop] = within.sum(axis=1)
    return float(np.mean(np.log(counts / count)))


def pixel_approximate_entropy(
    series: TimeSeries,
    canvas: CanvasSpec,
    m: int = DEFAULT_WINDOW,
    r: float = DEFAULT_TOLERANCE_FRACTION,
) -> float:
    """ApEn of the pixel-quantized line with tolerance r * sigma of the rows."""
    rows = quantize_to_pixel_rows(series, canvas)
    sigma = float(rows.std())
    if sigma == 0.0:
        return 0.0
    return approximate_entropy(rows, m, r * sigma)
