"""Pairwise preservation metrics between stimulus and sketch profiles."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.sparse import csr_matrix
from scipy.sparse.csgraph import maximum_flow

from .core import TimeSeries
from .errors import AlignmentError, ParameterError
from .noise import NoiseLevel
from .persistence import PersistenceDiagram
from .profile import FeatureProfile
from .spectral import PeriodicComponent


def _ordinates(series) -> np.ndarray:
    if isinstance(series, TimeSeries):
        return series.ys
    return np.asarray(series, dtype=float)


def _aligned_pair(a, b) -> tuple[np.ndarray, np.ndarray]:
    ya, yb = _ordinates(a), _ordinates(b)
    if len(ya) != len(yb):
        raise AlignmentError(f"series length mismatch: {len(ya)} vs {len(yb)}")
    if isinstance(a, TimeSeries) and isinstance(b, TimeSeries) and not np.allclose(a.xs, b.xs):
        raise AlignmentError("series must share their sampling grid")
    return ya, yb


def lp_norm(a, b, p) -> float:
    """L1, L2, or L-infinity distance between aligned series."""
    ya, yb = _aligned_pair(a, b)
    diff = ya - yb
    if p == 1:
        return float(np.sum(np.abs(diff)))
    if p == 2:
        return float(np.sqrt(np.sum(diff * diff)))
    if p == math.inf:
        return float(np.max(np.abs(diff)))
    raise ParameterError(f"unsupported norm order {p!r} (use 1, 2, or math.inf)")


def dtw_distance(a, b) -> float:
    """Classic dynamic time warping cost with unconstrained warping.

    Accumulates |a_i - b_j| along the cheapest monotone path from one
    boundary pair to the other, DP evaluated along anti-diagonals so long
    series stay fast.
    """
    ya, yb = _ordinates(a), _ordinates(b)
    n, m = len(ya), len(yb)
    if n == 0 or m == 0:
        raise ParameterError("dtw requires nonempty series")
    inf = np.inf
    prev2 = np.full(n, inf)
    prev1 = np.full(n, inf)
    cur = np.full(n, inf)
    for d in range(n + m - 1):
        lo = max(0, d - m + 1)
        hi = min(n - 1, d)
        cur.fill(inf)
        local = np.abs(ya[lo : hi + 1] - yb[d - hi : d - lo + 1][::-1])
        if d == 0:
            cur[0] = local[0]
        else:
            left = prev1[lo : hi + 1]
            if lo == 0:
                up = np.concatenate(([inf], prev1[:hi]))
                diag = np.concatenate(([inf], prev2[:hi]))
            else:
                up = prev1[lo - 1 : hi]
                diag = prev2[lo - 1 : hi]
            cur[lo : hi + 1] = local + np.minimum(np.minimum(left, up), diag)
        prev2, prev1, cur = prev1, cur, prev2
    return float(prev1[n - 1])


# --- bottleneck distance --------------------------------------------------


def bottleneck_distance(d1: PersistenceDiagram, d2: PersistenceDiagram) -> float:
    """Min over partial matchings of the max pair cost, diagonal allowed.

    Point-to-point cost is the L-infinity distance between (birth, death)
    pairs; an unmatched point pays half its persistence to reach the
    diagonal. The exact optimum is found by binary search over the candidate
    costs with a bipartite feasibility test at each radius.
    """
    pts1 = d1.births_deaths()
    pts2 = d2.births_deaths()
    n1, n2 = len(pts1), len(pts2)
    diag1 = (pts1[:, 1] - pts1[:, 0]) / 2.0 if n1 else np.empty(0)
    diag2 = (pts2[:, 1] - pts2[:, 0]) / 2.0 if n2 else np.empty(0)
    if n1 == 0 and n2 == 0:
        return 0.0
    if n1 == 0:
        return float(diag2.max())
    if n2 == 0:
        return float(diag1.max())
    cross = np.maximum(
        np.abs(pts1[:, 0, None] - pts2[None, :, 0]),
        np.abs(pts1[:, 1, None] - pts2[None, :, 1]),
    )
    candidates = np.unique(np.concatenate([[0.0], diag1, diag2, cross.ravel()]))
    lo, hi = 0, len(candidates) - 1  # hi (all points to diagonal) is feasible
    while lo < hi:
        mid = (lo + hi) // 2
        if _matching_feasible(candidates[mid], cross, diag1, diag2):
            hi = mid
        else:
            lo = mid + 1
    return float(candidates[lo])


def _matching_feasible(r: float, cross: np.ndarray, diag1: np.ndarray, diag2: np.ndarray) -> bool:
    """Can every point of persistence > 2r be matched within radius r?

    Points within r of the diagonal absorb themselves for free, so a
    matching of max cost <= r exists iff the mandatory points on both sides
    can be simultaneously matched to real partners. Checked as a max-flow
    with unit lower bounds on the mandatory vertices.
    """
    mand1 = diag1 > r
    mand2 = diag2 > r
    k1, k2 = int(mand1.sum()), int(mand2.sum())
    if k1 == 0 and k2 == 0:
        return True
    within = cross <= r
    # Cheap necessary condition: every mandatory point needs some partner.
    if k1 and not within[mand1].any(axis=1).all():
        return False
    if k2 and not within[:, mand2].any(axis=0).all():
        return False

    n1, n2 = cross.shape
    keep = within & (mand1[:, None] | mand2[None, :])
    rows, cols = np.nonzero(keep)

    # Node layout: 0 = s, 1 = t, 2..2+n1 = left points, then right points,
    # then the super source/sink of the lower-bound transformation.
    s, t = 0, 1
    left0, right0 = 2, 2 + n1
    s_star, t_star = 2 + n1 + n2, 3 + n1 + n2
    edges_u = [np.full(k1, s_star), np.array([s]), left0 + rows]
    edges_v = [left0 + np.nonzero(mand1)[0], np.array([t_star]), right0 + cols]
    caps = [np.ones(k1, dtype=np.int32), np.array([k1], dtype=np.int32), np.ones(len(rows), dtype=np.int32)]
    free1 = np.nonzero(~mand1)[0]
    edges_u.append(np.full(len(free1), s))
    edges_v.append(left0 + free1)
    caps.append(np.ones(len(free1), dtype=np.int32))
    edges_u.append(np.full(k2, s_star))
    edges_v.append(np.full(k2, t))
    caps.append(np.ones(k2, dtype=np.int32))
    edges_u.append(right0 + np.nonzero(mand2)[0])
    edges_v.append(np.full(k2, t_star))
    caps.append(np.ones(k2, dtype=np.int32))
    free2 = np.nonzero(~mand2)[0]
    edges_u.append(right0 + free2)
    edges_v.append(np.full(len(free2), t))
    caps.append(np.ones(len(free2), dtype=np.int32))
    edges_u.append(np.array([t]))
    edges_v.append(np.array([s]))
    caps.append(np.array([n1 + n2 + 1], dtype=np.int32))

    u = np.concatenate(edges_u)
    v = np.concatenate(edges_v)
    c = np.concatenate(caps)
    graph = csr_matrix((c, (u, v)), shape=(t_star + 1, t_star + 1))
    flow = maximum_flow(graph, s_star, t_star)
    return int(flow.flow_value) == k1 + k2


# --- scalar deltas ---------------------------------------------------------


def amplitude_period_delta(p1: PeriodicComponent | None, p2: PeriodicComponent | None) -> tuple[float, int] | None:
    """(amplitude difference, period-count difference), or None when either
    side reported no periodicity."""
    if p1 is None or p2 is None:
        return None
    return abs(p1.amplitude - p2.amplitude), abs(p1.period_count - p2.period_count)


def area_delta(n1, n2, signed: bool = False) -> float:
    """Difference in area covered by two noise estimates.

    By default sums absolute bar heights, which keeps the comparison
    meaningful for zero-mean noise; ``signed=True`` uses the raw signed sums
    instead.
    """
    ya, yb = _aligned_pair(n1, n2)
    if signed:
        return float(abs(ya.sum() - yb.sum()))
    return float(abs(np.abs(ya).sum() - np.abs(yb).sum()))


# --- error-vs-noise regression ---------------------------------------------


def _level_index(level) -> int:
    if isinstance(level, NoiseLevel):
        return level.index
    return int(level)


def ols_line(points) -> tuple[float, float]:
    """Least-squares (slope, intercept) over (level index, error) pairs."""
    pts = [(float(_level_index(lv)), float(err)) for lv, err in points]
    if len({x for x, _ in pts}) < 2:
        raise ParameterError("regression needs at least 2 distinct noise levels")
    xs = np.array([x for x, _ in pts])
    ys = np.array([y for _, y in pts])
    xm, ym = xs.mean(), ys.mean()
    slope = float(((xs - xm) @ (ys - ym)) / ((xs - xm) @ (xs - xm)))
    return slope, float(ym - slope * xm)


def error_noise_regression(points) -> float | None:
    """Percent error change from the clean level to the max-noise level.

    Fits an ordinary least-squares line over (level index, error) and
    returns 100 * (fit(max) - fit(none)) / fit(none); negative values mean
    the error decreased as noise increased. Returns ``None`` when the fitted
    clean-level baseline is zero.
    """
    slope, intercept = ols_line(points)
    baseline = intercept + slope * NoiseLevel.NONE.index
    top = intercept + slope * NoiseLevel.MAX.index
    if abs(baseline) < 1e-12:
        return None
    return 100.0 * (top - baseline) / baseline


# --- aggregated per-pair metrics -------------------------------------------


@dataclass(frozen=True)
class PreservationMetrics:
    """Every pairwise measurement for one (stimulus, sketch) pair.

    The ``*_ref`` fields hold the stimulus-side magnitudes used to normalize
    raw distances for grading.
    """

    trend_l2_fft: float
    trend_l2_loess: float
    trend_l1: float
    trend_linf: float
    trend_dtw: float
    delta_amplitude: float | None
    delta_period: int | None
    bottleneck: float
    delta_area: float
    delta_area_signed: float
    pae_stimulus: float
    pae_sketch: float
    trend_ref: float
    amplitude_ref: float | None
    period_ref: int | None
    extrema_ref: float
    noise_area_ref: float

    def to_json(self) -> dict:
        out = {}
        for key, value in self.__dict__.items():
            out[key] = None if value is None else float(value)
        return out


def _secondary_persistence(diagram: PersistenceDiagram) -> float:
    """Largest persistence below the essential pair's."""
    values = sorted((p.persistence for p in diagram.pairs), reverse=True)
    return values[1] if len(values) > 1 else 0.0


def compute_preservation_metrics(stimulus: FeatureProfile, sketch: FeatureProfile) -> PreservationMetrics:
    """All pairwise metrics between two feature profiles on a shared grid."""
    deltas = amplitude_period_delta(stimulus.periodic, sketch.periodic)
    return PreservationMetrics(
        trend_l2_fft=lp_norm(stimulus.trend_fft, sketch.trend_fft, 2),
        trend_l2_loess=lp_norm(stimulus.trend_loess, sketch.trend_loess, 2),
        trend_l1=lp_norm(stimulus.trend_fft, sketch.trend_fft, 1),
        trend_linf=lp_norm(stimulus.trend_fft, sketch.trend_fft, math.inf),
        trend_dtw=dtw_distance(stimulus.trend_fft, sketch.trend_fft),
        delta_amplitude=None if deltas is None else deltas[0],
        delta_period=None if deltas is None else deltas[1],
        bottleneck=bottleneck_distance(stimulus.extrema, sketch.extrema),
        delta_area=area_delta(stimulus.noise, sketch.noise),
        delta_area_signed=area_delta(stimulus.noise, sketch.noise, signed=True),
        pae_stimulus=stimulus.pae,
        pae_sketch=sketch.pae,
        trend_ref=lp_norm(stimulus.trend_fft, np.zeros(len(stimulus.trend_fft)), 2),
        amplitude_ref=None if stimulus.periodic is None else stimulus.periodic.amplitude,
        period_ref=None if stimulus.periodic is None else stimulus.periodic.period_count,
        extrema_ref=_secondary_persistence(stimulus.extrema) / 2.0,
        noise_area_ref=float(np.abs(stimulus.noise.ys).sum()),
    )
