"""Bundled per-series feature estimates used by the comparison pipeline."""

from __future__ import annotations

from dataclasses import dataclass

from .core import CanvasSpec, TimeSeries
from .entropy import DEFAULT_TOLERANCE_FRACTION, DEFAULT_WINDOW, pixel_approximate_entropy
from .loess import DEFAULT_SPAN, estimate_trend_loess
from .persistence import PersistenceDiagram, persistence_diagram
from .spectral import PeriodicComponent, estimate_noise_fft, estimate_periodicity, estimate_trend_fft


@dataclass(frozen=True)
class FeatureProfile:
    """A series' estimated trend, periodicity, extrema, noise, and entropy.

    All component series share the source's sampling grid.
    """

    source: TimeSeries
    trend_fft: TimeSeries
    trend_loess: TimeSeries
    periodic: PeriodicComponent | None
    extrema: PersistenceDiagram
    noise: TimeSeries
    pae: float

    def to_json(self) -> dict:
        return {
            "trend_fft": list(map(float, self.trend_fft.ys)),
            "trend_loess": list(map(float, self.trend_loess.ys)),
            "periodic": None
            if self.periodic is None
            else {
                "amplitude": self.periodic.amplitude,
                "period_count": self.periodic.period_count,
            },
            "extrema": self.extrema.to_json(),
            "noise": list(map(float, self.noise.ys)),
            "pae": self.pae,
        }


def extract_feature_profile(
    series: TimeSeries,
    canvas: CanvasSpec | None = None,
    *,
    loess_span: float = DEFAULT_SPAN,
    pae_window: int = DEFAULT_WINDOW,
    pae_tolerance: float = DEFAULT_TOLERANCE_FRACTION,
) -> FeatureProfile:
    """Estimate the four visual features of a normalized series."""
    canvas = canvas or CanvasSpec()
    return FeatureProfile(
        source=series,
        trend_fft=estimate_trend_fft(series),
        trend_loess=estimate_trend_loess(series, span=loess_span),
        periodic=estimate_periodicity(series),
        extrema=persistence_diagram(series),
        noise=estimate_noise_fft(series),
        pae=pixel_approximate_entropy(series, canvas, m=pae_window, r=pae_tolerance),
    )
