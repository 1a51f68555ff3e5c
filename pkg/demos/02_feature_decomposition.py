"""Decompose one noisy series into its four visual features.

Walks the estimation pipeline a report uses internally: low FFT band and
LOESS fit for the trend, the dominant frequency bin for periodicity, the
high band for noise, sublevel-set persistence for peaks/valleys, and pixel
approximate entropy for perceived noisiness.
"""

from pathlib import Path

import numpy as np

from linesketch import (
    CanvasSpec,
    NoiseLevel,
    TimeSeries,
    estimate_midband,
    estimate_noise_fft,
    extract_feature_profile,
    inject_gaussian_noise,
    line_chart_svg,
    noise_cutoff,
    normalize_and_resample,
    rescale_to_canvas,
    trend_cutoff,
)

OUT = Path(__file__).parent / "output" / "features"
OUT.mkdir(parents=True, exist_ok=True)

canvas = CanvasSpec()
xs = np.arange(950.0)
u = xs / 950.0
clean = TimeSeries(xs, 60.0 * u + 80.0 * np.sin(2 * np.pi * 12 * u))
stimulus = inject_gaussian_noise(clean, NoiseLevel.MEDIUM, seed=1)

# The analysis frame: canvas-scaled, upsampled 10x, centered.
normalized = normalize_and_resample(rescale_to_canvas(stimulus, canvas), canvas, 9500)
profile = extract_feature_profile(normalized, canvas)

n = len(normalized)
print(f"samples: {n}, trend band: bins 0..{trend_cutoff(n)}, noise band: bins {noise_cutoff(n)}..{n // 2}")
print(f"periodic component: amplitude {profile.periodic.amplitude:.1f} px, "
      f"{profile.periodic.period_count} cycles over the window")
print(f"persistence pairs: {len(profile.extrema)} "
      f"(max persistence {profile.extrema.max_persistence():.1f} px)")
print(f"pixel approximate entropy: {profile.pae:.3f}")

residual = normalized.ys - (profile.trend_fft.ys + estimate_midband(normalized).ys + estimate_noise_fft(normalized).ys)
print(f"band partition residual (should be ~0): {np.abs(residual).max():.2e}")

half = canvas.height / 2.0
for name, series in [
    ("source", normalized),
    ("trend_fft", profile.trend_fft),
    ("trend_loess", profile.trend_loess),
    ("periodic", profile.periodic.waveform),
    ("noise", profile.noise),
]:
    (OUT / f"{name}.svg").write_text(line_chart_svg(series.with_ys(series.ys + half), canvas))
print(f"\nwrote component SVGs to {OUT}")
