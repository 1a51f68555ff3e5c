"""Summarize how sketch error evolves across noise levels.

Builds a small synthetic corpus where sketches degrade with the noise
level, fits the per-level regression line, and reports the clean-to-max
percent change alongside the scatter SVG.
"""

from pathlib import Path

import numpy as np

from linesketch import (
    NoiseLevel,
    TimeSeries,
    error_noise_regression,
    inject_gaussian_noise,
    lp_norm,
    ols_line,
    scatter_regression_svg,
    estimate_trend_fft,
    normalize_and_resample,
    rescale_to_canvas,
    CanvasSpec,
)

OUT = Path(__file__).parent / "output"
OUT.mkdir(parents=True, exist_ok=True)

canvas = CanvasSpec()
xs = np.arange(950.0)
u = xs / 950.0
clean = TimeSeries(xs, 120.0 * u + 40.0 * np.sin(2 * np.pi * 6 * u))


def normalized_trend(series):
    frame = normalize_and_resample(rescale_to_canvas(series, canvas), canvas, 2048)
    return estimate_trend_fft(frame)


points = []
for level in NoiseLevel:
    stimulus = inject_gaussian_noise(clean, level, seed=level.index)
    stim_trend = normalized_trend(stimulus)
    for trial in range(4):
        # Sketch quality degrades with the noise level: a slow bend of
        # growing amplitude warps the perceived trend.
        rng = np.random.default_rng(100 * level.index + trial)
        bend = (4.0 + 10.0 * level.index) * np.sin(2 * np.pi * 2 * u + rng.uniform(0, 2 * np.pi))
        sketch = stimulus.with_ys(stimulus.ys + bend)
        sketch_trend = normalized_trend(sketch)
        points.append((level, lp_norm(stim_trend, sketch_trend, 2)))

slope, intercept = ols_line(points)
change = error_noise_regression(points)
print(f"{'level':8s} mean trend-L2 error")
for level in NoiseLevel:
    values = [v for lv, v in points if lv is level]
    print(f"{level.value:8s} {np.mean(values):10.1f}")
print(f"\nOLS slope {slope:.2f} px/level, intercept {intercept:.2f} px")
print(f"percent error change, clean -> max noise: {change:+.1f}%")
print("(negative values mean error shrinking as noise grows; real corpora show both signs)")

svg = scatter_regression_svg(points, slope=slope, intercept=intercept, title="trend L2 error vs noise level")
(OUT / "error_vs_noise.svg").write_text(svg)
print(f"wrote {OUT / 'error_vs_noise.svg'}")
