"""Generate one stimulus per noise level and verify the measured SNR.

A clean synthetic series stands in for a dataset; each level draws seeded
Gaussian noise sized from the signal's power, so the same seed always
reproduces the same stimulus. Outputs land in demos/output/noise_levels/.
"""

from pathlib import Path

import numpy as np

from linesketch import (
    CanvasSpec,
    NoiseLevel,
    TimeSeries,
    inject_gaussian_noise,
    line_chart_svg,
    measure_snr,
    rescale_to_canvas,
    save_series_csv,
)

OUT = Path(__file__).parent / "output" / "noise_levels"
OUT.mkdir(parents=True, exist_ok=True)

xs = np.arange(950.0)
u = xs / 950.0
clean = TimeSeries(xs, 60.0 * u + 80.0 * np.sin(2 * np.pi * 12 * u))

canvas = CanvasSpec()
print(f"{'level':8s} {'target':>8s} {'measured':>10s}")
for seed, level in enumerate(NoiseLevel):
    stimulus = inject_gaussian_noise(clean, level, seed=seed)
    save_series_csv(stimulus, OUT / f"waves__{level.value}.csv")
    (OUT / f"waves__{level.value}.svg").write_text(line_chart_svg(rescale_to_canvas(stimulus, canvas), canvas))
    if level is NoiseLevel.NONE:
        print(f"{level.value:8s} {'--':>8s} {'(control)':>10s}")
    else:
        measured = measure_snr(clean, stimulus)
        print(f"{level.value:8s} {level.target_snr_db:8.0f} {measured:9.2f} dB")

print(f"\nwrote CSV + SVG per level to {OUT}")
