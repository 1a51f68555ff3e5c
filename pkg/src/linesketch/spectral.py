"""Frequency-domain feature estimation.

A series is split into three disjoint frequency bands: a low band treated as
the trend, a high band treated as noise, and whatever lies between. The band
edges sit at one third and two thirds of the log-frequency axis, i.e.
K_lo = round((N/2)^(1/3)) and K_hi = round((N/2)^(2/3)), so the three
inverse transforms always sum back to the original signal. The dominant
non-DC bin gives the periodic component.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .core import TimeSeries
from .errors import ParameterError


@dataclass(frozen=True)
class Spectrum:
    """One-sided complex coefficients of a real signal (bin 0 is DC)."""

    coefficients: np.ndarray
    n_samples: int

    def __post_init__(self):
        coeffs = np.asarray(self.coefficients, dtype=complex)
        coeffs.setflags(write=False)
        object.__setattr__(self, "coefficients", coeffs)
        if not np.all(np.isfinite(coeffs)):
            raise ParameterError("spectrum coefficients must be finite")
        if len(coeffs) != self.n_samples // 2 + 1:
            raise ParameterError("coefficient count does not match the sample count")

    @property
    def max_bin(self) -> int:
        return len(self.coefficients) - 1


@dataclass(frozen=True)
class PeriodicComponent:
    """Dominant sinusoid: peak amplitude, cycles over the window, waveform."""

    amplitude: float
    period_count: int
    waveform: TimeSeries

    def __post_init__(self):
        if self.amplitude < 0:
            raise ParameterError("amplitude must be nonnegative")
        if self.period_count < 1:
            raise ParameterError("period count must be >= 1")


def _require_uniform(series: TimeSeries) -> None:
    if not series.is_uniform:
        raise ParameterError("spectral estimation requires a uniformly sampled series")


def fft_decompose(series: TimeSeries) -> Spectrum:
    """Forward real transform of the ordinates. Exactly invertible."""
    _require_uniform(series)
    return Spectrum(np.fft.rfft(series.ys), len(series))


def reconstruct(spectrum: Spectrum) -> np.ndarray:
    """Inverse of :func:`fft_decompose`, back to ordinate samples."""
    return np.fft.irfft(spectrum.coefficients, n=spectrum.n_samples)


def trend_cutoff(n_samples: int) -> int:
    """Highest bin index kept in the trend (low) band."""
    return max(1, round((n_samples / 2.0) ** (1.0 / 3.0)))


def noise_cutoff(n_samples: int) -> int:
    """Lowest bin index kept in the noise (high) band.

    Clamped above the trend cutoff so the bands stay disjoint even for
    degenerate tiny series.
    """
    return max(trend_cutoff(n_samples) + 1, round((n_samples / 2.0) ** (2.0 / 3.0)))


def _band(series: TimeSeries, lo: int, hi: int) -> TimeSeries:
    """Inverse transform of bins lo..hi inclusive, other bins zeroed."""
    spectrum = fft_decompose(series)
    masked = np.zeros_like(spectrum.coefficients)
    hi = min(hi, spectrum.max_bin)
    if lo <= hi:
        masked[lo : hi + 1] = spectrum.coefficients[lo : hi + 1]
    return series.with_ys(np.fft.irfft(masked, n=spectrum.n_samples))


def estimate_trend_fft(series: TimeSeries) -> TimeSeries:
    """Low-pass trend estimate: keep DC through the trend cutoff."""
    return _band(series, 0, trend_cutoff(len(series)))


def estimate_midband(series: TimeSeries) -> TimeSeries:
    """Everything strictly between the trend and noise bands."""
    return _band(series, trend_cutoff(len(series)) + 1, noise_cutoff(len(series)) - 1)


def estimate_noise_fft(series: TimeSeries) -> TimeSeries:
    """High-pass noise estimate: keep the noise cutoff through Nyquist."""
    return _band(series, noise_cutoff(len(series)), len(series) // 2)


def estimate_periodicity(series: TimeSeries) -> PeriodicComponent | None:
    """Reconstruct the strongest non-DC frequency component.

    Returns ``None`` when every non-DC bin is zero (a constant series has no
    periodicity to report). The reported amplitude is the peak amplitude of
    the reconstructed sinusoid, so a sine of amplitude 2 reports 2; the
    period count is the bin index, i.e. whole cycles across the window.
    """
    spectrum = fft_decompose(series)
    mags = np.abs(spectrum.coefficients)
    if len(mags) < 2 or not np.any(mags[1:] > 0.0):
        return None
    k = int(np.argmax(mags[1:])) + 1
    masked = np.zeros_like(spectrum.coefficients)
    masked[k] = spectrum.coefficients[k]
    waveform = series.with_ys(np.fft.irfft(masked, n=spectrum.n_samples))
    n = spectrum.n_samples
    # The Nyquist bin of an even-length transform has no conjugate twin.
    scale = 1.0 if (n % 2 == 0 and k == n // 2) else 2.0
    return PeriodicComponent(amplitude=scale * float(mags[k]) / n, period_count=k, waveform=waveform)
