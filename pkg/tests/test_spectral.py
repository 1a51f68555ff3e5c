import numpy as np
import pytest

from linesketch.core import TimeSeries
from linesketch.errors import ParameterError
from linesketch.spectral import (
    Spectrum,
    estimate_midband,
    estimate_noise_fft,
    estimate_periodicity,
    estimate_trend_fft,
    fft_decompose,
    noise_cutoff,
    reconstruct,
    trend_cutoff,
)

import oracles


def dft_grid_series(n, build):
    """Series on the transform-aligned grid x_j = j*W/n (endpoint excluded)."""
    xs = np.arange(n) * (950.0 / n)
    return TimeSeries(xs, build(xs / 950.0))


def sine(cycles, amplitude=1.0):
    return lambda u: amplitude * np.sin(2 * np.pi * cycles * u)


class TestFftDecompose:
    def test_pure_sine_has_single_dominant_bin(self):
        for cycles in (1, 5, 12):
            series = dft_grid_series(256, sine(cycles))
            mags = np.abs(fft_decompose(series).coefficients)
            assert int(np.argmax(mags)) == cycles
            others = np.delete(mags, cycles)
            assert others.max() < 1e-9 * mags[cycles]

    def test_constant_zero_series_gives_zero_spectrum(self):
        series = TimeSeries(np.arange(64.0), np.zeros(64))
        assert np.all(fft_decompose(series).coefficients == 0)

    def test_matches_naive_dft_and_round_trips(self):
        rng = np.random.default_rng(11)
        for n in (16, 63, 128, 255, 256):
            ys = rng.normal(size=n)
            series = TimeSeries(np.arange(float(n)), ys)
            spectrum = fft_decompose(series)
            assert np.abs(spectrum.coefficients - oracles.dft_naive(ys)).max() < 1e-9
            assert np.abs(reconstruct(spectrum) - ys).max() < 1e-9

    def test_rejects_nonuniform_grid(self):
        series = TimeSeries(np.array([0.0, 1.0, 3.0, 4.0]), np.zeros(4))
        with pytest.raises(ParameterError):
            fft_decompose(series)

    def test_spectrum_length_validation(self):
        with pytest.raises(ParameterError):
            Spectrum(np.zeros(5, dtype=complex), n_samples=64)


class TestBandCutoffs:
    def test_city_block_sizes(self):
        # 9500 samples: 4750 positive bins, log-thirds at 17 and 283.
        assert trend_cutoff(9500) == 17
        assert noise_cutoff(9500) == 283

    def test_cutoffs_stay_ordered_for_tiny_series(self):
        for n in range(2, 64):
            assert 1 <= trend_cutoff(n) < noise_cutoff(n)


class TestTrendAndNoiseBands:
    def test_low_cycle_sine_passes_low_pass(self):
        for n in (16, 256, 1024):
            series = dft_grid_series(n, sine(1))
            out = estimate_trend_fft(series)
            assert np.abs(out.ys - series.ys).max() < 1e-6

    def test_fast_sine_blocked_by_low_pass(self):
        for n in (64, 256, 1024):
            series = dft_grid_series(n, sine(n // 4))
            out = estimate_trend_fft(series)
            assert np.abs(out.ys).max() < 1e-6

    def test_zero_series_stays_zero(self):
        series = TimeSeries(np.arange(32.0), np.zeros(32))
        assert np.all(estimate_trend_fft(series).ys == 0)
        assert np.all(estimate_noise_fft(series).ys == 0)

    def test_slow_sine_has_no_noise_component(self):
        series = dft_grid_series(512, sine(1))
        assert np.abs(estimate_noise_fft(series).ys).max() < 1e-6

    def test_band_partition_reconstructs_signal(self):
        rng = np.random.default_rng(5)
        for n in (17, 64, 255, 950):
            ys = rng.normal(size=n)
            series = TimeSeries(np.arange(float(n)), ys)
            total = estimate_trend_fft(series).ys + estimate_midband(series).ys + estimate_noise_fft(series).ys
            assert np.abs(total - ys).max() < 1e-9


class TestEstimatePeriodicity:
    def test_recovers_amplitude_and_period(self):
        series = dft_grid_series(2048, sine(12, amplitude=2.0))
        component = estimate_periodicity(series)
        assert component.period_count == 12
        assert component.amplitude == pytest.approx(2.0, rel=0.01)
        assert np.abs(component.waveform.ys - series.ys).max() < 1e-9

    def test_constant_series_reports_none(self):
        series = TimeSeries(np.arange(64.0), np.full(64, 3.25))
        assert estimate_periodicity(series) is None

    def test_dominant_component_wins(self):
        mixed = dft_grid_series(1024, lambda u: 2.0 * np.sin(2 * np.pi * 12 * u) + 0.5 * np.sin(2 * np.pi * 3 * u))
        component = estimate_periodicity(mixed)
        assert component.period_count == 12
        assert component.amplitude == pytest.approx(2.0, rel=0.01)

    def test_amplitude_invariant_to_constant_shift(self):
        rng = np.random.default_rng(21)
        ys = rng.normal(size=500)
        base = TimeSeries(np.arange(500.0), ys)
        shifted = base.with_ys(ys + 37.5)
        a = estimate_periodicity(base)
        b = estimate_periodicity(shifted)
        assert a.period_count == b.period_count
        assert a.amplitude == pytest.approx(b.amplitude, rel=1e-12)

    def test_nyquist_component_amplitude(self):
        n = 64
        xs = np.arange(float(n))
        series = TimeSeries(xs, 1.5 * np.cos(np.pi * xs))  # alternating +-1.5
        component = estimate_periodicity(series)
        assert component.period_count == n // 2
        assert component.amplitude == pytest.approx(1.5, rel=1e-9)
        assert np.abs(component.waveform.ys - series.ys).max() < 1e-9
