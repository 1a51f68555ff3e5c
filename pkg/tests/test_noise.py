import math

import numpy as np
import pytest

from linesketch.core import TimeSeries
from linesketch.errors import AlignmentError, DegenerateSignalError, ParameterError
from linesketch.noise import NoiseLevel, inject_gaussian_noise, measure_snr, signal_power


def sine_series(n=10_000, cycles=3.0, amplitude=1.0):
    xs = np.arange(n, dtype=float)
    return TimeSeries(xs, amplitude * np.sin(2 * np.pi * cycles * xs / n))


class TestNoiseLevel:
    def test_level_catalog(self):
        targets = {level: level.target_snr_db for level in NoiseLevel}
        assert targets == {
            NoiseLevel.NONE: None,
            NoiseLevel.LOW: 30.0,
            NoiseLevel.MEDIUM: 20.0,
            NoiseLevel.HIGH: 10.0,
            NoiseLevel.MAX: 5.0,
        }

    def test_ordinal_indices(self):
        assert [lv.index for lv in NoiseLevel] == [0, 1, 2, 3, 4]

    def test_cli_tokens(self):
        assert NoiseLevel.from_token("none") is NoiseLevel.NONE
        assert NoiseLevel.from_token("30") is NoiseLevel.LOW
        assert NoiseLevel.from_token("20") is NoiseLevel.MEDIUM
        assert NoiseLevel.from_token("10") is NoiseLevel.HIGH
        assert NoiseLevel.from_token("5") is NoiseLevel.MAX
        with pytest.raises(ParameterError):
            NoiseLevel.from_token("12")


class TestInjectGaussianNoise:
    def test_none_level_returns_input_unchanged(self):
        series = sine_series(100)
        out = inject_gaussian_noise(series, NoiseLevel.NONE, seed=1)
        assert out is series

    def test_medium_level_hits_target(self):
        series = sine_series()
        noisy = inject_gaussian_noise(series, NoiseLevel.MEDIUM, seed=42)
        assert 19.5 <= measure_snr(series, noisy) <= 20.5

    def test_xs_preserved_exactly(self):
        series = sine_series(500)
        noisy = inject_gaussian_noise(series, NoiseLevel.MAX, seed=9)
        assert np.array_equal(noisy.xs, series.xs)

    def test_same_seed_bit_identical(self):
        series = sine_series(256)
        a = inject_gaussian_noise(series, NoiseLevel.HIGH, seed=5)
        b = inject_gaussian_noise(series, NoiseLevel.HIGH, seed=5)
        assert np.array_equal(a.ys, b.ys)

    def test_different_seeds_differ(self):
        series = sine_series(256)
        a = inject_gaussian_noise(series, NoiseLevel.HIGH, seed=5)
        b = inject_gaussian_noise(series, NoiseLevel.HIGH, seed=6)
        assert not np.array_equal(a.ys, b.ys)

    def test_zero_power_signal_rejected(self):
        flat = TimeSeries(np.arange(10.0), np.full(10, 3.0))
        with pytest.raises(DegenerateSignalError):
            inject_gaussian_noise(flat, NoiseLevel.LOW, seed=0)
        assert inject_gaussian_noise(flat, NoiseLevel.NONE, seed=0) is flat

    def test_round_trip_all_levels(self):
        series = sine_series(20_000)
        for seed, level in enumerate([NoiseLevel.LOW, NoiseLevel.MEDIUM, NoiseLevel.HIGH, NoiseLevel.MAX]):
            noisy = inject_gaussian_noise(series, level, seed=seed)
            assert measure_snr(series, noisy) == pytest.approx(level.target_snr_db, abs=0.5)


class TestMeasureSnr:
    def test_identical_series_is_infinite_outcome(self):
        series = sine_series(100)
        assert math.isinf(measure_snr(series, series))

    def test_equal_powers_give_zero_db(self):
        xs = np.arange(4.0)
        signal = TimeSeries(xs, np.array([2.0, -2.0, 2.0, -2.0]))
        noisy = TimeSeries(xs, np.array([4.0, 0.0, 4.0, 0.0]))
        assert signal_power(signal) == 4.0
        assert measure_snr(signal, noisy) == pytest.approx(0.0, abs=1e-12)

    def test_large_sample_matches_known_sigma(self):
        n = 100_000
        xs = np.arange(float(n))
        signal = TimeSeries(xs, np.sqrt(2.0) * np.sin(2 * np.pi * 7 * xs / n))  # unit power
        assert signal_power(signal) == pytest.approx(1.0, rel=1e-6)
        for sigma in (0.1, 0.5, 2.0):
            rng = np.random.default_rng(int(sigma * 10))
            noisy = signal.with_ys(signal.ys + rng.normal(0, sigma, n))
            expected = 10 * math.log10(1.0 / sigma**2)
            assert measure_snr(signal, noisy) == pytest.approx(expected, abs=0.2)

    def test_misaligned_series_rejected(self):
        a = sine_series(100)
        b = TimeSeries(a.xs + 1.0, a.ys)
        with pytest.raises(AlignmentError):
            measure_snr(a, b)
