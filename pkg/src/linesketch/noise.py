"""SNR-targeted Gaussian noise injection and SNR measurement.

Signal power is taken about the mean, the usual SNR convention, so the five
study levels are reproducible on any dataset. The noise draw is seeded and
bit-stable, which keeps generated stimuli archivable.
"""

from __future__ import annotations

import math
from enum import Enum

import numpy as np

from .core import TimeSeries
from .errors import AlignmentError, DegenerateSignalError, ParameterError


class NoiseLevel(Enum):
    """The five stimulus noise conditions.

    ``NONE`` leaves the input untouched; the rest target a post-injection
    signal-to-noise ratio in decibels (30, 20, 10, 5).
    """

    NONE = "none"
    LOW = "low"
    MEDIUM = "medium"
    HIGH = "high"
    MAX = "max"

    @property
    def target_snr_db(self) -> float | None:
        return _TARGET_DB[self]

    @property
    def index(self) -> int:
        """Ordinal position from clean (0) to noisiest (4)."""
        return _ORDER.index(self)

    @classmethod
    def from_token(cls, token: str) -> "NoiseLevel":
        """Parse a CLI token: a label name or a dB value (none|30|20|10|5)."""
        t = str(token).strip().lower()
        for level in cls:
            if t == level.value:
                return level
        for level, db in _TARGET_DB.items():
            if db is not None and t == str(int(db)):
                return level
        raise ParameterError(f"unknown noise level {token!r} (expected none|30|20|10|5)")


_TARGET_DB = {
    NoiseLevel.NONE: None,
    NoiseLevel.LOW: 30.0,
    NoiseLevel.MEDIUM: 20.0,
    NoiseLevel.HIGH: 10.0,
    NoiseLevel.MAX: 5.0,
}

_ORDER = [NoiseLevel.NONE, NoiseLevel.LOW, NoiseLevel.MEDIUM, NoiseLevel.HIGH, NoiseLevel.MAX]


def signal_power(series: TimeSeries) -> float:
    """Mean squared deviation of the ordinates about their mean."""
    ys = series.ys
    return float(np.mean((ys - ys.mean()) ** 2))


def inject_gaussian_noise(series: TimeSeries, level: NoiseLevel, seed: int) -> TimeSeries:
    """Add zero-mean Gaussian noise sized to hit the level's target SNR.

    The noise variance is fixed a priori from the input's signal power:
    sigma^2 = P_signal / 10^(SNR/10). The x grid is preserved exactly and the
    same seed always reproduces the same stimulus.
    """
    if level is NoiseLevel.NONE:
        return series
    target_db = level.target_snr_db
    power = signal_power(series)
    if power == 0.0:
        raise DegenerateSignalError("cannot target a finite SNR on a zero-power signal")
    sigma = math.sqrt(power / 10.0 ** (target_db / 10.0))
    rng = np.random.default_rng(seed)
    return series.with_ys(series.ys + rng.normal(0.0, sigma, len(series)))


def measure_snr(signal: TimeSeries, noisy: TimeSeries) -> float:
    """Measured SNR in dB between a clean series and its noisy counterpart.

    Returns ``math.inf`` when the two series are identical (zero noise
    power), a distinct outcome rather than an arbitrary large number.
    """
    if len(signal) != len(noisy) or not np.allclose(signal.xs, noisy.xs):
        raise AlignmentError("signal and noisy series must share their sampling grid")
    p_signal = signal_power(signal)
    p_noise = float(np.mean((noisy.ys - signal.ys) ** 2))
    if p_noise == 0.0:
        return math.inf
    return 10.0 * math.log10(p_signal / p_noise)
