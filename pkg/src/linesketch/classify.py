"""Per-feature preservation grading and behavior-cluster assignment.

Grades here are produced by fixed thresholds on normalized metrics. They
stand in for human coding as a deterministic proxy: an identical pair grades
top marks on every applicable feature, and a sketch that drops a feature
entirely grades at the bottom.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from enum import Enum
from pathlib import Path

import numpy as np

from .errors import IncompleteGradesError, ParameterError
from .metrics import PreservationMetrics
from .profile import FeatureProfile
from .spectral import fft_decompose, trend_cutoff


class Grade(Enum):
    """Match quality for trend, periodicity, and noise."""

    VERY_WELL = "very_well"
    SOMEWHAT = "somewhat"
    NOT_AT_ALL = "not_at_all"


class ExtremaGrade(Enum):
    """How many of the stimulus peaks/valleys survive in the sketch."""

    MOST = "most"
    SOME = "some"
    NONE = "none"


class ClusterLabel(Enum):
    REPLICATOR = "replicator"
    TREND_KEEPER = "trend_keeper"
    DE_NOISER = "de_noiser"
    ANOMALY = "anomaly"


class TrendDirection(Enum):
    UP = "up"
    DOWN = "down"
    CONSTANT = "constant"


FEATURES = ("trend", "periodicity", "peaks_valleys", "noise")


@dataclass(frozen=True)
class DatasetProperties:
    """Which visual features a dataset is considered to carry."""

    trend_direction: TrendDirection = TrendDirection.CONSTANT
    has_periodicity: bool = False
    has_peaks_valleys: bool = False

    def to_json(self) -> dict:
        return {
            "trend": self.trend_direction.value,
            "periodic": self.has_periodicity,
            "peaks": self.has_peaks_valleys,
        }

    @classmethod
    def from_json(cls, obj: dict) -> "DatasetProperties":
        return cls(
            trend_direction=TrendDirection(obj.get("trend", "constant")),
            has_periodicity=bool(obj.get("periodic", False)),
            has_peaks_valleys=bool(obj.get("peaks", False)),
        )


@dataclass(frozen=True)
class GradeThresholds:
    """Two cut points per feature on the normalized error scale.

    Below the first cut the feature is preserved very well; from the second
    cut upward it is not preserved at all. Defaults were calibrated on
    synthetic pairs (identity scores top, feature-dropping sketches score
    bottom); they are a proxy for human coding, not a reproduction of it.
    """

    trend: tuple[float, float] = (0.25, 0.75)
    periodicity: tuple[float, float] = (0.25, 0.75)
    peaks_valleys: tuple[float, float] = (0.35, 0.90)
    noise: tuple[float, float] = (0.30, 0.80)

    def __post_init__(self):
        for name in FEATURES:
            lo, hi = getattr(self, name)
            if not (0 <= lo < hi):
                raise ParameterError(f"thresholds for {name} must satisfy 0 <= low < high")

    def cuts(self, feature: str) -> tuple[float, float]:
        if feature not in FEATURES:
            raise ParameterError(f"unknown feature {feature!r}")
        return getattr(self, feature)

    @classmethod
    def from_file(cls, path: str | Path) -> "GradeThresholds":
        with open(path) as fh:
            obj = json.load(fh)
        kwargs = {name: tuple(obj[name]) for name in FEATURES if name in obj}
        return cls(**kwargs)


DEFAULT_THRESHOLDS = GradeThresholds()


def normalized_error(metrics: PreservationMetrics, feature: str) -> float | None:
    """Feature error divided by the stimulus feature magnitude.

    Returns ``None`` when the stimulus itself carries no such feature to
    normalize against (nothing to grade).
    """
    if feature == "trend":
        if metrics.trend_ref == 0.0:
            return 0.0 if metrics.trend_l2_fft == 0.0 else float("inf")
        return metrics.trend_l2_fft / metrics.trend_ref
    if feature == "periodicity":
        if metrics.amplitude_ref is None:
            return None
        if metrics.delta_amplitude is None:
            return float("inf")  # sketch reported no periodicity at all
        return max(
            metrics.delta_amplitude / metrics.amplitude_ref if metrics.amplitude_ref > 0 else float("inf"),
            metrics.delta_period / max(metrics.period_ref, 1),
        )
    if feature == "peaks_valleys":
        if metrics.extrema_ref <= 0.0:
            return None
        return metrics.bottleneck / metrics.extrema_ref
    if feature == "noise":
        if metrics.noise_area_ref == 0.0:
            return 0.0 if metrics.delta_area == 0.0 else float("inf")
        return metrics.delta_area / metrics.noise_area_ref
    raise ParameterError(f"unknown feature {feature!r}")


def grade_feature(
    metrics: PreservationMetrics,
    feature: str,
    thresholds: GradeThresholds = DEFAULT_THRESHOLDS,
) -> Grade | ExtremaGrade | None:
    """Map one feature's normalized error through its two cut points.

    ``None`` signals a not-applicable feature (absent from the stimulus).
    """
    value = normalized_error(metrics, feature)
    if value is None:
        return None
    lo, hi = thresholds.cuts(feature)
    if feature == "peaks_valleys":
        scale = (ExtremaGrade.MOST, ExtremaGrade.SOME, ExtremaGrade.NONE)
    else:
        scale = (Grade.VERY_WELL, Grade.SOMEWHAT, Grade.NOT_AT_ALL)
    if value < lo:
        return scale[0]
    if value < hi:
        return scale[1]
    return scale[2]


def grade_all(
    metrics: PreservationMetrics,
    props: DatasetProperties,
    thresholds: GradeThresholds = DEFAULT_THRESHOLDS,
) -> dict[str, Grade | ExtremaGrade | None]:
    """Grade every feature the dataset carries; absent features grade None."""
    grades: dict[str, Grade | ExtremaGrade | None] = {
        "trend": grade_feature(metrics, "trend", thresholds),
        "noise": grade_feature(metrics, "noise", thresholds),
        "periodicity": grade_feature(metrics, "periodicity", thresholds) if props.has_periodicity else None,
        "peaks_valleys": grade_feature(metrics, "peaks_valleys", thresholds) if props.has_peaks_valleys else None,
    }
    return grades


_OK = {Grade.VERY_WELL, Grade.SOMEWHAT}
_EXTREMA_OK = {ExtremaGrade.MOST, ExtremaGrade.SOME}


def assign_cluster(grades: dict, props: DatasetProperties) -> ClusterLabel:
    """Label one sketch's behavior from its per-feature grades.

    A sketch that kept every feature the dataset carries is a replicator
    when it also kept the noise and a de-noiser when it scrubbed it; one
    that kept only the trend while dropping periodicity and extrema is a
    trend keeper (noise unconstrained); anything else is an anomaly. For
    datasets without periodicity or extrema the content conditions hold
    vacuously, so trend-only sketches land in replicator/de-noiser there.
    """
    trend = _require(grades, "trend")
    noise = _require(grades, "noise")
    periodicity = _require(grades, "periodicity") if props.has_periodicity else grades.get("periodicity")
    peaks = _require(grades, "peaks_valleys") if props.has_peaks_valleys else grades.get("peaks_valleys")

    trend_kept = trend in _OK
    content_kept = (
        trend_kept
        and (not props.has_periodicity or periodicity in _OK)
        and (not props.has_peaks_valleys or peaks in _EXTREMA_OK)
    )
    if content_kept:
        return ClusterLabel.REPLICATOR if noise in _OK else ClusterLabel.DE_NOISER
    if (
        trend_kept
        and (not props.has_periodicity or periodicity is Grade.NOT_AT_ALL)
        and (not props.has_peaks_valleys or peaks is ExtremaGrade.NONE)
    ):
        return ClusterLabel.TREND_KEEPER
    return ClusterLabel.ANOMALY


def _require(grades: dict, feature: str):
    value = grades.get(feature)
    if value is None:
        raise IncompleteGradesError(f"missing grade for required feature {feature!r}")
    return value


# --- dataset property inference --------------------------------------------

#: Net trend change below this fraction of the series range counts as flat.
TREND_DIRECTION_MIN_FRACTION = 0.1
#: A cycle beyond the trend band must reach this fraction of half the range.
PERIODICITY_MIN_STRENGTH = 0.15
#: A secondary extremum must persist at least this fraction of the range.
PEAKS_MIN_PROMINENCE = 0.2


def infer_dataset_properties(profile: FeatureProfile) -> DatasetProperties:
    """Heuristic feature catalog for a stimulus when none is provided.

    Periodicity is only recognized for cycles faster than the trend band
    (slower oscillations are, by the band convention, trend); thresholds are
    deliberately conservative. A curated properties file should be preferred
    for real studies.
    """
    ys = profile.source.ys
    n = len(ys)
    spread = float(ys.max() - ys.min())

    trend_ys = profile.trend_loess.ys
    net = float(trend_ys[-1] - trend_ys[0])
    if spread == 0.0 or abs(net) < TREND_DIRECTION_MIN_FRACTION * spread:
        direction = TrendDirection.CONSTANT
    else:
        direction = TrendDirection.UP if net > 0 else TrendDirection.DOWN

    has_periodicity = False
    cutoff = trend_cutoff(n)
    if spread > 0 and n // 2 > cutoff + 1:
        mags = np.abs(fft_decompose(profile.source).coefficients)
        k = cutoff + 1 + int(np.argmax(mags[cutoff + 1 :]))
        scale = 1.0 if (n % 2 == 0 and k == n // 2) else 2.0
        amplitude = scale * float(mags[k]) / n
        has_periodicity = amplitude >= PERIODICITY_MIN_STRENGTH * (spread / 2.0)

    persistences = sorted((p.persistence for p in profile.extrema.pairs), reverse=True)
    has_peaks = len(persistences) > 1 and spread > 0 and persistences[1] >= PEAKS_MIN_PROMINENCE * spread

    return DatasetProperties(
        trend_direction=direction,
        has_periodicity=has_periodicity,
        has_peaks_valleys=has_peaks,
    )
