import itertools
import math

import numpy as np
import pytest

from linesketch.classify import (
    DEFAULT_THRESHOLDS,
    ClusterLabel,
    DatasetProperties,
    ExtremaGrade,
    Grade,
    GradeThresholds,
    TrendDirection,
    assign_cluster,
    grade_feature,
    infer_dataset_properties,
    normalized_error,
)
from linesketch.core import CanvasSpec, TimeSeries, normalize_and_resample
from linesketch.errors import IncompleteGradesError, ParameterError
from linesketch.metrics import PreservationMetrics
from linesketch.profile import extract_feature_profile


def metrics_with(**overrides) -> PreservationMetrics:
    base = dict(
        trend_l2_fft=0.0,
        trend_l2_loess=0.0,
        trend_l1=0.0,
        trend_linf=0.0,
        trend_dtw=0.0,
        delta_amplitude=0.0,
        delta_period=0,
        bottleneck=0.0,
        delta_area=0.0,
        delta_area_signed=0.0,
        pae_stimulus=0.5,
        pae_sketch=0.5,
        trend_ref=100.0,
        amplitude_ref=50.0,
        period_ref=12,
        extrema_ref=40.0,
        noise_area_ref=1000.0,
    )
    base.update(overrides)
    return PreservationMetrics(**base)


ALL_PROPS = DatasetProperties(TrendDirection.UP, has_periodicity=True, has_peaks_valleys=True)
BARE_PROPS = DatasetProperties(TrendDirection.UP, has_periodicity=False, has_peaks_valleys=False)


class TestThresholds:
    def test_defaults_are_ordered(self):
        for feature in ("trend", "periodicity", "peaks_valleys", "noise"):
            lo, hi = DEFAULT_THRESHOLDS.cuts(feature)
            assert 0 <= lo < hi

    def test_rejects_inverted_cuts(self):
        with pytest.raises(ParameterError):
            GradeThresholds(trend=(0.9, 0.1))

    def test_loadable_from_file(self, tmp_path):
        path = tmp_path / "thresholds.json"
        path.write_text('{"trend": [0.1, 0.5], "noise": [0.2, 0.6]}')
        loaded = GradeThresholds.from_file(path)
        assert loaded.trend == (0.1, 0.5)
        assert loaded.noise == (0.2, 0.6)
        assert loaded.periodicity == DEFAULT_THRESHOLDS.periodicity


class TestGradeFeature:
    def test_perfect_trend_grades_top(self):
        assert grade_feature(metrics_with(), "trend") is Grade.VERY_WELL

    def test_error_above_upper_cut_grades_bottom(self):
        metrics = metrics_with(trend_l2_fft=90.0)  # normalized 0.9
        assert grade_feature(metrics, "trend") is Grade.NOT_AT_ALL

    def test_middle_band_grades_somewhat(self):
        metrics = metrics_with(trend_l2_fft=50.0)
        assert grade_feature(metrics, "trend") is Grade.SOMEWHAT

    def test_peaks_use_extrema_scale(self):
        assert grade_feature(metrics_with(bottleneck=0.0), "peaks_valleys") is ExtremaGrade.MOST
        assert grade_feature(metrics_with(bottleneck=20.0), "peaks_valleys") is ExtremaGrade.SOME
        assert grade_feature(metrics_with(bottleneck=45.0), "peaks_valleys") is ExtremaGrade.NONE

    def test_absent_stimulus_feature_is_not_applicable(self):
        metrics = metrics_with(amplitude_ref=None, period_ref=None, delta_amplitude=None, delta_period=None)
        assert grade_feature(metrics, "periodicity") is None
        assert grade_feature(metrics_with(extrema_ref=0.0), "peaks_valleys") is None

    def test_sketch_without_periodicity_grades_bottom(self):
        metrics = metrics_with(delta_amplitude=None, delta_period=None)
        assert grade_feature(metrics, "periodicity") is Grade.NOT_AT_ALL

    def test_periodicity_combines_amplitude_and_period(self):
        fine = metrics_with(delta_amplitude=5.0, delta_period=0)  # 0.1
        assert grade_feature(fine, "periodicity") is Grade.VERY_WELL
        period_off = metrics_with(delta_amplitude=0.0, delta_period=12)  # 1.0
        assert grade_feature(period_off, "periodicity") is Grade.NOT_AT_ALL

    def test_unknown_feature_rejected(self):
        with pytest.raises(ParameterError):
            grade_feature(metrics_with(), "sparkle")

    def test_normalized_error_handles_zero_refs(self):
        assert normalized_error(metrics_with(trend_ref=0.0, trend_l2_fft=0.0), "trend") == 0.0
        assert math.isinf(normalized_error(metrics_with(trend_ref=0.0, trend_l2_fft=1.0), "trend"))
        assert normalized_error(metrics_with(noise_area_ref=0.0, delta_area=0.0), "noise") == 0.0


class TestAssignCluster:
    def test_replicator_definition(self):
        grades = {
            "trend": Grade.VERY_WELL,
            "periodicity": Grade.SOMEWHAT,
            "peaks_valleys": ExtremaGrade.MOST,
            "noise": Grade.VERY_WELL,
        }
        assert assign_cluster(grades, ALL_PROPS) is ClusterLabel.REPLICATOR

    def test_trend_keeper_allows_any_noise(self):
        for noise in Grade:
            grades = {
                "trend": Grade.VERY_WELL,
                "periodicity": Grade.NOT_AT_ALL,
                "peaks_valleys": ExtremaGrade.NONE,
                "noise": noise,
            }
            assert assign_cluster(grades, ALL_PROPS) is ClusterLabel.TREND_KEEPER

    def test_de_noiser_differs_from_replicator_only_by_noise(self):
        grades = {
            "trend": Grade.VERY_WELL,
            "periodicity": Grade.SOMEWHAT,
            "peaks_valleys": ExtremaGrade.SOME,
            "noise": Grade.NOT_AT_ALL,
        }
        assert assign_cluster(grades, ALL_PROPS) is ClusterLabel.DE_NOISER
        assert assign_cluster({**grades, "noise": Grade.SOMEWHAT}, ALL_PROPS) is ClusterLabel.REPLICATOR

    def test_feature_light_dataset_routes_to_replicator_or_denoiser(self):
        # No periodicity or extrema to drop: trend-preserving sketches can
        # only split on noise.
        grades = {"trend": Grade.VERY_WELL, "periodicity": None, "peaks_valleys": None, "noise": Grade.NOT_AT_ALL}
        assert assign_cluster(grades, BARE_PROPS) is ClusterLabel.DE_NOISER
        grades["noise"] = Grade.VERY_WELL
        assert assign_cluster(grades, BARE_PROPS) is ClusterLabel.REPLICATOR

    def test_lost_trend_is_anomaly(self):
        grades = {
            "trend": Grade.NOT_AT_ALL,
            "periodicity": Grade.VERY_WELL,
            "peaks_valleys": ExtremaGrade.MOST,
            "noise": Grade.VERY_WELL,
        }
        assert assign_cluster(grades, ALL_PROPS) is ClusterLabel.ANOMALY

    def test_partial_feature_drop_is_anomaly(self):
        # Kept periodicity somewhat but dropped all extrema: neither
        # replicator-content nor the trend-keeper pattern.
        grades = {
            "trend": Grade.VERY_WELL,
            "periodicity": Grade.SOMEWHAT,
            "peaks_valleys": ExtremaGrade.NONE,
            "noise": Grade.VERY_WELL,
        }
        assert assign_cluster(grades, ALL_PROPS) is ClusterLabel.ANOMALY

    def test_missing_required_grade_raises(self):
        with pytest.raises(IncompleteGradesError):
            assign_cluster({"trend": Grade.VERY_WELL, "noise": None}, BARE_PROPS)
        with pytest.raises(IncompleteGradesError):
            assign_cluster(
                {"trend": Grade.VERY_WELL, "noise": Grade.VERY_WELL, "periodicity": None, "peaks_valleys": None},
                ALL_PROPS,
            )

    def test_total_over_grade_lattice(self):
        prop_combos = [
            DatasetProperties(TrendDirection.UP, p, k) for p in (False, True) for k in (False, True)
        ]
        for props in prop_combos:
            for trend, period, peaks, noise in itertools.product(Grade, Grade, ExtremaGrade, Grade):
                grades = {
                    "trend": trend,
                    "periodicity": period if props.has_periodicity else None,
                    "peaks_valleys": peaks if props.has_peaks_valleys else None,
                    "noise": noise,
                }
                label = assign_cluster(grades, props)
                assert isinstance(label, ClusterLabel)

    def test_replicator_denoiser_differ_only_on_noise(self):
        for props in (ALL_PROPS, BARE_PROPS):
            for trend, period, peaks in itertools.product(Grade, Grade, ExtremaGrade):
                labels = set()
                for noise in Grade:
                    grades = {
                        "trend": trend,
                        "periodicity": period if props.has_periodicity else None,
                        "peaks_valleys": peaks if props.has_peaks_valleys else None,
                        "noise": noise,
                    }
                    labels.add(assign_cluster(grades, props))
                if ClusterLabel.REPLICATOR in labels:
                    assert labels <= {ClusterLabel.REPLICATOR, ClusterLabel.DE_NOISER}


class TestPropertyInference:
    def _profile(self, ys):
        series = TimeSeries(np.arange(float(len(ys))), np.asarray(ys, dtype=float))
        normalized = normalize_and_resample(series, CanvasSpec(), 512)
        return extract_feature_profile(normalized, CanvasSpec())

    def test_strong_sine_reads_as_periodic_with_peaks(self):
        xs = np.arange(950.0)
        profile = self._profile(100.0 * np.sin(2 * np.pi * 12 * xs / 950.0))
        props = infer_dataset_properties(profile)
        assert props.has_periodicity
        assert props.has_peaks_valleys

    def test_plain_ramp_reads_as_bare_up_trend(self):
        profile = self._profile(np.linspace(0.0, 100.0, 950))
        props = infer_dataset_properties(profile)
        assert props.trend_direction is TrendDirection.UP
        assert not props.has_periodicity
        assert not props.has_peaks_valleys

    def test_descending_ramp_reads_down(self):
        profile = self._profile(np.linspace(50.0, -50.0, 950))
        assert infer_dataset_properties(profile).trend_direction is TrendDirection.DOWN
