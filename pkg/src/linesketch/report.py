"""End-to-end comparison of one stimulus against one sketch, plus corpus
aggregation into per-dataset error-vs-noise regressions."""

from __future__ import annotations

import json
from dataclasses import dataclass

from .classify import (
    DEFAULT_THRESHOLDS,
    ClusterLabel,
    DatasetProperties,
    ExtremaGrade,
    Grade,
    GradeThresholds,
    assign_cluster,
    grade_all,
    infer_dataset_properties,
)
from .core import (
    DEFAULT_RESAMPLE_COUNT,
    CanvasSpec,
    StrokeRecord,
    TimeSeries,
    normalize_and_resample,
    rescale_to_canvas,
    stroke_to_series,
)
from .metrics import PreservationMetrics, compute_preservation_metrics, error_noise_regression, ols_line
from .noise import NoiseLevel
from .profile import extract_feature_profile


@dataclass(frozen=True)
class PreservationReport:
    """Metric values, grades, and the behavior cluster for one pair."""

    metrics: PreservationMetrics
    grades: dict[str, Grade | ExtremaGrade | None]
    cluster: ClusterLabel
    properties: DatasetProperties
    session: str = ""
    participant: int | None = None
    stimulus_index: int | None = None
    dataset: str = ""
    noise_level: NoiseLevel | None = None

    def to_json(self) -> dict:
        return {
            "session": self.session,
            "participant": self.participant,
            "stimulus_index": self.stimulus_index,
            "dataset": self.dataset,
            "noise_level": None if self.noise_level is None else self.noise_level.value,
            "properties": self.properties.to_json(),
            "metrics": self.metrics.to_json(),
            "grades": {name: (g.value if g is not None else None) for name, g in self.grades.items()},
            "cluster": self.cluster.value,
        }


def _sketch_in_stimulus_frame(
    sketch: TimeSeries | StrokeRecord,
    stimulus: TimeSeries,
    canvas: CanvasSpec,
) -> TimeSeries:
    """Bring the sketch into the stimulus's canvas rendering frame.

    Strokes are already canvas pixels (only the screen y flip is needed).
    A series sketch is assumed to live in the stimulus's data units and gets
    the same affine y map the stimulus rendering used, which preserves
    relative amplitude instead of stretching the sketch to full height.
    """
    if isinstance(sketch, StrokeRecord):
        return stroke_to_series(sketch)
    lo, hi = float(stimulus.ys.min()), float(stimulus.ys.max())
    scale = canvas.height / (hi - lo) if hi > lo else 1.0
    return sketch.with_ys((sketch.ys - lo) * scale)


def analyze_pair(
    stimulus: TimeSeries,
    sketch: TimeSeries | StrokeRecord,
    *,
    canvas: CanvasSpec | None = None,
    props: DatasetProperties | None = None,
    thresholds: GradeThresholds = DEFAULT_THRESHOLDS,
    n_target: int = DEFAULT_RESAMPLE_COUNT,
    session: str = "",
    participant: int | None = None,
    stimulus_index: int | None = None,
    dataset: str = "",
    noise_level: NoiseLevel | None = None,
) -> PreservationReport:
    """Run the full preprocessing / feature / metric / grading pipeline.

    The stimulus arrives in data units and is mapped to its canvas
    rendering; the sketch may be a stroke (canvas pixels) or a series in the
    stimulus's data units. Both are then uniformly resampled and centered
    before feature extraction. When no dataset properties are supplied they
    are inferred from the stimulus profile; a supplied catalog is reconciled
    against this particular stimulus (a dataset may carry extrema in general
    while one clean rendering of it shows none to grade).
    """
    canvas = canvas or CanvasSpec()
    stim_canvas = rescale_to_canvas(stimulus, canvas)
    sketch_canvas = _sketch_in_stimulus_frame(sketch, stimulus, canvas)

    stim_norm = normalize_and_resample(stim_canvas, canvas, n_target)
    sketch_norm = normalize_and_resample(sketch_canvas, canvas, n_target)

    stim_profile = extract_feature_profile(stim_norm, canvas)
    sketch_profile = extract_feature_profile(sketch_norm, canvas)

    if props is None:
        props = infer_dataset_properties(stim_profile)

    metrics = compute_preservation_metrics(stim_profile, sketch_profile)
    props = DatasetProperties(
        trend_direction=props.trend_direction,
        has_periodicity=props.has_periodicity and metrics.amplitude_ref is not None,
        has_peaks_valleys=props.has_peaks_valleys and metrics.extrema_ref > 0,
    )
    grades = grade_all(metrics, props, thresholds)
    cluster = assign_cluster(grades, props)
    return PreservationReport(
        metrics=metrics,
        grades=grades,
        cluster=cluster,
        properties=props,
        session=session,
        participant=participant,
        stimulus_index=stimulus_index,
        dataset=dataset,
        noise_level=noise_level,
    )


#: Metrics summarized per dataset in the error-vs-noise regression table.
REGRESSION_METRICS = ("trend_l2_fft", "trend_l2_loess", "delta_amplitude", "delta_period", "bottleneck")


def regression_points(reports, dataset: str, metric: str) -> list[tuple[NoiseLevel, float]]:
    points = []
    for report in reports:
        if report.dataset != dataset or report.noise_level is None:
            continue
        value = getattr(report.metrics, metric)
        if value is not None:
            points.append((report.noise_level, float(value)))
    return points


def regression_summary(reports) -> dict:
    """Per-dataset, per-metric OLS line and clean-to-max percent change."""
    summary: dict = {}
    datasets = sorted({r.dataset for r in reports if r.dataset})
    for dataset in datasets:
        per_metric = {}
        for metric in REGRESSION_METRICS:
            points = regression_points(reports, dataset, metric)
            if len({lv for lv, _ in points}) < 2:
                continue
            slope, intercept = ols_line(points)
            per_metric[metric] = {
                "slope": slope,
                "intercept": intercept,
                "percent_change": error_noise_regression(points),
                "n_points": len(points),
            }
        if per_metric:
            summary[dataset] = per_metric
    return summary


def corpus_report(reports) -> dict:
    """Canonical corpus JSON: reports sorted by (session, stimulus)."""
    ordered = sorted(reports, key=lambda r: (r.session, r.stimulus_index if r.stimulus_index is not None else -1))
    return {
        "reports": [r.to_json() for r in ordered],
        "regressions": regression_summary(reports),
    }


def dump_report_json(obj: dict) -> str:
    """Byte-stable serialization for report files."""
    return json.dumps(obj, indent=2, sort_keys=True) + "\n"
