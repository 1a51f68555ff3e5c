"""Noise-controlled line-chart stimuli, stroke capture, and sketch scoring.

The pipeline: generate stimuli at target SNR levels, convert free-hand
strokes into time series, estimate trend / periodicity / extrema / noise,
measure how well a sketch preserves each, and assign a behavior cluster.
"""

from .classify import (
    DEFAULT_THRESHOLDS,
    ClusterLabel,
    DatasetProperties,
    ExtremaGrade,
    Grade,
    GradeThresholds,
    TrendDirection,
    assign_cluster,
    grade_all,
    grade_feature,
    infer_dataset_properties,
)
from .core import (
    DEFAULT_RESAMPLE_COUNT,
    CanvasSpec,
    StrokeRecord,
    TimeSeries,
    load_series_csv,
    load_stroke_json,
    normalize_and_resample,
    repair_temporal_order,
    rescale_to_canvas,
    save_series_csv,
    save_stroke_json,
    stroke_to_series,
)
from .entropy import approximate_entropy, pixel_approximate_entropy, quantize_to_pixel_rows
from .errors import (
    AlignmentError,
    ConfigurationError,
    DataError,
    DegenerateSignalError,
    IncompleteGradesError,
    InvalidStrokeError,
    LineSketchError,
    ParameterError,
    SequencingError,
)
from .loess import estimate_trend_loess
from .metrics import (
    PreservationMetrics,
    amplitude_period_delta,
    area_delta,
    bottleneck_distance,
    compute_preservation_metrics,
    dtw_distance,
    error_noise_regression,
    lp_norm,
    ols_line,
)
from .noise import NoiseLevel, inject_gaussian_noise, measure_snr, signal_power
from .persistence import PersistenceDiagram, PersistencePair, persistence_diagram
from .profile import FeatureProfile, extract_feature_profile
from .report import PreservationReport, analyze_pair, corpus_report, dump_report_json, regression_summary
from .spectral import (
    PeriodicComponent,
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
from .study import (
    Session,
    SessionStore,
    StimulusAssignment,
    StimulusPlan,
    build_stimulus_plan,
    make_stimulus,
    record_sketch,
)
from .svgplot import line_chart_svg, scatter_regression_svg

__version__ = "0.1.0"
