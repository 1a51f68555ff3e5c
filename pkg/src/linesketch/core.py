"""Fundamental time-series and stroke types, stroke repair, and resampling.

Coordinate conventions: stroke points are canvas pixels with the y axis
pointing down (screen convention). Series ordinates are value-like with the
y axis pointing up. ``stroke_to_series`` flips between the two.
"""

from __future__ import annotations

import csv
import json
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from .errors import DataError, InvalidStrokeError, ParameterError

#: Pixel increment used when repairing backward-going stroke samples.
REPAIR_STEP_PX = 0.1

#: Default upsampling target: 10x a 950 px wide stimulus.
DEFAULT_RESAMPLE_COUNT = 9500


def _readonly(a: np.ndarray) -> np.ndarray:
    a = np.ascontiguousarray(a, dtype=float)
    a.setflags(write=False)
    return a


@dataclass(frozen=True)
class CanvasSpec:
    """Drawing surface geometry in pixels (default 950x375, aspect 2.53:1)."""

    width: float = 950.0
    height: float = 375.0

    def __post_init__(self):
        if not (self.width > 0 and self.height > 0):
            raise ParameterError(f"canvas dimensions must be positive, got {self.width}x{self.height}")

    def to_json(self) -> dict:
        return {"width": self.width, "height": self.height}

    @classmethod
    def from_json(cls, obj: dict) -> "CanvasSpec":
        return cls(width=float(obj["width"]), height=float(obj["height"]))


@dataclass(frozen=True)
class TimeSeries:
    """Ordered samples of one signal.

    ``xs`` must be strictly increasing and the arrays are stored read-only,
    so instances can be shared freely between threads.
    """

    xs: np.ndarray
    ys: np.ndarray

    def __post_init__(self):
        xs = _readonly(self.xs)
        ys = _readonly(self.ys)
        object.__setattr__(self, "xs", xs)
        object.__setattr__(self, "ys", ys)
        if xs.ndim != 1 or ys.ndim != 1:
            raise ParameterError("series coordinates must be one-dimensional")
        if len(xs) != len(ys):
            raise ParameterError(f"xs and ys length mismatch: {len(xs)} vs {len(ys)}")
        if len(xs) < 2:
            raise ParameterError("a series needs at least 2 samples")
        if not (np.all(np.isfinite(xs)) and np.all(np.isfinite(ys))):
            raise ParameterError("series values must be finite")
        if not np.all(np.diff(xs) > 0):
            raise ParameterError("xs must be strictly increasing")

    def __len__(self) -> int:
        return len(self.xs)

    @property
    def is_uniform(self) -> bool:
        """True when the sampling grid is (numerically) evenly spaced."""
        steps = np.diff(self.xs)
        return bool(np.allclose(steps, steps[0], rtol=1e-9, atol=1e-9 * abs(float(steps[0]))))

    def with_ys(self, ys: np.ndarray) -> "TimeSeries":
        return TimeSeries(self.xs, ys)


@dataclass(frozen=True)
class StrokeRecord:
    """Raw pen samples from one capture: (x px, y px, timestamp ms) triples."""

    points: np.ndarray
    canvas: CanvasSpec = field(default_factory=CanvasSpec)
    session: str = ""
    stimulus: str = ""

    def __post_init__(self):
        pts = _readonly(np.atleast_2d(self.points))
        object.__setattr__(self, "points", pts)
        if pts.ndim != 2 or pts.shape[1] != 3:
            raise InvalidStrokeError(f"stroke points must be (n, 3), got {pts.shape}")
        if pts.shape[0] < 2:
            raise InvalidStrokeError("a stroke needs at least 2 points")
        if not np.all(np.isfinite(pts)):
            raise InvalidStrokeError("stroke points must be finite")
        if np.any(np.diff(pts[:, 2]) < 0):
            raise InvalidStrokeError("stroke timestamps must be nondecreasing")

    def __len__(self) -> int:
        return self.points.shape[0]

    @property
    def xs(self) -> np.ndarray:
        return self.points[:, 0]

    @property
    def ys(self) -> np.ndarray:
        return self.points[:, 1]

    @property
    def timestamps(self) -> np.ndarray:
        return self.points[:, 2]

    def validate_bounds(self) -> None:
        """Reject points outside the canvas.

        Kept separate from construction: repaired strokes are allowed to
        spill past the right edge and are re-fit by normalization.
        """
        x, y = self.xs, self.ys
        if np.any(x < 0) or np.any(x > self.canvas.width) or np.any(y < 0) or np.any(y > self.canvas.height):
            raise InvalidStrokeError("stroke points fall outside the canvas")

    def to_json(self) -> dict:
        return {
            "session": self.session,
            "stimulus": self.stimulus,
            "canvas": self.canvas.to_json(),
            "points": [[float(x), float(y), float(t)] for x, y, t in self.points],
        }

    @classmethod
    def from_json(cls, obj: dict) -> "StrokeRecord":
        try:
            return cls(
                points=np.asarray(obj["points"], dtype=float),
                canvas=CanvasSpec.from_json(obj["canvas"]),
                session=str(obj.get("session", "")),
                stimulus=str(obj.get("stimulus", "")),
            )
        except (KeyError, TypeError, ValueError) as exc:
            raise DataError(f"malformed stroke record: {exc}") from exc


def repair_temporal_order(stroke: StrokeRecord) -> StrokeRecord:
    """Force stroke x-coordinates to be strictly increasing.

    Scans left to right; whenever a point does not advance past its
    predecessor (loops or backward strokes), it is moved to 0.1 px right of
    the repaired predecessor. y values and timestamps are untouched, and the
    pass is idempotent. The repair runs on raw canvas pixels, before any
    normalization.
    """
    if len(stroke) < 2:
        raise InvalidStrokeError("cannot repair a stroke with fewer than 2 points")
    pts = np.array(stroke.points, dtype=float)
    xs = pts[:, 0]
    for i in range(1, len(xs)):
        if xs[i] <= xs[i - 1]:
            xs[i] = xs[i - 1] + REPAIR_STEP_PX
    pts[:, 0] = xs
    return StrokeRecord(points=pts, canvas=stroke.canvas, session=stroke.session, stimulus=stroke.stimulus)


def stroke_to_series(stroke: StrokeRecord, flip_y: bool = True) -> TimeSeries:
    """Convert a (repaired) stroke into a series.

    With ``flip_y`` the screen-down pixel rows become value-up ordinates so
    sketches compare directly against data series.
    """
    repaired = repair_temporal_order(stroke)
    ys = repaired.canvas.height - repaired.ys if flip_y else repaired.ys
    return TimeSeries(repaired.xs, ys)


def normalize_and_resample(series: TimeSeries, canvas: CanvasSpec, n_target: int = DEFAULT_RESAMPLE_COUNT) -> TimeSeries:
    """Stretch x onto [0, canvas.width], resample uniformly, and center y.

    Linear interpolation onto ``n_target`` evenly spaced samples, then the
    ordinate mean is subtracted so stimulus and sketch align on center.
    """
    if n_target < 2:
        raise ParameterError(f"n_target must be >= 2, got {n_target}")
    span = float(series.xs[-1] - series.xs[0])
    stretched = (series.xs - series.xs[0]) * (canvas.width / span)
    grid = np.linspace(0.0, canvas.width, n_target)
    ys = np.interp(grid, stretched, series.ys)
    ys = ys - ys.mean()
    return TimeSeries(grid, ys)


def rescale_to_canvas(series: TimeSeries, canvas: CanvasSpec) -> TimeSeries:
    """Map a data-unit series into canvas coordinates (y up).

    x spans [0, width]; the ordinate min/max span [0, height], the same
    white-space-minimizing scaling used to render stimuli.
    """
    xspan = float(series.xs[-1] - series.xs[0])
    xs = (series.xs - series.xs[0]) * (canvas.width / xspan)
    ylo, yhi = float(series.ys.min()), float(series.ys.max())
    if yhi > ylo:
        ys = (series.ys - ylo) * (canvas.height / (yhi - ylo))
    else:
        ys = np.full_like(series.ys, canvas.height / 2.0)
    return TimeSeries(xs, ys)


# --- file formats ---------------------------------------------------------
#
# Series travel as two-column CSV with a one-line header; strokes travel as
# JSON objects {session, stimulus, canvas:{width,height}, points:[[x,y,t]..]}.


def save_series_csv(series: TimeSeries, path: str | Path, header: tuple[str, str] = ("x", "y")) -> None:
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(header)
        for x, y in zip(series.xs, series.ys):
            writer.writerow([repr(float(x)), repr(float(y))])


def load_series_csv(path: str | Path) -> TimeSeries:
    try:
        with open(path, newline="") as fh:
            rows = list(csv.reader(fh))
    except OSError as exc:
        raise DataError(f"cannot read series file {path}: {exc}") from exc
    if len(rows) < 3:
        raise DataError(f"{path}: need a header and at least 2 samples")
    body = rows[1:]
    try:
        xs = np.array([float(r[0]) for r in body])
        ys = np.array([float(r[1]) for r in body])
    except (IndexError, ValueError) as exc:
        raise DataError(f"{path}: malformed series row: {exc}") from exc
    try:
        return TimeSeries(xs, ys)
    except ParameterError as exc:
        raise DataError(f"{path}: {exc}") from exc


def save_stroke_json(stroke: StrokeRecord, path: str | Path) -> None:
    with open(path, "w") as fh:
        json.dump(stroke.to_json(), fh, indent=2, sort_keys=True)
        fh.write("\n")


def load_stroke_json(path: str | Path) -> StrokeRecord:
    try:
        with open(path) as fh:
            obj = json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise DataError(f"cannot read stroke file {path}: {exc}") from exc
    stroke = StrokeRecord.from_json(obj)
    stroke.validate_bounds()
    return stroke
