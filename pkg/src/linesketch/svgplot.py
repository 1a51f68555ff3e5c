"""Minimal SVG emitters: axis-free stimulus renderings and error-vs-noise
scatter plots with their regression line. Text output keeps the toolchain
dependency-free and the artifacts diff-able."""

from __future__ import annotations

import math

from .core import CanvasSpec, TimeSeries
from .noise import NoiseLevel

LEVEL_TICKS = ["none", "30 dB", "20 dB", "10 dB", "5 dB"]


def _fmt(value: float) -> str:
    return f"{value:.2f}".rstrip("0").rstrip(".")


def line_chart_svg(series: TimeSeries, canvas: CanvasSpec | None = None, color: str = "#4477aa") -> str:
    """Render a canvas-space series (y up) as a bare polyline, no axes."""
    canvas = canvas or CanvasSpec()
    w, h = canvas.width, canvas.height
    points = " ".join(f"{_fmt(float(x))},{_fmt(h - float(y))}" for x, y in zip(series.xs, series.ys))
    return (
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{_fmt(w)}" height="{_fmt(h)}" '
        f'viewBox="0 0 {_fmt(w)} {_fmt(h)}">\n'
        f'  <rect width="100%" height="100%" fill="white"/>\n'
        f'  <polyline fill="none" stroke="{color}" stroke-width="1.5" points="{points}"/>\n'
        f"</svg>\n"
    )


def scatter_regression_svg(
    points: list[tuple[NoiseLevel, float]],
    slope: float | None = None,
    intercept: float | None = None,
    title: str = "",
    width: int = 480,
    height: int = 320,
) -> str:
    """Error scatter over the five noise levels plus an optional OLS line."""
    margin_left, margin_right, margin_top, margin_bottom = 56, 16, 28, 40
    plot_w = width - margin_left - margin_right
    plot_h = height - margin_top - margin_bottom

    values = [v for _, v in points]
    vmax = max(values, default=1.0)
    vmin = min(values, default=0.0)
    if slope is not None and intercept is not None:
        vmax = max(vmax, intercept, intercept + 4 * slope)
        vmin = min(vmin, intercept, intercept + 4 * slope)
    if math.isclose(vmin, vmax):
        vmax = vmin + 1.0
    pad = 0.05 * (vmax - vmin)
    vmin, vmax = vmin - pad, vmax + pad

    def px(level_index: float) -> float:
        return margin_left + plot_w * level_index / 4.0

    def py(value: float) -> float:
        return margin_top + plot_h * (1.0 - (value - vmin) / (vmax - vmin))

    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" '
        f'viewBox="0 0 {width} {height}">',
        '  <rect width="100%" height="100%" fill="white"/>',
    ]
    if title:
        parts.append(
            f'  <text x="{width / 2}" y="18" text-anchor="middle" font-family="sans-serif" '
            f'font-size="13">{title}</text>'
        )
    axis_y = margin_top + plot_h
    parts.append(
        f'  <line x1="{margin_left}" y1="{axis_y}" x2="{margin_left + plot_w}" y2="{axis_y}" '
        'stroke="#333" stroke-width="1"/>'
    )
    parts.append(
        f'  <line x1="{margin_left}" y1="{margin_top}" x2="{margin_left}" y2="{axis_y}" '
        'stroke="#333" stroke-width="1"/>'
    )
    for i, label in enumerate(LEVEL_TICKS):
        parts.append(
            f'  <text x="{_fmt(px(i))}" y="{axis_y + 18}" text-anchor="middle" '
            f'font-family="sans-serif" font-size="11">{label}</text>'
        )
    for frac in (0.0, 0.5, 1.0):
        value = vmin + frac * (vmax - vmin)
        parts.append(
            f'  <text x="{margin_left - 6}" y="{_fmt(py(value) + 4)}" text-anchor="end" '
            f'font-family="sans-serif" font-size="11">{value:.3g}</text>'
        )
    if slope is not None and intercept is not None:
        parts.append(
            f'  <line x1="{_fmt(px(0))}" y1="{_fmt(py(intercept))}" '
            f'x2="{_fmt(px(4))}" y2="{_fmt(py(intercept + 4 * slope))}" '
            'stroke="#cc3311" stroke-width="1.5"/>'
        )
    for level, value in points:
        parts.append(
            f'  <circle cx="{_fmt(px(level.index))}" cy="{_fmt(py(value))}" r="3.5" '
            'fill="#4477aa" fill-opacity="0.75"/>'
        )
    parts.append("</svg>")
    return "\n".join(parts) + "\n"
