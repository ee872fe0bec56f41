"""Single-series line charts as standalone SVG text."""

from __future__ import annotations

import math
from collections.abc import Sequence
from html import escape

WIDTH = 640
HEIGHT = 400
MARGIN = 56
TICKS = 5


def _ticks(low: float, high: float) -> list[float]:
    return [low + (high - low) * i / (TICKS - 1) for i in range(TICKS)]


def _segments(points: list[tuple[float, float] | None]) -> list[list[tuple[float, float]]]:
    """Split at missing values so gaps stay visible."""
    runs: list[list[tuple[float, float]]] = [[]]
    for p in points:
        if p is None:
            if runs[-1]:
                runs.append([])
        else:
            runs[-1].append(p)
    return [run for run in runs if run]


def line_chart(
    x: Sequence[float],
    y: Sequence[float],
    *,
    title: str,
    x_label: str,
    y_label: str,
) -> str:
    """Polyline of ``y`` against ``x``; non-finite values leave gaps."""
    finite = [(a, b) for a, b in zip(x, y, strict=True) if math.isfinite(a) and math.isfinite(b)]
    plot_w = WIDTH - 2 * MARGIN
    plot_h = HEIGHT - 2 * MARGIN
    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" height="{HEIGHT}" '
        f'viewBox="0 0 {WIDTH} {HEIGHT}" font-family="sans-serif" font-size="12">',
        f'<rect width="{WIDTH}" height="{HEIGHT}" fill="white"/>',
        f'<text x="{WIDTH / 2:.1f}" y="{MARGIN / 2:.1f}" text-anchor="middle" font-size="14">{escape(title)}</text>',
    ]
    if not finite:
        parts.append(f'<text x="{WIDTH / 2:.1f}" y="{HEIGHT / 2:.1f}" text-anchor="middle">no finite data</text>')
        parts.append("</svg>")
        return "\n".join(parts) + "\n"

    x_low, x_high = min(p[0] for p in finite), max(p[0] for p in finite)
    y_low, y_high = min(p[1] for p in finite), max(p[1] for p in finite)
    if x_high == x_low:
        x_high = x_low + 1.0
    if y_high == y_low:
        y_high = y_low + 1.0

    def sx(v: float) -> float:
        return MARGIN + (v - x_low) / (x_high - x_low) * plot_w

    def sy(v: float) -> float:
        return HEIGHT - MARGIN - (v - y_low) / (y_high - y_low) * plot_h

    bottom = HEIGHT - MARGIN
    parts.append(
        f'<path d="M{MARGIN} {MARGIN} V{bottom} H{WIDTH - MARGIN}" fill="none" stroke="black"/>'
    )
    for t in _ticks(x_low, x_high):
        parts.append(f'<text x="{sx(t):.1f}" y="{bottom + 16}" text-anchor="middle">{t:.3g}</text>')
    for t in _ticks(y_low, y_high):
        parts.append(f'<text x="{MARGIN - 6}" y="{sy(t) + 4:.1f}" text-anchor="end">{t:.3g}</text>')
    parts.append(
        f'<text x="{WIDTH / 2:.1f}" y="{HEIGHT - 12}" text-anchor="middle">{escape(x_label)}</text>'
    )
    parts.append(
        f'<text x="16" y="{HEIGHT / 2:.1f}" text-anchor="middle" '
        f'transform="rotate(-90 16 {HEIGHT / 2:.1f})">{escape(y_label)}</text>'
    )

    points = [
        (sx(a), sy(b)) if math.isfinite(a) and math.isfinite(b) else None
        for a, b in zip(x, y, strict=True)
    ]
    for run in _segments(points):
        coords = " ".join(f"{px:.2f},{py:.2f}" for px, py in run)
        parts.append(f'<polyline points="{coords}" fill="none" stroke="#1f77b4" stroke-width="1.5"/>')
    parts.append("</svg>")
    return "\n".join(parts) + "\n"
