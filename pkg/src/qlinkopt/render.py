"""Deterministic SVG heatmaps of mosaics.

The image is assembled from plain strings with fixed number formatting and no
timestamps or generator metadata, so identical input always produces
identical bytes. Cells are placed on log-log axes with boundaries at the
geometric midpoints between neighboring grid values; each (combo, bandwidth)
winner is one discrete legend category and cells without key are hatched.
"""

from __future__ import annotations

import colorsys
import math
from pathlib import Path
from xml.sax.saxutils import escape

from qlinkopt.mosaic import Mosaic
from qlinkopt.tables import MosaicView, as_view

__all__ = ["render_heatmap"]

_PLOT_X = (90.0, 640.0)
_PLOT_Y = (60.0, 500.0)  # svg y grows downward; min jitter sits at the bottom
_LEGEND_X = 660.0
_LEGEND_ROW_H = 20.0
_LEGEND_ROWS = 21
_LEGEND_COL_W = 190.0


def _n(x: float) -> str:
    return format(x, ".2f")


def _edges(values: tuple[float, ...]) -> list[float]:
    """Cell boundaries in log10 space: geometric midpoints, with the outer
    edges extended by the neighboring half-step (a quarter decade for a
    single-point axis)."""
    logs = [math.log10(v) for v in values]
    if len(logs) == 1:
        return [logs[0] - 0.25, logs[0] + 0.25]
    inner = [(a + b) / 2.0 for a, b in zip(logs, logs[1:])]
    first = logs[0] - (inner[0] - logs[0])
    last = logs[-1] + (logs[-1] - inner[-1])
    return [first] + inner + [last]


def _color(combo_rank: int, bw_rank: int, bw_count: int) -> str:
    # one hue family per combo, darker shades for larger bandwidths
    hue = (0.13 + 0.618033988749895 * combo_rank) % 1.0
    if bw_count > 1:
        lightness = 0.35 + 0.4 * (bw_rank / (bw_count - 1))
    else:
        lightness = 0.5
    r, g, b = colorsys.hls_to_rgb(hue, lightness, 0.65)
    return f"#{round(r * 255):02x}{round(g * 255):02x}{round(b * 255):02x}"


def _scale(edges: list[float], out_lo: float, out_hi: float):
    span = edges[-1] - edges[0]

    def to_px(v: float) -> float:
        return out_lo + (v - edges[0]) / span * (out_hi - out_lo)

    return to_px


def render_heatmap(m: Mosaic | MosaicView, path: str | Path) -> None:
    """Render a mosaic (or a CSV-derived view of one) as an SVG heatmap.

    Raises:
        ValueError: the mosaic has no cells.
    """
    view = as_view(m) if isinstance(m, Mosaic) else m
    if len(view.jitter_values) == 0 or len(view.distance_values) == 0:
        raise ValueError("cannot render an empty mosaic")

    # discrete categories, grouped by combo then by descending bandwidth
    combo_labels = sorted(
        {c.combo for row in view.cells for c in row if c.combo is not None}
    )
    bw_by_combo: dict[str, list[float]] = {label: [] for label in combo_labels}
    for row in view.cells:
        for cell in row:
            if cell.combo is not None and cell.bandwidth_ghz not in bw_by_combo[cell.combo]:
                bw_by_combo[cell.combo].append(cell.bandwidth_ghz)
    categories: list[tuple[str, float]] = []
    for label in combo_labels:
        for bw in sorted(bw_by_combo[label], reverse=True):
            categories.append((label, bw))
    fill_of = {}
    for label in combo_labels:
        ranked = sorted(bw_by_combo[label], reverse=True)
        for rank, bw in enumerate(ranked):
            fill_of[(label, bw)] = _color(
                combo_labels.index(label), rank, len(ranked)
            )
    has_no_key = any(c.combo is None for row in view.cells for c in row)

    x_edges = _edges(view.distance_values)
    y_edges = _edges(view.jitter_values)
    x_px = _scale(x_edges, _PLOT_X[0], _PLOT_X[1])
    y_px = _scale(y_edges, _PLOT_Y[1], _PLOT_Y[0])  # inverted

    legend_entries = len(categories) + (1 if has_no_key else 0)
    legend_cols = max(1, -(-legend_entries // _LEGEND_ROWS))
    width = _LEGEND_X + legend_cols * _LEGEND_COL_W + 10.0

    parts: list[str] = []
    parts.append(
        f'<svg xmlns="http://www.w3.org/2000/svg" viewBox="0 0 {_n(width)} 560" '
        f'font-family="sans-serif" font-size="12">'
    )
    parts.append(
        '<defs><pattern id="nokey" patternUnits="userSpaceOnUse" width="6" height="6">'
        '<rect width="6" height="6" fill="#eeeeee"/>'
        '<path d="M0,6 L6,0" stroke="#888888" stroke-width="1"/>'
        "</pattern></defs>"
    )
    parts.append('<rect width="100%" height="100%" fill="#ffffff"/>')

    # cells
    for i, _jitter in enumerate(view.jitter_values):
        for j, _distance in enumerate(view.distance_values):
            cell = view.cells[i][j]
            x0, x1 = x_px(x_edges[j]), x_px(x_edges[j + 1])
            y0, y1 = y_px(y_edges[i + 1]), y_px(y_edges[i])
            fill = (
                "url(#nokey)"
                if cell.combo is None
                else fill_of[(cell.combo, cell.bandwidth_ghz)]
            )
            parts.append(
                f'<rect x="{_n(x0)}" y="{_n(y0)}" width="{_n(x1 - x0)}" '
                f'height="{_n(y1 - y0)}" fill="{fill}"/>'
            )

    # frame and decade ticks
    parts.append(
        f'<rect x="{_n(_PLOT_X[0])}" y="{_n(_PLOT_Y[0])}" '
        f'width="{_n(_PLOT_X[1] - _PLOT_X[0])}" height="{_n(_PLOT_Y[1] - _PLOT_Y[0])}" '
        'fill="none" stroke="#000000" stroke-width="1"/>'
    )
    for t in range(math.ceil(x_edges[0]), math.floor(x_edges[-1]) + 1):
        x = x_px(float(t))
        parts.append(
            f'<line x1="{_n(x)}" y1="{_n(_PLOT_Y[1])}" x2="{_n(x)}" '
            f'y2="{_n(_PLOT_Y[1] + 5)}" stroke="#000000" stroke-width="1"/>'
        )
        parts.append(
            f'<text x="{_n(x)}" y="{_n(_PLOT_Y[1] + 18)}" '
            f'text-anchor="middle">{10.0 ** t:g}</text>'
        )
    for t in range(math.ceil(y_edges[0]), math.floor(y_edges[-1]) + 1):
        y = y_px(float(t))
        parts.append(
            f'<line x1="{_n(_PLOT_X[0] - 5)}" y1="{_n(y)}" x2="{_n(_PLOT_X[0])}" '
            f'y2="{_n(y)}" stroke="#000000" stroke-width="1"/>'
        )
        # jitter ticks annotated in ps
        parts.append(
            f'<text x="{_n(_PLOT_X[0] - 8)}" y="{_n(y + 4)}" '
            f'text-anchor="end">{10.0 ** (t + 12):g}</text>'
        )
    mid_x = (_PLOT_X[0] + _PLOT_X[1]) / 2.0
    mid_y = (_PLOT_Y[0] + _PLOT_Y[1]) / 2.0
    parts.append(
        f'<text x="{_n(mid_x)}" y="545" text-anchor="middle">distance (km)</text>'
    )
    parts.append(
        f'<text x="20" y="{_n(mid_y)}" text-anchor="middle" '
        f'transform="rotate(-90 20 {_n(mid_y)})">total jitter (ps)</text>'
    )

    # legend
    def legend_entry(index: int, fill: str, label: str) -> None:
        col, row = divmod(index, _LEGEND_ROWS)
        x = _LEGEND_X + col * _LEGEND_COL_W
        y = _PLOT_Y[0] + row * _LEGEND_ROW_H
        parts.append(
            f'<rect x="{_n(x)}" y="{_n(y)}" width="14" height="14" fill="{fill}" '
            'stroke="#000000" stroke-width="0.5"/>'
        )
        parts.append(f'<text x="{_n(x + 20)}" y="{_n(y + 11)}">{escape(label)}</text>')

    for idx, (label, bw) in enumerate(categories):
        legend_entry(idx, fill_of[(label, bw)], f"{label}, {bw:g} GHz")
    if has_no_key:
        legend_entry(len(categories), "url(#nokey)", "no key")

    parts.append("</svg>")
    Path(path).write_bytes("\n".join(parts).encode("utf-8") + b"\n")
