"""CSV serialization for mosaics, normalized tables, and link statistics.

All floats are printed with 17 significant digits, which round-trips any
double exactly, so written files can serve as golden references.
"""

from __future__ import annotations

import csv
from dataclasses import dataclass, fields
from pathlib import Path

from qlinkopt.model import LinkStats
from qlinkopt.mosaic import Mosaic, NormalizedTable

__all__ = ["MosaicView", "CellView", "write_csv", "read_mosaic_csv", "as_view"]

MOSAIC_HEADER = (
    "jitter_s",
    "distance_km",
    "winner_combo",
    "winner_bandwidth_ghz",
    "metric_value",
)


def _f(x: float) -> str:
    return format(x, ".17g")


def _write_mosaic(m: Mosaic, writer) -> None:
    writer.writerow(MOSAIC_HEADER)
    for i, jitter in enumerate(m.axes.jitter_values):
        for j, distance in enumerate(m.axes.distance_values):
            cell = m.cells[i][j]
            if cell.no_key:
                combo, bandwidth = "", ""
            else:
                combo = m.combos[cell.best_combo].label
                bandwidth = _f(cell.best_bandwidth)
            writer.writerow(
                [_f(jitter), _f(distance), combo, bandwidth, _f(cell.metric_value)]
            )


def _write_table(t: NormalizedTable, writer) -> None:
    writer.writerow(["combo", "jitter_s"] + [f"{bw:g}" for bw in t.bandwidths_ghz])
    # combo-major, like the published layout: one block of jitter rows per combo
    for k, label in enumerate(t.combo_labels):
        for i, jitter in enumerate(t.jitter_values):
            writer.writerow([label, _f(jitter)] + [_f(v) for v in t.values[i][k]])


def _write_stats(st: LinkStats, writer) -> None:
    names = [f.name for f in fields(LinkStats)]
    writer.writerow(names)
    writer.writerow([_f(getattr(st, name)) for name in names])


def write_csv(obj: Mosaic | NormalizedTable | LinkStats, path: str | Path) -> None:
    """Write one result object as RFC-4180-style CSV.

    Mosaic rows are (jitter_s, distance_km, winner_combo,
    winner_bandwidth_ghz, metric_value) with empty winner fields for "no key"
    cells. Normalized tables are combo-major with one column per bandwidth.
    LinkStats becomes a single header+value row pair.
    """
    with open(path, "w", newline="", encoding="utf-8") as handle:
        writer = csv.writer(handle, lineterminator="\n")
        if isinstance(obj, Mosaic):
            _write_mosaic(obj, writer)
        elif isinstance(obj, NormalizedTable):
            _write_table(obj, writer)
        elif isinstance(obj, LinkStats):
            _write_stats(obj, writer)
        else:
            raise TypeError(f"cannot serialize {type(obj).__name__} as CSV")


@dataclass(frozen=True)
class CellView:
    """One mosaic cell as read back from CSV."""

    combo: str | None
    bandwidth_ghz: float | None
    metric_value: float

    @property
    def no_key(self) -> bool:
        return self.combo is None


@dataclass(frozen=True)
class MosaicView:
    """Grid reconstruction of a mosaic CSV, sufficient for rendering.

    cells[i][j] follows jitter_values[i] and distance_values[j], the same
    layout as Mosaic.
    """

    jitter_values: tuple[float, ...]
    distance_values: tuple[float, ...]
    cells: tuple[tuple[CellView, ...], ...]


def as_view(m: Mosaic) -> MosaicView:
    """Project a mosaic onto the grid view used for rendering.

    Matches what read_mosaic_csv returns for the same mosaic's CSV, so both
    paths render to identical bytes.
    """
    cells = tuple(
        tuple(
            CellView(
                combo=None if cell.no_key else m.combos[cell.best_combo].label,
                bandwidth_ghz=cell.best_bandwidth,
                metric_value=cell.metric_value,
            )
            for cell in row
        )
        for row in m.cells
    )
    return MosaicView(
        jitter_values=m.axes.jitter_values,
        distance_values=m.axes.distance_values,
        cells=cells,
    )


def read_mosaic_csv(path: str | Path) -> MosaicView:
    """Read a mosaic CSV written by write_csv back into a grid view."""
    with open(path, newline="", encoding="utf-8") as handle:
        reader = csv.reader(handle)
        try:
            header = next(reader)
        except StopIteration:
            raise ValueError(f"{path}: empty file, expected a mosaic header") from None
        if tuple(header) != MOSAIC_HEADER:
            raise ValueError(
                f"{path}: unexpected header {header!r}, expected {list(MOSAIC_HEADER)}"
            )
        rows = list(reader)

    jitters: list[float] = []
    distances: list[float] = []
    by_key: dict[tuple[float, float], CellView] = {}
    for lineno, row in enumerate(rows, start=2):
        if len(row) != 5:
            raise ValueError(f"{path}:{lineno}: expected 5 fields, got {len(row)}")
        jitter, distance = float(row[0]), float(row[1])
        if jitter not in jitters:
            jitters.append(jitter)
        if distance not in distances:
            distances.append(distance)
        if row[2] == "":
            cell = CellView(combo=None, bandwidth_ghz=None, metric_value=float(row[4]))
        else:
            cell = CellView(
                combo=row[2], bandwidth_ghz=float(row[3]), metric_value=float(row[4])
            )
        by_key[(jitter, distance)] = cell

    cells = []
    for jitter in jitters:
        row_cells = []
        for distance in distances:
            if (jitter, distance) not in by_key:
                raise ValueError(
                    f"{path}: missing cell for jitter {jitter!r}, distance {distance!r}"
                )
            row_cells.append(by_key[(jitter, distance)])
        cells.append(tuple(row_cells))
    return MosaicView(
        jitter_values=tuple(jitters),
        distance_values=tuple(distances),
        cells=tuple(cells),
    )
