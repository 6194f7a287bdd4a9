"""Parameter sweeps over (jitter, distance) grids.

Every grid cell optimizes the operating point for each candidate combination
of fiber, wavelength, and bandwidth, then records the winner under one of two
metrics: absolute secret key rate for a single quantum channel, or key rate
per GHz of occupied bandwidth as a proxy for dense multiplexing throughput.
Cells are independent, so grids can be evaluated by a process pool; assembly
order is fixed, making results identical for any worker count.
"""

from __future__ import annotations

import atexit
import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from enum import Enum

from qlinkopt.model import (
    DEFAULTS,
    ConstantDispersion,
    Defaults,
    FiberSpec,
    SlopeDispersion,
    build_scenario,
    dispersion_coefficient,
)
from qlinkopt.optimize import SearchConfig, _log_points, optimize_link

__all__ = [
    "Metric",
    "SINGLE_CHANNEL_BANDWIDTHS_GHZ",
    "PER_GHZ_BANDWIDTHS_GHZ",
    "SMF_C_BAND",
    "SMF_O_BAND",
    "NZDSF",
    "DEFAULT_COMBOS",
    "ComboSpec",
    "SweepAxes",
    "CellResult",
    "Mosaic",
    "NormalizedTable",
    "default_axes",
    "default_bandwidths",
    "sweep_cell",
    "build_mosaic",
    "normalized_table",
]


class Metric(str, Enum):
    """Cell-ranking metric."""

    ABSOLUTE_SKR = "absolute"
    SKR_PER_GHZ = "per_ghz"


SINGLE_CHANNEL_BANDWIDTHS_GHZ: tuple[float, ...] = (
    1000.0, 500.0, 200.0, 100.0, 50.0, 20.0, 10.0, 5.0, 2.0, 1.0, 0.5, 0.2, 0.1,
)
"""Candidate bandwidths for single-channel (absolute SKR) sweeps, GHz."""

PER_GHZ_BANDWIDTHS_GHZ: tuple[float, ...] = (
    100.0, 50.0, 20.0, 10.0, 5.0, 2.0, 1.0, 0.5, 0.2, 0.1, 0.05, 0.02, 0.01,
)
"""Candidate bandwidths for multiplexed (per-GHz) sweeps, GHz."""

# One physical standard single-mode fiber appears twice because attenuation is
# quoted at the operating wavelength; both entries share the dispersion slope
# with zero dispersion at 1310 nm.
SMF_C_BAND = FiberSpec(
    name="SMF-C",
    attenuation_db_per_km=0.18,
    dispersion=SlopeDispersion(zero_dispersion_nm=1310.0, slope_ps_nm2_km=0.092),
)
SMF_O_BAND = FiberSpec(
    name="SMF-O",
    attenuation_db_per_km=0.32,
    dispersion=SlopeDispersion(zero_dispersion_nm=1310.0, slope_ps_nm2_km=0.092),
)
NZDSF = FiberSpec(
    name="NZDSF",
    attenuation_db_per_km=0.19,
    dispersion=ConstantDispersion(d_ps_nm_km=4.0),
)


@dataclass(frozen=True)
class ComboSpec:
    """One candidate transmission medium: a fiber operated at a wavelength."""

    fiber: FiberSpec
    wavelength: float
    label: str

    def __post_init__(self) -> None:
        # also validates the wavelength against the dispersion law domain
        dispersion_coefficient(self.fiber, self.wavelength)


DEFAULT_COMBOS: tuple[ComboSpec, ...] = (
    ComboSpec(fiber=SMF_C_BAND, wavelength=1550.0, label="SMF 1550nm"),
    ComboSpec(fiber=SMF_O_BAND, wavelength=1310.0, label="SMF 1310nm"),
    ComboSpec(fiber=NZDSF, wavelength=1550.0, label="NZDSF 1550nm"),
)


@dataclass(frozen=True)
class SweepAxes:
    """Grid axes for a mosaic.

    Attributes:
        jitter_values: total measurement jitter FWHMs in seconds, ascending.
        distance_values: total user-to-user distances in km, ascending.
        symmetric_split: True places the source mid-span; False co-locates it
            with user B so arm A carries the whole distance.
    """

    jitter_values: tuple[float, ...]
    distance_values: tuple[float, ...]
    symmetric_split: bool = True

    def __post_init__(self) -> None:
        for name, values in (
            ("jitter_values", self.jitter_values),
            ("distance_values", self.distance_values),
        ):
            if any(v <= 0.0 for v in values):
                raise ValueError(f"{name} must be positive")
            if any(b <= a for a, b in zip(values, values[1:])):
                raise ValueError(f"{name} must be strictly increasing")


def default_axes(points: int = 25) -> SweepAxes:
    """Default log-spaced axes: jitter 1 ps to 1 ns, distance 1 to 500 km."""
    return SweepAxes(
        jitter_values=tuple(_log_points(1e-12, 1e-9, points)),
        distance_values=tuple(_log_points(1.0, 500.0, points)),
    )


def default_bandwidths(metric: Metric) -> tuple[float, ...]:
    """Standard candidate bandwidth set for a metric."""
    if metric is Metric.SKR_PER_GHZ:
        return PER_GHZ_BANDWIDTHS_GHZ
    return SINGLE_CHANNEL_BANDWIDTHS_GHZ


@dataclass(frozen=True)
class CellResult:
    """Winner and the full candidate table for one grid cell.

    Attributes:
        best_combo: index into the combo list, or None when no candidate
            produced key ("no key" cell).
        best_bandwidth: winning bandwidth in GHz, or None.
        metric_value: winning metric value (bits/s, or bits/s/GHz).
        per_candidate_values: metric value per [combo][bandwidth], retained
            for normalized summary tables.
    """

    best_combo: int | None
    best_bandwidth: float | None
    metric_value: float
    per_candidate_values: tuple[tuple[float, ...], ...]

    @property
    def no_key(self) -> bool:
        return self.best_combo is None


@dataclass(frozen=True)
class Mosaic:
    """A (jitter x distance) grid of optimized cells.

    cells[i][j] corresponds to jitter_values[i] and distance_values[j].
    """

    axes: SweepAxes
    metric: Metric
    cells: tuple[tuple[CellResult, ...], ...]
    bandwidth_set: tuple[float, ...]
    combos: tuple[ComboSpec, ...]
    instantaneous_loss_db: float = 0.0


def _better(
    value: float,
    bandwidth: float,
    best_value: float,
    best_bandwidth: float,
    metric: Metric,
) -> bool:
    """Ordering for winner selection: value first, then the bandwidth rule
    (larger wins under absolute SKR, smaller under per-GHz), then keep the
    earlier combo."""
    if value != best_value:
        return value > best_value
    if bandwidth != best_bandwidth:
        if metric is Metric.SKR_PER_GHZ:
            return bandwidth < best_bandwidth
        return bandwidth > best_bandwidth
    return False


def sweep_cell(
    jitter: float,
    distance: float,
    combos: tuple[ComboSpec, ...] = DEFAULT_COMBOS,
    bandwidths: tuple[float, ...] | None = None,
    metric: Metric = Metric.ABSOLUTE_SKR,
    loss_db: float = 0.0,
    defaults: Defaults = DEFAULTS,
    search: SearchConfig = SearchConfig(),
    symmetric_split: bool = True,
) -> CellResult:
    """Optimize every candidate at one (jitter, distance) point and rank them.

    Args:
        jitter: total measurement jitter FWHM, seconds.
        distance: total user-to-user distance, km.
        combos: candidate fiber/wavelength combinations.
        bandwidths: candidate bandwidths in GHz; defaults to the standard set
            for the metric.
        metric: ranking metric.
        loss_db: instantaneous loss applied to every candidate.
        defaults: hardware defaults.
        search: operating-point search settings.
        symmetric_split: source placement, see SweepAxes.

    Returns:
        CellResult with the per-candidate metric table and the winner, or a
        "no key" marker when every candidate yields zero.
    """
    if bandwidths is None:
        bandwidths = default_bandwidths(metric)
    per_ghz = metric is Metric.SKR_PER_GHZ
    rows: list[tuple[float, ...]] = []
    best_combo: int | None = None
    best_bandwidth = 0.0
    best_value = 0.0
    for ci, combo in enumerate(combos):
        row = []
        for bw in bandwidths:
            scenario = build_scenario(
                fiber=combo.fiber,
                wavelength_nm=combo.wavelength,
                bandwidth_ghz=bw,
                distance_km=distance,
                total_jitter_fwhm=jitter,
                instantaneous_loss_db=loss_db,
                defaults=defaults,
                symmetric_split=symmetric_split,
            )
            skr = optimize_link(scenario, search).skr
            value = skr / bw if per_ghz else skr
            row.append(value)
            if value > 0.0 and (
                best_combo is None
                or _better(value, bw, best_value, best_bandwidth, metric)
            ):
                best_combo, best_bandwidth, best_value = ci, bw, value
        rows.append(tuple(row))
    if best_combo is None:
        return CellResult(
            best_combo=None,
            best_bandwidth=None,
            metric_value=0.0,
            per_candidate_values=tuple(rows),
        )
    return CellResult(
        best_combo=best_combo,
        best_bandwidth=best_bandwidth,
        metric_value=best_value,
        per_candidate_values=tuple(rows),
    )


def _cell_job(args) -> CellResult:
    """Top-level adapter so cells can be dispatched to worker processes."""
    jitter, distance, combos, bandwidths, metric, loss_db, defaults, search, split = args
    return sweep_cell(
        jitter, distance, combos, bandwidths, metric, loss_db, defaults, search, split
    )


_EXECUTORS: dict[int, ProcessPoolExecutor] = {}


def _shared_executor(workers: int) -> ProcessPoolExecutor:
    """Process pools are reused across calls; spawning one is far more
    expensive than a typical small mosaic."""
    ex = _EXECUTORS.get(workers)
    if ex is None:
        ex = ProcessPoolExecutor(max_workers=workers)
        _EXECUTORS[workers] = ex
    return ex


@atexit.register
def _shutdown_executors() -> None:
    for ex in _EXECUTORS.values():
        ex.shutdown(cancel_futures=True)
    _EXECUTORS.clear()


def build_mosaic(
    axes: SweepAxes,
    combos: tuple[ComboSpec, ...] = DEFAULT_COMBOS,
    bandwidths: tuple[float, ...] | None = None,
    metric: Metric = Metric.ABSOLUTE_SKR,
    loss_db: float = 0.0,
    defaults: Defaults = DEFAULTS,
    search: SearchConfig = SearchConfig(),
    workers: int = 1,
) -> Mosaic:
    """Evaluate a full (jitter x distance) grid.

    Cells are pure functions of their inputs, evaluated in a fixed order (or
    gathered in that order from a process pool), so the result is identical
    for any worker count.
    """
    if len(axes.jitter_values) == 0 or len(axes.distance_values) == 0:
        raise ValueError("axes must be non-empty")
    if len(combos) == 0:
        raise ValueError("combos must be non-empty")
    if bandwidths is None:
        bandwidths = default_bandwidths(metric)
    if len(bandwidths) == 0:
        raise ValueError("bandwidths must be non-empty")
    jobs = [
        (j, d, tuple(combos), tuple(bandwidths), metric, loss_db, defaults, search,
         axes.symmetric_split)
        for j in axes.jitter_values
        for d in axes.distance_values
    ]
    if workers > 1:
        ex = _shared_executor(workers)
        chunk = max(1, len(jobs) // (workers * 4))
        flat = list(ex.map(_cell_job, jobs, chunksize=chunk))
    else:
        flat = [_cell_job(job) for job in jobs]
    n_d = len(axes.distance_values)
    cells = tuple(
        tuple(flat[i * n_d : (i + 1) * n_d]) for i in range(len(axes.jitter_values))
    )
    return Mosaic(
        axes=axes,
        metric=metric,
        cells=cells,
        bandwidth_set=tuple(bandwidths),
        combos=tuple(combos),
        instantaneous_loss_db=loss_db,
    )


@dataclass(frozen=True)
class NormalizedTable:
    """Per-bandwidth metric values normalized within (distance, jitter) groups.

    values[i][k][b] is the metric for jitter_values[i], combo k, bandwidth b,
    divided by the group maximum over all combos and bandwidths at that
    jitter. Groups where nothing keyed stay all zero and are flagged.
    """

    distance: float
    jitter_values: tuple[float, ...]
    combo_labels: tuple[str, ...]
    bandwidths_ghz: tuple[float, ...]
    values: tuple[tuple[tuple[float, ...], ...], ...]
    all_zero: tuple[bool, ...]


def _axis_index(values: tuple[float, ...], target: float, name: str) -> int:
    for i, v in enumerate(values):
        if math.isclose(v, target, rel_tol=1e-9, abs_tol=0.0):
            return i
    raise ValueError(f"{name} {target} is not on the mosaic axes")


def normalized_table(
    m: Mosaic, distance: float, jitters: tuple[float, ...] | list[float]
) -> NormalizedTable:
    """Summarize one distance column of a mosaic as a normalized table.

    For each requested jitter, every (combo, bandwidth) metric value is
    divided by the maximum over the whole group, so each keyed group has a
    maximum of exactly 1.

    Args:
        m: source mosaic.
        distance: distance in km; must lie on the mosaic's distance axis.
        jitters: jitter values in seconds, each on the jitter axis, in the
            desired row order.
    """
    d_idx = _axis_index(m.axes.distance_values, distance, "distance")
    rows = []
    flags = []
    for jitter in jitters:
        j_idx = _axis_index(m.axes.jitter_values, jitter, "jitter")
        table = m.cells[j_idx][d_idx].per_candidate_values
        group_max = max(max(row) for row in table)
        if group_max > 0.0:
            rows.append(tuple(tuple(v / group_max for v in row) for row in table))
            flags.append(False)
        else:
            rows.append(table)
            flags.append(True)
    return NormalizedTable(
        distance=distance,
        jitter_values=tuple(jitters),
        combo_labels=tuple(c.label for c in m.combos),
        bandwidths_ghz=m.bandwidth_set,
        values=tuple(rows),
        all_zero=tuple(flags),
    )
