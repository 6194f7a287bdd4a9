"""Command-line surface for link simulation, optimization, and sweeps.

Subcommands:
    simulate   print link statistics for one scenario and operating point
    optimize   search the best operating point for one scenario
    sweep      build a normalized per-bandwidth table at one distance
    mosaic     evaluate a full (jitter x distance) winner grid
    plot       render a mosaic CSV as an SVG heatmap
    presets    list shipped reproduction configs

Exit codes: 0 success, 1 validation or usage error, 2 I/O error (missing
files, unwritable output). Configs are resolved as filesystem paths first,
then as preset names.
"""

from __future__ import annotations

import argparse
import sys
from dataclasses import fields
from importlib import resources
from pathlib import Path

from .config import (
    ConfigNotFoundError,
    ConfigParseError,
    ConfigValidationError,
    RunConfig,
    ScenarioRequest,
    load_config,
    load_config_text,
)
from .model import LinkScenario, build_scenario, link_stats
from .mosaic import Metric, SweepAxes, build_mosaic, normalized_table
from .optimize import optimize_link
from .render import render_heatmap
from .tables import read_mosaic_csv, write_csv

_PRESET_SUFFIX = ".cfg"

_METRIC_FLAGS = {
    "abs": Metric.ABSOLUTE_SKR,
    "per-ghz": Metric.SKR_PER_GHZ,
}


# ------------------------------------------------------------- resolution

def _preset_root():
    return resources.files("qlinkopt") / "presets"


def preset_names() -> list[str]:
    """Names of the shipped configs, usable as --config values."""
    root = _preset_root()
    return sorted(
        entry.name[: -len(_PRESET_SUFFIX)]
        for entry in root.iterdir()
        if entry.name.endswith(_PRESET_SUFFIX)
    )


def resolve_config(name: str) -> RunConfig:
    """Load a config from a path, or fall back to the preset catalog.

    Preset lookup accepts the bare stem with or without extension and with
    or without the shipped "paper_" prefix, e.g. "fig4" or "paper_fig4.cfg".
    """
    path = Path(name)
    if path.exists():
        return load_config(path)
    stem = name
    for suffix in (".cfg", ".toml"):
        if stem.endswith(suffix):
            stem = stem[: -len(suffix)]
    root = _preset_root()
    for candidate in (stem + _PRESET_SUFFIX, "paper_" + stem + _PRESET_SUFFIX):
        entry = root / candidate
        if entry.is_file():
            return load_config_text(entry.read_text(encoding="utf-8"), source=candidate)
    raise ConfigNotFoundError(f"no such config file or preset: '{name}'")


def _request_scenario(
    cfg: RunConfig, req: ScenarioRequest, loss_db: float
) -> LinkScenario:
    return build_scenario(
        fiber=req.combo.fiber,
        wavelength_nm=req.combo.wavelength,
        bandwidth_ghz=req.bandwidth_ghz,
        distance_km=req.distance_km,
        total_jitter_fwhm=req.jitter_s,
        instantaneous_loss_db=loss_db,
        defaults=cfg.defaults,
        symmetric_split=cfg.axes.symmetric_split,
    )


def _effective_loss(args: argparse.Namespace, cfg: RunConfig) -> float:
    return args.loss_db if args.loss_db is not None else cfg.instantaneous_loss_db


def _effective_metric(args: argparse.Namespace, cfg: RunConfig) -> Metric:
    return _METRIC_FLAGS[args.metric] if args.metric is not None else cfg.metric


def _effective_workers(args: argparse.Namespace, cfg: RunConfig) -> int:
    workers = args.workers if args.workers is not None else cfg.workers
    if workers < 1:
        raise ConfigValidationError(f"--workers must be >= 1, got {workers}")
    return workers


def _output_dir(args: argparse.Namespace, cfg: RunConfig) -> Path:
    out = Path(args.out) if args.out is not None else Path(cfg.output_dir)
    out.mkdir(parents=True, exist_ok=True)
    return out


# ------------------------------------------------------------ subcommands

def _cmd_simulate(args: argparse.Namespace) -> int:
    cfg = resolve_config(args.config)
    if cfg.scenario is None or cfg.operating_point is None:
        raise ConfigValidationError(
            "'scenario' and 'operating_point' sections are required for simulate"
        )
    s = _request_scenario(cfg, cfg.scenario, _effective_loss(args, cfg))
    stats = link_stats(s, cfg.operating_point)
    for field in fields(stats):
        print(f"{field.name} = {getattr(stats, field.name):.6g}")
    return 0


def _cmd_optimize(args: argparse.Namespace) -> int:
    cfg = resolve_config(args.config)
    if cfg.scenario is None:
        raise ConfigValidationError("'scenario' section is required for optimize")
    s = _request_scenario(cfg, cfg.scenario, _effective_loss(args, cfg))
    result = optimize_link(s, cfg.search)
    print(f"coincidence_window = {result.best.coincidence_window!r}")
    print(f"pair_rate = {result.best.pair_rate!r}")
    print(f"skr = {result.skr!r}")
    print(f"evaluations = {result.evaluations}")
    print(f"converged = {result.converged}")
    return 0


def _cmd_sweep(args: argparse.Namespace) -> int:
    cfg = resolve_config(args.config)
    if cfg.sweep is None:
        raise ConfigValidationError("'sweep' section is required for sweep")
    metric = _effective_metric(args, cfg)
    # axes need ascending values; the sweep request keeps its own row order
    axes = SweepAxes(
        jitter_values=tuple(sorted(set(cfg.sweep.jitter_s))),
        distance_values=(cfg.sweep.distance_km,),
        symmetric_split=cfg.axes.symmetric_split,
    )
    m = build_mosaic(
        axes,
        combos=cfg.combos,
        bandwidths=cfg.bandwidths_for(metric),
        metric=metric,
        loss_db=_effective_loss(args, cfg),
        defaults=cfg.defaults,
        search=cfg.search,
        workers=_effective_workers(args, cfg),
    )
    table = normalized_table(m, cfg.sweep.distance_km, cfg.sweep.jitter_s)
    path = _output_dir(args, cfg) / "sweep.csv"
    write_csv(table, path)
    print(path)
    return 0


def _cmd_mosaic(args: argparse.Namespace) -> int:
    cfg = resolve_config(args.config)
    metric = _effective_metric(args, cfg)
    m = build_mosaic(
        cfg.axes,
        combos=cfg.combos,
        bandwidths=cfg.bandwidths_for(metric),
        metric=metric,
        loss_db=_effective_loss(args, cfg),
        defaults=cfg.defaults,
        search=cfg.search,
        workers=_effective_workers(args, cfg),
    )
    path = _output_dir(args, cfg) / "mosaic.csv"
    write_csv(m, path)
    print(path)
    return 0


def _cmd_plot(args: argparse.Namespace) -> int:
    csv_path = Path(args.csv)
    view = read_mosaic_csv(csv_path)
    if args.out is not None:
        out = Path(args.out)
        out.mkdir(parents=True, exist_ok=True)
    else:
        out = csv_path.parent
    path = out / (csv_path.stem + ".svg")
    render_heatmap(view, path)
    print(path)
    return 0


def _cmd_presets(args: argparse.Namespace) -> int:
    for name in preset_names():
        print(name)
    return 0


# ------------------------------------------------------------------ main

def _add_config_flag(p: argparse.ArgumentParser) -> None:
    p.add_argument(
        "--config", required=True, metavar="PATH",
        help="config file path or preset name",
    )


def _add_compute_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument(
        "--loss-db", type=float, default=None, metavar="X",
        help="override instantaneous loss in dB",
    )


def _add_grid_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument(
        "--out", default=None, metavar="DIR",
        help="output directory (default: config output_dir)",
    )
    p.add_argument(
        "--workers", type=int, default=None, metavar="N",
        help="parallel worker processes (default: config workers)",
    )
    p.add_argument(
        "--metric", choices=sorted(_METRIC_FLAGS), default=None,
        help="winner metric (default: config metric)",
    )


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="qlinkopt",
        description="Simulate and optimize fiber entanglement links.",
    )
    sub = parser.add_subparsers(dest="command", required=True, metavar="COMMAND")

    p = sub.add_parser(
        "simulate", help="print link statistics for one scenario",
    )
    _add_config_flag(p)
    _add_compute_flags(p)
    p.set_defaults(func=_cmd_simulate)

    p = sub.add_parser(
        "optimize", help="search the best operating point for one scenario",
    )
    _add_config_flag(p)
    _add_compute_flags(p)
    p.set_defaults(func=_cmd_optimize)

    p = sub.add_parser(
        "sweep", help="write a normalized per-bandwidth table CSV",
    )
    _add_config_flag(p)
    _add_compute_flags(p)
    _add_grid_flags(p)
    p.set_defaults(func=_cmd_sweep)

    p = sub.add_parser(
        "mosaic", help="evaluate the winner grid and write a mosaic CSV",
    )
    _add_config_flag(p)
    _add_compute_flags(p)
    _add_grid_flags(p)
    p.set_defaults(func=_cmd_mosaic)

    p = sub.add_parser("plot", help="render a mosaic CSV as an SVG heatmap")
    p.add_argument("csv", help="mosaic CSV produced by the mosaic subcommand")
    p.add_argument(
        "--out", default=None, metavar="DIR",
        help="output directory (default: alongside the CSV)",
    )
    p.set_defaults(func=_cmd_plot)

    p = sub.add_parser("presets", help="list shipped reproduction configs")
    p.set_defaults(func=_cmd_presets)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        # argparse exits 0 for --help, 2 for usage errors; fold the latter
        # into the validation code
        code = exc.code if isinstance(exc.code, int) else 1
        return 0 if code == 0 else 1
    try:
        return args.func(args)
    except (ConfigParseError, ConfigValidationError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except ConfigNotFoundError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
