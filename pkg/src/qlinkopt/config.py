"""Run configuration: a versioned TOML schema mapped onto the domain types.

Files keep the units the domain constructors use (km, nm, GHz, dB; seconds
for time), stated in each key name, so a loaded value passes through without
conversion and load -> serialize -> load returns identical domain values.
Unknown keys anywhere are errors: a typo must not silently fall back to a
default.
"""

from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path

try:
    import tomllib
except ModuleNotFoundError:  # pragma: no cover - python < 3.11
    import tomli as tomllib

from qlinkopt.model import (
    DEFAULTS,
    ConstantDispersion,
    Defaults,
    FiberSpec,
    OperatingPoint,
    SlopeDispersion,
)
from qlinkopt.mosaic import (
    DEFAULT_COMBOS,
    NZDSF,
    PER_GHZ_BANDWIDTHS_GHZ,
    SINGLE_CHANNEL_BANDWIDTHS_GHZ,
    SMF_C_BAND,
    SMF_O_BAND,
    ComboSpec,
    Metric,
    SweepAxes,
    default_axes,
)
from qlinkopt.optimize import SearchConfig

__all__ = [
    "SCHEMA_VERSION",
    "BUILTIN_FIBERS",
    "ConfigError",
    "ConfigNotFoundError",
    "ConfigParseError",
    "ConfigValidationError",
    "ScenarioRequest",
    "SweepRequest",
    "RunConfig",
    "load_config",
    "load_config_text",
    "serialize_config",
]

SCHEMA_VERSION = 1

BUILTIN_FIBERS: tuple[FiberSpec, ...] = (SMF_C_BAND, SMF_O_BAND, NZDSF)


class ConfigError(Exception):
    """Base class for configuration problems."""


class ConfigNotFoundError(ConfigError):
    """The config file (or named preset) does not exist or cannot be read."""


class ConfigParseError(ConfigError):
    """The file is not well-formed TOML."""


class ConfigValidationError(ConfigError):
    """The file parsed but a field is unknown, mistyped, or out of range."""


@dataclass(frozen=True)
class ScenarioRequest:
    """Single-link selection used by point evaluation and optimization.

    Attributes:
        combo: resolved fiber/wavelength combination.
        bandwidth_ghz: photon bandwidth, GHz.
        distance_km: total user-to-user distance, km.
        jitter_s: total measurement jitter FWHM, seconds.
    """

    combo: ComboSpec
    bandwidth_ghz: float
    distance_km: float
    jitter_s: float


@dataclass(frozen=True)
class SweepRequest:
    """Normalized-table request: one distance, chosen jitter rows in order."""

    distance_km: float
    jitter_s: tuple[float, ...]


@dataclass(frozen=True)
class RunConfig:
    """Fully resolved run settings; every field is valid on construction."""

    schema_version: int = SCHEMA_VERSION
    defaults: Defaults = DEFAULTS
    fibers: tuple[FiberSpec, ...] = BUILTIN_FIBERS
    combos: tuple[ComboSpec, ...] = DEFAULT_COMBOS
    axes: SweepAxes = default_axes()
    single_channel_bandwidths_ghz: tuple[float, ...] = SINGLE_CHANNEL_BANDWIDTHS_GHZ
    per_ghz_bandwidths_ghz: tuple[float, ...] = PER_GHZ_BANDWIDTHS_GHZ
    metric: Metric = Metric.ABSOLUTE_SKR
    instantaneous_loss_db: float = 0.0
    search: SearchConfig = SearchConfig()
    output_dir: str = "out"
    workers: int = 1
    scenario: ScenarioRequest | None = None
    operating_point: OperatingPoint | None = None
    sweep: SweepRequest | None = None

    def bandwidths_for(self, metric: Metric) -> tuple[float, ...]:
        if metric is Metric.SKR_PER_GHZ:
            return self.per_ghz_bandwidths_ghz
        return self.single_channel_bandwidths_ghz


# ---------------------------------------------------------------- parsing

def _check_keys(table: dict, allowed: tuple[str, ...], path: str) -> None:
    for key in table:
        if key not in allowed:
            where = f"{path}.{key}" if path else key
            raise ConfigValidationError(f"unknown key '{where}'")


def _as_float(value, path: str) -> float:
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise ConfigValidationError(f"'{path}' must be a number, got {value!r}")
    return float(value)


def _as_int(value, path: str) -> int:
    if isinstance(value, bool) or not isinstance(value, int):
        raise ConfigValidationError(f"'{path}' must be an integer, got {value!r}")
    return value


def _as_bool(value, path: str) -> bool:
    if not isinstance(value, bool):
        raise ConfigValidationError(f"'{path}' must be a boolean, got {value!r}")
    return value


def _as_str(value, path: str) -> str:
    if not isinstance(value, str):
        raise ConfigValidationError(f"'{path}' must be a string, got {value!r}")
    return value


def _as_float_list(value, path: str) -> tuple[float, ...]:
    if not isinstance(value, list):
        raise ConfigValidationError(f"'{path}' must be an array of numbers")
    return tuple(_as_float(v, f"{path}[{i}]") for i, v in enumerate(value))


def _as_table(value, path: str) -> dict:
    if not isinstance(value, dict):
        raise ConfigValidationError(f"'{path}' must be a table")
    return value


def _in_range(value: float, lo: float, hi: float, path: str,
              lo_open: bool = False, hi_open: bool = False) -> float:
    low_ok = value > lo if lo_open else value >= lo
    high_ok = value < hi if hi_open else value <= hi
    if not (low_ok and high_ok):
        lo_b = "(" if lo_open else "["
        hi_b = ")" if hi_open else "]"
        raise ConfigValidationError(
            f"'{path}' must be in {lo_b}{lo}, {hi}{hi_b}, got {value}"
        )
    return value


_DEFAULTS_KEYS = (
    "heralding_efficiency",
    "detector_efficiency",
    "receiver_efficiency",
    "dark_count_rate_hz",
    "background_rate_hz",
    "intrinsic_qber",
    "sync_jitter_s",
    "error_correction_efficiency",
)


def _parse_defaults(table: dict, path: str) -> Defaults:
    _check_keys(table, _DEFAULTS_KEYS, path)

    def get(key: str, fallback: float) -> float:
        if key not in table:
            return fallback
        return _as_float(table[key], f"{path}.{key}")

    d = DEFAULTS
    out = Defaults(
        heralding_efficiency=get("heralding_efficiency", d.heralding_efficiency),
        detector_efficiency=get("detector_efficiency", d.detector_efficiency),
        receiver_efficiency=get("receiver_efficiency", d.receiver_efficiency),
        dark_count_rate=get("dark_count_rate_hz", d.dark_count_rate),
        background_rate=get("background_rate_hz", d.background_rate),
        intrinsic_qber=get("intrinsic_qber", d.intrinsic_qber),
        sync_jitter_fwhm=get("sync_jitter_s", d.sync_jitter_fwhm),
        error_correction_efficiency=get(
            "error_correction_efficiency", d.error_correction_efficiency
        ),
    )
    inf = float("inf")
    for key, value, lo, hi, lo_open in (
        ("heralding_efficiency", out.heralding_efficiency, 0.0, 1.0, True),
        ("detector_efficiency", out.detector_efficiency, 0.0, 1.0, True),
        ("receiver_efficiency", out.receiver_efficiency, 0.0, 1.0, True),
        ("dark_count_rate_hz", out.dark_count_rate, 0.0, inf, False),
        ("background_rate_hz", out.background_rate, 0.0, inf, False),
        ("sync_jitter_s", out.sync_jitter_fwhm, 0.0, inf, False),
        ("error_correction_efficiency", out.error_correction_efficiency, 1.0, inf, False),
    ):
        _in_range(value, lo, hi, f"{path}.{key}", lo_open=lo_open)
    _in_range(out.intrinsic_qber, 0.0, 0.5, f"{path}.intrinsic_qber", hi_open=True)
    return out


def _parse_dispersion(table: dict, path: str):
    _check_keys(
        table, ("model", "d_ps_nm_km", "zero_dispersion_nm", "slope_ps_nm2_km"), path
    )
    if "model" not in table:
        raise ConfigValidationError(f"'{path}.model' is required")
    model = _as_str(table["model"], f"{path}.model")
    if model == "constant":
        if "d_ps_nm_km" not in table:
            raise ConfigValidationError(f"'{path}.d_ps_nm_km' is required")
        for key in ("zero_dispersion_nm", "slope_ps_nm2_km"):
            if key in table:
                raise ConfigValidationError(
                    f"'{path}.{key}' does not apply to the constant model"
                )
        return ConstantDispersion(_as_float(table["d_ps_nm_km"], f"{path}.d_ps_nm_km"))
    if model == "slope":
        for key in ("zero_dispersion_nm", "slope_ps_nm2_km"):
            if key not in table:
                raise ConfigValidationError(f"'{path}.{key}' is required")
        if "d_ps_nm_km" in table:
            raise ConfigValidationError(
                f"'{path}.d_ps_nm_km' does not apply to the slope model"
            )
        return SlopeDispersion(
            zero_dispersion_nm=_as_float(
                table["zero_dispersion_nm"], f"{path}.zero_dispersion_nm"
            ),
            slope_ps_nm2_km=_as_float(
                table["slope_ps_nm2_km"], f"{path}.slope_ps_nm2_km"
            ),
        )
    raise ConfigValidationError(
        f"'{path}.model' must be 'constant' or 'slope', got {model!r}"
    )


def _parse_fibers(items, path: str) -> tuple[FiberSpec, ...]:
    if not isinstance(items, list):
        raise ConfigValidationError(f"'{path}' must be an array of tables")
    fibers = []
    names = set()
    for i, item in enumerate(items):
        p = f"{path}[{i}]"
        table = _as_table(item, p)
        _check_keys(table, ("name", "attenuation_db_per_km", "dispersion"), p)
        for key in ("name", "attenuation_db_per_km", "dispersion"):
            if key not in table:
                raise ConfigValidationError(f"'{p}.{key}' is required")
        name = _as_str(table["name"], f"{p}.name")
        if name in names:
            raise ConfigValidationError(f"duplicate fiber name {name!r} at '{p}.name'")
        names.add(name)
        dispersion = _parse_dispersion(
            _as_table(table["dispersion"], f"{p}.dispersion"), f"{p}.dispersion"
        )
        try:
            fibers.append(
                FiberSpec(
                    name=name,
                    attenuation_db_per_km=_as_float(
                        table["attenuation_db_per_km"], f"{p}.attenuation_db_per_km"
                    ),
                    dispersion=dispersion,
                )
            )
        except ValueError as e:
            raise ConfigValidationError(f"'{p}': {e}") from e
    return tuple(fibers)


def _parse_combos(
    items, path: str, catalog: dict[str, FiberSpec]
) -> tuple[ComboSpec, ...]:
    if not isinstance(items, list):
        raise ConfigValidationError(f"'{path}' must be an array of tables")
    if len(items) == 0:
        raise ConfigValidationError(f"'{path}' must not be empty")
    combos = []
    for i, item in enumerate(items):
        p = f"{path}[{i}]"
        table = _as_table(item, p)
        _check_keys(table, ("fiber", "wavelength_nm", "label"), p)
        for key in ("fiber", "wavelength_nm"):
            if key not in table:
                raise ConfigValidationError(f"'{p}.{key}' is required")
        fiber_name = _as_str(table["fiber"], f"{p}.fiber")
        if fiber_name not in catalog:
            known = ", ".join(sorted(catalog))
            raise ConfigValidationError(
                f"'{p}.fiber' references unknown fiber {fiber_name!r} (known: {known})"
            )
        wavelength = _as_float(table["wavelength_nm"], f"{p}.wavelength_nm")
        label = (
            _as_str(table["label"], f"{p}.label")
            if "label" in table
            else f"{fiber_name} {wavelength:g}nm"
        )
        try:
            combos.append(
                ComboSpec(fiber=catalog[fiber_name], wavelength=wavelength, label=label)
            )
        except ValueError as e:
            raise ConfigValidationError(f"'{p}': {e}") from e
    return tuple(combos)


def _parse_axes(table: dict, path: str) -> SweepAxes:
    _check_keys(table, ("jitter_s", "distance_km", "symmetric_split"), path)
    base = default_axes()
    jitter = (
        _as_float_list(table["jitter_s"], f"{path}.jitter_s")
        if "jitter_s" in table
        else base.jitter_values
    )
    distance = (
        _as_float_list(table["distance_km"], f"{path}.distance_km")
        if "distance_km" in table
        else base.distance_values
    )
    split = (
        _as_bool(table["symmetric_split"], f"{path}.symmetric_split")
        if "symmetric_split" in table
        else True
    )
    try:
        return SweepAxes(
            jitter_values=jitter, distance_values=distance, symmetric_split=split
        )
    except ValueError as e:
        raise ConfigValidationError(f"'{path}': {e}") from e


def _parse_bandwidths(table: dict, path: str) -> tuple[tuple[float, ...], tuple[float, ...]]:
    _check_keys(table, ("single_channel_ghz", "per_ghz"), path)
    single = (
        _as_float_list(table["single_channel_ghz"], f"{path}.single_channel_ghz")
        if "single_channel_ghz" in table
        else SINGLE_CHANNEL_BANDWIDTHS_GHZ
    )
    per_ghz = (
        _as_float_list(table["per_ghz"], f"{path}.per_ghz")
        if "per_ghz" in table
        else PER_GHZ_BANDWIDTHS_GHZ
    )
    for name, values in (("single_channel_ghz", single), ("per_ghz", per_ghz)):
        if len(values) == 0:
            raise ConfigValidationError(f"'{path}.{name}' must not be empty")
        for i, v in enumerate(values):
            if v <= 0.0:
                raise ConfigValidationError(
                    f"'{path}.{name}[{i}]' must be > 0, got {v}"
                )
    return single, per_ghz


_METRIC_NAMES = {m.value: m for m in Metric}


def _parse_run(table: dict, path: str):
    _check_keys(
        table, ("metric", "instantaneous_loss_db", "output_dir", "workers"), path
    )
    metric = Metric.ABSOLUTE_SKR
    if "metric" in table:
        raw = _as_str(table["metric"], f"{path}.metric")
        if raw not in _METRIC_NAMES:
            choices = ", ".join(sorted(_METRIC_NAMES))
            raise ConfigValidationError(
                f"'{path}.metric' must be one of {choices}, got {raw!r}"
            )
        metric = _METRIC_NAMES[raw]
    loss = 0.0
    if "instantaneous_loss_db" in table:
        loss = _as_float(table["instantaneous_loss_db"], f"{path}.instantaneous_loss_db")
        _in_range(loss, 0.0, float("inf"), f"{path}.instantaneous_loss_db")
    output_dir = (
        _as_str(table["output_dir"], f"{path}.output_dir")
        if "output_dir" in table
        else "out"
    )
    workers = 1
    if "workers" in table:
        workers = _as_int(table["workers"], f"{path}.workers")
        if workers < 1:
            raise ConfigValidationError(f"'{path}.workers' must be >= 1, got {workers}")
    return metric, loss, output_dir, workers


def _parse_pair(table: dict, key: str, path: str, fallback: tuple[float, float]):
    if key not in table:
        return fallback
    values = _as_float_list(table[key], f"{path}.{key}")
    if len(values) != 2:
        raise ConfigValidationError(f"'{path}.{key}' must be a [low, high] pair")
    return (values[0], values[1])


def _parse_search(table: dict, path: str) -> SearchConfig:
    _check_keys(
        table,
        ("window_s", "pair_rate_hz", "rel_tolerance", "max_evaluations", "seed_grid"),
        path,
    )
    base = SearchConfig()
    window = _parse_pair(table, "window_s", path, base.window_bounds)
    rate = _parse_pair(table, "pair_rate_hz", path, base.rate_bounds)
    tol = (
        _as_float(table["rel_tolerance"], f"{path}.rel_tolerance")
        if "rel_tolerance" in table
        else base.rel_tolerance
    )
    max_evals = (
        _as_int(table["max_evaluations"], f"{path}.max_evaluations")
        if "max_evaluations" in table
        else base.max_evaluations
    )
    seed = (
        _as_int(table["seed_grid"], f"{path}.seed_grid")
        if "seed_grid" in table
        else base.seed_grid
    )
    try:
        return SearchConfig(
            window_bounds=window,
            rate_bounds=rate,
            rel_tolerance=tol,
            max_evaluations=max_evals,
            seed_grid=seed,
        )
    except ValueError as e:
        raise ConfigValidationError(f"'{path}': {e}") from e


def _parse_scenario(
    table: dict, path: str, combos: tuple[ComboSpec, ...]
) -> ScenarioRequest:
    _check_keys(table, ("combo", "bandwidth_ghz", "distance_km", "jitter_s"), path)
    for key in ("combo", "bandwidth_ghz", "distance_km", "jitter_s"):
        if key not in table:
            raise ConfigValidationError(f"'{path}.{key}' is required")
    label = _as_str(table["combo"], f"{path}.combo")
    by_label = {c.label: c for c in combos}
    if label not in by_label:
        known = ", ".join(c.label for c in combos)
        raise ConfigValidationError(
            f"'{path}.combo' references unknown combo {label!r} (known: {known})"
        )
    bandwidth = _as_float(table["bandwidth_ghz"], f"{path}.bandwidth_ghz")
    _in_range(bandwidth, 0.0, float("inf"), f"{path}.bandwidth_ghz", lo_open=True)
    distance = _as_float(table["distance_km"], f"{path}.distance_km")
    _in_range(distance, 0.0, float("inf"), f"{path}.distance_km")
    jitter = _as_float(table["jitter_s"], f"{path}.jitter_s")
    _in_range(jitter, 0.0, float("inf"), f"{path}.jitter_s")
    return ScenarioRequest(
        combo=by_label[label],
        bandwidth_ghz=bandwidth,
        distance_km=distance,
        jitter_s=jitter,
    )


def _parse_operating_point(table: dict, path: str) -> OperatingPoint:
    _check_keys(table, ("window_s", "pair_rate_hz"), path)
    for key in ("window_s", "pair_rate_hz"):
        if key not in table:
            raise ConfigValidationError(f"'{path}.{key}' is required")
    try:
        return OperatingPoint(
            coincidence_window=_as_float(table["window_s"], f"{path}.window_s"),
            pair_rate=_as_float(table["pair_rate_hz"], f"{path}.pair_rate_hz"),
        )
    except ValueError as e:
        raise ConfigValidationError(f"'{path}': {e}") from e


def _parse_sweep(table: dict, path: str) -> SweepRequest:
    _check_keys(table, ("distance_km", "jitter_s"), path)
    for key in ("distance_km", "jitter_s"):
        if key not in table:
            raise ConfigValidationError(f"'{path}.{key}' is required")
    jitters = _as_float_list(table["jitter_s"], f"{path}.jitter_s")
    if len(jitters) == 0:
        raise ConfigValidationError(f"'{path}.jitter_s' must not be empty")
    return SweepRequest(
        distance_km=_as_float(table["distance_km"], f"{path}.distance_km"),
        jitter_s=jitters,
    )


_TOP_KEYS = (
    "schema_version",
    "defaults",
    "fibers",
    "combos",
    "axes",
    "bandwidths",
    "run",
    "search",
    "scenario",
    "operating_point",
    "sweep",
)


def load_config_text(text: str, source: str = "<config>") -> RunConfig:
    """Parse and validate one TOML document into a RunConfig."""
    try:
        data = tomllib.loads(text)
    except tomllib.TOMLDecodeError as e:
        raise ConfigParseError(f"{source}: {e}") from e
    _check_keys(data, _TOP_KEYS, "")

    version = SCHEMA_VERSION
    if "schema_version" in data:
        version = _as_int(data["schema_version"], "schema_version")
        if version != SCHEMA_VERSION:
            raise ConfigValidationError(
                f"'schema_version' {version} is not supported (expected {SCHEMA_VERSION})"
            )

    defaults = (
        _parse_defaults(_as_table(data["defaults"], "defaults"), "defaults")
        if "defaults" in data
        else DEFAULTS
    )

    if "fibers" in data:
        fibers = _parse_fibers(data["fibers"], "fibers")
        if "combos" not in data:
            raise ConfigValidationError(
                "'combos' is required when 'fibers' is given (the default combo "
                "list only covers the built-in catalog)"
            )
    else:
        fibers = BUILTIN_FIBERS
    catalog = {f.name: f for f in fibers}

    combos = (
        _parse_combos(data["combos"], "combos", catalog)
        if "combos" in data
        else DEFAULT_COMBOS
    )

    axes = (
        _parse_axes(_as_table(data["axes"], "axes"), "axes")
        if "axes" in data
        else default_axes()
    )

    if "bandwidths" in data:
        single, per_ghz = _parse_bandwidths(
            _as_table(data["bandwidths"], "bandwidths"), "bandwidths"
        )
    else:
        single, per_ghz = SINGLE_CHANNEL_BANDWIDTHS_GHZ, PER_GHZ_BANDWIDTHS_GHZ

    if "run" in data:
        metric, loss, output_dir, workers = _parse_run(_as_table(data["run"], "run"), "run")
    else:
        metric, loss, output_dir, workers = Metric.ABSOLUTE_SKR, 0.0, "out", 1

    search = (
        _parse_search(_as_table(data["search"], "search"), "search")
        if "search" in data
        else SearchConfig()
    )

    scenario = (
        _parse_scenario(_as_table(data["scenario"], "scenario"), "scenario", combos)
        if "scenario" in data
        else None
    )
    operating_point = (
        _parse_operating_point(
            _as_table(data["operating_point"], "operating_point"), "operating_point"
        )
        if "operating_point" in data
        else None
    )
    sweep = (
        _parse_sweep(_as_table(data["sweep"], "sweep"), "sweep")
        if "sweep" in data
        else None
    )

    return RunConfig(
        schema_version=version,
        defaults=defaults,
        fibers=fibers,
        combos=combos,
        axes=axes,
        single_channel_bandwidths_ghz=single,
        per_ghz_bandwidths_ghz=per_ghz,
        metric=metric,
        instantaneous_loss_db=loss,
        search=search,
        output_dir=output_dir,
        workers=workers,
        scenario=scenario,
        operating_point=operating_point,
        sweep=sweep,
    )


def load_config(path: str | Path) -> RunConfig:
    """Load and validate a config file.

    Raises:
        ConfigNotFoundError: missing or unreadable file.
        ConfigParseError: malformed TOML.
        ConfigValidationError: unknown key or invalid field value.
    """
    p = Path(path)
    try:
        text = p.read_text(encoding="utf-8")
    except FileNotFoundError:
        raise ConfigNotFoundError(f"config file not found: {p}") from None
    except OSError as e:
        raise ConfigNotFoundError(f"cannot read config file {p}: {e}") from e
    return load_config_text(text, source=str(p))


# ------------------------------------------------------------ serialization

def _toml_float(x: float) -> str:
    # repr is shortest-round-trip, so reloading reproduces the exact value
    r = repr(float(x))
    return r


def _toml_str(s: str) -> str:
    return '"' + s.replace("\\", "\\\\").replace('"', '\\"') + '"'


def _toml_list(values) -> str:
    return "[" + ", ".join(_toml_float(v) for v in values) + "]"


def serialize_config(cfg: RunConfig) -> str:
    """Render a RunConfig as a TOML document.

    Every field is written out explicitly, so the output is independent of
    which keys the original file chose to rely on defaults for. Reloading the
    output reproduces the identical RunConfig.
    """
    d = cfg.defaults
    lines = [
        f"schema_version = {cfg.schema_version}",
        "",
        "[defaults]",
        f"heralding_efficiency = {_toml_float(d.heralding_efficiency)}",
        f"detector_efficiency = {_toml_float(d.detector_efficiency)}",
        f"receiver_efficiency = {_toml_float(d.receiver_efficiency)}",
        f"dark_count_rate_hz = {_toml_float(d.dark_count_rate)}",
        f"background_rate_hz = {_toml_float(d.background_rate)}",
        f"intrinsic_qber = {_toml_float(d.intrinsic_qber)}",
        f"sync_jitter_s = {_toml_float(d.sync_jitter_fwhm)}",
        f"error_correction_efficiency = {_toml_float(d.error_correction_efficiency)}",
    ]
    for fiber in cfg.fibers:
        lines += [
            "",
            "[[fibers]]",
            f"name = {_toml_str(fiber.name)}",
            f"attenuation_db_per_km = {_toml_float(fiber.attenuation_db_per_km)}",
            "[fibers.dispersion]",
        ]
        law = fiber.dispersion
        if isinstance(law, ConstantDispersion):
            lines += [
                'model = "constant"',
                f"d_ps_nm_km = {_toml_float(law.d_ps_nm_km)}",
            ]
        else:
            lines += [
                'model = "slope"',
                f"zero_dispersion_nm = {_toml_float(law.zero_dispersion_nm)}",
                f"slope_ps_nm2_km = {_toml_float(law.slope_ps_nm2_km)}",
            ]
    for combo in cfg.combos:
        lines += [
            "",
            "[[combos]]",
            f"fiber = {_toml_str(combo.fiber.name)}",
            f"wavelength_nm = {_toml_float(combo.wavelength)}",
            f"label = {_toml_str(combo.label)}",
        ]
    lines += [
        "",
        "[axes]",
        f"jitter_s = {_toml_list(cfg.axes.jitter_values)}",
        f"distance_km = {_toml_list(cfg.axes.distance_values)}",
        f"symmetric_split = {'true' if cfg.axes.symmetric_split else 'false'}",
        "",
        "[bandwidths]",
        f"single_channel_ghz = {_toml_list(cfg.single_channel_bandwidths_ghz)}",
        f"per_ghz = {_toml_list(cfg.per_ghz_bandwidths_ghz)}",
        "",
        "[run]",
        f"metric = {_toml_str(cfg.metric.value)}",
        f"instantaneous_loss_db = {_toml_float(cfg.instantaneous_loss_db)}",
        f"output_dir = {_toml_str(cfg.output_dir)}",
        f"workers = {cfg.workers}",
        "",
        "[search]",
        f"window_s = {_toml_list(cfg.search.window_bounds)}",
        f"pair_rate_hz = {_toml_list(cfg.search.rate_bounds)}",
        f"rel_tolerance = {_toml_float(cfg.search.rel_tolerance)}",
        f"max_evaluations = {cfg.search.max_evaluations}",
        f"seed_grid = {cfg.search.seed_grid}",
    ]
    if cfg.scenario is not None:
        s = cfg.scenario
        lines += [
            "",
            "[scenario]",
            f"combo = {_toml_str(s.combo.label)}",
            f"bandwidth_ghz = {_toml_float(s.bandwidth_ghz)}",
            f"distance_km = {_toml_float(s.distance_km)}",
            f"jitter_s = {_toml_float(s.jitter_s)}",
        ]
    if cfg.operating_point is not None:
        op = cfg.operating_point
        lines += [
            "",
            "[operating_point]",
            f"window_s = {_toml_float(op.coincidence_window)}",
            f"pair_rate_hz = {_toml_float(op.pair_rate)}",
        ]
    if cfg.sweep is not None:
        lines += [
            "",
            "[sweep]",
            f"distance_km = {_toml_float(cfg.sweep.distance_km)}",
            f"jitter_s = {_toml_list(cfg.sweep.jitter_s)}",
        ]
    return "\n".join(lines) + "\n"
