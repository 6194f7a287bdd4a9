"""Simulator and optimizer for fiber entanglement-distribution links.

Computes secret key rate against loss, chromatic dispersion, timing jitter,
and photon bandwidth, and builds optimization mosaics that pick the best
fiber, wavelength, and bandwidth for any (jitter, distance) operating point.
"""

from qlinkopt.model import (
    DEFAULTS,
    ConstantDispersion,
    Defaults,
    DetectorSpec,
    FiberSpec,
    LinkEvaluator,
    LinkScenario,
    LinkStats,
    OperatingPoint,
    SlopeDispersion,
    Transmission,
    binary_entropy,
    build_scenario,
    capture_fraction,
    cd_broadening,
    channel_transmittance,
    coherence_fwhm,
    dispersion_coefficient,
    link_stats,
    skr_asymptotic,
    total_transmission,
    total_width,
    with_jitter,
)
from qlinkopt.optimize import OptimResult, SearchConfig, grid_oracle, optimize_link
from qlinkopt.mosaic import (
    DEFAULT_COMBOS,
    NZDSF,
    PER_GHZ_BANDWIDTHS_GHZ,
    SINGLE_CHANNEL_BANDWIDTHS_GHZ,
    SMF_C_BAND,
    SMF_O_BAND,
    CellResult,
    ComboSpec,
    Metric,
    Mosaic,
    NormalizedTable,
    SweepAxes,
    build_mosaic,
    default_axes,
    normalized_table,
    sweep_cell,
)
from qlinkopt.config import (
    SCHEMA_VERSION,
    ConfigError,
    ConfigNotFoundError,
    ConfigParseError,
    ConfigValidationError,
    RunConfig,
    ScenarioRequest,
    SweepRequest,
    load_config,
    load_config_text,
    serialize_config,
)
from qlinkopt.tables import (
    CellView,
    MosaicView,
    as_view,
    read_mosaic_csv,
    write_csv,
)
from qlinkopt.render import render_heatmap

__version__ = "0.1.0"
