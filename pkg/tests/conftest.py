"""Shared generators for randomized tests. Everything takes an explicit
random.Random so each test seeds its own reproducible stream."""

import random

from qlinkopt.model import (
    ConstantDispersion,
    DetectorSpec,
    FiberSpec,
    LinkScenario,
    OperatingPoint,
    SlopeDispersion,
)


def log_uniform(rng: random.Random, lo: float, hi: float) -> float:
    import math

    return math.exp(rng.uniform(math.log(lo), math.log(hi)))


def random_fiber(rng: random.Random, nonnegative_dispersion: bool = False) -> FiberSpec:
    if rng.random() < 0.5:
        lo = 0.0 if nonnegative_dispersion else -5.0
        dispersion = ConstantDispersion(rng.uniform(lo, 25.0))
    else:
        dispersion = SlopeDispersion(rng.uniform(1290.0, 1330.0), rng.uniform(0.05, 0.12))
    return FiberSpec("rand", rng.uniform(0.15, 0.5), dispersion)


def random_scenario(
    rng: random.Random, nonnegative_dispersion: bool = False
) -> LinkScenario:
    """One valid random link. With nonnegative_dispersion, wavelengths stay at
    or above any zero-dispersion point so both arms' CD terms share a sign
    (anomalous-dispersion arms can otherwise cancel nonlocally)."""
    def maybe_zero(value: float, p: float = 0.2) -> float:
        return 0.0 if rng.random() < p else value

    fiber = random_fiber(rng, nonnegative_dispersion)
    wl_lo = 1260.0
    if nonnegative_dispersion and isinstance(fiber.dispersion, SlopeDispersion):
        wl_lo = fiber.dispersion.zero_dispersion_nm

    def detector() -> DetectorSpec:
        return DetectorSpec(
            efficiency=rng.uniform(0.3, 1.0),
            dark_count_rate=maybe_zero(log_uniform(rng, 1.0, 1e4)),
            jitter_fwhm=maybe_zero(log_uniform(rng, 1e-12, 1e-9)),
        )

    return LinkScenario(
        fiber=fiber,
        wavelength_a=rng.uniform(wl_lo, 1625.0),
        wavelength_b=rng.uniform(wl_lo, 1625.0),
        bandwidth=log_uniform(rng, 0.01, 1000.0),
        length_a=maybe_zero(rng.uniform(0.0, 60.0)),
        length_b=maybe_zero(rng.uniform(0.0, 60.0)),
        heralding_efficiency=rng.uniform(0.1, 1.0),
        receiver_efficiency_a=rng.uniform(0.5, 1.0),
        receiver_efficiency_b=rng.uniform(0.5, 1.0),
        detector_a=detector(),
        detector_b=detector(),
        sync_jitter_fwhm=maybe_zero(log_uniform(rng, 1e-12, 2e-10)),
        instantaneous_loss_db=maybe_zero(rng.uniform(0.0, 6.0), 0.5),
        background_rate_a=maybe_zero(log_uniform(rng, 1.0, 1e4), 0.5),
        background_rate_b=maybe_zero(log_uniform(rng, 1.0, 1e4), 0.5),
        intrinsic_qber=maybe_zero(rng.uniform(0.0, 0.05)),
        error_correction_efficiency=rng.uniform(1.0, 1.3),
    )


def random_operating_point(rng: random.Random) -> OperatingPoint:
    rate = 0.0 if rng.random() < 0.1 else log_uniform(rng, 1e3, 1e10)
    return OperatingPoint(log_uniform(rng, 1e-12, 1e-8), rate)
