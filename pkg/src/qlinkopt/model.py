"""Closed-form physics and statistics of one fiber entanglement-distribution link.

A BBM92-style source sits between two users, A and B. Each arm carries one
photon of a pair through fiber with attenuation and chromatic dispersion to a
receiver with imperfect detectors. This module computes, for a fully specified
link and a chosen operating point (coincidence window, pair generation rate):
transmission budgets, the temporal width of the coincidence peak, singles and
coincidence rates, accidentals, QBER, and the asymptotic secret key rate.

Unit conventions: constructor-facing quantities keep the units engineers quote
them in (nm, km, GHz, dB, ps/(nm km)); every time-like field and every derived
statistic is in SI (seconds, counts/s, bits/s). Conversions happen inside the
formulas, once, and are covered by unit-bookkeeping tests.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace

__all__ = [
    "SPEED_OF_LIGHT",
    "ConstantDispersion",
    "SlopeDispersion",
    "FiberSpec",
    "DetectorSpec",
    "LinkScenario",
    "OperatingPoint",
    "Transmission",
    "LinkStats",
    "Defaults",
    "DEFAULTS",
    "dispersion_coefficient",
    "channel_transmittance",
    "total_transmission",
    "coherence_fwhm",
    "cd_broadening",
    "total_width",
    "capture_fraction",
    "binary_entropy",
    "skr_asymptotic",
    "link_stats",
    "LinkEvaluator",
    "build_scenario",
    "with_jitter",
]

SPEED_OF_LIGHT = 299_792_458.0
"""Vacuum speed of light in m/s (exact)."""

_TIME_BANDWIDTH_FWHM = 2.0 * math.log(2.0) / math.pi
"""FWHM time-bandwidth product of a transform-limited Gaussian, 2 ln2 / pi."""

_SQRT_LN2 = math.sqrt(math.log(2.0))


@dataclass(frozen=True)
class ConstantDispersion:
    """Wavelength-independent dispersion coefficient.

    Attributes:
        d_ps_nm_km: dispersion coefficient D in ps/(nm km).
    """

    d_ps_nm_km: float

    def coefficient(self, wavelength_nm: float) -> float:
        return self.d_ps_nm_km


@dataclass(frozen=True)
class SlopeDispersion:
    """Single-slope dispersion law for standard single-mode fiber.

    D(lambda) = (s0/4) * (lambda - lambda0^4 / lambda^3), which is exactly zero
    at the zero-dispersion wavelength lambda0.

    Attributes:
        zero_dispersion_nm: lambda0 in nm.
        slope_ps_nm2_km: zero-dispersion slope s0 in ps/(nm^2 km).
    """

    zero_dispersion_nm: float
    slope_ps_nm2_km: float

    def coefficient(self, wavelength_nm: float) -> float:
        lam0 = self.zero_dispersion_nm
        lam = wavelength_nm
        return (self.slope_ps_nm2_km / 4.0) * (lam - lam0**4 / lam**3)


DispersionLaw = ConstantDispersion | SlopeDispersion


@dataclass(frozen=True)
class FiberSpec:
    """One fiber type: attenuation plus a dispersion law.

    Attributes:
        name: short label used in reports and legends.
        attenuation_db_per_km: positive loss figure in dB/km.
        dispersion: ConstantDispersion or SlopeDispersion.
    """

    name: str
    attenuation_db_per_km: float
    dispersion: DispersionLaw

    def __post_init__(self) -> None:
        if not (self.attenuation_db_per_km > 0.0):
            raise ValueError(
                f"attenuation_db_per_km must be > 0, got {self.attenuation_db_per_km}"
            )


@dataclass(frozen=True)
class DetectorSpec:
    """Single-photon detector parameters.

    Attributes:
        efficiency: detection efficiency in (0, 1].
        dark_count_rate: dark counts per second, >= 0.
        jitter_fwhm: timing jitter FWHM in seconds, >= 0.
    """

    efficiency: float
    dark_count_rate: float = 0.0
    jitter_fwhm: float = 0.0

    def __post_init__(self) -> None:
        if not (0.0 < self.efficiency <= 1.0):
            raise ValueError(f"efficiency must be in (0, 1], got {self.efficiency}")
        if self.dark_count_rate < 0.0:
            raise ValueError(
                f"dark_count_rate must be >= 0, got {self.dark_count_rate}"
            )
        if self.jitter_fwhm < 0.0:
            raise ValueError(f"jitter_fwhm must be >= 0, got {self.jitter_fwhm}")


@dataclass(frozen=True)
class LinkScenario:
    """Complete description of one two-arm link.

    Attributes:
        fiber: fiber type used on both arms.
        wavelength_a: photon wavelength toward user A, nm.
        wavelength_b: photon wavelength toward user B, nm.
        bandwidth: full photon bandwidth shared by both photons, GHz.
        length_a: fiber length of arm A, km.
        length_b: fiber length of arm B, km.
        heralding_efficiency: source heralding efficiency in (0, 1].
        receiver_efficiency_a: user A receiver optics efficiency in (0, 1].
        receiver_efficiency_b: user B receiver optics efficiency in (0, 1].
        detector_a: user A detector.
        detector_b: user B detector.
        sync_jitter_fwhm: clock synchronization jitter FWHM, seconds.
        instantaneous_loss_db: distance-independent insertion loss, dB >= 0.
        background_rate_a: stray/background click rate at A, counts/s.
        background_rate_b: stray/background click rate at B, counts/s.
        intrinsic_qber: error fraction of true coincidences, in [0, 0.5).
        error_correction_efficiency: f_EC penalty factor, >= 1.
    """

    fiber: FiberSpec
    wavelength_a: float
    wavelength_b: float
    bandwidth: float
    length_a: float
    length_b: float
    heralding_efficiency: float
    receiver_efficiency_a: float
    receiver_efficiency_b: float
    detector_a: DetectorSpec
    detector_b: DetectorSpec
    sync_jitter_fwhm: float = 0.0
    instantaneous_loss_db: float = 0.0
    background_rate_a: float = 0.0
    background_rate_b: float = 0.0
    intrinsic_qber: float = 0.0
    error_correction_efficiency: float = 1.1

    def __post_init__(self) -> None:
        if self.wavelength_a <= 0.0 or self.wavelength_b <= 0.0:
            raise ValueError(
                f"wavelengths must be > 0 nm, got {self.wavelength_a}, {self.wavelength_b}"
            )
        if not (self.bandwidth > 0.0):
            raise ValueError(f"bandwidth must be > 0 GHz, got {self.bandwidth}")
        if self.length_a < 0.0 or self.length_b < 0.0:
            raise ValueError(
                f"arm lengths must be >= 0 km, got {self.length_a}, {self.length_b}"
            )
        for field in (
            "heralding_efficiency",
            "receiver_efficiency_a",
            "receiver_efficiency_b",
        ):
            value = getattr(self, field)
            if not (0.0 < value <= 1.0):
                raise ValueError(f"{field} must be in (0, 1], got {value}")
        if self.sync_jitter_fwhm < 0.0:
            raise ValueError(
                f"sync_jitter_fwhm must be >= 0, got {self.sync_jitter_fwhm}"
            )
        if self.instantaneous_loss_db < 0.0:
            raise ValueError(
                f"instantaneous_loss_db must be >= 0, got {self.instantaneous_loss_db}"
            )
        if self.background_rate_a < 0.0 or self.background_rate_b < 0.0:
            raise ValueError("background rates must be >= 0")
        if not (0.0 <= self.intrinsic_qber < 0.5):
            raise ValueError(
                f"intrinsic_qber must be in [0, 0.5), got {self.intrinsic_qber}"
            )
        if self.error_correction_efficiency < 1.0:
            raise ValueError(
                "error_correction_efficiency must be >= 1, "
                f"got {self.error_correction_efficiency}"
            )


@dataclass(frozen=True)
class OperatingPoint:
    """Tunable operating point of the link.

    Attributes:
        coincidence_window: pairing window t_cc in seconds, > 0.
        pair_rate: entangled pair generation rate in pairs/s, >= 0.
    """

    coincidence_window: float
    pair_rate: float

    def __post_init__(self) -> None:
        if not (self.coincidence_window > 0.0 and math.isfinite(self.coincidence_window)):
            raise ValueError(
                f"coincidence_window must be finite and > 0, got {self.coincidence_window}"
            )
        if not (self.pair_rate >= 0.0 and math.isfinite(self.pair_rate)):
            raise ValueError(f"pair_rate must be finite and >= 0, got {self.pair_rate}")


@dataclass(frozen=True)
class Transmission:
    """Per-arm and total transmission budget."""

    arm_a: float
    arm_b: float
    total: float


@dataclass(frozen=True)
class LinkStats:
    """Derived per-evaluation quantities, all in SI.

    Attributes:
        eta_total: end-to-end pair transmission probability.
        coherence_fwhm: photon coherence FWHM tau, s.
        cd_broadening: nonlocal chromatic dispersion spread, s.
        total_width: quadrature width of the coincidence peak, s.
        singles_a: singles rate at A, counts/s.
        singles_b: singles rate at B, counts/s.
        true_coincidences: windowed true coincidence rate, counts/s.
        accidentals: accidental coincidence rate, counts/s.
        car: coincidence-to-accidental ratio (inf when accidentals are zero).
        qber: quantum bit error rate.
        skr: asymptotic secret key rate, bits/s.
    """

    eta_total: float
    coherence_fwhm: float
    cd_broadening: float
    total_width: float
    singles_a: float
    singles_b: float
    true_coincidences: float
    accidentals: float
    car: float
    qber: float
    skr: float


def dispersion_coefficient(fiber: FiberSpec, wavelength_nm: float) -> float:
    """Dispersion coefficient D of a fiber at one wavelength.

    Args:
        fiber: fiber type.
        wavelength_nm: wavelength in nm, > 0.

    Returns:
        D in ps/(nm km). May be negative below the zero-dispersion wavelength.
    """
    if wavelength_nm <= 0.0:
        raise ValueError(f"wavelength must be > 0 nm, got {wavelength_nm}")
    return fiber.dispersion.coefficient(wavelength_nm)


def channel_transmittance(length_km: float, attenuation_db_per_km: float) -> float:
    """Fiber power transmittance 10^(-L * alpha / 10).

    Args:
        length_km: fiber length, >= 0.
        attenuation_db_per_km: positive attenuation figure.

    Returns:
        Transmittance in (0, 1].
    """
    if length_km < 0.0:
        raise ValueError(f"length must be >= 0 km, got {length_km}")
    if attenuation_db_per_km <= 0.0:
        raise ValueError(
            f"attenuation must be > 0 dB/km, got {attenuation_db_per_km}"
        )
    return 10.0 ** (-length_km * attenuation_db_per_km / 10.0)


def total_transmission(s: LinkScenario) -> Transmission:
    """End-to-end transmission budget of a link.

    Each arm collects detector efficiency, receiver optics, and fiber loss;
    the total additionally carries the heralding efficiency and any
    instantaneous (distance-independent) loss.
    """
    alpha = s.fiber.attenuation_db_per_km
    arm_a = (
        s.detector_a.efficiency
        * s.receiver_efficiency_a
        * channel_transmittance(s.length_a, alpha)
    )
    arm_b = (
        s.detector_b.efficiency
        * s.receiver_efficiency_b
        * channel_transmittance(s.length_b, alpha)
    )
    eta_i = 10.0 ** (-s.instantaneous_loss_db / 10.0)
    # loss factor applied last, so adding dB rescales the finished product
    total = s.heralding_efficiency * arm_a * arm_b * eta_i
    return Transmission(arm_a=arm_a, arm_b=arm_b, total=total)


def coherence_fwhm(bandwidth_ghz: float) -> float:
    """Coherence FWHM tau = 2 ln2 / (pi * bandwidth) of a Gaussian photon.

    Args:
        bandwidth_ghz: full photon bandwidth in GHz, > 0.

    Returns:
        tau in seconds (0.4413 ns for 1 GHz).
    """
    if bandwidth_ghz <= 0.0:
        raise ValueError(f"bandwidth must be > 0 GHz, got {bandwidth_ghz}")
    return _TIME_BANDWIDTH_FWHM / (bandwidth_ghz * 1e9)


def cd_broadening(s: LinkScenario) -> float:
    """Nonlocal chromatic-dispersion spread of the coincidence peak.

    Sum over both arms of D(lambda) * length * delta_lambda, where
    delta_lambda = bandwidth * lambda^2 / c is the spectral width expressed in
    wavelength. A ps/(nm km) coefficient equals 1e-6 s/m^2 in SI.

    Returns:
        Signed arrival-time spread in seconds (negative D gives a negative
        term; the two arms can partially cancel).
    """
    bw_hz = s.bandwidth * 1e9

    def arm(wavelength_nm: float, length_km: float) -> float:
        lam_m = wavelength_nm * 1e-9
        dlam_m = bw_hz * lam_m * lam_m / SPEED_OF_LIGHT
        d_si = dispersion_coefficient(s.fiber, wavelength_nm) * 1e-6
        return d_si * (length_km * 1e3) * dlam_m

    return arm(s.wavelength_a, s.length_a) + arm(s.wavelength_b, s.length_b)


def total_width(s: LinkScenario) -> float:
    """Quadrature FWHM of the coincidence peak, seconds.

    Combines coherence, chromatic dispersion, both detector jitters, and
    synchronization jitter.
    """
    tau = coherence_fwhm(s.bandwidth)
    cd = cd_broadening(s)
    ja = s.detector_a.jitter_fwhm
    jb = s.detector_b.jitter_fwhm
    js = s.sync_jitter_fwhm
    return math.sqrt(tau * tau + cd * cd + ja * ja + jb * jb + js * js)


def capture_fraction(window_s: float, total_width_s: float) -> float:
    """Fraction of a Gaussian coincidence peak inside a centered window.

    The peak has FWHM total_width_s; the window spans +-window_s/2. With
    sigma = FWHM / (2 sqrt(2 ln2)) this is erf(window * sqrt(ln2) / FWHM).

    Args:
        window_s: coincidence window, > 0.
        total_width_s: peak FWHM, >= 0. Zero width means full capture.

    Returns:
        Captured fraction in [0, 1].
    """
    if window_s <= 0.0:
        raise ValueError(f"window must be > 0 s, got {window_s}")
    if total_width_s < 0.0:
        raise ValueError(f"total_width must be >= 0 s, got {total_width_s}")
    if total_width_s == 0.0:
        return 1.0
    return math.erf(window_s * _SQRT_LN2 / total_width_s)


def binary_entropy(p: float) -> float:
    """Binary entropy h2(p) in bits; 0 at the endpoints of [0, 1]."""
    if p <= 0.0 or p >= 1.0:
        return 0.0
    return -p * math.log2(p) - (1.0 - p) * math.log2(1.0 - p)


def skr_asymptotic(
    sifted_rate: float, qber: float, error_correction_efficiency: float = 1.1
) -> float:
    """Asymptotic secret key rate after sifting and error correction.

    skr = 0.5 * rate * max(0, 1 - (1 + f_EC) * h2(qber)). The 0.5 is passive
    basis sifting; f_EC >= 1 is the error-correction inefficiency.

    Args:
        sifted_rate: coincidence rate entering sifting, counts/s, >= 0.
        qber: error fraction in [0, 0.5].
        error_correction_efficiency: f_EC, 1.1 by default.

    Returns:
        Secret key rate in bits/s, >= 0.
    """
    bracket = 1.0 - (1.0 + error_correction_efficiency) * binary_entropy(qber)
    if bracket <= 0.0 or sifted_rate <= 0.0:
        return 0.0
    # 0.5 applied outside the product; keeps skr exactly linear in rate
    return 0.5 * (sifted_rate * bracket)


class LinkEvaluator:
    """Precomputed per-scenario constants for fast repeated evaluation.

    Optimizers call .skr() millions of times with the scenario fixed; this
    caches the transmission budget, peak width, and singles coefficients so
    one evaluation costs a handful of scalar operations.
    """

    __slots__ = (
        "scenario",
        "transmission",
        "_coherence",
        "_cd",
        "_width",
        "_cap_coef",
        "_pair_a",
        "_pair_b",
        "_floor_a",
        "_floor_b",
        "_e0",
        "_fec",
    )

    def __init__(self, scenario: LinkScenario):
        self.scenario = scenario
        self.transmission = total_transmission(scenario)
        self._coherence = coherence_fwhm(scenario.bandwidth)
        self._cd = cd_broadening(scenario)
        self._width = total_width(scenario)
        # 0.0 flags a zero-width peak, which captures fully at any window
        self._cap_coef = _SQRT_LN2 / self._width if self._width > 0.0 else 0.0
        self._pair_a = scenario.heralding_efficiency * self.transmission.arm_a
        self._pair_b = scenario.heralding_efficiency * self.transmission.arm_b
        self._floor_a = scenario.detector_a.dark_count_rate + scenario.background_rate_a
        self._floor_b = scenario.detector_b.dark_count_rate + scenario.background_rate_b
        self._e0 = scenario.intrinsic_qber
        self._fec = scenario.error_correction_efficiency

    def _components(self, window: float, rate: float):
        singles_a = rate * self._pair_a + self._floor_a
        singles_b = rate * self._pair_b + self._floor_b
        cap = 1.0 if self._cap_coef == 0.0 else math.erf(window * self._cap_coef)
        true = rate * self.transmission.total * cap
        accidentals = singles_a * singles_b * window
        return singles_a, singles_b, true, accidentals

    def skr(self, window: float, rate: float) -> float:
        """Secret key rate at one operating point, bits/s."""
        _, _, true, acc = self._components(window, rate)
        total = true + acc
        if total <= 0.0:
            return 0.0
        qber = self._e0 if acc == 0.0 else (self._e0 * true + 0.5 * acc) / total
        return skr_asymptotic(total, qber, self._fec)

    def stats(self, window: float, rate: float) -> LinkStats:
        """Full statistics at one operating point."""
        singles_a, singles_b, true, acc = self._components(window, rate)
        total = true + acc
        if acc > 0.0:
            car = true / acc
            qber = (self._e0 * true + 0.5 * acc) / total
        else:
            car = math.inf
            qber = self._e0
        skr = skr_asymptotic(total, qber, self._fec) if total > 0.0 else 0.0
        return LinkStats(
            eta_total=self.transmission.total,
            coherence_fwhm=self._coherence,
            cd_broadening=self._cd,
            total_width=self._width,
            singles_a=singles_a,
            singles_b=singles_b,
            true_coincidences=true,
            accidentals=acc,
            car=car,
            qber=qber,
            skr=skr,
        )


def link_stats(s: LinkScenario, op: OperatingPoint) -> LinkStats:
    """Evaluate every link statistic at one operating point."""
    return LinkEvaluator(s).stats(op.coincidence_window, op.pair_rate)


@dataclass(frozen=True)
class Defaults:
    """Shared hardware defaults used when a scenario is built from sweep axes.

    Attributes:
        heralding_efficiency: source heralding efficiency.
        detector_efficiency: per-detector efficiency.
        receiver_efficiency: per-user receiver optics efficiency.
        dark_count_rate: per-detector dark counts, counts/s.
        background_rate: per-user background clicks, counts/s.
        intrinsic_qber: error fraction of true coincidences.
        sync_jitter_fwhm: synchronization jitter, seconds.
        error_correction_efficiency: f_EC.
    """

    heralding_efficiency: float = 0.5
    detector_efficiency: float = 0.8
    receiver_efficiency: float = 0.9
    dark_count_rate: float = 100.0
    background_rate: float = 0.0
    intrinsic_qber: float = 0.01
    sync_jitter_fwhm: float = 0.0
    error_correction_efficiency: float = 1.1


DEFAULTS = Defaults()


def build_scenario(
    fiber: FiberSpec,
    wavelength_nm: float,
    bandwidth_ghz: float,
    distance_km: float,
    total_jitter_fwhm: float,
    instantaneous_loss_db: float = 0.0,
    defaults: Defaults = DEFAULTS,
    symmetric_split: bool = True,
) -> LinkScenario:
    """Assemble a standard symmetric scenario from sweep-level quantities.

    The jitter axis is total measurement jitter JT, the quadrature sum of both
    detector jitters and synchronization jitter. It is injected by giving each
    detector JT/sqrt(2) and zero sync jitter, so 2 J_d^2 + J_sync^2 = JT^2.

    Args:
        fiber: fiber type for both arms.
        wavelength_nm: operating wavelength for both photons.
        bandwidth_ghz: full photon bandwidth.
        distance_km: total user-to-user distance.
        total_jitter_fwhm: JT in seconds, >= 0.
        instantaneous_loss_db: fixed insertion loss.
        defaults: hardware defaults.
        symmetric_split: True puts the source mid-span (each arm is half the
            distance); False co-locates it with user B (arm A carries the full
            distance).
    """
    if total_jitter_fwhm < 0.0:
        raise ValueError(f"total jitter must be >= 0, got {total_jitter_fwhm}")
    if distance_km < 0.0:
        raise ValueError(f"distance must be >= 0 km, got {distance_km}")
    detector = DetectorSpec(
        efficiency=defaults.detector_efficiency,
        dark_count_rate=defaults.dark_count_rate,
        jitter_fwhm=total_jitter_fwhm / math.sqrt(2.0),
    )
    if symmetric_split:
        length_a = length_b = distance_km / 2.0
    else:
        length_a, length_b = distance_km, 0.0
    return LinkScenario(
        fiber=fiber,
        wavelength_a=wavelength_nm,
        wavelength_b=wavelength_nm,
        bandwidth=bandwidth_ghz,
        length_a=length_a,
        length_b=length_b,
        heralding_efficiency=defaults.heralding_efficiency,
        receiver_efficiency_a=defaults.receiver_efficiency,
        receiver_efficiency_b=defaults.receiver_efficiency,
        detector_a=detector,
        detector_b=detector,
        sync_jitter_fwhm=defaults.sync_jitter_fwhm,
        instantaneous_loss_db=instantaneous_loss_db,
        background_rate_a=defaults.background_rate,
        background_rate_b=defaults.background_rate,
        intrinsic_qber=defaults.intrinsic_qber,
        error_correction_efficiency=defaults.error_correction_efficiency,
    )


def with_jitter(s: LinkScenario, total_jitter_fwhm: float) -> LinkScenario:
    """Copy a scenario with its jitter terms replaced by a new total JT."""
    if total_jitter_fwhm < 0.0:
        raise ValueError(f"total jitter must be >= 0, got {total_jitter_fwhm}")
    per_detector = total_jitter_fwhm / math.sqrt(2.0)
    return replace(
        s,
        detector_a=replace(s.detector_a, jitter_fwhm=per_detector),
        detector_b=replace(s.detector_b, jitter_fwhm=per_detector),
        sync_jitter_fwhm=0.0,
    )
