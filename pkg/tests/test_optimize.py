"""Tests for the operating-point search: determinism, soundness against the
brute-force grid, tie-breaking, and scale invariance of the argmax."""

import math
import random
from dataclasses import replace

import pytest

from conftest import random_scenario

from qlinkopt.model import (
    DetectorSpec,
    FiberSpec,
    LinkEvaluator,
    SlopeDispersion,
    build_scenario,
    link_stats,
)
from qlinkopt.optimize import (
    OptimResult,
    SearchConfig,
    _maximize,
    grid_oracle,
    optimize_link,
)

SMF = FiberSpec("SMF", 0.18, SlopeDispersion(1310.0, 0.092))


def standard_scenario(**kw):
    args = dict(
        fiber=SMF,
        wavelength_nm=1550.0,
        bandwidth_ghz=10.0,
        distance_km=100.0,
        total_jitter_fwhm=200e-12,
    )
    args.update(kw)
    return build_scenario(**args)


def dead_scenario():
    # 200 dB of fixed loss kills the key everywhere in the search box
    return standard_scenario(instantaneous_loss_db=200.0)


class TestSearchConfig:
    def test_rejects_unordered_bounds(self):
        with pytest.raises(ValueError, match="window_bounds"):
            SearchConfig(window_bounds=(1e-7, 1e-12))

    def test_rejects_budget_below_seed_grid(self):
        with pytest.raises(ValueError, match="seed grid"):
            SearchConfig(seed_grid=9, max_evaluations=80)


class TestOptimizeLink:
    def test_deterministic(self):
        s = standard_scenario()
        assert optimize_link(s) == optimize_link(s)

    def test_reported_skr_matches_reevaluation(self):
        rng = random.Random(201)
        for _ in range(20):
            s = random_scenario(rng)
            res = optimize_link(s)
            ev = LinkEvaluator(s)
            assert res.skr == ev.skr(res.best.coincidence_window, res.best.pair_rate)
            assert res.skr == link_stats(s, res.best).skr

    def test_best_point_within_bounds(self):
        rng = random.Random(202)
        cfg = SearchConfig()
        for _ in range(30):
            res = optimize_link(random_scenario(rng), cfg)
            w, r = res.best.coincidence_window, res.best.pair_rate
            assert cfg.window_bounds[0] * (1 - 1e-9) <= w <= cfg.window_bounds[1] * (1 + 1e-9)
            assert cfg.rate_bounds[0] * (1 - 1e-9) <= r <= cfg.rate_bounds[1] * (1 + 1e-9)

    def test_budget_respected(self):
        rng = random.Random(203)
        for cfg in (
            SearchConfig(),
            SearchConfig(seed_grid=3, max_evaluations=12),
            SearchConfig(seed_grid=3, max_evaluations=9),
            SearchConfig(seed_grid=5, max_evaluations=60),
        ):
            for _ in range(25):
                res = optimize_link(random_scenario(rng), cfg)
                assert res.evaluations <= cfg.max_evaluations

    def test_converges_on_a_benign_surface(self):
        res = optimize_link(standard_scenario())
        assert res.converged
        assert res.skr > 0.0
        assert res.evaluations < SearchConfig().max_evaluations

    def test_dead_region_returns_zero_at_corner(self):
        cfg = SearchConfig()
        res = optimize_link(dead_scenario(), cfg)
        assert res.skr == 0.0
        assert res.converged
        assert res.best.coincidence_window == pytest.approx(cfg.window_bounds[0], rel=1e-12)
        assert res.best.pair_rate == pytest.approx(cfg.rate_bounds[0], rel=1e-12)

    def test_window_tracks_jitter_scale(self):
        # with jitter dominating the peak width, doubling it should roughly
        # double the optimal coincidence window
        s1 = standard_scenario(
            wavelength_nm=1310.0, bandwidth_ghz=1000.0, distance_km=20.0,
            total_jitter_fwhm=100e-12,
        )
        s2 = standard_scenario(
            wavelength_nm=1310.0, bandwidth_ghz=1000.0, distance_km=20.0,
            total_jitter_fwhm=200e-12,
        )
        w1 = optimize_link(s1).best.coincidence_window
        w2 = optimize_link(s2).best.coincidence_window
        assert 1.5 <= w2 / w1 <= 2.5


class TestGridOracle:
    def test_two_point_grid_on_dead_scenario_picks_low_corner(self):
        cfg = SearchConfig()
        res = grid_oracle(dead_scenario(), cfg, 2)
        assert res.skr == 0.0
        assert res.best.coincidence_window == pytest.approx(cfg.window_bounds[0], rel=1e-12)
        assert res.best.pair_rate == pytest.approx(cfg.rate_bounds[0], rel=1e-12)
        assert res.evaluations == 4

    def test_rejects_degenerate_grid(self):
        with pytest.raises(ValueError, match="n_per_axis"):
            grid_oracle(standard_scenario(), SearchConfig(), 1)

    def test_refinement_is_statistically_monotone(self):
        # a denser grid may miss a coarse grid's lucky point by a hair, so
        # only require no more than 0.5% relative regression
        rng = random.Random(204)
        cfg = SearchConfig()
        for _ in range(20):
            s = random_scenario(rng)
            coarse = grid_oracle(s, cfg, 64).skr
            fine = grid_oracle(s, cfg, 128).skr
            assert fine >= coarse * 0.995

    def test_optimizer_dominates_oracle(self):
        rng = random.Random(205)
        cfg = SearchConfig()
        for _ in range(50):
            s = random_scenario(rng)
            res = optimize_link(s, cfg)
            oracle = grid_oracle(s, cfg, 64)
            assert res.skr >= oracle.skr * 0.999


class TestScaleInvariance:
    def test_power_of_two_rescaling_is_bit_identical(self):
        rng = random.Random(206)
        cfg = SearchConfig(seed_grid=5, max_evaluations=400)
        for _ in range(200):
            ev = LinkEvaluator(random_scenario(rng))
            base = _maximize(ev.skr, cfg)
            for k in (1024.0, 2.0**-20):
                scaled = _maximize(lambda w, r: k * ev.skr(w, r), cfg)
                assert scaled[0] == base[0]  # window
                assert scaled[1] == base[1]  # rate
                assert scaled[2] == k * base[2]
                assert scaled[3] == base[3]  # same evaluation count

    def test_arbitrary_positive_rescaling_keeps_the_argmax(self):
        ev = LinkEvaluator(standard_scenario())
        cfg = SearchConfig()
        base = _maximize(ev.skr, cfg)
        for k in (3.7, 0.0123, 9.99e6):
            scaled = _maximize(lambda w, r: k * ev.skr(w, r), cfg)
            assert scaled[0] == base[0]
            assert scaled[1] == base[1]
            assert math.isclose(scaled[2], k * base[2], rel_tol=1e-12)


def test_result_is_a_value_object():
    res = optimize_link(standard_scenario())
    clone = OptimResult(
        best=replace(res.best), skr=res.skr,
        evaluations=res.evaluations, converged=res.converged,
    )
    assert clone == res
