"""Operating-point optimization for one link scenario.

Maximizes secret key rate over (coincidence window, pair rate). Both variables
span orders of magnitude, so the search runs in log10 coordinates: a coarse
seed grid followed by a derivative-free simplex refinement. The simplex makes
decisions through comparisons only and terminates on its extent in coordinate
space, so the located argmax is invariant under any positive rescaling of the
objective. A brute-force grid doubles as a verification oracle.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from qlinkopt.model import LinkEvaluator, LinkScenario, OperatingPoint

__all__ = ["SearchConfig", "OptimResult", "optimize_link", "grid_oracle"]


@dataclass(frozen=True)
class SearchConfig:
    """Search box and termination settings.

    Attributes:
        window_bounds: (low, high) coincidence window range in seconds.
        rate_bounds: (low, high) pair rate range in pairs/s.
        rel_tolerance: simplex diameter in log10 units at which to stop.
        max_evaluations: total objective evaluation budget, seed grid included.
        seed_grid: points per axis of the coarse seed grid.
    """

    window_bounds: tuple[float, float] = (1e-12, 1e-7)
    rate_bounds: tuple[float, float] = (1e4, 1e10)
    rel_tolerance: float = 1e-4
    max_evaluations: int = 2000
    seed_grid: int = 9

    def __post_init__(self) -> None:
        for name, (lo, hi) in (
            ("window_bounds", self.window_bounds),
            ("rate_bounds", self.rate_bounds),
        ):
            if not (0.0 < lo < hi):
                raise ValueError(f"{name} must be positive and ordered, got ({lo}, {hi})")
        if not (self.rel_tolerance > 0.0):
            raise ValueError(f"rel_tolerance must be > 0, got {self.rel_tolerance}")
        if self.seed_grid < 2:
            raise ValueError(f"seed_grid must be >= 2, got {self.seed_grid}")
        if self.max_evaluations < self.seed_grid**2:
            raise ValueError(
                "max_evaluations must cover the seed grid: "
                f"{self.max_evaluations} < {self.seed_grid}^2"
            )


@dataclass(frozen=True)
class OptimResult:
    """Outcome of one operating-point search.

    Attributes:
        best: operating point with the highest key rate found.
        skr: secret key rate there, bits/s.
        evaluations: number of objective evaluations spent.
        converged: True when the simplex met its diameter tolerance (or the
            whole search region produced zero key).
    """

    best: OperatingPoint
    skr: float
    evaluations: int
    converged: bool


def _log_points(lo: float, hi: float, n: int) -> list[float]:
    """n points log-spaced over [lo, hi], ascending."""
    llo, lhi = math.log10(lo), math.log10(hi)
    step = (lhi - llo) / (n - 1)
    return [10.0 ** (llo + i * step) for i in range(n)]


def _grid_argmax(objective, windows: list[float], rates: list[float]):
    """Exhaustive argmax; ascending iteration keeps the smallest window, then
    the smallest rate, on ties."""
    best_w, best_r, best_v = windows[0], rates[0], objective(windows[0], rates[0])
    first = True
    for w in windows:
        for r in rates:
            if first:
                first = False
                continue  # corner already evaluated above
            v = objective(w, r)
            if v > best_v:
                best_w, best_r, best_v = w, r, v
    return best_w, best_r, best_v


def _clip(x: float, lo: float, hi: float) -> float:
    return lo if x < lo else hi if x > hi else x


def _nelder_mead_max(objective, start, lo, hi, xtol: float, budget: int):
    """Bounded 2-D simplex ascent in coordinate space.

    All accept/reject decisions compare objective values; no arithmetic on
    them. Terminates when every vertex lies within xtol (per coordinate) of
    the best one, or when the evaluation budget runs out.

    Args:
        objective: f(x, y) -> value to maximize.
        start: starting vertex (x, y).
        lo, hi: per-coordinate box bounds.
        xtol: termination diameter.
        budget: maximum evaluations.

    Returns:
        (best_point, best_value, evaluations, converged)
    """
    nfev = 0

    def f(p):
        nonlocal nfev
        nfev += 1
        return objective(p[0], p[1])

    def clipped(p):
        return (_clip(p[0], lo[0], hi[0]), _clip(p[1], lo[1], hi[1]))

    # initial simplex: step a quarter-decade per axis, away from a near bound
    verts = [(start, f(start))]
    for axis in range(2):
        step = 0.25
        coord = start[axis] + step
        if coord > hi[axis]:
            coord = start[axis] - step
        p = list(start)
        p[axis] = _clip(coord, lo[axis], hi[axis])
        p = tuple(p)
        verts.append((p, f(p)))

    converged = False
    while nfev + 4 <= budget:  # worst iteration: reflect + contract + shrink

        verts.sort(key=lambda vf: vf[1], reverse=True)
        (xb, fb), (xm, fm), (xw, fw) = verts
        spread = max(
            max(abs(xm[0] - xb[0]), abs(xm[1] - xb[1])),
            max(abs(xw[0] - xb[0]), abs(xw[1] - xb[1])),
        )
        if spread < xtol:
            converged = True
            break
        cx = ((xb[0] + xm[0]) / 2.0, (xb[1] + xm[1]) / 2.0)
        xr = clipped((cx[0] + (cx[0] - xw[0]), cx[1] + (cx[1] - xw[1])))
        fr = f(xr)
        if fr > fb:
            xe = clipped((cx[0] + 2.0 * (cx[0] - xw[0]), cx[1] + 2.0 * (cx[1] - xw[1])))
            fe = f(xe)
            verts[2] = (xe, fe) if fe > fr else (xr, fr)
        elif fr > fm:
            verts[2] = (xr, fr)
        else:
            if fr > fw:  # contract toward the reflection
                xc = clipped((cx[0] + 0.5 * (xr[0] - cx[0]), cx[1] + 0.5 * (xr[1] - cx[1])))
                fc = f(xc)
                if fc >= fr:
                    verts[2] = (xc, fc)
                    continue
            else:  # contract inside
                xc = clipped((cx[0] + 0.5 * (xw[0] - cx[0]), cx[1] + 0.5 * (xw[1] - cx[1])))
                fc = f(xc)
                if fc > fw:
                    verts[2] = (xc, fc)
                    continue
            # shrink everything toward the best vertex
            for i in (1, 2):
                xi = verts[i][0]
                xs = ((xb[0] + xi[0]) / 2.0, (xb[1] + xi[1]) / 2.0)
                verts[i] = (xs, f(xs))

    verts.sort(key=lambda vf: vf[1], reverse=True)
    best, fbest = verts[0]
    return best, fbest, nfev, converged


def _maximize(objective, cfg: SearchConfig):
    """Seed-grid plus simplex maximization of objective(window, rate).

    Returns (window, rate, value, evaluations, converged).
    """
    windows = _log_points(*cfg.window_bounds, cfg.seed_grid)
    rates = _log_points(*cfg.rate_bounds, cfg.seed_grid)
    seed_w, seed_r, seed_v = _grid_argmax(objective, windows, rates)
    evaluations = cfg.seed_grid**2
    if seed_v <= 0.0:
        # nothing keyed anywhere on the grid; report the tie-broken corner
        return seed_w, seed_r, 0.0, evaluations, True

    lo = (math.log10(cfg.window_bounds[0]), math.log10(cfg.rate_bounds[0]))
    hi = (math.log10(cfg.window_bounds[1]), math.log10(cfg.rate_bounds[1]))
    start = (math.log10(seed_w), math.log10(seed_r))

    def log_objective(lw, lr):
        return objective(10.0**lw, 10.0**lr)

    budget = cfg.max_evaluations - evaluations
    if budget < 3:
        return seed_w, seed_r, seed_v, evaluations, False
    point, value, nfev, converged = _nelder_mead_max(
        log_objective, start, lo, hi, cfg.rel_tolerance, budget
    )
    evaluations += nfev
    if value > seed_v:
        return 10.0 ** point[0], 10.0 ** point[1], value, evaluations, converged
    return seed_w, seed_r, seed_v, evaluations, converged


def optimize_link(s: LinkScenario, cfg: SearchConfig = SearchConfig()) -> OptimResult:
    """Find the operating point of highest secret key rate for one scenario.

    Deterministic for identical inputs. When no operating point on the seed
    grid produces key, returns skr = 0 at the smallest-window, smallest-rate
    corner.
    """
    evaluator = LinkEvaluator(s)
    window, rate, value, evaluations, converged = _maximize(evaluator.skr, cfg)
    return OptimResult(
        best=OperatingPoint(coincidence_window=window, pair_rate=rate),
        skr=value,
        evaluations=evaluations,
        converged=converged,
    )


def grid_oracle(
    s: LinkScenario, cfg: SearchConfig, n_per_axis: int
) -> OptimResult:
    """Exhaustive log-grid search with the same tie-breaking as optimize_link.

    Slow but simple; used to verify the simplex search.
    """
    if n_per_axis < 2:
        raise ValueError(f"n_per_axis must be >= 2, got {n_per_axis}")
    evaluator = LinkEvaluator(s)
    windows = _log_points(*cfg.window_bounds, n_per_axis)
    rates = _log_points(*cfg.rate_bounds, n_per_axis)
    best_w, best_r, best_v = _grid_argmax(evaluator.skr, windows, rates)
    if best_v < 0.0:
        best_v = 0.0
    return OptimResult(
        best=OperatingPoint(coincidence_window=best_w, pair_rate=best_r),
        skr=best_v,
        evaluations=n_per_axis**2,
        converged=True,
    )
