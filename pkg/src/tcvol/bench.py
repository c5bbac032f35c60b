"""Monte Carlo convergence benchmark for the rate estimate.

For each ``n`` in a ladder, simulate ``R`` paths, estimate with the
theoretical bandwidth schedule ``h = h0 * n**(-1/(2(2 alpha + 1)))`` and
measure the error of ``r~`` at coarse-bin midpoints against ground truth.
"""
from __future__ import annotations

import math
import time
from dataclasses import asdict, dataclass, field

import numpy as np

from .charfn import DEFAULT_FLOOR
from .errors import ConfigurationError, TcvolError
from .models import TimeChangedModel
from .oracle import adjusted_vol
from .pipeline import estimate
from .preaverage import make_layout
from .smoothing import SmoothingConfig
from .tuning import TuneGrid, tune


@dataclass(frozen=True)
class BenchSettings:
    u: float = 0.5
    h1: float = 0.25
    h2: float = 2.0
    h0: float = 1.0
    alpha: float = 0.5
    kernel: str = "epanechnikov"
    order: int = 1
    floor: float = DEFAULT_FLOOR
    gcv: bool = False

    def bandwidth(self, n: int) -> float:
        return min(1.0, self.h0 * n ** (-1.0 / (2.0 * (2.0 * self.alpha + 1.0))))


@dataclass
class BenchReport:
    ladder: list
    replicates: int
    base_seed: int
    rmse_r: list
    rmse_c: list
    slope_r: float | None
    slope_c: float | None
    degenerate: list
    settings: dict
    wall_clock: float
    per_replicate_r: list = field(default_factory=list, repr=False)

    def as_dict(self) -> dict:
        d = asdict(self)
        d.pop("per_replicate_r")
        return d


def loglog_slope(ns, errors) -> float | None:
    """Least-squares slope of ``log(error)`` against ``log(n)``; needs three points."""
    ns = np.asarray(ns, dtype=float)
    errors = np.asarray(errors, dtype=float)
    if ns.size < 3 or np.any(errors <= 0):
        return None
    slope, _ = np.polyfit(np.log(ns), np.log(errors), 1)
    return float(slope)


def midpoint_targets(model, settings: BenchSettings, n: int) -> np.ndarray:
    """Adjusted volatility ``c_t(u)`` at the coarse-bin midpoints."""
    layout = make_layout(n, settings.h1, settings.h2)
    mid = (np.arange(layout.n2) + 0.5) / layout.n2
    return np.array([adjusted_vol(t, settings.u, model, layout.n0) for t in mid])


def replicate_errors(series, settings: BenchSettings, c_target=None):
    """Midpoint L2 errors ``(r~, c~)`` of one replicate.

    ``r~`` error is ``None`` when the normalisation is degenerate. Pass
    ``c_target`` to reuse targets across replicates of one model.
    """
    n = series.n
    if settings.gcv:
        grid = TuneGrid(u=(settings.u,), h1=(settings.h1,), h2=(settings.h2,),
                        h=(0.05, 0.1, 0.2, 0.4))
        cfg = SmoothingConfig(settings.kernel, settings.order)
        h = tune(series, grid, cfg, settings.floor).best[3]
    else:
        h = settings.bandwidth(n)
    cfg = SmoothingConfig(settings.kernel, settings.order, h)
    layout = make_layout(n, settings.h1, settings.h2)
    mid = (np.arange(layout.n2) + 0.5) / layout.n2
    est = estimate(series, settings.u, settings.h1, settings.h2, cfg, settings.floor, grid=mid,
                   allow_degenerate=True)
    truth = series.truth
    model = truth.model
    if c_target is None:
        c_target = midpoint_targets(model, settings, n)
    err_c = math.sqrt(np.mean((est.curve.c_tilde - c_target) ** 2))
    if est.degenerate:
        return None, err_c
    err_r = math.sqrt(np.mean((est.curve.r_tilde - truth.r_at(mid)) ** 2))
    return err_r, err_c


def _hashable(obj) -> bool:
    try:
        hash(obj)
    except TypeError:
        return False
    return True


def run_bench(simulate, ladder, replicates: int, seed: int,
              settings: BenchSettings | None = None) -> BenchReport:
    """Benchmark the estimator over a ladder of sample sizes.

    ``simulate(n, seed)`` must return an ObservationSeries with ground truth.
    Replicate ``i`` uses seed ``seed + i`` at every ``n``.
    """
    settings = settings or BenchSettings()
    ladder = sorted(int(n) for n in ladder)
    if not ladder:
        raise ConfigurationError("empty n-ladder")
    if replicates < 1:
        raise ConfigurationError(f"need at least one replicate, got {replicates}")
    make_layout(ladder[0], settings.h1, settings.h2)
    SmoothingConfig(settings.kernel, settings.order, settings.bandwidth(ladder[0]))

    start = time.perf_counter()
    rmse_r, rmse_c, degenerate, per_rep = [], [], [], []
    for n in ladder:
        er, ec = [], []
        targets = {}
        for i in range(replicates):
            series = simulate(n, seed + i)
            model = series.truth.model
            key = id(model) if not _hashable(model) else model
            if key not in targets:
                targets[key] = midpoint_targets(model, settings, n)
            try:
                r_err, c_err = replicate_errors(series, settings, targets[key])
            except TcvolError:
                r_err, c_err = None, math.nan
            ec.append(c_err)
            if r_err is not None:
                er.append(r_err)
        degenerate.append(replicates - len(er))
        per_rep.append(er)
        rmse_r.append(float(np.sqrt(np.mean(np.square(er)))) if er else math.nan)
        rmse_c.append(float(np.sqrt(np.nanmean(np.square(ec)))))
    return BenchReport(
        ladder=ladder, replicates=replicates, base_seed=seed, rmse_r=rmse_r, rmse_c=rmse_c,
        slope_r=loglog_slope(ladder, rmse_r), slope_c=loglog_slope(ladder, rmse_c),
        degenerate=degenerate, settings=asdict(settings),
        wall_clock=time.perf_counter() - start, per_replicate_r=per_rep)


def tc_simulator(model: TimeChangedModel):
    from .simulate import simulate_tc_levy

    return lambda n, seed: simulate_tc_levy(model.triplet, model.rate, model.noise, n, seed)
