"""Synthetic noisy observations from time-changed Lévy and Itô semimartingale models.

Observations are taken on the grid ``j / n``, ``j = 0..n-1``, over the unit
horizon. Ground truth is kept on the closed grid ``j / n``, ``j = 0..n``.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import ConfigurationError
from .models import (
    CompoundPoisson,
    LevyTriplet,
    NoiseSpec,
    RateSpec,
    SemimartingaleModel,
    SymmetricStable,
    TimeChangedModel,
)
from .stable import symmetric_stable


@dataclass(frozen=True)
class GroundTruth:
    t: np.ndarray
    r: np.ndarray
    c: np.ndarray
    x: np.ndarray
    model: object

    def r_at(self, t):
        return np.asarray(self.model.rate_at(np.asarray(t, dtype=float)), dtype=float)

    def c_at(self, t):
        return np.asarray(self.model.vol(np.asarray(t, dtype=float)), dtype=float)


@dataclass(frozen=True)
class ObservationSeries:
    y: np.ndarray
    truth: GroundTruth | None = None

    def __post_init__(self):
        y = np.ascontiguousarray(self.y, dtype=float)
        if y.ndim != 1:
            raise ConfigurationError("observations must be one-dimensional")
        object.__setattr__(self, "y", y)

    @property
    def n(self) -> int:
        return self.y.size

    def shifted(self, const: float) -> "ObservationSeries":
        return ObservationSeries(self.y + const, self.truth)

    def scaled(self, s: float) -> "ObservationSeries":
        return ObservationSeries(self.y * s, None)


def _jump_increments(jumps, rng, dt):
    if jumps is None:
        return 0.0
    if isinstance(jumps, CompoundPoisson):
        return jumps.sample_sums(rng, dt) - jumps.compensator() * dt
    if isinstance(jumps, SymmetricStable):
        return jumps.scale * dt ** (1.0 / jumps.index) * symmetric_stable(rng, jumps.index, dt.shape)
    raise ConfigurationError(f"unsupported jump spec {jumps!r}")


def _check_n(n):
    if int(n) != n or n < 2:
        raise ConfigurationError(f"need n >= 2 observations, got {n}")
    return int(n)


def simulate_tc_levy(triplet: LevyTriplet, rate: RateSpec, noise: NoiseSpec, n: int,
                     seed: int, x0: float = 0.0) -> ObservationSeries:
    """Simulate ``Y_j = L_{R_{j/n}} + eps_j``.

    Lévy increments over each clock step ``dR`` are drawn exactly: Gaussian part
    with variance ``c dR``, compound Poisson counts with mean ``lambda dR``,
    stable part with scale ``gamma dR**(1/beta)``.
    """
    n = _check_n(n)
    model = TimeChangedModel(triplet, rate, noise)
    rng = np.random.default_rng(seed)
    t = np.arange(n + 1) / n
    clock = rate.integral(t)
    dr = np.diff(clock)
    if np.any(dr <= 0):
        raise ConfigurationError("rate process must be strictly positive")

    incr = triplet.drift * dr + np.sqrt(triplet.vol * dr) * rng.standard_normal(n)
    incr = incr + _jump_increments(triplet.jumps, rng, dr)
    x = x0 + np.concatenate([[0.0], np.cumsum(incr)])
    y = x[:n] + noise.sample(rng, t[:n])

    r = rate.value(t)
    truth = GroundTruth(t=t, r=r, c=triplet.vol * r, x=x, model=model)
    return ObservationSeries(y, truth)


def _as_path(path, name):
    """Callable of time from a callable or from samples on a uniform grid over [0, 1]."""
    if path is None:
        return lambda t: np.zeros_like(np.asarray(t, dtype=float))
    if callable(path):
        return path
    vals = np.asarray(path, dtype=float)
    if vals.ndim != 1 or vals.size < 2:
        raise ConfigurationError(f"{name} path must be callable or a 1-d grid of >= 2 values")
    grid = np.linspace(0.0, 1.0, vals.size)
    return lambda t: np.interp(t, grid, vals)


def simulate_ito_sm(vol_path, drift_path=None, jumps=None, noise: NoiseSpec | None = None,
                    n: int = 2, seed: int = 0, x0: float = 0.0) -> ObservationSeries:
    """Simulate a noisy Itô semimartingale with deterministic volatility path.

    Each step's Gaussian increment has variance equal to the trapezoid
    integral of ``vol_path`` over the step. Jumps arrive at constant
    calendar-time intensity, independent of the volatility, so the model
    generally violates the time-changed separability condition.
    """
    n = _check_n(n)
    noise = noise if noise is not None else NoiseSpec()
    cfun = _as_path(vol_path, "volatility")
    bfun = _as_path(drift_path, "drift")
    t = np.arange(n + 1) / n
    c = np.asarray(cfun(t), dtype=float) * np.ones_like(t)
    if not np.all(np.isfinite(c)) or np.any(c <= 0):
        raise ConfigurationError("volatility path must be strictly positive")
    b = np.asarray(bfun(t), dtype=float) * np.ones_like(t)

    model = SemimartingaleModel(vol_path=cfun, drift_path=bfun, jumps=jumps, noise=noise)
    rng = np.random.default_rng(seed)
    dt = np.full(n, 1.0 / n)
    var = 0.5 * (c[1:] + c[:-1]) / n
    drift = 0.5 * (b[1:] + b[:-1]) / n
    incr = drift + np.sqrt(var) * rng.standard_normal(n)
    incr = incr + _jump_increments(jumps, rng, dt)
    x = x0 + np.concatenate([[0.0], np.cumsum(incr)])
    y = x[:n] + noise.sample(rng, t[:n])

    truth = GroundTruth(t=t, r=c / model.integrated_vol(), c=c, x=x, model=model)
    return ObservationSeries(y, truth)
