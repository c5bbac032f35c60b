"""Model specifications: Lévy triplets, jump laws, rate (time-change) and noise specs.

All specs are frozen dataclasses validated on construction; a violated
invariant raises :class:`~tcvol.errors.ConfigurationError`.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Union

import numpy as np
from scipy import special, stats

from .errors import ConfigurationError, UnsupportedModelError


# ---------------------------------------------------------------------------
# jump laws
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class TwoPoint:
    """Jump of size ``+a`` with probability ``p`` and ``-a`` otherwise."""

    a: float
    p: float = 0.5

    def __post_init__(self):
        if not 0.0 <= self.p <= 1.0:
            raise ConfigurationError(f"TwoPoint probability must lie in [0, 1], got {self.p}")

    def truncated_mean(self) -> float:
        # E[x 1(|x| < 1)]
        if abs(self.a) >= 1.0:
            return 0.0
        return self.a * (2.0 * self.p - 1.0)


@dataclass(frozen=True)
class GaussianJumps:
    mean: float
    sd: float

    def __post_init__(self):
        if self.sd < 0:
            raise ConfigurationError(f"Gaussian jump sd must be >= 0, got {self.sd}")

    def truncated_mean(self) -> float:
        if self.sd == 0.0:
            return self.mean if abs(self.mean) < 1.0 else 0.0
        lo = (-1.0 - self.mean) / self.sd
        hi = (1.0 - self.mean) / self.sd
        mass = stats.norm.cdf(hi) - stats.norm.cdf(lo)
        return self.mean * mass + self.sd * (stats.norm.pdf(lo) - stats.norm.pdf(hi))


@dataclass(frozen=True)
class CompoundPoisson:
    intensity: float
    size: Union[TwoPoint, GaussianJumps]

    def __post_init__(self):
        if not self.intensity >= 0:
            raise ConfigurationError(f"jump intensity must be >= 0, got {self.intensity}")
        if not isinstance(self.size, (TwoPoint, GaussianJumps)):
            raise ConfigurationError(f"unsupported jump-size law {self.size!r}")

    def compensator(self) -> float:
        """Drift removed per unit (business) time by the ``1(|x| < 1)`` compensation."""
        return self.intensity * self.size.truncated_mean()

    def sample_sums(self, rng: np.random.Generator, dt: np.ndarray) -> np.ndarray:
        """Sum of the jumps arriving in windows of lengths ``dt``."""
        counts = rng.poisson(self.intensity * dt)
        size = self.size
        if isinstance(size, TwoPoint):
            ups = rng.binomial(counts, size.p)
            return size.a * (2.0 * ups - counts)
        z = rng.standard_normal(dt.shape)
        return size.mean * counts + size.sd * np.sqrt(counts) * z


def stable_tail_constant(beta: float) -> float:
    """Integral of ``(1 - cos y) y**(-1 - beta)`` over ``(0, inf)``."""
    if beta == 1.0:
        return math.pi / 2.0
    return special.gamma(1.0 - beta) * math.cos(math.pi * beta / 2.0) / beta


@dataclass(frozen=True)
class SymmetricStable:
    """Symmetric ``beta``-stable jumps.

    The scale is the usual one: at unit time the increment has characteristic
    function ``exp(-(scale * |u|)**beta)``. The corresponding Lévy density is
    ``scale**beta / (2 * C(beta)) * |x|**(-1 - beta)`` with
    ``C(beta) = stable_tail_constant(beta)``.
    """

    index: float
    scale: float

    def __post_init__(self):
        if not 0.0 < self.index < 2.0:
            raise ConfigurationError(f"stable index must lie in (0, 2), got {self.index}")
        if not self.scale > 0:
            raise ConfigurationError(f"stable scale must be > 0, got {self.scale}")

    @property
    def density_constant(self) -> float:
        return self.scale ** self.index / (2.0 * stable_tail_constant(self.index))

    def levy_density(self, x):
        x = np.abs(np.asarray(x, dtype=float))
        return self.density_constant * x ** (-1.0 - self.index)

    def compensator(self) -> float:
        return 0.0


JumpSpec = Union[CompoundPoisson, SymmetricStable, None]


@dataclass(frozen=True)
class LevyTriplet:
    drift: float = 0.0
    vol: float = 1.0
    jumps: JumpSpec = None

    def __post_init__(self):
        if not self.vol >= 0:
            raise ConfigurationError(f"volatility c must be >= 0, got {self.vol}")
        if self.jumps is not None and not isinstance(self.jumps, (CompoundPoisson, SymmetricStable)):
            raise UnsupportedModelError(f"unsupported jump spec {self.jumps!r}")


# ---------------------------------------------------------------------------
# rate processes, all normalised to integrate to one over [0, 1]
# ---------------------------------------------------------------------------

class RateSpec:
    def value(self, t):
        raise NotImplementedError

    def integral(self, t):
        """Cumulative clock ``R_t``."""
        raise NotImplementedError


@dataclass(frozen=True)
class Constant(RateSpec):
    def value(self, t):
        return np.ones_like(np.asarray(t, dtype=float))

    def integral(self, t):
        return np.asarray(t, dtype=float).copy()


@dataclass(frozen=True)
class Sine(RateSpec):
    """``r_t = 1 + a sin(2 pi m t)``."""

    amplitude: float = 0.5
    frequency: int = 1

    def __post_init__(self):
        if not 0.0 <= self.amplitude < 1.0:
            raise ConfigurationError(f"sine amplitude must lie in [0, 1), got {self.amplitude}")
        if int(self.frequency) != self.frequency or self.frequency < 1:
            raise ConfigurationError(f"sine frequency must be a positive integer, got {self.frequency}")

    def value(self, t):
        t = np.asarray(t, dtype=float)
        return 1.0 + self.amplitude * np.sin(2.0 * np.pi * self.frequency * t)

    def integral(self, t):
        t = np.asarray(t, dtype=float)
        w = 2.0 * np.pi * self.frequency
        return t + self.amplitude * (1.0 - np.cos(w * t)) / w


@dataclass(frozen=True)
class PiecewiseSmooth(RateSpec):
    """Piecewise-linear rate through ``(knots, values)``, rescaled to unit integral."""

    knots: tuple
    values: tuple
    _scale: float = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        k = np.asarray(self.knots, dtype=float)
        v = np.asarray(self.values, dtype=float)
        if k.ndim != 1 or k.shape != v.shape or k.size < 2:
            raise ConfigurationError("knots and values must be 1-d of equal length >= 2")
        if k[0] != 0.0 or k[-1] != 1.0 or np.any(np.diff(k) <= 0):
            raise ConfigurationError("knots must increase strictly from 0 to 1")
        if np.any(v <= 0) or not np.all(np.isfinite(v)):
            raise ConfigurationError("rate values must be finite and > 0")
        object.__setattr__(self, "knots", tuple(k))
        object.__setattr__(self, "values", tuple(v))
        total = np.sum(0.5 * (v[1:] + v[:-1]) * np.diff(k))
        object.__setattr__(self, "_scale", 1.0 / total)

    def value(self, t):
        return self._scale * np.interp(t, self.knots, self.values)

    def integral(self, t):
        t = np.asarray(t, dtype=float)
        k = np.asarray(self.knots)
        v = np.asarray(self.values)
        cum = np.concatenate([[0.0], np.cumsum(0.5 * (v[1:] + v[:-1]) * np.diff(k))])
        i = np.clip(np.searchsorted(k, t, side="right") - 1, 0, k.size - 2)
        dt = t - k[i]
        slope = (v[i + 1] - v[i]) / (k[i + 1] - k[i])
        return self._scale * (cum[i] + v[i] * dt + 0.5 * slope * dt * dt)


# ---------------------------------------------------------------------------
# microstructure noise
# ---------------------------------------------------------------------------

NOISE_KINDS = ("none", "gaussian", "rademacher")


@dataclass(frozen=True)
class NoiseSpec:
    """i.i.d. noise with variance ``sigma**2 * modulation(t)``."""

    kind: str = "none"
    sigma: float = 0.0
    modulation: RateSpec | None = None

    def __post_init__(self):
        if self.kind not in NOISE_KINDS:
            raise ConfigurationError(f"noise kind must be one of {NOISE_KINDS}, got {self.kind!r}")
        if not self.sigma >= 0:
            raise ConfigurationError(f"noise sigma must be >= 0, got {self.sigma}")

    def variance(self, t):
        t = np.asarray(t, dtype=float)
        if self.kind == "none":
            return np.zeros_like(t)
        scale = self.modulation.value(t) if self.modulation is not None else 1.0
        return self.sigma ** 2 * np.ones_like(t) * scale

    def sample(self, rng: np.random.Generator, t: np.ndarray) -> np.ndarray:
        if self.kind == "none" or self.sigma == 0.0:
            return np.zeros_like(t)
        if self.kind == "gaussian":
            eps = rng.standard_normal(t.shape)
        else:
            eps = rng.integers(0, 2, size=t.shape) * 2.0 - 1.0
        return np.sqrt(self.variance(t)) * eps


# ---------------------------------------------------------------------------
# whole-model specs
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class TimeChangedModel:
    """``X_t = L_{R_t}`` observed with additive noise."""

    triplet: LevyTriplet
    rate: RateSpec = field(default_factory=Constant)
    noise: NoiseSpec = field(default_factory=NoiseSpec)

    def vol(self, t):
        return self.triplet.vol * self.rate.value(t)

    def jumps_at(self, t):
        """(jump law, multiplier of its Lévy measure) at time ``t``."""
        return self.triplet.jumps, float(self.rate.value(t))

    def rate_at(self, t):
        return self.rate.value(t)


@dataclass(frozen=True)
class SemimartingaleModel:
    """Itô semimartingale with a deterministic volatility path and idiosyncratic jumps.

    ``vol_path`` and ``drift_path`` are callables of time (vectorised). Jumps
    arrive at constant calendar-time intensity, independently of the volatility.
    """

    vol_path: object
    drift_path: object = None
    jumps: JumpSpec = None
    noise: NoiseSpec = field(default_factory=NoiseSpec)

    def vol(self, t):
        return np.asarray(self.vol_path(np.asarray(t, dtype=float)), dtype=float)

    def jumps_at(self, t):
        return self.jumps, 1.0

    def integrated_vol(self) -> float:
        from scipy.integrate import quad

        val, _ = quad(lambda s: float(self.vol(s)), 0.0, 1.0, limit=200, epsabs=1e-13, epsrel=1e-12)
        return val

    def rate_at(self, t):
        return self.vol(t) / self.integrated_vol()
