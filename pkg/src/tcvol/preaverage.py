"""Bin layout, sine-weighted pre-averaged increments and local noise estimates."""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import _backend
from .errors import ConfigurationError


@dataclass(frozen=True)
class BinLayout:
    """Integers governing the two levels of binning.

    ``n0 = n1 * n2`` pre-averaging bins, grouped ``n1`` at a time into ``n2``
    coarse bins. ``kappa = 4 pi**2 n0**2 / n`` scales the noise contribution.
    """

    n: int
    h1: float
    h2: float
    n1: int
    n2: int

    @property
    def n0(self) -> int:
        return self.n1 * self.n2

    @property
    def kappa(self) -> float:
        return 4.0 * math.pi ** 2 * self.n0 ** 2 / self.n

    def as_dict(self) -> dict:
        return {"n": self.n, "h1": self.h1, "h2": self.h2, "n1": self.n1,
                "n2": self.n2, "n0": self.n0, "kappa": self.kappa}


def make_layout(n: int, h1: float = 1.0, h2: float = 1.0) -> BinLayout:
    """``n1 = round(n**(1/8) / h1)``, ``n2 = round(n**(3/8) / h2)``, each at least 1."""
    if int(n) != n or n < 4:
        raise ConfigurationError(f"need n >= 4 observations, got {n}")
    if not (h1 > 0 and h2 > 0) or not (math.isfinite(h1) and math.isfinite(h2)):
        raise ConfigurationError(f"bin bandwidths must be positive, got h1={h1}, h2={h2}")
    n = int(n)
    n1 = max(1, round(n ** 0.125 / h1))
    n2 = max(1, round(n ** 0.375 / h2))
    if 2 * n1 * n2 > n:
        raise ConfigurationError(
            f"bins too fine: n0 = {n1 * n2} > n/2 for (n={n}, h1={h1}, h2={h2})")
    return BinLayout(n=n, h1=float(h1), h2=float(h2), n1=n1, n2=n2)


def scaling_weight(j: int, layout: BinLayout) -> float:
    n, n0 = layout.n, layout.n0
    return 2.0 * math.sqrt(n0) * math.sin(2.0 * math.pi * ((n0 * j) % n) / n)


@dataclass(frozen=True)
class PreAveraged:
    xhat: np.ndarray
    sigma2hat: np.ndarray
    layout: BinLayout


def preaverage(series, layout: BinLayout) -> PreAveraged:
    """Pre-averaged increments and noise-variance estimates per bin.

    ``series`` is an :class:`~tcvol.simulate.ObservationSeries` or a plain
    array of observations.
    """
    y = np.ascontiguousarray(getattr(series, "y", series), dtype=np.float64)
    if y.size != layout.n:
        raise ConfigurationError(f"layout built for n={layout.n} but series has {y.size} points")
    xhat, s2 = _backend.preaverage_bins(y, layout.n0)
    return PreAveraged(np.asarray(xhat), np.asarray(s2), layout)
