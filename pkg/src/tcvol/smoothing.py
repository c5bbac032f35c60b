"""Local-polynomial smoothing of the bin estimates and normalisation to a rate."""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import ConfigurationError, NumericalDegeneracy

KERNELS = ("uniform", "epanechnikov", "biweight")
COND_LIMIT = 1e12


def kernel(name: str, x):
    """Beta(k, k) density rescaled to [-1, 1], k = 1, 2, 3."""
    x = np.asarray(x, dtype=float)
    inside = np.abs(x) <= 1.0
    if name == "uniform":
        k = np.full_like(x, 0.5)
    elif name == "epanechnikov":
        k = 0.75 * (1.0 - x * x)
    elif name == "biweight":
        k = 15.0 / 16.0 * (1.0 - x * x) ** 2
    else:
        raise ConfigurationError(f"kernel must be one of {KERNELS}, got {name!r}")
    return np.where(inside, k, 0.0)


@dataclass(frozen=True)
class SmoothingConfig:
    kernel: str = "epanechnikov"
    order: int = 1
    bandwidth: float = 0.1
    ridge: float = 0.0

    def __post_init__(self):
        if self.kernel not in KERNELS:
            raise ConfigurationError(f"kernel must be one of {KERNELS}, got {self.kernel!r}")
        if int(self.order) != self.order or self.order < 1:
            raise ConfigurationError(f"order N must be a positive integer, got {self.order}")
        if not 0.0 < self.bandwidth <= 1.0:
            raise ConfigurationError(f"bandwidth must lie in (0, 1], got {self.bandwidth}")
        if not self.ridge >= 0:
            raise ConfigurationError(f"ridge must be >= 0, got {self.ridge}")

    def with_bandwidth(self, h: float) -> "SmoothingConfig":
        return SmoothingConfig(self.kernel, self.order, h, self.ridge)


def weight_matrix(grid, n2: int, cfg: SmoothingConfig):
    """Local-polynomial weights ``W[i, l]`` of design point ``l / n2`` at ``grid[i]``.

    Returns ``(W, flagged)`` where ``flagged[i]`` marks evaluations whose local
    design matrix was ill-conditioned and had a ridge added.
    """
    t = np.atleast_1d(np.asarray(grid, dtype=float))
    h, order = cfg.bandwidth, cfg.order
    design = np.arange(n2) / n2
    lam = (t[:, None] - design[None, :]) / h
    k = kernel(cfg.kernel, lam)
    support = np.count_nonzero(k > 0, axis=1)
    if np.any(support < order):
        bad = t[np.argmin(support)]
        raise ConfigurationError(
            f"bandwidth too small: h={h} leaves fewer than N={order} design points near t={bad:.6g}")

    powers = np.arange(order)
    fact = np.array([math.factorial(p) for p in powers], dtype=float)
    u = lam[..., None] ** powers / fact
    scale = 1.0 / (n2 * h)
    v = np.einsum("tl,tlp,tlq->tpq", k, u, u) * scale
    if cfg.ridge > 0:
        v = v + cfg.ridge * np.eye(order)
    flagged = np.linalg.cond(v) > COND_LIMIT
    if np.any(flagged):
        tr = np.trace(v[flagged], axis1=1, axis2=2)
        v[flagged] += (1e-10 * tr / order)[:, None, None] * np.eye(order)
    e0 = np.zeros(order)
    e0[0] = 1.0
    a = np.linalg.solve(v, np.broadcast_to(e0, (t.size, order))[..., None])[..., 0]
    w = scale * k * np.einsum("tlp,tp->tl", u, a)
    return w, flagged


def lp_weights(t: float, n2: int, cfg: SmoothingConfig) -> np.ndarray:
    """Weight vector over the ``n2`` design points at a single time ``t``."""
    w, _ = weight_matrix([t], n2, cfg)
    return w[0]


def default_grid(n2: int) -> np.ndarray:
    """Coarse-bin midpoints plus both endpoints."""
    return np.concatenate([[0.0], (np.arange(n2) + 0.5) / n2, [1.0]])


@dataclass(frozen=True)
class CurveEstimate:
    grid: np.ndarray
    c_tilde: np.ndarray
    r_tilde: np.ndarray | None = None
    denom: float | None = None
    r_hat: np.ndarray | None = None
    flagged: np.ndarray | None = None


def _grid_or_default(grid, n2):
    g = default_grid(n2) if grid is None else np.atleast_1d(np.asarray(grid, dtype=float))
    if np.any((g < 0) | (g > 1)):
        raise ConfigurationError("query times must lie in [0, 1]")
    return g


def smooth_values(chat, cfg: SmoothingConfig, grid=None) -> CurveEstimate:
    chat = np.asarray(chat, dtype=float)
    g = _grid_or_default(grid, chat.size)
    w, flagged = weight_matrix(g, chat.size, cfg)
    return CurveEstimate(grid=g, c_tilde=w @ chat, flagged=flagged)


def smooth_curve(local, cfg: SmoothingConfig, grid=None) -> CurveEstimate:
    """Smoothed volatility ``c~_t(u)`` from :class:`~tcvol.charfn.LocalEstimates`."""
    return smooth_values(local.chat, cfg, grid)


def normalise_values(chat, cfg: SmoothingConfig, grid=None) -> CurveEstimate:
    chat = np.asarray(chat, dtype=float)
    denom = float(np.mean(chat))
    if not denom > 0:
        raise NumericalDegeneracy(f"degenerate normalisation: mean of bin estimates is {denom:.6g}")
    curve = smooth_values(chat, cfg, grid)
    return CurveEstimate(grid=curve.grid, c_tilde=curve.c_tilde, r_tilde=curve.c_tilde / denom,
                         denom=denom, r_hat=chat / denom, flagged=curve.flagged)


def normalise_rate(local, cfg: SmoothingConfig, grid=None) -> CurveEstimate:
    """Smoothed volatility divided by the mean bin estimate, ``r~_t(u)``."""
    return normalise_values(local.chat, cfg, grid)
