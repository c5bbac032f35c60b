"""Generalised cross-validation over ``(u, h1, h2, h)`` by exhaustive grid search."""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field

import numpy as np

from .charfn import DEFAULT_FLOOR, spot_vol
from .errors import ConfigurationError, TcvolError
from .preaverage import make_layout, preaverage
from .smoothing import SmoothingConfig, weight_matrix

DEFAULT_U_FACTORS = (0.5, 1.0, 2.0, 4.0)
DEFAULT_H = (0.05, 0.1, 0.2, 0.4)
DEFAULT_BIN_H = (0.5, 1.0, 2.0)


@dataclass(frozen=True)
class TuneGrid:
    u: tuple
    h1: tuple
    h2: tuple
    h: tuple

    def __post_init__(self):
        for name in ("u", "h1", "h2", "h"):
            vals = tuple(float(v) for v in getattr(self, name))
            if not vals:
                raise ConfigurationError(f"tuning grid for {name} is empty")
            if any(not (v > 0 and math.isfinite(v)) for v in vals):
                raise ConfigurationError(f"tuning candidates for {name} must be positive")
            object.__setattr__(self, name, vals)

    def points(self):
        return itertools.product(self.u, self.h1, self.h2, self.h)


@dataclass(frozen=True)
class TuneResult:
    best: tuple
    score: float
    table: list = field(default_factory=list)


def robust_scale(series, h1: float = 1.0, h2: float = 1.0) -> float:
    """``median |X_k| / 0.6745`` of the pre-averaged increments."""
    y = getattr(series, "y", series)
    pre = preaverage(series, make_layout(len(y), h1, h2))
    return float(np.median(np.abs(pre.xhat)) / 0.6745)


def default_grid(series) -> TuneGrid:
    scale = robust_scale(series)
    if not scale > 0:
        raise ConfigurationError("cannot scale frequencies: pre-averaged increments are all zero")
    return TuneGrid(u=tuple(f / scale for f in DEFAULT_U_FACTORS), h1=DEFAULT_BIN_H,
                    h2=DEFAULT_BIN_H, h=DEFAULT_H)


GCV_FORMS = ("self_weight", "classic")


def gcv_from_rhat(r_hat, cfg: SmoothingConfig, form: str = "self_weight") -> float:
    """Criterion value for normalised bin estimates ``r_hat`` under ``cfg``.

    Mean squared gap between the smoothed and raw values at the design points,
    divided by the squared mean self-weight ``s``. ``form="classic"`` divides
    by ``(1 - s)**2`` instead. The default form shrinks as the smoother
    approaches interpolation, so it tends to pick the smallest bandwidth on
    a grid.
    """
    if form not in GCV_FORMS:
        raise ConfigurationError(f"GCV form must be one of {GCV_FORMS}, got {form!r}")
    r_hat = np.asarray(r_hat, dtype=float)
    n2 = r_hat.size
    w, _ = weight_matrix(np.arange(n2) / n2, n2, cfg)
    resid = w @ r_hat - r_hat
    s = float(np.mean(np.diag(w)))
    denom = s * s if form == "self_weight" else (1.0 - s) ** 2
    num = float(np.mean(resid ** 2))
    if denom == 0.0:
        return math.inf if num > 0 else math.nan
    return num / denom


def _rhat(series, u, h1, h2, floor):
    y = getattr(series, "y", series)
    pre = preaverage(series, make_layout(len(y), h1, h2))
    chat = spot_vol(pre, u, floor).chat
    denom = float(np.mean(chat))
    if not denom > 0:
        return None
    return chat / denom


def gcv_score(series, params, cfg: SmoothingConfig | None = None,
              floor: float = DEFAULT_FLOOR, form: str = "self_weight") -> float:
    """GCV at ``params = (u, h1, h2, h)``; ``inf`` when any stage fails."""
    cfg = cfg or SmoothingConfig()
    u, h1, h2, h = params
    try:
        r_hat = _rhat(series, u, h1, h2, floor)
        if r_hat is None:
            return math.inf
        score = gcv_from_rhat(r_hat, cfg.with_bandwidth(h), form)
    except TcvolError:
        return math.inf
    return score if math.isfinite(score) else math.inf


def _tie_key(row):
    (u, h1, h2, h), score = row
    return score, h, u, h1, h2


def tune(series, grid: TuneGrid | None = None, cfg: SmoothingConfig | None = None,
         floor: float = DEFAULT_FLOOR, form: str = "self_weight") -> TuneResult:
    """Evaluate every grid point; ties go to smaller h, then u, h1, h2."""
    if form not in GCV_FORMS:
        raise ConfigurationError(f"GCV form must be one of {GCV_FORMS}, got {form!r}")
    cfg = cfg or SmoothingConfig()
    grid = grid or default_grid(series)
    cache = {}
    table = []
    for u, h1, h2, h in grid.points():
        key = (u, h1, h2)
        if key not in cache:
            try:
                cache[key] = _rhat(series, u, h1, h2, floor)
            except TcvolError:
                cache[key] = None
        r_hat = cache[key]
        score = math.inf
        if r_hat is not None:
            try:
                score = gcv_from_rhat(r_hat, cfg.with_bandwidth(h), form)
            except TcvolError:
                pass
            if not math.isfinite(score):
                score = math.inf
        table.append(((u, h1, h2, h), score))
    finite = [row for row in table if math.isfinite(row[1])]
    if not finite:
        raise ConfigurationError("no feasible tuning point")
    params, score = min(finite, key=_tie_key)
    return TuneResult(best=params, score=score, table=table)
