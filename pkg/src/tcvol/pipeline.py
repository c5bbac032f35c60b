"""End-to-end estimation: pre-average, local estimates, smooth, normalise."""
from __future__ import annotations

from dataclasses import dataclass

from .charfn import DEFAULT_FLOOR, LocalEstimates, spot_vol
from .errors import NumericalDegeneracy
from .preaverage import BinLayout, PreAveraged, make_layout, preaverage
from .smoothing import CurveEstimate, SmoothingConfig, normalise_rate, smooth_curve


@dataclass(frozen=True)
class Estimate:
    layout: BinLayout
    pre: PreAveraged
    local: LocalEstimates
    curve: CurveEstimate

    @property
    def degenerate(self) -> bool:
        return self.curve.r_tilde is None


def estimate(series, u: float, h1: float = 1.0, h2: float = 1.0,
             cfg: SmoothingConfig | None = None, floor: float = DEFAULT_FLOOR,
             grid=None, allow_degenerate: bool = False) -> Estimate:
    """Run the three stages on ``series``.

    With ``allow_degenerate`` a non-positive normalising mean yields a curve
    without ``r_tilde`` instead of raising.
    """
    cfg = cfg or SmoothingConfig()
    y = getattr(series, "y", series)
    layout = make_layout(len(y), h1, h2)
    pre = preaverage(series, layout)
    local = spot_vol(pre, u, floor)
    try:
        curve = normalise_rate(local, cfg, grid)
    except NumericalDegeneracy:
        if not allow_degenerate:
            raise
        curve = smooth_curve(local, cfg, grid)
    return Estimate(layout, pre, local, curve)
