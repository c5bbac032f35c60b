"""Spot and normalised volatility from noisy high-frequency prices.

Three stages: sine-weighted pre-averaging, local characteristic-function
estimates of spot volatility, and local-polynomial smoothing normalised into
a rate (time-change) estimate.
"""
from ._backend import BACKEND
from .charfn import LocalEstimates, bias_correction, local_charfn, local_noise_cf, spot_vol
from .errors import (
    ConfigurationError,
    DataFormatError,
    NumericalDegeneracy,
    TcvolError,
    UnsupportedModelError,
)
from .pipeline import Estimate, estimate
from .preaverage import BinLayout, PreAveraged, make_layout, preaverage, scaling_weight
from .simulate import ObservationSeries, simulate_ito_sm, simulate_tc_levy
from .smoothing import CurveEstimate, SmoothingConfig, lp_weights, normalise_rate, smooth_curve
from .tuning import TuneGrid, TuneResult, gcv_score, tune

__version__ = "0.1.0"
