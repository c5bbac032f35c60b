"""Local characteristic-function estimates of spot volatility on coarse bins."""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import _backend
from .errors import ConfigurationError
from .preaverage import PreAveraged

DEFAULT_FLOOR = 1e-6


@dataclass(frozen=True)
class LocalEstimates:
    """Per-coarse-bin estimates at one frequency ``u``.

    ``guard_ok[l]`` records whether both ``phi[l]`` and ``psi[l]`` cleared
    ``floor``. ``chat`` is finite everywhere because the logged and inverted
    quantities are clamped at ``floor``; bins failing the guard should be
    treated with suspicion.
    """

    u: float
    phi: np.ndarray
    phi2u: np.ndarray
    psi: np.ndarray
    tau2: np.ndarray
    chat: np.ndarray
    guard_ok: np.ndarray
    floor: float
    n1: int

    @property
    def n2(self) -> int:
        return self.chat.size

    @property
    def guard_fraction(self) -> float:
        """Fraction of bins that failed the guard."""
        return float(np.mean(~self.guard_ok))


def local_charfn(pre: PreAveraged, u: float):
    """Bin averages of ``cos(u X_k)`` and ``cos(2u X_k)``; returns ``(phi, phi2u)``."""
    phi, phi2u, _ = _backend.local_cf(pre.xhat, pre.sigma2hat, pre.layout.n1, float(u), pre.layout.kappa)
    return np.asarray(phi), np.asarray(phi2u)


def local_noise_cf(pre: PreAveraged, u: float) -> np.ndarray:
    """Bin averages of ``exp(-kappa u**2 sigma2_k)``."""
    lay = pre.layout
    s = np.exp(-lay.kappa * u * u * pre.sigma2hat)
    return s.reshape(lay.n2, lay.n1).mean(axis=1)


def bias_correction(phi_l, phi2u_l, n1: int):
    """Second-order correction ``((1 + phi(2u)) / (2 phi(u)**2) - 1) / n1``."""
    phi_l = np.asarray(phi_l, dtype=float)
    return ((1.0 + np.asarray(phi2u_l, dtype=float)) / (2.0 * phi_l * phi_l) - 1.0) / n1


def spot_vol(pre: PreAveraged, u: float, floor: float = DEFAULT_FLOOR) -> LocalEstimates:
    """Bias-corrected spot volatility estimate on each coarse bin."""
    u = float(u)
    if u == 0.0 or not np.isfinite(u):
        raise ConfigurationError("frequency must be nonzero")
    lay = pre.layout
    phi, phi2u, psi = _backend.local_cf(pre.xhat, pre.sigma2hat, lay.n1, u, lay.kappa)
    return assemble(phi, phi2u, psi, u, lay.n1, floor)


def assemble(phi, phi2u, psi, u: float, n1: int, floor: float = DEFAULT_FLOOR) -> LocalEstimates:
    """Guard, clamp and combine bin averages into :class:`LocalEstimates`."""
    if not 0.0 < floor < 1.0:
        raise ConfigurationError(f"floor must lie in (0, 1), got {floor}")
    phi = np.atleast_1d(np.asarray(phi, dtype=float))
    phi2u = np.atleast_1d(np.asarray(phi2u, dtype=float))
    psi = np.atleast_1d(np.asarray(psi, dtype=float))
    guard = (phi >= floor) & (psi >= floor)
    # clamp only what is logged or inverted; |phi| keeps large negative values finite
    phi_mag = np.maximum(np.abs(phi), floor)
    psi_c = np.maximum(psi, floor)
    tau2 = bias_correction(phi_mag, phi2u, n1)
    chat = -(np.log(phi_mag / psi_c) + 0.5 * tau2) / (u * u)
    return LocalEstimates(u=float(u), phi=phi, phi2u=phi2u, psi=psi, tau2=tau2, chat=chat,
                          guard_ok=guard, floor=floor, n1=int(n1))


@dataclass(frozen=True)
class AdjustedVolPoint:
    t: float
    value: float


def adjusted_vol_target(model, u: float, layout, t: float) -> AdjustedVolPoint:
    """Quantity ``c_t(u)`` the local estimates target; for benchmarking only."""
    from .oracle import adjusted_vol

    return AdjustedVolPoint(t=float(t), value=adjusted_vol(float(t), float(u), model, layout.n0))
