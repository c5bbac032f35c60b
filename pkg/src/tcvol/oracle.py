"""Population quantities for supported models, by closed form and by quadrature.

Used by tests and benchmarks only; the estimator never calls into here.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy import integrate, special

from .errors import ConfigurationError, UnsupportedModelError
from .models import (
    CompoundPoisson,
    GaussianJumps,
    LevyTriplet,
    SymmetricStable,
    TwoPoint,
)

GL_NODES_PER_PANEL = 16
GL_MIN_POINTS = 256


# ---------------------------------------------------------------------------
# characteristic exponent
# ---------------------------------------------------------------------------

def jump_exponent(u: float, jumps) -> complex:
    """``int (e^{iux} - 1 - iux 1(|x|<1)) nu(dx)`` in closed form."""
    if jumps is None:
        return 0j
    if isinstance(jumps, CompoundPoisson):
        lam, size = jumps.intensity, jumps.size
        if isinstance(size, TwoPoint):
            cf = size.p * np.exp(1j * u * size.a) + (1.0 - size.p) * np.exp(-1j * u * size.a)
        elif isinstance(size, GaussianJumps):
            cf = np.exp(1j * u * size.mean - 0.5 * (size.sd * u) ** 2)
        else:
            raise UnsupportedModelError(f"unsupported jump size {size!r}")
        return complex(lam * (cf - 1.0) - 1j * u * jumps.compensator())
    if isinstance(jumps, SymmetricStable):
        return complex(-(jumps.scale * abs(u)) ** jumps.index)
    raise UnsupportedModelError(f"unsupported jump spec {jumps!r}")


def theta(u: float, triplet: LevyTriplet) -> complex:
    """Characteristic exponent ``i b u - c u**2 / 2 + jump part``."""
    if not isinstance(triplet, LevyTriplet):
        raise UnsupportedModelError(f"unsupported triplet {triplet!r}")
    return 1j * triplet.drift * u - 0.5 * triplet.vol * u * u + jump_exponent(u, triplet.jumps)


def _stable_cos_integral(v: float, jumps: SymmetricStable) -> float:
    """``int (1 - cos(v x)) nu(dx)`` for the stable measure, by quadrature."""
    if v == 0.0:
        return 0.0
    beta = jumps.index
    v = abs(v)
    # symmetric: 2 C int_0^inf (1 - cos(v x)) x^(-1-beta) dx, substitute y = v x
    head, _ = integrate.quad(lambda y: 2.0 * math.sin(0.5 * y) ** 2 * y ** (-1.0 - beta), 0.0, 1.0,
                             epsabs=1e-14, epsrel=1e-12, limit=200)
    tail_cos, _ = integrate.quad(lambda y: y ** (-1.0 - beta), 1.0, np.inf,
                                 weight="cos", wvar=1.0, epsabs=1e-12, limit=200)
    tail = 1.0 / beta - tail_cos
    return 2.0 * jumps.density_constant * v ** beta * (head + tail)


def jump_exponent_quad(u: float, jumps, real_only: bool = False) -> complex:
    """Quadrature route for :func:`jump_exponent`."""
    if jumps is None:
        return 0j
    if isinstance(jumps, CompoundPoisson) and isinstance(jumps.size, TwoPoint):
        a, p, lam = jumps.size.a, jumps.size.p, jumps.intensity
        total = 0j
        for x, w in ((a, p), (-a, 1.0 - p)):
            total += w * (np.exp(1j * u * x) - 1.0 - 1j * u * x * (abs(x) < 1.0))
        return complex(lam * total)
    if isinstance(jumps, CompoundPoisson) and isinstance(jumps.size, GaussianJumps):
        m, s, lam = jumps.size.mean, jumps.size.sd, jumps.intensity
        if s == 0.0:
            return jump_exponent_quad(u, CompoundPoisson(lam, TwoPoint(m, 1.0)))
        norm = 1.0 / (s * math.sqrt(2.0 * math.pi))

        def pdf(x):
            z = (x - m) / s
            return norm * math.exp(-0.5 * z * z)

        lo, hi = m - 40 * s, m + 40 * s
        pts = [x for x in (-1.0, 1.0) if lo < x < hi]

        def part(f):
            val, _ = integrate.quad(lambda x: f(x) * pdf(x), lo, hi, points=pts or None,
                                    epsabs=1e-14, epsrel=1e-12, limit=400)
            return val

        re = part(lambda x: math.cos(u * x) - 1.0)
        if real_only:
            return complex(lam * re)
        im = part(lambda x: math.sin(u * x) - u * x * (abs(x) < 1.0))
        return complex(lam * re, lam * im)
    if isinstance(jumps, SymmetricStable):
        return complex(-_stable_cos_integral(u, jumps))
    raise UnsupportedModelError(f"unsupported jump spec {jumps!r}")


def theta_quad(u: float, triplet: LevyTriplet) -> complex:
    return 1j * triplet.drift * u - 0.5 * triplet.vol * u * u + jump_exponent_quad(u, triplet.jumps)


# ---------------------------------------------------------------------------
# jump adjustment of the volatility
# ---------------------------------------------------------------------------

def gauss_legendre_unit(points: int = GL_MIN_POINTS, per_panel: int = GL_NODES_PER_PANEL):
    """Composite Gauss-Legendre nodes and weights on [0, 1]."""
    panels = max(1, -(-points // per_panel))
    x, w = np.polynomial.legendre.leggauss(per_panel)
    edges = np.linspace(0.0, 1.0, panels + 1)
    half = 0.5 * np.diff(edges)
    mid = 0.5 * (edges[1:] + edges[:-1])
    nodes = (mid[:, None] + half[:, None] * x[None, :]).ravel()
    weights = (half[:, None] * w[None, :]).ravel()
    return nodes, weights


def graded_quarter_nodes(points: int = GL_MIN_POINTS, per_panel: int = GL_NODES_PER_PANEL):
    """Composite Gauss-Legendre on [0, 1] graded toward every multiple of 1/4.

    Each quarter is mapped through ``g(s) = s**3 (10 - 15 s + 6 s**2)``, which
    flattens the ``|sin(2 pi w)|**beta`` kinks at the zeros of the sine.
    """
    s, ws = gauss_legendre_unit(max(per_panel, points // 4), per_panel)
    g = s ** 3 * (10.0 - 15.0 * s + 6.0 * s * s)
    dg = 30.0 * s * s * (1.0 - s) ** 2
    nodes = np.concatenate([(q + g) / 4.0 for q in range(4)])
    return nodes, np.tile(ws * dg / 4.0, 4)


def _one_minus_cf(v: np.ndarray, jumps) -> np.ndarray:
    """``int (1 - cos(v x)) nu(dx)`` with the inner integral in closed form."""
    if isinstance(jumps, CompoundPoisson):
        size = jumps.size
        if isinstance(size, TwoPoint):
            return jumps.intensity * (1.0 - np.cos(v * size.a))
        return jumps.intensity * (1.0 - np.cos(v * size.mean) * np.exp(-0.5 * (size.sd * v) ** 2))
    if isinstance(jumps, SymmetricStable):
        return (jumps.scale * np.abs(v)) ** jumps.index
    raise UnsupportedModelError(f"unsupported jump spec {jumps!r}")


def _one_minus_cf_quad(v: float, jumps) -> float:
    if isinstance(jumps, CompoundPoisson) and isinstance(jumps.size, TwoPoint):
        a, p = jumps.size.a, jumps.size.p
        return jumps.intensity * (p * (1 - math.cos(v * a)) + (1 - p) * (1 - math.cos(-v * a)))
    if isinstance(jumps, CompoundPoisson) and isinstance(jumps.size, GaussianJumps):
        return -jump_exponent_quad(v, jumps, real_only=True).real
    if isinstance(jumps, SymmetricStable):
        return _stable_cos_integral(v, jumps)
    raise UnsupportedModelError(f"unsupported jump spec {jumps!r}")


def _gl_points_for(amplitude: float) -> int:
    # keep roughly four panels per oscillation of cos(amplitude * sin(2 pi w))
    return max(GL_MIN_POINTS, GL_NODES_PER_PANEL * int(math.ceil(2.0 * amplitude / math.pi)))


def cu_adjust(u: float, jumps, n0: int, route: str = "reduced") -> float:
    """Jump term of the adjusted volatility.

    ``(1 / (n0 u**2)) int_0^1 int (1 - cos(sqrt(n0) Phi(w) u x)) nu(dx) dw``
    with ``Phi(w) = 2 sin(2 pi w)``. ``route="reduced"`` evaluates the inner
    integral in closed form; ``route="nested"`` integrates over ``x`` numerically
    (exact sums for discrete jump laws). Stable laws use nodes graded toward
    the zeros of the sine.
    """
    if u == 0:
        raise ConfigurationError("frequency must be nonzero")
    if jumps is None:
        return 0.0
    amp = 2.0 * math.sqrt(n0) * abs(u)
    scale = _jump_amplitude(jumps)
    points = _gl_points_for(amp * scale)
    if isinstance(jumps, SymmetricStable):
        w, wt = graded_quarter_nodes(points)
    else:
        w, wt = gauss_legendre_unit(points)
    v = amp * np.sin(2.0 * np.pi * w)
    if route == "reduced":
        inner = _one_minus_cf(v, jumps)
    elif route == "nested":
        inner = np.array([_one_minus_cf_quad(float(vi), jumps) for vi in v])
    else:
        raise ConfigurationError(f"unknown route {route!r}")
    return float(np.dot(wt, inner) / (n0 * u * u))


def _jump_amplitude(jumps) -> float:
    if isinstance(jumps, CompoundPoisson):
        size = jumps.size
        return abs(size.a) if isinstance(size, TwoPoint) else abs(size.mean) + 3.0 * size.sd
    return 1.0


def cu_adjust_closed(u: float, jumps, n0: int) -> float:
    """Special-function closed forms where they exist (two-point and stable jumps)."""
    if jumps is None:
        return 0.0
    if isinstance(jumps, CompoundPoisson) and isinstance(jumps.size, TwoPoint):
        arg = 2.0 * math.sqrt(n0) * u * jumps.size.a
        return jumps.intensity * (1.0 - special.j0(arg)) / (n0 * u * u)
    if isinstance(jumps, SymmetricStable):
        b = jumps.index
        abs_sin_moment = special.gamma((b + 1) / 2) / (math.sqrt(math.pi) * special.gamma(b / 2 + 1))
        return ((jumps.scale * 2.0 * math.sqrt(n0) * abs(u)) ** b * abs_sin_moment) / (n0 * u * u)
    raise UnsupportedModelError(f"no closed form for {jumps!r}")


# ---------------------------------------------------------------------------
# population processes
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class PopulationPoint:
    t: float
    u: float
    c_u: float
    phi: float
    psi: float
    rho2: float
    tau2: float


def adjusted_vol(t: float, u: float, model, n0: int) -> float:
    """``c_t(u)``: spot volatility plus the jump term at the model's jump intensity."""
    jumps, mult = model.jumps_at(t)
    c = float(model.vol(t))
    if u == 0 or jumps is None:
        return c
    return c + mult * cu_adjust(u, jumps, n0)


def population(t: float, u: float, model, layout) -> PopulationPoint:
    """Means and variances the local estimates track, at time ``t`` and frequency ``u``."""
    sigma2 = float(model.noise.variance(t))
    kappa, n0, n1 = layout.kappa, layout.n0, layout.n1

    def phi_at(v):
        if v == 0:
            return 1.0, 1.0, adjusted_vol(t, 0.0, model, n0)
        psi = math.exp(-kappa * sigma2 * v * v)
        cu = adjusted_vol(t, v, model, n0)
        return math.exp(-cu * v * v) * psi, psi, cu

    phi, psi, cu = phi_at(u)
    phi2, _, _ = phi_at(2.0 * u)
    rho2 = 0.5 * (1.0 + phi2) - phi * phi
    tau2 = rho2 / (n1 * phi * phi)
    return PopulationPoint(t=t, u=u, c_u=cu, phi=phi, psi=psi, rho2=rho2, tau2=tau2)


def bin_exponent_integral(u: float, triplet: LevyTriplet, n0: int, k: int = 0,
                          points: int = 512, multiplier: float = 1.0) -> complex:
    """``int over bin k of theta(Phi_n(w) u) dw`` by composite Gauss-Legendre."""
    w, wt = gauss_legendre_unit(points)
    w = (k + w) / n0
    wt = wt / n0
    v = math.sqrt(n0) * 2.0 * np.sin(2.0 * np.pi * n0 * w) * u
    vals = np.array([theta(float(vi), triplet) for vi in v]) * multiplier
    return complex(np.dot(wt, vals))


# ---------------------------------------------------------------------------
# rates
# ---------------------------------------------------------------------------

def rate_exponents(alpha: float, beta: float):
    """Exponents of the four convergence rates, ``(a1, a2, a3, a4)``."""
    if not alpha >= 0.5:
        raise ConfigurationError(f"smoothness alpha must be >= 1/2, got {alpha}")
    if not 0.0 <= beta <= 2.0:
        raise ConfigurationError(f"jump activity beta must lie in [0, 2], got {beta}")
    a1 = min(0.25, 3.0 * alpha / 8.0)
    a2 = a1 / 2.0 + 1.0 / 16.0
    a3 = alpha / (2.0 * (2.0 * alpha + 1.0))
    a4 = min(a3, (2.0 - beta) / 4.0)
    return a1, a2, a3, a4
