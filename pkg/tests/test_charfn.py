import math

import numpy as np
import pytest
from numpy.testing import assert_allclose, assert_array_equal

from tcvol.charfn import (
    adjusted_vol_target,
    assemble,
    bias_correction,
    local_charfn,
    local_noise_cf,
    spot_vol,
)
from tcvol.errors import ConfigurationError
from tcvol.models import CompoundPoisson, LevyTriplet, NoiseSpec, Sine, TimeChangedModel, TwoPoint
from tcvol.preaverage import BinLayout, PreAveraged, make_layout, preaverage
from tcvol.simulate import ObservationSeries


def _pre(xhat, s2, n1, n2, n):
    return PreAveraged(np.asarray(xhat, float), np.asarray(s2, float), BinLayout(n, 1, 1, n1, n2))


def test_zero_increments_give_unit_cf():
    pre = _pre(np.zeros(6), np.zeros(6), 3, 2, 64)
    for u in (0.0, 0.7, 5.0):
        phi, phi2 = local_charfn(pre, u)
        assert_array_equal(phi, 1.0)
        assert_array_equal(phi2, 1.0)
        assert_array_equal(local_noise_cf(pre, u), 1.0)


def test_u_zero_gives_unit_cf():
    pre = _pre([0.3, -2.0, 5.0, 1.0], [0.1, 0.2, 0.3, 0.4], 2, 2, 64)
    phi, _ = local_charfn(pre, 0.0)
    assert_array_equal(phi, 1.0)
    assert_array_equal(local_noise_cf(pre, 0.0), 1.0)


def test_phi_direct():
    pre = _pre([math.pi, math.pi / 2], [0.0, 0.0], 2, 1, 16)
    phi, _ = local_charfn(pre, 1.0)
    assert phi[0] == pytest.approx(-0.5, abs=1e-15)


def test_psi_direct():
    # n = 4, n0 = 2 gives kappa = 4 pi**2
    pre = _pre([0.0, 0.0], [0.5, 0.5], 1, 2, 4)
    assert pre.layout.kappa == pytest.approx(4 * math.pi ** 2)
    assert_allclose(local_noise_cf(pre, 1.0), math.exp(-2 * math.pi ** 2), rtol=1e-13)


def test_bias_correction_examples():
    assert bias_correction(1.0, 1.0, 7) == 0.0
    assert bias_correction(0.5, 0.2, 10) == pytest.approx(0.14, rel=1e-14)
    floor = 1e-6
    v = bias_correction(floor, -0.9, 4)
    assert np.isfinite(v)
    assert v == pytest.approx(0.25 * (0.1 / (2 * floor ** 2) - 1.0), rel=1e-14)
    assert v > 0


def test_spot_vol_hand_example():
    est = assemble([0.5], [0.2], [0.8], u=2.0, n1=10)
    assert est.tau2[0] == pytest.approx(0.14, rel=1e-14)
    assert est.chat[0] == pytest.approx(-(math.log(0.625) + 0.07) / 4, rel=1e-14)
    assert est.chat[0] == pytest.approx(0.100001, abs=1e-6)


def test_ratio_one_gives_zero():
    est = assemble([0.3], [2 * 0.3 ** 2 - 1], [0.3], u=1.3, n1=5)
    assert est.tau2[0] == pytest.approx(0.0, abs=1e-15)
    assert est.chat[0] == pytest.approx(0.0, abs=1e-15)


def test_guard_and_clamp():
    est = assemble([0.5, 1e-9, -0.4, 0.2], [0.1, 0.0, 0.5, 0.0], [0.9, 0.9, 0.9, 1e-12],
                   u=1.0, n1=4, floor=1e-6)
    assert_array_equal(est.guard_ok, [True, False, False, False])
    assert np.all(np.isfinite(est.chat))
    assert est.guard_fraction == 0.75
    # negative phi uses its magnitude
    assert est.chat[2] == pytest.approx(
        -(math.log(0.4 / 0.9) + 0.5 * bias_correction(0.4, 0.5, 4)), rel=1e-14)


def test_zero_frequency_rejected(brownian_series):
    pre = preaverage(brownian_series, make_layout(brownian_series.n))
    with pytest.raises(ConfigurationError, match="frequency must be nonzero"):
        spot_vol(pre, 0.0)
    with pytest.raises(ConfigurationError):
        spot_vol(pre, 1.0, floor=1.5)


def test_even_in_u(brownian_series):
    pre = preaverage(brownian_series, make_layout(brownian_series.n, 0.5, 1.0))
    a, b = spot_vol(pre, 1.7), spot_vol(pre, -1.7)
    for name in ("phi", "phi2u", "psi", "tau2", "chat", "guard_ok"):
        assert_array_equal(getattr(a, name), getattr(b, name))


@pytest.mark.parametrize("seed", range(5))
def test_scaling_covariance(seed):
    rng = np.random.default_rng(seed)
    y = np.cumsum(rng.standard_normal(4096)) * 0.01 + 0.003 * rng.standard_normal(4096)
    lay = make_layout(4096, 0.5, 1.0)
    u, s = 0.8, 2.0
    scaled = spot_vol(preaverage(s * y, lay), u)
    ref = spot_vol(preaverage(y, lay), s * u)
    # powers of two keep this exact up to the last rounding of cos arguments
    assert_allclose(scaled.chat, s * s * ref.chat, rtol=1e-12, atol=1e-12)


def test_adjusted_vol_target_no_jumps():
    model = TimeChangedModel(LevyTriplet(0.0, 1.3), Sine(0.5, 1), NoiseSpec())
    lay = make_layout(2 ** 14)
    p = adjusted_vol_target(model, 1.0, lay, 0.25)
    assert p.value == pytest.approx(1.3 * 1.5)


def test_adjusted_vol_two_point_quadrature():
    from scipy import integrate

    model = TimeChangedModel(LevyTriplet(0.0, 1.0, CompoundPoisson(1.0, TwoPoint(1.0))),
                             Sine(0.0, 1), NoiseSpec())
    lay = make_layout(2 ** 14)
    n0 = lay.n0
    prev = math.inf
    for u in (0.5, 1.0, 2.0, 4.0, 8.0):
        f = lambda w: 1 - math.cos(2 * math.sqrt(n0) * math.sin(2 * math.pi * w) * u)
        ref, _ = integrate.quad(f, 0, 1, limit=500, epsabs=1e-13, epsrel=1e-12)
        got = adjusted_vol_target(model, u, lay, 0.5).value
        assert got == pytest.approx(1.0 + ref / (n0 * u * u), rel=1e-9)
        assert got < prev
        prev = got
