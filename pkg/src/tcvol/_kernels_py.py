"""NumPy reference versions of the compiled kernels in ``_kernels.pyx``."""
import math

import numpy as np


def bin_starts(n, n0):
    """First index of each pre-averaging bin, ``ceil(k n / n0)`` for ``k = 0..n0``."""
    k = np.arange(n0 + 1, dtype=np.int64)
    return -((-k * n) // n0)


def scaling_weights(n, n0):
    """``sqrt(n0) * 2 sin(2 pi n0 j / n)`` for ``j = 0..n-1``; phase reduced mod n."""
    j = np.arange(n, dtype=np.int64)
    return 2.0 * math.sqrt(n0) * np.sin(2.0 * np.pi * ((n0 * j) % n) / n)


def preaverage_bins(y, n0):
    y = np.asarray(y, dtype=np.float64)
    n = y.size
    starts = bin_starts(n, n0)
    dy = np.diff(y)
    keep = np.ones(n - 1)
    # the last index of each bin pairs with the next bin's first index
    keep[starts[1:n0] - 1] = 0.0
    p = scaling_weights(n, n0)[: n - 1] * keep
    xhat = np.add.reduceat(p * dy, starts[:n0])
    s2 = np.add.reduceat(keep * dy * dy, starts[:n0]) * (n0 / (2.0 * n))
    return xhat, s2


def local_cf(xhat, s2, n1, u, kappa):
    n2 = xhat.size // n1
    ux = u * np.asarray(xhat, dtype=np.float64)
    phi = np.cos(ux).reshape(n2, n1).mean(axis=1)
    phi2u = np.cos(2.0 * ux).reshape(n2, n1).mean(axis=1)
    psi = np.exp(-kappa * u * u * np.asarray(s2, dtype=np.float64)).reshape(n2, n1).mean(axis=1)
    return phi, phi2u, psi
