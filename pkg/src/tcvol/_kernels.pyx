# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled pre-averaging and local characteristic-function kernels.

Semantics match ``_kernels_py`` exactly; results agree to rounding.
"""
import numpy as np
cimport numpy as cnp
from libc.math cimport sin, cos, exp, sqrt, M_PI

cnp.import_array()


def preaverage_bins(const double[::1] y, Py_ssize_t n0):
    cdef Py_ssize_t n = y.shape[0]
    cdef Py_ssize_t k, j, start, stop
    cdef double amp = 2.0 * sqrt(<double> n0)
    cdef double two_pi_over_n = 2.0 * M_PI / n
    cdef double acc_x, acc_s, dy
    xhat_arr = np.empty(n0, dtype=np.float64)
    s2_arr = np.empty(n0, dtype=np.float64)
    cdef double[::1] xhat = xhat_arr
    cdef double[::1] s2 = s2_arr
    cdef double scale = n0 / (2.0 * n)
    for k in range(n0):
        start = (k * n + n0 - 1) // n0
        stop = ((k + 1) * n + n0 - 1) // n0
        acc_x = 0.0
        acc_s = 0.0
        for j in range(start, stop - 1):
            dy = y[j + 1] - y[j]
            acc_x += amp * sin(two_pi_over_n * ((n0 * j) % n)) * dy
            acc_s += dy * dy
        xhat[k] = acc_x
        s2[k] = acc_s * scale
    return xhat_arr, s2_arr


def local_cf(const double[::1] xhat, const double[::1] s2, Py_ssize_t n1, double u, double kappa):
    cdef Py_ssize_t n2 = xhat.shape[0] // n1
    cdef Py_ssize_t l, k
    cdef double a, b, c, ux
    cdef double ku2 = kappa * u * u
    phi_arr = np.empty(n2, dtype=np.float64)
    phi2_arr = np.empty(n2, dtype=np.float64)
    psi_arr = np.empty(n2, dtype=np.float64)
    cdef double[::1] phi = phi_arr
    cdef double[::1] phi2 = phi2_arr
    cdef double[::1] psi = psi_arr
    for l in range(n2):
        a = 0.0
        b = 0.0
        c = 0.0
        for k in range(l * n1, (l + 1) * n1):
            ux = u * xhat[k]
            a += cos(ux)
            b += cos(2.0 * ux)
            c += exp(-ku2 * s2[k])
        phi[l] = a / n1
        phi2[l] = b / n1
        psi[l] = c / n1
    return phi_arr, phi2_arr, psi_arr
