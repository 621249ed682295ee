# cython: boundscheck=False, wraparound=False, cdivision=True, language_level=3
"""Compiled implementations of the hot numerical kernels."""

import numpy as np

cimport cython
from libc.math cimport exp, sin, sqrt, M_PI

BACKEND = "cython"


def mode_sum_batch(omegas, double dt, double r, k, wk, win):
    """See covarmedium._kernels._slow.mode_sum_batch."""
    cdef double[::1] om_v = np.ascontiguousarray(omegas, dtype=np.float64)
    cdef double[::1] k_v = np.ascontiguousarray(k, dtype=np.float64)
    cdef double[::1] wk_v = np.ascontiguousarray(wk, dtype=np.float64)
    cdef double[::1] win_v = np.ascontiguousarray(win, dtype=np.float64)
    cdef Py_ssize_t nw = om_v.shape[0], nk = k_v.shape[0]
    out_arr = np.empty(nw, dtype=np.float64)
    cdef double[::1] out = out_arr
    cdef double[::1] base = np.empty(nk, dtype=np.float64)
    cdef Py_ssize_t i, j
    cdef double kk, x, snc, acc, omega, big

    for j in range(nk):
        kk = k_v[j]
        x = kk * r
        if x > 1e-8 or x < -1e-8:
            snc = sin(x) / x
        else:
            snc = 1.0 - x * x / 6.0
        base[j] = kk * kk * snc * win_v[j] * wk_v[j]
    for i in range(nw):
        omega = om_v[i]
        acc = 0.0
        for j in range(nk):
            kk = k_v[j]
            big = sqrt(kk * kk + omega * omega)
            acc += sin(big * dt) / big * base[j]
        out[i] = -acc / (4.0 * M_PI * M_PI)
    return out_arr


def fd_wave_snapshots(double omega, double dr, Py_ssize_t nr, Py_ssize_t nsteps,
                      double sigma, snap_steps):
    """See covarmedium._kernels._slow.fd_wave_snapshots."""
    cdef Py_ssize_t m = nr - 1
    u_prev_arr = np.zeros(m, dtype=np.float64)
    u_arr = np.empty(m, dtype=np.float64)
    u_next_arr = np.empty(m, dtype=np.float64)
    cdef double[::1] u_prev = u_prev_arr
    cdef double[::1] u = u_arr
    cdef double[::1] u_next = u_next_arr
    cdef double[::1] tmp
    cdef Py_ssize_t i, n
    cdef double r, c = dr * dr * omega * omega
    cdef double norm = (2.0 * M_PI) ** 1.5 * sigma * sigma * sigma

    for i in range(m):
        r = (i + 1) * dr
        u[i] = dr * r * (-exp(-r * r / (2.0 * sigma * sigma)) / norm)

    wanted = set(int(s) for s in snap_steps)
    snaps = {}
    if 1 in wanted:
        snaps[1] = u_arr.copy()
    for n in range(1, nsteps):
        for i in range(1, m - 1):
            u_next[i] = 2.0 * u[i] - u_prev[i] + (u[i + 1] - 2.0 * u[i] + u[i - 1]) - c * u[i]
        u_next[0] = 2.0 * u[0] - u_prev[0] + (u[1] - 2.0 * u[0]) - c * u[0]
        u_next[m - 1] = 2.0 * u[m - 1] - u_prev[m - 1] + (u[m - 2] - 2.0 * u[m - 1]) - c * u[m - 1]
        tmp = u_prev
        u_prev = u
        u = u_next
        u_next = tmp
        if n + 1 in wanted:
            snaps[n + 1] = np.asarray(u).copy()
    return snaps
