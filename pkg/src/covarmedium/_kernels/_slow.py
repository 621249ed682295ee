"""Pure-numpy implementations of the hot numerical kernels."""

from __future__ import annotations

import numpy as np

BACKEND = "numpy"


def mode_sum_batch(omegas, dt, r, k, wk, win):
    """Radial mode-sum kernel D_w for a batch of oscillator frequencies.

    D_w(dt, r) = -(1/4pi^2) int dk k^2 sinc(k r) sin(Omega dt) / Omega,
    Omega = sqrt(k^2 + w^2), evaluated with the supplied nodes, weights
    and cutoff window.
    """
    omegas = np.asarray(omegas, dtype=float)
    base = k * k * np.sinc(k * r / np.pi) * win * wk
    om = np.sqrt(k[None, :] ** 2 + omegas[:, None] ** 2)
    return -(np.sin(om * dt) / om) @ base / (4.0 * np.pi**2)


def fd_wave_snapshots(omega, dr, nr, nsteps, sigma, snap_steps):
    """Leapfrog solve of u_tt = u_rr - omega^2 u for u = r*G.

    Initial data encode an impulsive point source smeared over width sigma:
    u(0) = 0, u_t(0, r) = -r * N3(r; sigma).  The time step equals dr so
    the massless part propagates exactly.  Returns {step: u array} for the
    requested steps (interior nodes r = dr .. (nr-1) dr).
    """
    r = np.arange(1, nr) * dr
    gdot0 = -np.exp(-r * r / (2.0 * sigma * sigma)) / (
        (2.0 * np.pi) ** 1.5 * sigma**3
    )
    u_prev = np.zeros_like(r)
    u = dr * r * gdot0  # first step, u_tt(0) = 0
    c = dr * dr * omega * omega
    wanted = set(int(s) for s in snap_steps)
    snaps = {}
    if 1 in wanted:
        snaps[1] = u.copy()
    lap = np.empty_like(u)
    for n in range(1, nsteps):
        lap[1:-1] = u[2:] - 2.0 * u[1:-1] + u[:-2]
        lap[0] = u[1] - 2.0 * u[0]
        lap[-1] = u[-2] - 2.0 * u[-1]
        u_next = 2.0 * u - u_prev + lap - c * u
        u_prev, u = u, u_next
        if n + 1 in wanted:
            snaps[n + 1] = u.copy()
    return snaps
