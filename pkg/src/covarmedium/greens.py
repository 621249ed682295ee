"""Retarded Green function of (box^2 + omega^2) G = -delta^4 in three forms.

* momentum representation with an explicit regulator,
* spatial-Fourier time kernel,
* closed-form inside-light-cone tail in position space.

The sign of the momentum-space regulator term is pinned by requiring that
the time-domain synthesis of the momentum form reproduces the time kernel
(retarded support), and the position-space sign is pinned by a radially
reduced finite-difference solve; both checks live in the test suite.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.special import j1

from .minkowski import FourVector, minkowski_dot

__all__ = ["GreenSpec", "green_momentum", "green_time_kernel", "green_position_regular"]


@dataclass(frozen=True)
class GreenSpec:
    """Oscillator label omega >= 0 and momentum-space regulator eps > 0."""

    omega: float
    eps: float = 1e-6

    def __post_init__(self):
        if self.omega < 0:
            raise ValueError("omega must be >= 0")
        if self.eps <= 0:
            raise ValueError("eps must be > 0")


def green_momentum(s: GreenSpec, q: FourVector) -> complex:
    """Gbar(omega, q) = -1 / (omega^2 - q.q - i eps q_t).

    Both q_t poles sit in the lower half plane, which makes the
    time-domain synthesis retarded.
    """
    qq = minkowski_dot(q.c, q.c)
    return -1.0 / (s.omega**2 - qq - 1j * s.eps * q.c[3])


def green_time_kernel(s: GreenSpec, k, t):
    """gtilde(t; k) = -theta(t) sin(Omega t) / Omega, Omega = sqrt(k^2 + omega^2).

    Solves (d^2/dt^2 + Omega^2) gtilde = -delta(t) with retarded support.
    Accepts scalars or arrays in k and t.
    """
    k = np.asarray(k, dtype=float)
    if np.any(k < 0):
        raise ValueError("k must be >= 0")
    t = np.asarray(t, dtype=float)
    big = np.sqrt(k * k + s.omega**2)
    out = np.where(t > 0, -np.sin(big * t) / big, 0.0)
    if out.ndim == 0:
        return float(out)
    return out


def green_position_regular(s: GreenSpec, dx: FourVector) -> float:
    """Inside-light-cone tail of G at separation dx.

    Returns (omega / (4 pi sqrt(s2))) * J1(omega sqrt(s2)) for t > 0 and
    s2 = t^2 - r^2 > 0, and 0 otherwise.  The singular light-cone part
    proportional to delta(s2) is not evaluated pointwise; callers integrate
    it analytically where it matters.
    """
    t = dx.c[3]
    r = float(np.linalg.norm(dx.c[:3]))
    s2 = t * t - r * r
    if t <= 0 or s2 <= 0 or s.omega == 0:
        return 0.0
    sep = np.sqrt(s2)
    x = s.omega * sep
    return float(s.omega * j1(x) / (4.0 * np.pi * sep))
