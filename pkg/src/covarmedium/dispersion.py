"""Momentum-space wave kernel, its inverse, mode functions, and roots.

The kernel is L_ns(q) = -(q.q) g_ns + 8pi q^m q^a chibar_mnas(q) with all
indices lowered; its null directions at det L = 0 are the propagating
modes.  Root finding works in the complex refractive index n at fixed
frequency, locating zeros by argument-principle subdivision and polishing
them with a Newton iteration on the smallest eigenvalue (which stays a
simple zero even where det has a multiple root).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .minkowski import METRIC, METRIC_DIAG, FourVector, minkowski_dot
from .susceptibility import SusceptibilityEvaluator

__all__ = [
    "OnShellError",
    "RootSearchError",
    "ModeFunction",
    "assemble_L",
    "invert_L",
    "mode_function_Z",
    "dispersion_roots",
]

EIGHT_PI = 8.0 * np.pi


class OnShellError(RuntimeError):
    """The kernel is singular: the requested q sits on a dispersion root."""


class RootSearchError(RuntimeError):
    pass


@dataclass(frozen=True)
class ModeFunction:
    """Mode coefficient Z_n^{ab} at (kvec, omega), antisymmetric in (a, b)."""

    z: np.ndarray  # shape (4, 4, 4): [nu, alpha, beta]
    kvec: np.ndarray
    omega: float


def assemble_L(e: SusceptibilityEvaluator, q: FourVector) -> np.ndarray:
    """4x4 complex kernel L_ns(q); the printed Kronecker delta is read as
    the metric so the vacuum limit stays covariant."""
    chi4 = e.chi_momentum(q).as_rank4()
    gd = METRIC_DIAG
    low = (
        chi4
        * gd[:, None, None, None]
        * gd[None, :, None, None]
        * gd[None, None, :, None]
        * gd[None, None, None, :]
    )
    qq = minkowski_dot(q.c, q.c)
    return -qq * METRIC + EIGHT_PI * np.einsum("m,a,mnas->ns", q.c, q.c, low)


def invert_L(lmat: np.ndarray) -> tuple[np.ndarray, float]:
    """Inverse of the kernel matrix plus a condition estimate.

    Raises OnShellError when the matrix is singular to within
    1e-12 * ||L||: the caller sits on a dispersion root.
    """
    lmat = np.asarray(lmat)
    sv = np.linalg.svd(lmat, compute_uv=False)
    norm = sv[0]
    if sv[-1] <= 1e-12 * norm:
        raise OnShellError(f"kernel singular (smallest sv {sv[-1]:.3e}, norm {norm:.3e})")
    return np.linalg.inv(lmat), float(norm / sv[-1])


def mode_function_Z(
    e: SusceptibilityEvaluator, kvec: np.ndarray, omega: float
) -> ModeFunction:
    """Z_nab = f^{ms}_{ab}(omega) [i q_m L^-1_ns(q)] at q = (k, sqrt(k^2+w^2))."""
    kvec = np.asarray(kvec, dtype=float)
    q4 = np.sqrt(kvec @ kvec + omega * omega)
    q = FourVector(np.append(kvec, q4))
    linv, _ = invert_L(assemble_L(e, q))
    f4 = e.coupling_tensor(omega).as_rank4()
    # lower the last index pair of f
    f4l = f4 * METRIC_DIAG[None, None, :, None] * METRIC_DIAG[None, None, None, :]
    q_low = METRIC_DIAG * q.c
    z = 1j * np.einsum("m,msab,ns->nab", q_low, f4l, linv)
    return ModeFunction(z=z, kvec=kvec, omega=omega)


# -- root search -----------------------------------------------------------


def _kernel_factory(e, khat, q4):
    khat = np.asarray(khat, dtype=float)
    if abs(np.linalg.norm(khat) - 1.0) > 1e-12:
        raise ValueError("khat must be a unit vector")

    def lmat(n: complex) -> np.ndarray:
        q = FourVector(np.append(n * q4 * khat, q4).astype(complex))
        return assemble_L(e, q)

    return lmat


class _DetCache:
    def __init__(self, lmat):
        self.lmat = lmat
        self.vals: dict[complex, complex] = {}
        self.evals = 0

    def det(self, n: complex) -> complex:
        n = complex(n)
        hit = self.vals.get(n)
        if hit is None:
            hit = complex(np.linalg.det(self.lmat(n)))
            self.vals[n] = hit
            self.evals += 1
        return hit


def _edge_phase(cache, a: complex, b: complex, depth: int = 0, min_depth: int = 2) -> float:
    """Accumulated det phase change along segment a -> b, refined until each
    step turns by less than pi/2."""
    fa, fb = cache.det(a), cache.det(b)
    if fa == 0 or fb == 0:
        # nudge off an exact zero
        mid = (a + b) / 2 + 1e-9 * abs(b - a) * 1j
        return _edge_phase(cache, a, mid, depth + 1, min_depth) + _edge_phase(
            cache, mid, b, depth + 1, min_depth
        )
    dphi = np.angle(fb / fa)
    if abs(dphi) < np.pi / 2 and depth >= min_depth:
        return dphi
    if depth > 24:
        return dphi
    mid = (a + b) / 2
    return _edge_phase(cache, a, mid, depth + 1, min_depth) + _edge_phase(
        cache, mid, b, depth + 1, min_depth
    )


def _winding(cache, box, min_depth: int = 2) -> int:
    re0, re1, im0, im1 = box
    corners = [
        complex(re0, im0),
        complex(re1, im0),
        complex(re1, im1),
        complex(re0, im1),
    ]
    total = 0.0
    for a, b in zip(corners, corners[1:] + corners[:1]):
        total += _edge_phase(cache, a, b, min_depth=min_depth)
    return int(round(total / (2 * np.pi)))


def _polish_eigen(lmat, n0: complex, q4: float, maxiter=40) -> complex:
    """Newton on the test function mu(n) = u* L(n) v.

    u, v are the singular vectors of the smallest singular value at the
    current iterate; with them held fixed mu is analytic in n and has a
    simple zero at the root even where det has a multiple one (e.g. the
    fourfold vacuum light-cone root), so the iteration stays quadratic.
    """
    n = complex(n0)
    for _ in range(maxiter):
        lm = lmat(n)
        u_m, _, vh = np.linalg.svd(lm)
        u = u_m[:, -1].conj()
        v = vh[-1].conj()
        mu = u @ lm @ v
        h = 1e-7 * (1.0 + abs(n))
        d = (u @ lmat(n + h) @ v - u @ lmat(n - h) @ v) / (2.0 * h)
        if d == 0:
            break
        step = mu / d
        n = n - step
        if abs(step) < 1e-14 * (1.0 + abs(n)):
            break
    return n


def _classify(lmat, n: complex, khat, q4: float, angle_tol=1e-4) -> str:
    lm = lmat(n)
    qv = np.append(n * q4 * np.asarray(khat, dtype=float), q4).astype(complex)
    qn = qv / np.linalg.norm(qv)
    scale = abs(q4) ** 2 * (1.0 + abs(n)) ** 2
    u, sv, vh = np.linalg.svd(lm)
    null = [vh[i].conj() for i in range(4) if sv[i] < 1e-6 * scale]
    if not null:
        null = [vh[-1].conj()]
    for v in null:
        perp = v - qn * (qn.conj() @ v)
        if np.linalg.norm(perp) > angle_tol:
            return "physical"
    return "gauge"


def dispersion_roots(
    e: SusceptibilityEvaluator,
    khat,
    q4: float,
    window=(0.2, 2.0, -0.5, 0.5),
    xtol: float = 1e-4,
    max_depth: int = 40,
):
    """Complex refractive indices n with det L(n q4 khat, q4) = 0 in window.

    window is (re_lo, re_hi, im_lo, im_hi) on n.  Roots whose entire null
    space is parallel to q are labeled "gauge", all others "physical".
    Returns a list of (n, label) sorted by (Re n, Im n); an empty window
    yields an empty list.
    """
    lmat = _kernel_factory(e, khat, q4)
    cache = _DetCache(lmat)
    re0, re1, im0, im1 = (float(x) for x in window)
    # tiny irrational skew so roots do not sit exactly on box edges
    pad = 1.2345e-4 * max(re1 - re0, im1 - im0)
    boxes = [(re0 - pad, re1 + pad, im0 - pad, im1 + pad)]
    # subdivide only until each root is isolated in a small box; Newton does
    # the rest, which keeps the determinant evaluation count low
    coarse = max(100.0 * xtol, 2e-2)

    def split(box):
        b_re0, b_re1, b_im0, b_im1 = box
        rm = (b_re0 + b_re1) / 2 + 1.7e-5 * (b_re1 - b_re0)
        im = (b_im0 + b_im1) / 2 + 1.3e-5 * (b_im1 - b_im0)
        return [
            (b_re0, rm, b_im0, im),
            (rm, b_re1, b_im0, im),
            (b_re0, rm, im, b_im1),
            (rm, b_re1, im, b_im1),
        ]

    found: list[complex] = []
    depth = 0
    while boxes:
        if depth > max_depth:
            raise RootSearchError(
                f"subdivision depth exceeded {max_depth}; {len(found)} roots so far, "
                f"{cache.evals} determinant evaluations"
            )
        next_boxes = []
        for box in boxes:
            b_re0, b_re1, b_im0, b_im1 = box
            size = max(b_re1 - b_re0, b_im1 - b_im0)
            w = _winding(cache, box, min_depth=2 if size >= coarse else 1)
            if w == 0:
                continue
            # below the dedupe separation a multi-winding box is treated as
            # one (possibly multiple) root and handed to Newton directly
            if size < 50 * xtol or (w == 1 and size < coarse):
                center = complex((b_re0 + b_re1) / 2, (b_im0 + b_im1) / 2)
                n = _polish_eigen(lmat, center, q4)
                inside = (
                    b_re0 - xtol <= n.real <= b_re1 + xtol
                    and b_im0 - xtol <= n.imag <= b_im1 + xtol
                )
                if inside or size < xtol:
                    found.append(n)
                else:
                    # Newton escaped the box: refine the bracket instead
                    next_boxes += split(box)
                continue
            next_boxes += split(box)
        boxes = next_boxes
        depth += 1
    roots: list[complex] = []
    for n in found:
        if not any(abs(n - r) < 50 * xtol for r in roots):
            roots.append(n)
    out = [(n, _classify(lmat, n, khat, q4)) for n in roots]
    out.sort(key=lambda t: (t[0].real, t[0].imag))
    return out
