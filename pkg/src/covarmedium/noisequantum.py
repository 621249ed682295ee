"""Noise-sector quantum structure as c-number identities.

Implements the ladder contraction rule, the plane-wave expansion of the
noise bivector field with its amplitude extraction, and the commutator of
the noise polarization tensor computed two independent ways: a mode sum
over (omega, |k|) with the basis sums done analytically, and the retarded
susceptibility reference.  No operator algebra is represented; everything
verified here is a c-number.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass, field

import numpy as np

from . import _kernels
from .coupling import CouplingModel
from .minkowski import METRIC_DIAG, Bivector, FourVector, PairTensor
from .susceptibility import SusceptibilityEvaluator, _gauss_panels

__all__ = [
    "ModeGrid",
    "LadderContraction",
    "NoiseAmplitude",
    "UnresolvedModeError",
    "evaluate_YN",
    "extract_B",
    "commutator_KN_modesum",
    "commutator_KN_reference",
    "mode_sum_tail_estimate",
]

HBAR = 1.0


class UnresolvedModeError(ValueError):
    pass


class LadderContraction:
    """c-number contraction weight of the ladder commutation rule.

    weight(l1, l2, l1p, l2p) multiplies delta(k - k') delta(w - w'); the
    indefinite-metric signs enter only through the metric factors.
    """

    @staticmethod
    def weight(l1: int, l2: int, l1p: int, l2p: int) -> float:
        g = METRIC_DIAG
        return float(
            (g[l1] if l1 == l1p else 0.0) * (g[l2] if l2 == l2p else 0.0)
            - (g[l1] if l1 == l2p else 0.0) * (g[l2] if l2 == l1p else 0.0)
        )


@dataclass(frozen=True)
class ModeGrid:
    """Quadrature nodes and weights for the (omega, |k|) mode sums.

    The radial grid carries a smooth quartic-exponential cutoff window so
    the non-decaying oscillatory k-integrand is Abel-regularized within
    the finite cutoff; angular_order = 0 means the sphere integral is done
    analytically (the only mode shipped).
    """

    omega_nodes: np.ndarray
    omega_weights: np.ndarray
    k_nodes: np.ndarray
    k_weights: np.ndarray
    k_window: np.ndarray
    k_max: float
    window_scale: float
    angular_order: int = 0

    def __post_init__(self):
        for name in ("omega_nodes", "k_nodes"):
            arr = getattr(self, name)
            if np.any(np.diff(arr) <= 0):
                raise ValueError(f"{name} must be strictly increasing")
        for name in ("omega_weights", "k_weights"):
            if np.any(getattr(self, name) <= 0):
                raise ValueError(f"{name} must be positive")

    @classmethod
    def for_model(
        cls,
        model: CouplingModel,
        k_max: float = 50.0,
        n_k_panels: int = 100,
        k_order: int = 20,
        omega_order: int = 24,
        window_scale: float = 0.5,
    ) -> "ModeGrid":
        """Default grid: omega panels concentrated on the oscillator lines
        up to the model cutoff, radial k to k_max with a window that has
        decayed to ~1e-7 at the cutoff."""
        edges = {0.0, model.omega_max}
        for prof in (
            getattr(model, "profile", None),
            getattr(model, "electric", None),
            getattr(model, "magnetic", None),
        ):
            if prof is not None:
                lo = max(prof.omega0 - 10 * prof.gamma, 0.0)
                hi = min(prof.omega0 + 10 * prof.gamma, model.omega_max)
                edges.update(np.linspace(lo, hi, 9))
        if model.variant == "tabulated":
            edges.update(model.table_omegas)
        om_nodes, om_weights = _gauss_panels(np.array(sorted(edges)), omega_order)
        k_edges = np.linspace(0.0, k_max, n_k_panels + 1)
        k_nodes, k_weights = _gauss_panels(k_edges, k_order)
        kc = window_scale * k_max
        window = np.exp(-((k_nodes / kc) ** 4))
        return cls(
            omega_nodes=om_nodes,
            omega_weights=om_weights,
            k_nodes=k_nodes,
            k_weights=k_weights,
            k_window=window,
            k_max=float(k_max),
            window_scale=float(window_scale),
        )


@dataclass(frozen=True)
class NoiseAmplitude:
    """Classical plane-wave amplitudes B^{ab}(omega, k) on discrete modes.

    Each mode is (omega, kvec, b6) with a complex bivector b6; weights
    play the role of the d^3k dw measure.  box_modes builds the weights
    for modes living on the reciprocal lattice of a periodic box, which is
    what extract_B inverts exactly.
    """

    omegas: np.ndarray
    kvecs: np.ndarray
    b6: np.ndarray
    weights: np.ndarray

    @classmethod
    def box_modes(cls, modes, box_length: float) -> "NoiseAmplitude":
        """modes: iterable of (omega, kvec, b6) with kvec on the lattice
        2 pi m / box_length; weights are the k-cell volume (2 pi / L)^3."""
        omegas = np.array([m[0] for m in modes], dtype=float)
        kvecs = np.array([m[1] for m in modes], dtype=float)
        b6 = np.array([m[2] for m in modes], dtype=complex)
        w = np.full(len(omegas), (2.0 * np.pi / box_length) ** 3)
        return cls(omegas=omegas, kvecs=kvecs, b6=b6, weights=w)


def evaluate_YN(a: NoiseAmplitude, x: FourVector) -> Bivector:
    """Noise bivector field Y_N(x) from its plane-wave amplitudes.

    Y_N = (2 pi)^{-3/2} sum_modes w [B exp(i(k.x - Omega t)) + conjugate];
    the conjugate pair makes the output real.
    """
    t = x.c[3]
    xs = x.c[:3]
    big = np.sqrt(np.einsum("ij,ij->i", a.kvecs, a.kvecs) + a.omegas**2)
    phase = np.exp(1j * (a.kvecs @ xs - big * t))
    total = (a.weights * phase)[:, None] * a.b6
    y = (total + total.conj()).sum(axis=0) / (2.0 * np.pi) ** 1.5
    return Bivector(y.real)


def extract_B(
    y_samples: np.ndarray,
    ydot_samples: np.ndarray,
    box_length: float,
    t: float,
    omega: float,
    kvec,
) -> np.ndarray:
    """Recover B^{ab}(omega, k) from sampled Y_N and dY_N/dt.

    y_samples, ydot_samples: arrays of shape (n, n, n, 6) sampled on the
    uniform periodic grid x_i = i L / n.  Implements the positive-frequency
    projection (1/2) (2 pi)^{-3/2} int d^3x [Y + (i/Omega) Ydot] e^{-ik.x}
    by the (exact, for resolved lattice modes) trapezoid rule.
    """
    kvec = np.asarray(kvec, dtype=float)
    n = y_samples.shape[0]
    if y_samples.shape != (n, n, n, 6) or ydot_samples.shape != (n, n, n, 6):
        raise ValueError("samples must have shape (n, n, n, 6)")
    m = kvec * box_length / (2.0 * np.pi)
    m_round = np.round(m)
    if np.max(np.abs(m - m_round)) > 1e-8 or np.max(np.abs(m_round)) > n // 2 - 1:
        raise UnresolvedModeError(f"mode k = {kvec} not resolved by the grid")
    big = np.sqrt(kvec @ kvec + omega * omega)
    xs = np.arange(n) * (box_length / n)
    ph = [np.exp(-1j * kvec[i] * xs) for i in range(3)]
    weight = np.einsum("a,b,c->abc", ph[0], ph[1], ph[2]) * (box_length / n) ** 3
    integ = np.einsum(
        "abc,abci->i", weight, y_samples + (1j / big) * ydot_samples
    )
    return 0.5 * integ / (2.0 * np.pi) ** 1.5 * np.exp(1j * big * t)


# -- noise polarization commutator ----------------------------------------


def _delta_components(x: FourVector, xp: FourVector):
    dx = x - xp
    return float(np.linalg.norm(dx.c[:3])), float(dx.c[3])


def mode_sum_tail_estimate(grid: ModeGrid, x: FourVector, xp: FourVector) -> float:
    """Cutoff-sensitivity estimate for the radial kernel.

    Recomputes the kernel with the regularizing window squared (a ~19%
    tighter effective cutoff) and returns the largest shift across the
    omega nodes; if the window region carries real signal this blows up.
    """
    r, dt = _delta_components(x, xp)
    d1 = _kernels.mode_sum_batch(
        grid.omega_nodes, dt, r, grid.k_nodes, grid.k_weights, grid.k_window
    )
    d2 = _kernels.mode_sum_batch(
        grid.omega_nodes, dt, r, grid.k_nodes, grid.k_weights, grid.k_window**2
    )
    return float(np.max(np.abs(np.asarray(d1) - np.asarray(d2))))


def commutator_KN_modesum(
    e: SusceptibilityEvaluator,
    grid: ModeGrid,
    x: FourVector,
    xp: FourVector,
    tail_tol: float = 1e-2,
) -> PairTensor:
    """[K_N(x), K_N(x')] as a mode sum over the grid.

    The basis-label sums are performed analytically through the bivector
    completeness relation and the angular integral reduces to
    sinc(k |dx|), leaving the radial kernel

        D_w = -(1/4pi^2) int dk k^2 sinc(k r) sin(Omega dt) / Omega

    and the result (i hbar / 4 pi^2) int dw [f o f](w) D_w.  Warns when
    the cutoff tail estimate exceeds tail_tol relative to the result.
    """
    r, dt = _delta_components(x, xp)
    d = _kernels.mode_sum_batch(
        grid.omega_nodes, dt, r, grid.k_nodes, grid.k_weights, grid.k_window
    )
    coeff = grid.omega_weights * d
    terms = e._terms
    if terms is not None:
        out = np.zeros((6, 6), dtype=complex)
        for h, m66 in terms:
            if e._lb is not None:
                m66 = e._lb @ m66 @ e._lb.T
            out += (coeff @ h(grid.omega_nodes)) * m66
    else:
        out = np.zeros((6, 6), dtype=complex)
        for w, c in zip(grid.omega_nodes, coeff):
            if c != 0.0:
                out += c * e.self_contraction_tensor(float(w)).m66
    result = (1j * HBAR / (4.0 * np.pi**2)) * out
    tail = mode_sum_tail_estimate(grid, x, xp)
    scale_d = float(np.max(np.abs(d)))
    if scale_d > 0.0 and tail > tail_tol * scale_d:
        warnings.warn(
            f"mode-sum cutoff tail estimate {tail:.2e} exceeds {tail_tol:.1e} "
            "of the kernel scale; enlarge k_max",
            RuntimeWarning,
            stacklevel=2,
        )
    return PairTensor(result)


def commutator_KN_reference(
    e: SusceptibilityEvaluator, x: FourVector, xp: FourVector
) -> PairTensor:
    """(i hbar / pi) [theta(t-t') chi(x,x') - theta(t'-t) chi^T(x',x)]."""
    dt = float((x - xp).c[3])
    if dt > 0:
        chi = e.chi_spacetime(x, xp).m66
    elif dt < 0:
        chi = -e.chi_spacetime(xp, x).m66.T
    else:
        chi = np.zeros((6, 6))
    return PairTensor((1j * HBAR / np.pi) * chi)
