"""Susceptibility tensor of a coupling model in spacetime and momentum form.

The normative formula is the frequency integral

    chi(x, x') = (1/8pi) int_0^wmax dw G(w, x - x') [f o f](w)

with the retarded Green function G and the coupling self-contraction
f o f.  The momentum representation replaces G by its momentum form and
handles the on-shell pole by a principal-value / residue split.  A boost
wraps an evaluator: every bivector index is transformed and the argument
is counter-transformed.
"""

from __future__ import annotations

import numpy as np
from scipy.integrate import quad

from .coupling import CouplingModel, self_contraction, spectral_terms
from .greens import GreenSpec, green_position_regular
from .minkowski import Boost, FourVector, PairTensor, bivector_rep

__all__ = ["SusceptibilityEvaluator", "RestFrameError"]


class RestFrameError(RuntimeError):
    pass


def _gauss_panels(edges: np.ndarray, order: int):
    """Composite Gauss-Legendre nodes/weights over consecutive edges."""
    x, w = np.polynomial.legendre.leggauss(order)
    nodes, weights = [], []
    for a, b in zip(edges[:-1], edges[1:]):
        nodes.append((b - a) / 2 * x + (a + b) / 2)
        weights.append((b - a) / 2 * w)
    return np.concatenate(nodes), np.concatenate(weights)


class SusceptibilityEvaluator:
    """Caches quadrature state for one coupling model; optionally boosted.

    Evaluations are deterministic given (model, omega_max, quad_tol, boost).
    """

    def __init__(
        self,
        model: CouplingModel,
        omega_max: float | None = None,
        quad_tol: float = 1e-8,
        _boost_lam: np.ndarray | None = None,
    ):
        self.model = model
        self.omega_max = float(omega_max if omega_max is not None else model.omega_max)
        self.quad_tol = float(quad_tol)
        self._boost_lam = _boost_lam
        self._terms = spectral_terms(model)
        self._kernel_cache: dict = {}
        self._lb = None if _boost_lam is None else bivector_rep(_boost_lam)
        if model.variant == "tabulated":
            edges = np.unique(
                np.concatenate(
                    [model.table_omegas, np.linspace(model.table_omegas[0], self.omega_max, 17)]
                )
            )
            self._tab_edges = edges

    @property
    def is_boosted(self) -> bool:
        return self._boost_lam is not None

    # -- momentum representation ------------------------------------------

    def _scalar_kernel(self, h, q2, sgn_q4: float, hkey) -> complex:
        """int_0^wmax h(w) * Gbar(w, q) dw for a scalar profile h."""
        key = (hkey, complex(q2), sgn_q4)
        hit = self._kernel_cache.get(key)
        if hit is not None:
            return hit
        wmax = self.omega_max
        tol = self.quad_tol
        q2c = complex(q2)
        if q2c.imag != 0.0:
            # subtract the pole at w = sqrt(q2) so the quadrature stays smooth
            # even for small imaginary parts; the subtracted piece integrates
            # in closed form (the log branch never crosses the real path)
            s = np.sqrt(q2c)
            lg_m = np.log(wmax - s) - np.log(-s)
            lg_p = np.log(wmax + s) - np.log(s)
            closed0 = (lg_m - lg_p) / (2.0 * s)
            wnear = min(max(s.real, 0.0), wmax)
            hs = h(wnear)
            dh = 1e-6 * (1.0 + wnear)
            hp = (h(min(wnear + dh, wmax)) - h(max(wnear - dh, 0.0))) / (
                min(wnear + dh, wmax) - max(wnear - dh, 0.0)
            )
            closed1 = ((s - wnear) * lg_m + (s + wnear) * lg_p) / (2.0 * s)

            def resid(w):
                return -(h(w) - hs - hp * (w - wnear)) / (w * w - q2c)

            pts = [wnear] if 0.0 < wnear < wmax else None
            re = quad(
                lambda w: resid(w).real, 0.0, wmax, epsabs=tol, limit=200, points=pts
            )[0]
            im = quad(
                lambda w: resid(w).imag, 0.0, wmax, epsabs=tol, limit=200, points=pts
            )[0]
            out = re + 1j * im - hs * closed0 - hp * closed1
        else:
            q2r = q2c.real
            if q2r <= 0.0:
                out = complex(
                    quad(lambda w: -h(w) / (w * w - q2r), 0.0, wmax, epsabs=tol, limit=200)[0]
                )
            else:
                ws = np.sqrt(q2r)
                # keep the pole strictly inside the quadrature interval
                wmax_eff = wmax if ws < wmax - 1e-9 else max(wmax, ws + 1e-6)
                if ws < wmax_eff - 1e-9:
                    pv = quad(
                        lambda w: h(w) / (w + ws),
                        0.0,
                        wmax_eff,
                        weight="cauchy",
                        wvar=ws,
                        epsabs=tol,
                        limit=200,
                    )[0]
                else:
                    pv = -quad(
                        lambda w: -h(w) / (w * w - q2r), 0.0, wmax, epsabs=tol, limit=200
                    )[0]
                out = -pv - 1j * np.pi * np.sign(sgn_q4) * h(ws) / (2.0 * ws)
        self._kernel_cache[key] = out
        return out

    def _matrix_kernel(self, q2, sgn_q4: float) -> np.ndarray:
        """Generic 6x6 momentum kernel for tabulated models."""
        edges = self._tab_edges

        def fof(w):
            return self_contraction(self.model, float(w)).m66

        q2c = complex(q2)
        pole = q2c.imag == 0.0 and 0.0 < q2c.real < edges[-1] ** 2
        if pole:
            ws = float(np.sqrt(q2c.real))
            edges = np.unique(np.concatenate([edges, [ws]]))
        nodes, weights = _gauss_panels(edges, 16)
        fvals = np.array([fof(w) for w in nodes])
        if not pole:
            den = nodes * nodes - q2c
            out = -(fvals / den[:, None, None] * weights[:, None, None]).sum(axis=0)
            return out.astype(complex)
        fs = fof(ws)
        den = nodes * nodes - q2c.real
        small = np.abs(nodes - ws) < 1e-9
        sub = np.where(
            small[:, None, None],
            0.0,
            (fvals - fs[None, :, :]) / np.where(small, 1.0, den)[:, None, None],
        )
        pv_closed = np.log(abs((edges[-1] - ws) / (edges[-1] + ws))) / (2.0 * ws)
        out = -(sub * weights[:, None, None]).sum(axis=0) - fs * pv_closed
        return out - 1j * np.pi * np.sign(sgn_q4) * fs / (2.0 * ws)

    def _chi_momentum_rest(self, q: FourVector) -> np.ndarray:
        qq = complex(q.dot(q))
        sgn = float(np.sign(q.c[3].real)) if np.iscomplexobj(q.c) else float(np.sign(q.c[3]))
        if self._terms is not None:
            out = np.zeros((6, 6), dtype=complex)
            for i, (h, m66) in enumerate(self._terms):
                out += self._scalar_kernel(h, qq, sgn, i) * m66
            return out / (8.0 * np.pi)
        return self._matrix_kernel(qq, sgn) / (8.0 * np.pi)

    def chi_momentum(self, q: FourVector) -> PairTensor:
        """Momentum-space susceptibility chibar(q) as a complex PairTensor.

        Purely real for spacelike q; timelike q picks up the on-shell
        residue with the sign of the frequency component.
        """
        if self._boost_lam is None:
            return PairTensor(self._chi_momentum_rest(q))
        lam_inv = np.linalg.inv(self._boost_lam)
        q0 = FourVector(lam_inv @ q.c)
        base = self._chi_momentum_rest(q0)
        return PairTensor(self._lb @ base @ self._lb.T)

    # -- spacetime representation -----------------------------------------

    def _chi_spacetime_rest(self, dx: FourVector) -> np.ndarray:
        t = dx.c[3]
        r = float(np.linalg.norm(dx.c[:3]))
        if t <= 0 or t * t - r * r <= 0:
            return np.zeros((6, 6))
        if self._terms is not None:
            out = np.zeros((6, 6))
            for h, m66 in self._terms:
                val = quad(
                    lambda w: h(w) * green_position_regular(GreenSpec(w), dx),
                    0.0,
                    self.omega_max,
                    epsabs=self.quad_tol,
                    limit=200,
                )[0]
                out += val * m66
            return out / (8.0 * np.pi)
        nodes, weights = _gauss_panels(self._tab_edges, 16)
        out = np.zeros((6, 6))
        for w, wt in zip(nodes, weights):
            g = green_position_regular(GreenSpec(w), dx)
            if g != 0.0:
                out += wt * g * self_contraction(self.model, float(w)).m66
        return out / (8.0 * np.pi)

    def chi_spacetime(self, x: FourVector, xp: FourVector) -> PairTensor:
        """chi(x, x') for the homogeneous model; zero unless x - x' is in
        the open forward light cone (inside-cone tail only)."""
        dx = x - xp
        if self._boost_lam is None:
            return PairTensor(self._chi_spacetime_rest(dx))
        lam_inv = np.linalg.inv(self._boost_lam)
        base = self._chi_spacetime_rest(FourVector(lam_inv @ dx.c))
        return PairTensor(self._lb @ base @ self._lb.T)

    # -- boosts and projections -------------------------------------------

    def boost(self, v) -> "SusceptibilityEvaluator":
        """Evaluator for the same medium boosted by 3-velocity v.

        chibar'(q) = Lambda (x4) chibar(Lambda^-1 q); boosts along one axis
        compose their velocities relativistically through the matrix product.
        """
        v = np.asarray(v, dtype=float)
        if v @ v >= 1.0:
            raise ValueError(f"|v| >= 1 (v = {v})")
        if not np.any(v):
            return self
        lam = Boost(v).lam
        if self._boost_lam is not None:
            lam = lam @ self._boost_lam
        return SusceptibilityEvaluator(
            self.model, self.omega_max, self.quad_tol, _boost_lam=lam
        )

    # electric pairs contain the timelike slot 3
    _ELECTRIC = (2, 4, 5)
    _MAGNETIC = (0, 1, 3)

    def rest_frame_scalars(self, q4: float) -> tuple[complex, complex]:
        """Scalar electric/magnetic responses at q = (0, 0, 0, q4).

        Projects the diagonal of chibar onto pairs containing the timelike
        slot (electric) and purely spatial pairs (magnetic), normalized so
        an isotropic model returns chi_e = chi_m.
        """
        if self.is_boosted:
            raise RestFrameError("rest frame only")
        from .minkowski import SIGNATURE

        chi = self.chi_momentum(FourVector(np.array([0.0, 0.0, 0.0, float(q4)]))).m66
        chi_e = np.mean([SIGNATURE[i] * chi[i, i] for i in self._ELECTRIC])
        chi_m = np.mean([SIGNATURE[i] * chi[i, i] for i in self._MAGNETIC])
        return complex(chi_e), complex(chi_m)

    def coupling_tensor(self, omega: float) -> PairTensor:
        """f(omega) in this evaluator's frame (boosted when applicable)."""
        from .coupling import eval_coupling

        f = eval_coupling(self.model, omega)
        if self._boost_lam is None:
            return f
        return PairTensor(self._lb @ f.m66 @ self._lb.T)

    def self_contraction_tensor(self, omega: float) -> PairTensor:
        fof = self_contraction(self.model, omega)
        if self._boost_lam is None:
            return fof
        return PairTensor(self._lb @ fof.m66 @ self._lb.T)
