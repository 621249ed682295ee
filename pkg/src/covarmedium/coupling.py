"""Parametric models of the medium's rank-4 coupling tensor.

A model maps a non-negative frequency to a PairTensor.  Shipped families:

* ``vacuum``: identically zero.
* ``isotropic_lorentzian``: a single lorentzian oscillator line multiplying
  the bivector identity tensor.
* ``em_split``: separate electric and magnetic lorentzian profiles attached
  to a rest four-velocity u through complementary bivector projectors.
* ``tabulated``: linear interpolation between sampled 6x6 tensors, clamped
  to zero outside the sample window.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .minkowski import (
    METRIC_DIAG,
    FourVector,
    PairTensor,
    identity_pair,
    pair_contract,
)

__all__ = [
    "LorentzianProfile",
    "CouplingModel",
    "eval_coupling",
    "self_contraction",
    "electric_projector",
    "magnetic_projector",
    "spectral_terms",
]

REST_U = FourVector(np.array([0.0, 0.0, 0.0, 1.0]))


@dataclass(frozen=True)
class LorentzianProfile:
    """g(w) = c0 * sqrt(gamma*w / ((w0^2 - w^2)^2 + gamma^2 w^2)).

    Decays like w^(-3/2), which keeps the w-integrals of g^2/w^2 finite.
    """

    c0: float
    omega0: float
    gamma: float

    def __post_init__(self):
        if self.c0 < 0:
            raise ValueError("c0 must be >= 0")
        if self.omega0 <= 0:
            raise ValueError("omega0 must be > 0")
        if self.gamma <= 0:
            raise ValueError("gamma must be > 0")

    def __call__(self, omega):
        omega = np.asarray(omega, dtype=float)
        den = (self.omega0**2 - omega**2) ** 2 + self.gamma**2 * omega**2
        return self.c0 * np.sqrt(self.gamma * omega / den)


def electric_projector(u: FourVector) -> PairTensor:
    """Projector onto the electric bivector part relative to four-velocity u.

    (P_e)^{mnab} = u^n u^b g^{ma} - u^m u^b g^{na}
                 - u^n u^a g^{mb} + u^m u^a g^{nb}
    """
    uu = u.dot(u)
    if abs(uu - 1.0) > 1e-10:
        raise ValueError(f"u must satisfy u.u = +1 (got {uu})")
    uc = u.c
    g = np.diag(METRIC_DIAG)
    t = (
        np.einsum("n,b,ma->mnab", uc, uc, g)
        - np.einsum("m,b,na->mnab", uc, uc, g)
        - np.einsum("n,a,mb->mnab", uc, uc, g)
        + np.einsum("m,a,nb->mnab", uc, uc, g)
    )
    return PairTensor.from_rank4(t)


def magnetic_projector(u: FourVector) -> PairTensor:
    """Complementary projector P_m = Id - P_e."""
    return PairTensor(identity_pair().m66 - electric_projector(u).m66)


@dataclass(frozen=True)
class CouplingModel:
    """Tagged union over the shipped coupling families."""

    variant: str
    profile: LorentzianProfile | None = None
    electric: LorentzianProfile | None = None
    magnetic: LorentzianProfile | None = None
    u: FourVector | None = None
    table_omegas: np.ndarray | None = None
    table_tensors: np.ndarray | None = None

    @classmethod
    def vacuum(cls) -> "CouplingModel":
        return cls(variant="vacuum")

    @classmethod
    def isotropic_lorentzian(cls, c0, omega0, gamma) -> "CouplingModel":
        return cls(
            variant="isotropic_lorentzian",
            profile=LorentzianProfile(c0, omega0, gamma),
        )

    @classmethod
    def em_split(
        cls,
        electric: LorentzianProfile,
        magnetic: LorentzianProfile | None = None,
        u: FourVector = REST_U,
    ) -> "CouplingModel":
        return cls(variant="em_split", electric=electric, magnetic=magnetic, u=u)

    @classmethod
    def tabulated(cls, omegas, tensors) -> "CouplingModel":
        omegas = np.asarray(omegas, dtype=float)
        tensors = np.asarray(tensors, dtype=float)
        if omegas.ndim != 1 or len(omegas) < 2:
            raise ValueError("need at least two samples")
        if np.any(np.diff(omegas) <= 0):
            raise ValueError("sample frequencies must be strictly increasing")
        if tensors.shape != (len(omegas), 6, 6):
            raise ValueError("tensors must have shape (n, 6, 6)")
        return cls(variant="tabulated", table_omegas=omegas, table_tensors=tensors)

    @property
    def omega_max(self) -> float:
        """Default upper quadrature cutoff for this model."""
        if self.variant == "vacuum":
            return 1.0
        if self.variant == "isotropic_lorentzian":
            return self.profile.omega0 + 40.0 * self.profile.gamma
        if self.variant == "em_split":
            cut = self.electric.omega0 + 40.0 * self.electric.gamma
            if self.magnetic is not None:
                cut = max(cut, self.magnetic.omega0 + 40.0 * self.magnetic.gamma)
            return cut
        return float(self.table_omegas[-1])


def eval_coupling(m: CouplingModel, omega: float) -> PairTensor:
    """Coupling tensor f(omega) as a PairTensor; omega must be >= 0."""
    if omega < 0:
        raise ValueError(f"omega must be >= 0 (got {omega})")
    if m.variant == "vacuum":
        return PairTensor(np.zeros((6, 6)))
    if m.variant == "isotropic_lorentzian":
        return PairTensor(float(m.profile(omega)) * identity_pair().m66)
    if m.variant == "em_split":
        out = float(m.electric(omega)) * electric_projector(m.u).m66
        if m.magnetic is not None:
            out = out + float(m.magnetic(omega)) * magnetic_projector(m.u).m66
        return PairTensor(out)
    if m.variant == "tabulated":
        w = m.table_omegas
        if omega < w[0] or omega > w[-1]:
            return PairTensor(np.zeros((6, 6)))
        i = int(np.searchsorted(w, omega, side="right")) - 1
        i = min(i, len(w) - 2)
        frac = (omega - w[i]) / (w[i + 1] - w[i])
        return PairTensor((1 - frac) * m.table_tensors[i] + frac * m.table_tensors[i + 1])
    raise ValueError(f"unknown model variant {m.variant!r}")


def self_contraction(m: CouplingModel, omega: float) -> PairTensor:
    """f(omega) contracted with itself over its last index pair."""
    f = eval_coupling(m, omega)
    return pair_contract(f, f)


def spectral_terms(m: CouplingModel):
    """Decompose f(w) o f(w) = sum_i h_i(w) * M_i when the model allows it.

    Returns a list of (h_i, M_i) with scalar profiles h_i and constant 6x6
    matrices M_i, or None for tabulated models (which need the generic
    matrix-valued quadrature path).
    """
    if m.variant == "vacuum":
        return []
    if m.variant == "isotropic_lorentzian":
        g = m.profile
        return [(lambda w, g=g: 2.0 * g(w) ** 2, identity_pair().m66)]
    if m.variant == "em_split":
        # P_e o P_e = 2 P_e, P_m o P_m = 2 P_m and the cross terms vanish
        terms = [
            (lambda w, g=m.electric: 2.0 * g(w) ** 2, electric_projector(m.u).m66)
        ]
        if m.magnetic is not None:
            terms.append(
                (lambda w, g=m.magnetic: 2.0 * g(w) ** 2, magnetic_projector(m.u).m66)
            )
        return terms
    return None
