"""Minkowski tensor algebra: metric, boosts, tetrads, bivectors, pair indices.

Components are stored in slot order (x, y, z, t) with metric
diag(-1, -1, -1, +1), so the timelike slot is slot 3 throughout.
Antisymmetric rank-2 tensors (bivectors) are held as 6-vectors over the
lexicographic index pairs, and pair-antisymmetric rank-4 tensors as 6x6
matrices over the same pair indices.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

__all__ = [
    "METRIC",
    "PAIRS",
    "SIGNATURE",
    "FourVector",
    "Bivector",
    "PairTensor",
    "Tetrad",
    "Boost",
    "pair_index",
    "minkowski_dot",
    "build_tetrad",
    "eta_basis",
    "boost_apply",
    "pair_contract",
    "pair_apply",
    "bivector_rep",
    "identity_pair",
    "DegeneratePairError",
]

METRIC = np.diag([-1.0, -1.0, -1.0, 1.0])
METRIC_DIAG = np.array([-1.0, -1.0, -1.0, 1.0])

#: ordered slot pairs indexing the six bivector components
PAIRS = ((0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3))
_PAIR_SLOT = {p: i for i, p in enumerate(PAIRS)}

#: diagonal signature g_{mm} g_{nn} for each pair index
SIGNATURE = np.array([METRIC_DIAG[m] * METRIC_DIAG[n] for m, n in PAIRS])


class DegeneratePairError(ValueError):
    pass


def pair_index(mu: int, nu: int) -> tuple[int, int]:
    """Map an ordered slot pair to its bivector index and sign.

    Returns (I, +1) for mu < nu and (I, -1) for mu > nu; raises
    DegeneratePairError when mu == nu.
    """
    if mu == nu:
        raise DegeneratePairError(f"degenerate pair ({mu}, {nu})")
    if mu < nu:
        return _PAIR_SLOT[(mu, nu)], 1
    return _PAIR_SLOT[(nu, mu)], -1


def minkowski_dot(a: np.ndarray, b: np.ndarray):
    """Inner product a.b = -a1 b1 - a2 b2 - a3 b3 + a4 b4 on raw components."""
    return a @ (METRIC_DIAG * b)


@dataclass(frozen=True)
class FourVector:
    """Rank-1 Minkowski tensor with components ordered (x, y, z, t)."""

    c: np.ndarray

    def __post_init__(self):
        arr = np.asarray(self.c)
        if arr.shape != (4,):
            raise ValueError("FourVector needs exactly 4 components")
        object.__setattr__(self, "c", arr)

    @property
    def spatial(self) -> np.ndarray:
        return self.c[:3]

    @property
    def t(self):
        return self.c[3]

    def dot(self, other: "FourVector"):
        return minkowski_dot(self.c, other.c)

    def __sub__(self, other: "FourVector") -> "FourVector":
        return FourVector(self.c - other.c)

    def __add__(self, other: "FourVector") -> "FourVector":
        return FourVector(self.c + other.c)


@dataclass(frozen=True)
class Bivector:
    """Antisymmetric rank-2 tensor stored as six pair components."""

    six: np.ndarray

    def __post_init__(self):
        arr = np.asarray(self.six)
        if arr.shape != (6,):
            raise ValueError("Bivector needs exactly 6 components")
        object.__setattr__(self, "six", arr)

    def as_matrix(self) -> np.ndarray:
        """Materialize the full antisymmetric 4x4 array."""
        t = np.zeros((4, 4), dtype=self.six.dtype)
        for i, (m, n) in enumerate(PAIRS):
            t[m, n] = self.six[i]
            t[n, m] = -self.six[i]
        return t

    @classmethod
    def from_matrix(cls, t: np.ndarray) -> "Bivector":
        t = np.asarray(t)
        return cls(np.array([t[m, n] for m, n in PAIRS]))

    def full_contract(self, other: "Bivector"):
        """T^{ab} U_{ab} summed over all (ordered) index pairs."""
        return 2.0 * (self.six @ (SIGNATURE * other.six))


# index helper arrays for rank-4 <-> 6x6 conversion
_PA = np.array([p[0] for p in PAIRS])
_PB = np.array([p[1] for p in PAIRS])


@dataclass(frozen=True)
class PairTensor:
    """Rank-4 tensor antisymmetric in its first and last index pairs.

    Stored as the 6x6 matrix M[I, J] = T^{mn ab} with I = (m, n),
    J = (a, b) both in the lexicographic pair order.
    """

    m66: np.ndarray

    def __post_init__(self):
        arr = np.asarray(self.m66)
        if arr.shape != (6, 6):
            raise ValueError("PairTensor needs a 6x6 array")
        object.__setattr__(self, "m66", arr)

    def as_rank4(self) -> np.ndarray:
        t = np.zeros((4, 4, 4, 4), dtype=self.m66.dtype)
        m, n, a, b = (
            _PA[:, None],
            _PB[:, None],
            _PA[None, :],
            _PB[None, :],
        )
        t[m, n, a, b] = self.m66
        t[n, m, a, b] = -self.m66
        t[m, n, b, a] = -self.m66
        t[n, m, b, a] = self.m66
        return t

    @classmethod
    def from_rank4(cls, t: np.ndarray) -> "PairTensor":
        t = np.asarray(t)
        return cls(t[_PA[:, None], _PB[:, None], _PA[None, :], _PB[None, :]])

    @property
    def pair_transpose(self) -> "PairTensor":
        """Simultaneous swap of the first and last index pairs."""
        return PairTensor(self.m66.T)


def identity_pair(dtype=float) -> PairTensor:
    """Id^{mnab} = g^{ma} g^{nb} - g^{mb} g^{na}; acts as 2x identity on bivectors."""
    return PairTensor(np.diag(SIGNATURE).astype(dtype))


def pair_contract(ta: PairTensor, tb: PairTensor) -> PairTensor:
    """C^{mnab} = Ta^{mnds} g_dd' g_ss' Tb^{abd's'}.

    In pair form this is 2 * Ta @ diag(s) @ Tb.T with the per-pair
    signature s; the factor 2 counts both orderings of the summed pair.
    """
    return PairTensor(2.0 * (ta.m66 * SIGNATURE[None, :]) @ tb.m66.T)


def pair_apply(t: PairTensor, b: Bivector) -> Bivector:
    """(T.b)^{mn} = T^{mnab} g_aa' g_bb' b^{a'b'}; identity_pair gives 2*b."""
    return Bivector(2.0 * t.m66 @ (SIGNATURE * b.six))


@dataclass(frozen=True)
class Tetrad:
    """Four orthonormal legs eps(0..3); leg 3 is the timelike one.

    eps[lam] is the component array of leg lam.
    """

    eps: np.ndarray

    def leg(self, lam: int) -> FourVector:
        return FourVector(self.eps[lam])


def build_tetrad(khat: np.ndarray) -> Tetrad:
    """Orthonormal tetrad attached to a spatial unit direction.

    Legs 0..2 are a right-handed spatial triad with leg 2 along khat;
    leg 3 is (0, 0, 0, 1).  Completion is a deterministic Gram-Schmidt
    seeded from the smallest-magnitude axis of khat.
    """
    khat = np.asarray(khat, dtype=float)
    norm = np.linalg.norm(khat)
    if norm == 0.0:
        raise ValueError("zero-length direction")
    if abs(norm - 1.0) > 1e-12:
        raise ValueError(f"direction not unit length (|k| = {norm})")
    seed_axis = int(np.argmin(np.abs(khat)))
    seed = np.zeros(3)
    seed[seed_axis] = 1.0
    e0 = seed - (seed @ khat) * khat
    e0 /= np.linalg.norm(e0)
    e1 = np.cross(khat, e0)
    eps = np.zeros((4, 4))
    eps[0, :3] = e0
    eps[1, :3] = e1
    eps[2, :3] = khat
    eps[3, 3] = 1.0
    return Tetrad(eps)


def eta_basis(t: Tetrad) -> list[Bivector]:
    """Six bivector basis elements eta(lam, lam') for lam < lam'.

    eta^{ab} = [eps^a(lam) eps^b(lam') - eps^a(lam') eps^b(lam)] / sqrt(2),
    ordered by the same lexicographic pair convention as PAIRS.
    """
    out = []
    for lam, lamp in PAIRS:
        m = np.outer(t.eps[lam], t.eps[lamp])
        out.append(Bivector.from_matrix((m - m.T) / np.sqrt(2.0)))
    return out


@dataclass(frozen=True)
class Boost:
    """Proper orthochronous boost with |v| < 1.

    lam is the 4x4 matrix acting on upper-index components in
    (x, y, z, t) order.
    """

    velocity: np.ndarray
    lam: np.ndarray = field(default=None)

    def __post_init__(self):
        v = np.asarray(self.velocity, dtype=float)
        if v.shape != (3,):
            raise ValueError("velocity must be a 3-vector")
        v2 = v @ v
        if v2 >= 1.0:
            raise ValueError(f"|v| >= 1 (v = {v})")
        if self.lam is None:
            gamma = 1.0 / np.sqrt(1.0 - v2)
            m = np.eye(4)
            if v2 > 0.0:
                m[:3, :3] += (gamma - 1.0) * np.outer(v, v) / v2
            m[:3, 3] = -gamma * v
            m[3, :3] = -gamma * v
            m[3, 3] = gamma
            object.__setattr__(self, "lam", m)
        object.__setattr__(self, "velocity", v)

    @property
    def inverse(self) -> "Boost":
        return Boost(-self.velocity)

    def bivector_matrix(self, dtype=float) -> np.ndarray:
        """6x6 matrix implementing the boost on bivector components."""
        return bivector_rep(self.lam, dtype=dtype)


def bivector_rep(lam: np.ndarray, dtype=float) -> np.ndarray:
    """6x6 representation of a 4x4 transformation on bivector components."""
    out = np.zeros((6, 6), dtype=dtype)
    for i, (m, n) in enumerate(PAIRS):
        for j, (a, b) in enumerate(PAIRS):
            out[i, j] = lam[m, a] * lam[n, b] - lam[m, b] * lam[n, a]
    return out


def boost_apply(boost: Boost, t):
    """Transform every free index of a FourVector, Bivector, or PairTensor."""
    if isinstance(t, FourVector):
        return FourVector(boost.lam @ t.c)
    if isinstance(t, Bivector):
        lb = boost.bivector_matrix(dtype=t.six.dtype)
        return Bivector(lb @ t.six)
    if isinstance(t, PairTensor):
        lb = boost.bivector_matrix(dtype=t.m66.dtype)
        return PairTensor(lb @ t.m66 @ lb.T)
    raise TypeError(f"cannot boost object of type {type(t).__name__}")
