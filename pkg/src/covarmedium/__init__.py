"""Covariant electrodynamics of moving magnetodielectric media.

Susceptibility tensors built from oscillator-continuum coupling models,
retarded Green functions, dispersion-relation root finding for media in
motion, and c-number verification of the noise-polarization commutator
structure.
"""

from ._kernels import BACKEND as kernel_backend
from .coupling import CouplingModel, LorentzianProfile
from .dispersion import (
    ModeFunction,
    OnShellError,
    RootSearchError,
    assemble_L,
    dispersion_roots,
    invert_L,
    mode_function_Z,
)
from .greens import GreenSpec, green_momentum, green_position_regular, green_time_kernel
from .minkowski import (
    Bivector,
    Boost,
    FourVector,
    PairTensor,
    Tetrad,
    boost_apply,
    build_tetrad,
    eta_basis,
    pair_contract,
    pair_index,
)
from .noisequantum import (
    LadderContraction,
    ModeGrid,
    NoiseAmplitude,
    commutator_KN_modesum,
    commutator_KN_reference,
    evaluate_YN,
    extract_B,
)
from .susceptibility import RestFrameError, SusceptibilityEvaluator

__version__ = "0.1.0"

__all__ = [
    "kernel_backend",
    "CouplingModel",
    "LorentzianProfile",
    "ModeFunction",
    "OnShellError",
    "RootSearchError",
    "assemble_L",
    "dispersion_roots",
    "invert_L",
    "mode_function_Z",
    "GreenSpec",
    "green_momentum",
    "green_position_regular",
    "green_time_kernel",
    "Bivector",
    "Boost",
    "FourVector",
    "PairTensor",
    "Tetrad",
    "boost_apply",
    "build_tetrad",
    "eta_basis",
    "pair_contract",
    "pair_index",
    "LadderContraction",
    "ModeGrid",
    "NoiseAmplitude",
    "commutator_KN_modesum",
    "commutator_KN_reference",
    "evaluate_YN",
    "extract_B",
    "RestFrameError",
    "SusceptibilityEvaluator",
]
