import numpy as np
import pytest

from covarmedium.coupling import CouplingModel, LorentzianProfile
from covarmedium.minkowski import (
    METRIC_DIAG,
    PAIRS,
    SIGNATURE,
    FourVector,
    build_tetrad,
    eta_basis,
)
from covarmedium.noisequantum import (
    LadderContraction,
    ModeGrid,
    NoiseAmplitude,
    UnresolvedModeError,
    commutator_KN_modesum,
    commutator_KN_reference,
    evaluate_YN,
    extract_B,
)
from covarmedium.susceptibility import SusceptibilityEvaluator

EM = CouplingModel.em_split(LorentzianProfile(0.12, 1.0, 0.1))
RNG = np.random.default_rng(31)
ORIGIN = FourVector(np.zeros(4))


def four(*c):
    return FourVector(np.array(c, dtype=float))


# -- ladder contraction ----------------------------------------------------


def test_ladder_weight_values():
    g = METRIC_DIAG
    assert LadderContraction.weight(0, 1, 0, 1) == g[0] * g[1]
    assert LadderContraction.weight(2, 3, 2, 3) == g[2] * g[3]
    assert LadderContraction.weight(0, 1, 2, 3) == 0.0


def test_ladder_weight_antisymmetry():
    for _ in range(30):
        l1, l2, l1p, l2p = RNG.integers(0, 4, size=4)
        w = LadderContraction.weight(l1, l2, l1p, l2p)
        assert LadderContraction.weight(l2, l1, l1p, l2p) == -w
        assert LadderContraction.weight(l1, l2, l2p, l1p) == -w


def test_lambda_sum_matches_completeness_shortcut():
    # brute-force double sum over basis labels with indefinite-metric signs
    # versus the analytic reduction used in the mode sum
    for _ in range(10):
        khat = RNG.normal(size=3)
        khat /= np.linalg.norm(khat)
        etas = eta_basis(build_tetrad(khat))
        brute = np.zeros((6, 6))
        for i, (l1, l2) in enumerate(PAIRS):
            for j, (l1p, l2p) in enumerate(PAIRS):
                w = LadderContraction.weight(l1, l2, l1p, l2p)
                if w != 0.0:
                    brute += w * np.outer(etas[i].six, etas[j].six)
        # completeness: sum_I s_I eta_I eta_I = Id/2 in pair components
        assert np.allclose(2.0 * brute, np.diag(SIGNATURE), atol=1e-12)


# -- mode grids ------------------------------------------------------------


def test_mode_grid_validation():
    good = ModeGrid.for_model(EM)
    with pytest.raises(ValueError):
        ModeGrid(
            omega_nodes=np.array([1.0, 0.5]),
            omega_weights=np.array([1.0, 1.0]),
            k_nodes=good.k_nodes,
            k_weights=good.k_weights,
            k_window=good.k_window,
            k_max=good.k_max,
            window_scale=good.window_scale,
        )
    with pytest.raises(ValueError):
        ModeGrid(
            omega_nodes=good.omega_nodes,
            omega_weights=-good.omega_weights,
            k_nodes=good.k_nodes,
            k_weights=good.k_weights,
            k_window=good.k_window,
            k_max=good.k_max,
            window_scale=good.window_scale,
        )


def test_mode_grid_integrates_profile():
    # the omega grid must integrate the sharply peaked line accurately
    grid = ModeGrid.for_model(EM)
    prof = EM.electric
    got = float(np.sum(grid.omega_weights * prof(grid.omega_nodes) ** 2))
    from scipy.integrate import quad

    ref = quad(lambda w: prof(w) ** 2, 0.0, EM.omega_max, epsabs=1e-12, limit=400)[0]
    assert abs(got - ref) < 1e-8 * abs(ref)


# -- plane-wave field and amplitude extraction -----------------------------


def _random_modes(n_modes, box_length, nmax=3):
    modes = []
    base = 2.0 * np.pi / box_length
    seen = set()
    while len(modes) < n_modes:
        m = tuple(RNG.integers(-nmax, nmax + 1, size=3))
        if m in seen or m == (0, 0, 0):
            continue
        seen.add(m)
        omega = float(RNG.uniform(0.3, 2.0))
        b6 = RNG.normal(size=6) + 1j * RNG.normal(size=6)
        modes.append((omega, base * np.array(m, dtype=float), b6))
    return modes


def test_evaluate_YN_zero_amplitude():
    a = NoiseAmplitude.box_modes(_random_modes(2, 8.0), 8.0)
    a = NoiseAmplitude(omegas=a.omegas, kvecs=a.kvecs, b6=0 * a.b6, weights=a.weights)
    y = evaluate_YN(a, four(0.3, -0.1, 0.7, 1.2))
    assert np.allclose(y.six, 0.0)


def test_evaluate_YN_is_real():
    a = NoiseAmplitude.box_modes(_random_modes(6, 8.0), 8.0)
    y = evaluate_YN(a, four(0.3, -0.1, 0.7, 1.2))
    assert y.six.dtype == np.float64


def test_single_mode_field_is_plane_cosine():
    box = 8.0
    k = np.array([2.0 * np.pi / box, 0.0, 0.0])
    b6 = np.zeros(6, dtype=complex)
    b6[2] = 1.0
    a = NoiseAmplitude.box_modes([(1.0, k, b6)], box)
    big = np.sqrt(k @ k + 1.0)
    w = (2.0 * np.pi / box) ** 3 / (2.0 * np.pi) ** 1.5
    for x in (four(0, 0, 0, 0), four(1.3, 0, 0, 0.4), four(2.0, 1.0, -1.0, 2.0)):
        y = evaluate_YN(a, x)
        phase = k @ x.c[:3] - big * x.c[3]
        assert np.isclose(y.six[2], 2.0 * w * np.cos(phase), atol=1e-14)


def _sample_field(a, box, n, t):
    xs = np.arange(n) * (box / n)
    y = np.zeros((n, n, n, 6))
    yd = np.zeros((n, n, n, 6))
    dt = 1e-6
    for i, x in enumerate(xs):
        for j, yy in enumerate(xs):
            for kk, zz in enumerate(xs):
                p = four(x, yy, zz, t)
                pp = four(x, yy, zz, t + dt)
                pm = four(x, yy, zz, t - dt)
                y[i, j, kk] = evaluate_YN(a, p).six
                yd[i, j, kk] = (evaluate_YN(a, pp).six - evaluate_YN(a, pm).six) / (2 * dt)
    return y, yd


def test_extract_B_roundtrip_and_crosstalk():
    box = 8.0
    modes = _random_modes(2, box, nmax=2)
    a = NoiseAmplitude.box_modes(modes, box)
    n = 8
    t = 0.7
    y, yd = _sample_field(a, box, n, t)
    for omega, kvec, b6 in modes:
        got = extract_B(y, yd, box, t, omega, kvec)
        assert np.max(np.abs(got - b6)) < 1e-6
    # an unexcited lattice mode extracts (close to) nothing
    quiet = extract_B(y, yd, box, t, 1.0, np.array([0.0, 2.0 * np.pi / box * 2, 0.0]))
    assert np.max(np.abs(quiet)) < 1e-6


def test_extract_B_rejects_unresolved_modes():
    n = 8
    y = np.zeros((n, n, n, 6))
    with pytest.raises(UnresolvedModeError):
        extract_B(y, y, 8.0, 0.0, 1.0, np.array([0.1, 0.0, 0.0]))  # off lattice
    with pytest.raises(UnresolvedModeError):
        extract_B(y, y, 8.0, 0.0, 1.0, np.array([2.0 * np.pi / 8.0 * 4, 0.0, 0.0]))


def test_extract_B_shape_validation():
    with pytest.raises(ValueError):
        extract_B(np.zeros((4, 4, 4, 5)), np.zeros((4, 4, 4, 5)), 8.0, 0.0, 1.0, np.zeros(3))


# -- noise polarization commutator -----------------------------------------


def test_commutator_vacuum_is_zero():
    ev = SusceptibilityEvaluator(CouplingModel.vacuum())
    grid = ModeGrid.for_model(CouplingModel.vacuum())
    x = four(0, 0, 0.4, 2.0)
    assert np.allclose(commutator_KN_modesum(ev, grid, x, ORIGIN).m66, 0.0)
    assert np.allclose(commutator_KN_reference(ev, x, ORIGIN).m66, 0.0)


def test_commutator_equal_point_and_equal_time():
    ev = SusceptibilityEvaluator(EM)
    grid = ModeGrid.for_model(EM)
    assert np.allclose(commutator_KN_modesum(ev, grid, ORIGIN, ORIGIN).m66, 0.0)
    x = four(0, 0, 1.3, 0.0)
    assert np.allclose(commutator_KN_modesum(ev, grid, x, ORIGIN).m66, 0.0, atol=1e-12)
    assert np.allclose(commutator_KN_reference(ev, x, ORIGIN).m66, 0.0)


def test_commutator_exchange_antisymmetry():
    ev = SusceptibilityEvaluator(EM)
    grid = ModeGrid.for_model(EM)
    x = four(0.1, 0.0, 0.4, 1.8)
    xp = four(0.0, 0.2, 0.1, 0.2)
    a = commutator_KN_modesum(ev, grid, x, xp).m66
    b = commutator_KN_modesum(ev, grid, xp, x).m66
    assert np.max(np.abs(a + b.T)) < 1e-10 * np.max(np.abs(a))


def test_commutator_spacelike_reference_vanishes():
    ev = SusceptibilityEvaluator(EM)
    assert np.allclose(commutator_KN_reference(ev, four(0, 0, 3.0, 0.5), ORIGIN).m66, 0.0)


def test_commutator_reference_is_retarded_chi():
    ev = SusceptibilityEvaluator(EM)
    x = four(0, 0, 0.4, 2.0)
    ref = commutator_KN_reference(ev, x, ORIGIN).m66
    chi = ev.chi_spacetime(x, ORIGIN).m66
    assert np.allclose(ref, 1j / np.pi * chi, atol=1e-15)


def test_commutator_modesum_matches_reference():
    ev = SusceptibilityEvaluator(EM)
    grid = ModeGrid.for_model(EM)
    x = four(0, 0, 0.5, 1.5)
    ms = commutator_KN_modesum(ev, grid, x, ORIGIN).m66
    ref = commutator_KN_reference(ev, x, ORIGIN).m66
    assert np.max(np.abs(ms - ref)) < 1e-2 * np.max(np.abs(ref))


def test_commutator_tail_warning_for_small_cutoff():
    ev = SusceptibilityEvaluator(EM)
    grid = ModeGrid.for_model(EM, k_max=2.0, n_k_panels=10)
    with pytest.warns(RuntimeWarning, match="tail"):
        commutator_KN_modesum(ev, grid, four(0, 0, 0.5, 1.5), ORIGIN)
