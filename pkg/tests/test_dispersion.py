import numpy as np
import pytest

from covarmedium.coupling import CouplingModel, LorentzianProfile
from covarmedium.dispersion import (
    OnShellError,
    assemble_L,
    dispersion_roots,
    invert_L,
    mode_function_Z,
)
from covarmedium.minkowski import METRIC, METRIC_DIAG, FourVector, minkowski_dot
from covarmedium.susceptibility import SusceptibilityEvaluator

EM = CouplingModel.em_split(LorentzianProfile(0.12, 1.0, 0.1))
KHAT = np.array([0.0, 0.0, 1.0])
RNG = np.random.default_rng(5150)


def four(*c):
    return FourVector(np.array(c, dtype=float))


def test_vacuum_kernel_is_minus_q2_metric():
    ev = SusceptibilityEvaluator(CouplingModel.vacuum())
    q = four(0.3, -0.2, 0.5, 0.9)
    qq = minkowski_dot(q.c, q.c)
    assert np.allclose(assemble_L(ev, q), -qq * METRIC, atol=1e-14)


def test_gauge_identity_random_samples():
    ev = SusceptibilityEvaluator(EM)
    for _ in range(25):
        qc = RNG.normal(size=4)
        q = FourVector(qc)
        lm = assemble_L(ev, q)
        resid = lm @ qc + minkowski_dot(qc, qc) * (METRIC_DIAG * qc)
        assert np.linalg.norm(resid) <= 1e-12 * np.linalg.norm(lm) * np.linalg.norm(qc)


def test_gauge_identity_boosted():
    ev = SusceptibilityEvaluator(EM).boost(np.array([0.2, -0.1, 0.3]))
    for _ in range(10):
        qc = RNG.normal(size=4)
        lm = assemble_L(ev, FourVector(qc))
        resid = lm @ qc + minkowski_dot(qc, qc) * (METRIC_DIAG * qc)
        assert np.linalg.norm(resid) <= 1e-12 * np.linalg.norm(lm) * np.linalg.norm(qc)


def test_invert_L_raises_on_shell():
    ev = SusceptibilityEvaluator(CouplingModel.vacuum())
    with pytest.raises(OnShellError):
        invert_L(assemble_L(ev, four(0.0, 0.0, 0.5, 0.5)))


def test_invert_L_off_shell():
    ev = SusceptibilityEvaluator(EM)
    lm = assemble_L(ev, four(0.0, 0.0, 0.2, 0.9))
    inv, cond = invert_L(lm)
    assert np.allclose(inv @ lm, np.eye(4), atol=1e-10)
    assert cond >= 1.0


def test_vacuum_roots_on_light_cone():
    ev = SusceptibilityEvaluator(CouplingModel.vacuum())
    for q4 in (0.3, 1.1):
        roots = dispersion_roots(ev, KHAT, q4)
        assert len(roots) == 1
        n, label = roots[0]
        assert abs(n - 1.0) < 1e-10
        assert label == "physical"


def test_medium_transparent_root_and_self_consistency():
    ev = SusceptibilityEvaluator(EM)
    q4 = 0.3
    roots = dispersion_roots(ev, KHAT, q4)
    labels = [lab for _, lab in roots]
    assert "gauge" in labels and "physical" in labels
    n = next(n for n, lab in roots if lab == "physical")
    assert abs(n.imag) < 1e-8  # transparent below the resonance
    # scalar reduction: n^2 = 1 - 8 pi chi_transverse evaluated on shell
    q = FourVector(np.array([0.0, 0.0, n * q4, q4]))
    chi_perp = -ev.chi_momentum(q).m66[2, 2]
    assert abs(n * n - (1.0 - 8.0 * np.pi * chi_perp)) < 1e-9


def test_roots_respect_window():
    ev = SusceptibilityEvaluator(EM)
    roots = dispersion_roots(ev, KHAT, 0.3, window=(1.01, 1.2, -0.1, 0.1))
    assert len(roots) == 1
    assert roots[0][1] == "physical"


def test_empty_window_gives_no_roots():
    ev = SusceptibilityEvaluator(EM)
    assert dispersion_roots(ev, KHAT, 0.3, window=(1.5, 1.9, -0.1, 0.1)) == []


def test_khat_must_be_unit():
    ev = SusceptibilityEvaluator(EM)
    with pytest.raises(ValueError):
        dispersion_roots(ev, np.array([0.0, 0.0, 2.0]), 0.3)


def test_mode_function_Z_matches_brute_force():
    ev = SusceptibilityEvaluator(EM)
    kvec = np.array([0.1, -0.2, 0.4])
    omega = 0.8
    mf = mode_function_Z(ev, kvec, omega)
    q4 = np.sqrt(kvec @ kvec + omega**2)
    qc = np.append(kvec, q4)
    linv, _ = invert_L(assemble_L(ev, FourVector(qc)))
    f4 = ev.coupling_tensor(omega).as_rank4()
    gd = METRIC_DIAG
    z = np.zeros((4, 4, 4), dtype=complex)
    for nu in range(4):
        for a in range(4):
            for b in range(4):
                acc = 0.0
                for m in range(4):
                    for s in range(4):
                        for ap in range(4):
                            for bp in range(4):
                                acc += (
                                    gd[m] * qc[m] * f4[m, s, ap, bp]
                                    * gd[ap] * (ap == a) * gd[bp] * (bp == b)
                                    * linv[nu, s]
                                )
                z[nu, a, b] = 1j * acc
    assert np.allclose(mf.z, z, atol=1e-12)
    assert np.allclose(mf.z, -np.swapaxes(mf.z, 1, 2), atol=1e-12)


def test_mode_function_orthogonal_to_source_constraint():
    # q_nu Z^nu_ab: contracting the kernel inverse with q uses
    # L^-1 q = -q / (q.q), so the contraction stays finite off shell
    ev = SusceptibilityEvaluator(EM)
    kvec = np.array([0.0, 0.0, 0.4])
    omega = 0.8
    mf = mode_function_Z(ev, kvec, omega)
    q4 = np.sqrt(kvec @ kvec + omega**2)
    qc = np.append(kvec, q4)
    q_low = METRIC_DIAG * qc
    contracted = np.einsum("n,nab->ab", q_low, mf.z)
    # equals -i f_ab contracted with q over the first pair, divided by q.q
    f4 = ev.coupling_tensor(omega).as_rank4()
    f4l = f4 * METRIC_DIAG[None, None, :, None] * METRIC_DIAG[None, None, None, :]
    qq = minkowski_dot(qc, qc)
    expected = -1j * np.einsum("m,msab,s->ab", q_low, f4l, qc) / qq
    assert np.allclose(contracted, expected, atol=1e-10)


def test_fresnel_drag_exact_mapping():
    from covarmedium.cli import fresnel_drag_residual

    ev = SusceptibilityEvaluator(EM)
    assert fresnel_drag_residual(ev, v=0.2, q4=0.3) < 1e-8
