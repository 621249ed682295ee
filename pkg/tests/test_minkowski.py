import numpy as np
import pytest

from covarmedium.minkowski import (
    METRIC,
    METRIC_DIAG,
    PAIRS,
    SIGNATURE,
    Bivector,
    Boost,
    DegeneratePairError,
    FourVector,
    PairTensor,
    bivector_rep,
    boost_apply,
    build_tetrad,
    eta_basis,
    identity_pair,
    minkowski_dot,
    pair_apply,
    pair_contract,
    pair_index,
)

RNG = np.random.default_rng(1234)


def random_unit_dirs(n):
    v = RNG.normal(size=(n, 3))
    return v / np.linalg.norm(v, axis=1, keepdims=True)


def test_pair_index_roundtrip():
    for i, (m, n) in enumerate(PAIRS):
        assert pair_index(m, n) == (i, 1)
        assert pair_index(n, m) == (i, -1)
    with pytest.raises(DegeneratePairError):
        pair_index(2, 2)


def test_signature_values():
    assert np.array_equal(SIGNATURE, [1.0, 1.0, -1.0, 1.0, -1.0, -1.0])


def test_minkowski_dot_signs():
    t = np.array([0.0, 0.0, 0.0, 1.0])
    x = np.array([1.0, 0.0, 0.0, 0.0])
    assert minkowski_dot(t, t) == 1.0
    assert minkowski_dot(x, x) == -1.0
    assert minkowski_dot(t, x) == 0.0


def test_bivector_matrix_roundtrip():
    six = RNG.normal(size=6)
    b = Bivector(six)
    m = b.as_matrix()
    assert np.allclose(m, -m.T)
    assert np.allclose(Bivector.from_matrix(m).six, six)


def test_full_contract_vs_explicit_sum():
    a = Bivector(RNG.normal(size=6))
    b = Bivector(RNG.normal(size=6))
    am, bm = a.as_matrix(), b.as_matrix()
    bm_low = METRIC_DIAG[:, None] * METRIC_DIAG[None, :] * bm
    expected = np.sum(am * bm_low)
    assert np.isclose(a.full_contract(b), expected, atol=1e-14)


def test_pairtensor_rank4_roundtrip_and_antisymmetry():
    m66 = RNG.normal(size=(6, 6))
    t = PairTensor(m66)
    t4 = t.as_rank4()
    assert np.allclose(t4, -np.swapaxes(t4, 0, 1))
    assert np.allclose(t4, -np.swapaxes(t4, 2, 3))
    assert np.allclose(PairTensor.from_rank4(t4).m66, m66)


def test_identity_pair_action():
    b = Bivector(RNG.normal(size=6))
    doubled = pair_apply(identity_pair(), b)
    assert np.allclose(doubled.six, 2.0 * b.six)


def test_identity_contract_identity():
    ident = identity_pair()
    c = pair_contract(ident, ident)
    assert np.allclose(c.m66, 2.0 * ident.m66)


def test_pair_contract_matches_rank4_einsum():
    ta = PairTensor(RNG.normal(size=(6, 6)))
    tb = PairTensor(RNG.normal(size=(6, 6)))
    a4, b4 = ta.as_rank4(), tb.as_rank4()
    gd = METRIC_DIAG
    expected = np.einsum("mnds,d,s,abds->mnab", a4, gd, gd, b4)
    got = pair_contract(ta, tb).as_rank4()
    assert np.allclose(got, expected, atol=1e-12)


def test_boost_example_timelike_vector():
    b = Boost(np.array([0.6, 0.0, 0.0]))
    out = boost_apply(b, FourVector(np.array([0.0, 0.0, 0.0, 1.0])))
    assert np.allclose(out.c, [-0.75, 0.0, 0.0, 1.25])


def test_boost_preserves_dot():
    for _ in range(20):
        v = 0.9 * RNG.uniform(-1, 1, size=3) / np.sqrt(3)
        b = Boost(v)
        x = FourVector(RNG.normal(size=4))
        y = FourVector(RNG.normal(size=4))
        assert np.isclose(boost_apply(b, x).dot(boost_apply(b, y)), x.dot(y), atol=1e-12)


def test_boost_validates_speed():
    with pytest.raises(ValueError):
        Boost(np.array([1.0, 0.0, 0.0]))


def test_bivector_rep_is_representation():
    v1 = np.array([0.3, 0.0, 0.0])
    v2 = np.array([0.0, -0.4, 0.2])
    l1, l2 = Boost(v1).lam, Boost(v2).lam
    assert np.allclose(
        bivector_rep(l1 @ l2), bivector_rep(l1) @ bivector_rep(l2), atol=1e-12
    )


def test_boost_pair_tensor_consistent_with_rank4():
    b = Boost(np.array([0.2, 0.3, -0.1]))
    t = PairTensor(RNG.normal(size=(6, 6)))
    got = boost_apply(b, t).as_rank4()
    expected = np.einsum(
        "ma,nb,cd,se,abde->mncs", b.lam, b.lam, b.lam, b.lam, t.as_rank4()
    )
    assert np.allclose(got, expected, atol=1e-12)


def test_tetrad_orthonormality_and_completeness():
    for khat in random_unit_dirs(50):
        tet = build_tetrad(khat)
        gram = tet.eps @ METRIC @ tet.eps.T
        assert np.allclose(gram, METRIC, atol=1e-14)
        comp = np.einsum("l,lm,ln->mn", METRIC_DIAG, tet.eps, tet.eps)
        assert np.allclose(comp, METRIC, atol=1e-14)


def test_eta_basis_orthonormality_and_completeness():
    for khat in random_unit_dirs(50):
        etas = eta_basis(build_tetrad(khat))
        ortho = np.array([[a.full_contract(b) for b in etas] for a in etas])
        assert np.allclose(ortho, np.diag(SIGNATURE), atol=1e-14)
        complete = sum(
            2.0 * SIGNATURE[i] * np.outer(etas[i].six, etas[i].six) for i in range(6)
        )
        assert np.allclose(complete, np.diag(SIGNATURE), atol=1e-14)


def test_build_tetrad_rejects_bad_input():
    with pytest.raises(ValueError):
        build_tetrad(np.zeros(3))
    with pytest.raises(ValueError):
        build_tetrad(np.array([1.0, 1.0, 0.0]))
