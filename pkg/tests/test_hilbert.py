import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from hypothesis.extra.numpy import arrays

from rabiduality.hilbert import (
    CutoffError,
    FockSpec,
    Operator,
    StateVector,
    check_cutoff,
    coherent_state,
    displacement,
    fock_ladder,
    fock_state,
    hermitian_exp,
    identity,
    product_state,
    required_cutoff,
    spin_ops,
    spin_state,
    tensor,
)

from oracles import kron_entry, ladder_matrix, poisson_coherent, taylor_expm


@pytest.fixture
def spec():
    return FockSpec(8)


def test_fock_spec_validation():
    assert FockSpec(1).composite_dim == 4
    assert FockSpec(8).dim == 9
    for bad in (0, -3, 2.5, True):
        with pytest.raises(ValueError):
            FockSpec(bad)


def test_ladder_matches_elementwise_oracle(spec):
    a, ad = fock_ladder(spec)
    np.testing.assert_array_equal(a.mat, ladder_matrix(spec.dim))
    np.testing.assert_array_equal(ad.mat, a.mat.conj().T)


def test_ladder_examples(spec):
    a, _ = fock_ladder(spec)
    np.testing.assert_array_equal((a @ fock_state(0, spec)).vec, np.zeros(spec.dim))
    np.testing.assert_array_equal((a @ fock_state(1, spec)).vec, fock_state(0, spec).vec)
    assert a.mat[2, 3] == pytest.approx(1.7320508075688772, abs=1e-15)


def test_truncated_commutator(spec):
    a, ad = fock_ladder(spec)
    comm = (a @ ad - ad @ a).mat
    expected = np.eye(spec.dim)
    expected[-1, -1] -= spec.dim
    np.testing.assert_allclose(comm, expected, atol=1e-13, rtol=0)


def test_spin_operator_examples():
    s = spin_ops()
    e, g = spin_state("e"), spin_state("g")
    np.testing.assert_array_equal((s["sz"] @ e).vec, 0.5 * e.vec)
    np.testing.assert_array_equal((s["s_plus"] @ e).vec, [0, 0])
    np.testing.assert_array_equal((s["s_plus"] @ g).vec, e.vec)
    np.testing.assert_array_equal((s["s_minus"] @ e).vec, g.vec)
    np.testing.assert_array_equal(s["sigma_x"].mat, (s["s_plus"] + s["s_minus"]).mat)
    np.testing.assert_array_equal(s["sz"].mat, 0.5 * s["sigma_z"].mat)
    xy = (s["sigma_x"] @ s["sigma_y"] - s["sigma_y"] @ s["sigma_x"]).mat
    np.testing.assert_array_equal(xy, 2j * s["sigma_z"].mat)
    np.testing.assert_array_equal(s["sigma_plus"].mat, (s["sigma_x"] + 1j * s["sigma_y"]).mat)
    np.testing.assert_array_equal(s["sigma_minus"].mat, (s["sigma_x"] - 1j * s["sigma_y"]).mat)


def test_pauli_products_exact():
    s = spin_ops()
    sig = {0: s["sigma_x"].mat, 1: s["sigma_y"].mat, 2: s["sigma_z"].mat}
    eps = np.zeros((3, 3, 3))
    eps[0, 1, 2] = eps[1, 2, 0] = eps[2, 0, 1] = 1
    eps[0, 2, 1] = eps[2, 1, 0] = eps[1, 0, 2] = -1
    for j in range(3):
        for k in range(3):
            rhs = (j == k) * np.eye(2) + 1j * sum(eps[j, k, l] * sig[l] for l in range(3))
            np.testing.assert_array_equal(sig[j] @ sig[k], rhs)


def test_spin_states():
    s = spin_ops()
    for label, ev in (("+", 1), ("-", -1)):
        v = spin_state(label)
        np.testing.assert_allclose((s["sigma_x"] @ v).vec, ev * v.vec, atol=1e-15)
    with pytest.raises(ValueError):
        spin_state("q")


def test_tensor_examples():
    spec = FockSpec(8)
    eye = tensor(identity("spin"), identity("field", spec))
    np.testing.assert_array_equal(eye.mat, np.eye(18))
    assert eye.dim == 18
    s = spin_ops()
    a, _ = fock_ladder(spec)
    op = tensor(s["sigma_z"], a)
    # |e,1> has index 0*9 + 1, |e,2> has index 2
    assert op.mat[1, 2] == pytest.approx(math.sqrt(2), abs=1e-15)
    assert kron_entry(s["sigma_z"].mat, a.mat, 1, 2) == pytest.approx(op.mat[1, 2])
    for i, j in [(1, 2), (10, 11), (3, 12), (17, 17)]:
        assert op.mat[i, j] == kron_entry(s["sigma_z"].mat, a.mat, i, j)


def test_tensor_rejects_wrong_spaces(spec):
    a, _ = fock_ladder(spec)
    with pytest.raises(ValueError):
        tensor(a, spin_ops()["sigma_x"])


def test_product_state_index_convention(spec):
    psi = product_state("g", 3, spec)
    assert np.flatnonzero(psi.vec).tolist() == [1 * spec.dim + 3]


def _complex_matrix(n):
    elems = st.complex_numbers(max_magnitude=3, allow_nan=False, allow_infinity=False)
    return arrays(complex, (n, n), elements=elems)


@settings(max_examples=30, deadline=None)
@given(_complex_matrix(2), _complex_matrix(3), _complex_matrix(2), _complex_matrix(3))
def test_tensor_mixed_product(A, B, C, D):
    lhs = tensor(Operator(A, "spin"), Operator(B, "field")) @ tensor(Operator(C, "spin"), Operator(D, "field"))
    rhs = tensor(Operator(A @ C, "spin"), Operator(B @ D, "field"))
    scale = max(1.0, np.max(np.abs(rhs.mat)))
    assert (lhs - rhs).max_abs() <= 1e-13 * scale


@settings(max_examples=30, deadline=None)
@given(_complex_matrix(2), _complex_matrix(2), _complex_matrix(3), st.complex_numbers(max_magnitude=2))
def test_tensor_bilinear(A, A2, B, c):
    sA, sA2, fB = Operator(A, "spin"), Operator(A2, "spin"), Operator(B, "field")
    lhs = tensor(c * sA + sA2, fB)
    rhs = c * tensor(sA, fB) + tensor(sA2, fB)
    assert (lhs - rhs).max_abs() <= 1e-12 * max(1.0, np.max(np.abs(rhs.mat)))


def test_coherent_state_examples():
    spec = FockSpec(40)
    vac = coherent_state(0, spec)
    np.testing.assert_array_equal(vac.vec, fock_state(0, spec).vec)
    a, ad = fock_ladder(spec)
    psi = coherent_state(0.5, spec)
    assert abs(np.vdot(psi.vec, (a @ psi).vec) - 0.5) <= 1e-10
    psi = coherent_state(1.2, spec)
    assert abs(np.vdot(psi.vec, (ad @ a @ psi).vec) - 1.44) <= 1e-9
    assert abs(psi.norm() - 1) <= 1e-12


@pytest.mark.parametrize("beta", [0.3, 1.1 - 0.4j, -2.0j, 3.0])
def test_coherent_state_matches_lgamma_series(beta):
    spec = FockSpec(required_cutoff(abs(beta)))
    ref = poisson_coherent(beta, spec.dim)
    ref = ref / np.linalg.norm(ref)
    np.testing.assert_allclose(coherent_state(beta, spec).vec, ref, atol=1e-14)


def test_cutoff_guard():
    assert required_cutoff(0) == 20
    assert required_cutoff(1.0) == 29
    assert required_cutoff(0.6) == 26
    check_cutoff(1.0, FockSpec(29))
    with pytest.raises(CutoffError) as info:
        coherent_state(1.0, FockSpec(28))
    assert info.value.required == 29
    with pytest.raises(CutoffError):
        displacement(1.0, FockSpec(28))


def test_displacement_examples():
    spec = FockSpec(40)
    np.testing.assert_allclose(displacement(0, spec).mat, np.eye(spec.dim), atol=1e-15)
    D = displacement(0.9 - 0.3j, spec)
    Dm = displacement(-(0.9 - 0.3j), spec)
    assert D.is_unitary(1e-10)
    np.testing.assert_allclose((D @ Dm).mat, np.eye(spec.dim), atol=1e-10)
    psi = displacement(0.7, spec) @ fock_state(0, spec)
    ref = coherent_state(0.7, spec)
    assert abs(np.vdot(psi.vec, ref.vec)) ** 2 >= 1 - 1e-8


def test_hermitian_exp_examples():
    H = Operator(np.diag([0.0, 1.7]), "spin")
    np.testing.assert_allclose(hermitian_exp(H, 0.0).mat, np.eye(2), atol=1e-15)
    np.testing.assert_allclose(hermitian_exp(H, math.pi / 1.7).mat, np.diag([1, -1]), atol=1e-15)


def test_hermitian_exp_vs_taylor_oracle():
    rng = np.random.default_rng(7)
    X = rng.normal(size=(6, 6)) + 1j * rng.normal(size=(6, 6))
    H = Operator(X + X.conj().T, "composite")
    for tau in (0.1, 1.0, 2.5):
        U = hermitian_exp(H, tau)
        ref = taylor_expm(-1j * tau * H.mat)
        assert np.max(np.abs(U.mat - ref)) <= 1e-10
        assert U.is_unitary(1e-10)


def test_hermitian_exp_rejects_non_hermitian():
    with pytest.raises(ValueError, match="Hermitian"):
        hermitian_exp(Operator(np.array([[0, 1], [0, 0]]), "spin"), 1.0)


@settings(max_examples=25, deadline=None)
@given(st.floats(-3, 3), st.floats(-3, 3), st.integers(0, 2**31 - 1))
def test_hermitian_exp_group_property(t1, t2, seed):
    rng = np.random.default_rng(seed)
    X = rng.normal(size=(6, 6)) + 1j * rng.normal(size=(6, 6))
    H = Operator(0.5 * (X + X.conj().T), "composite")
    lhs = hermitian_exp(H, t1) @ hermitian_exp(H, t2)
    assert (lhs - hermitian_exp(H, t1 + t2)).max_abs() <= 1e-10


def test_state_vector_norm_check():
    with pytest.raises(ValueError):
        StateVector(np.array([1.0, 1.0]), "spin")
    psi = StateVector.normalized([3, 4j], "spin")
    assert abs(psi.norm() - 1) <= 1e-15
    with pytest.raises(ValueError):
        StateVector.normalized([0, 0], "spin")


def test_operator_is_immutable(spec):
    a, _ = fock_ladder(spec)
    with pytest.raises(ValueError):
        a.mat[0, 1] = 5.0


def test_operator_dimension_mismatch(spec):
    a, _ = fock_ladder(spec)
    with pytest.raises(ValueError):
        a @ fock_ladder(FockSpec(3))[0]
    with pytest.raises(ValueError):
        Operator(np.zeros((2, 3)), "field")
    with pytest.raises(ValueError):
        Operator(np.zeros((3, 3)), "spin")
