import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from hypothesis.extra.numpy import arrays

from teleport4 import qmath
from teleport4.errors import ConvergenceError, LabelMismatch, NormExceeded, SingularMatrix
from teleport4.qmath import StateVector

from oracles import det_cofactor, kron_loops, partial_inner_loops

S2 = math.sqrt(2)
YC_PRINTED = np.array([[1, 0, 0, 1], [0, 1, -1, 0], [0, 1, 1, 0], [-1, 0, 0, 1]]) / S2
GHZ_OP = np.diag([S2, 0, 0, S2])
W_OP = np.array([[0, 1, 1, 0], [1, 0, 0, 0], [1, 0, 0, 0], [0, 0, 0, 0]])
CNOT_OP = np.array([[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 0, 1], [0, 0, 1, 0]])

finite = st.floats(-2, 2, allow_nan=False, allow_infinity=False)


def complex_matrices(n, m=None):
    m = n if m is None else m
    return st.tuples(arrays(float, (n, m), elements=finite), arrays(float, (n, m), elements=finite)).map(
        lambda p: p[0] + 1j * p[1]
    )


@pytest.fixture(params=range(5))
def rng(request):
    return np.random.default_rng(request.param)


def rand_c(rng, *shape):
    return rng.standard_normal(shape) + 1j * rng.standard_normal(shape)


# -- constructors -------------------------------------------------------------


def test_as_matrix_rejects_nan():
    with pytest.raises(ValueError):
        qmath.as_matrix([[1.0, np.nan]])


def test_statevector_rejects_bad_length_and_duplicates():
    with pytest.raises(ValueError):
        StateVector((1, 2), [1, 0, 0])
    with pytest.raises(LabelMismatch):
        StateVector((1, 1), [1, 0, 0, 0])
    with pytest.raises(ValueError):
        StateVector((1,), [np.inf, 0])


def test_statevector_is_read_only():
    v = StateVector((1,), [1, 0])
    with pytest.raises(ValueError):
        v.amps[0] = 2


def test_reorder_swaps_significance():
    v = StateVector(("a", "b"), [0, 1, 0, 0])  # |01>: b set
    w = v.reorder(("b", "a"))
    np.testing.assert_array_equal(w.amps, [0, 0, 1, 0])  # |10> in (b, a)


# -- kron -----------------------------------------------------------------------


def test_kron_identity():
    np.testing.assert_array_equal(qmath.kron(np.eye(2), np.eye(2)), np.eye(4))


def test_kron_z_x():
    z = np.diag([1, -1])
    x = np.array([[0, 1], [1, 0]])
    expected = [[0, 1, 0, 0], [1, 0, 0, 0], [0, 0, 0, -1], [0, 0, -1, 0]]
    np.testing.assert_array_equal(qmath.kron(z, x), expected)


@settings(max_examples=50, deadline=None)
@given(complex_matrices(2), complex_matrices(3, 2))
def test_kron_matches_index_formula(a, b):
    np.testing.assert_allclose(qmath.kron(a, b), kron_loops(a, b), atol=1e-12)


def test_kron_mixed_product(rng):
    a, b, c, d = (rand_c(rng, 2, 2) for _ in range(4))
    lhs = qmath.kron(a, b) @ qmath.kron(c, d)
    np.testing.assert_allclose(lhs, qmath.kron(a @ c, b @ d), atol=1e-12)


def test_kron_bilinear(rng):
    a1, a2, b = rand_c(rng, 2, 2), rand_c(rng, 2, 2), rand_c(rng, 2, 2)
    alpha = 0.3 - 1.7j
    np.testing.assert_allclose(
        qmath.kron(alpha * a1 + a2, b), alpha * qmath.kron(a1, b) + qmath.kron(a2, b), atol=1e-12
    )


# -- partial_inner ----------------------------------------------------------------


def test_partial_inner_basis_projection():
    bra = StateVector((1,), [1, 0])
    psi = StateVector((1, 2), [0, 1, 0, 0])
    out = qmath.partial_inner(bra, psi)
    assert out.labels == (2,)
    np.testing.assert_array_equal(out.amps, [0, 1])


def test_partial_inner_single_bell_component(rng):
    phi1 = StateVector((1, 3), [1 / S2, 0, 0, 1 / S2])
    v = rand_c(rng, 4)
    psi = StateVector((1, 3), [1, 0, 0, 0]).tensor(StateVector((5, 6), v))
    out = qmath.partial_inner(phi1, psi)
    assert out.labels == (5, 6)
    np.testing.assert_allclose(out.amps, v / S2, atol=1e-15)


def test_partial_inner_cnot_channel_column_zero():
    # |00>_12 ⊗ ½(|0000>+|0101>+|1011>+|1110>)_3456; only |0000> survives q3=q1, q4=q2
    chan = np.zeros(16)
    chan[[0b0000, 0b0101, 0b1011, 0b1110]] = 0.5
    psi = StateVector((1, 2), [1, 0, 0, 0]).tensor(StateVector((3, 4, 5, 6), chan))
    g11 = StateVector((1, 3), [1 / S2, 0, 0, 1 / S2]).tensor(StateVector((2, 4), [1 / S2, 0, 0, 1 / S2]))
    out = qmath.partial_inner(g11, psi)
    np.testing.assert_allclose(out.amps, [0.25, 0, 0, 0], atol=1e-15)


def test_partial_inner_label_mismatch():
    with pytest.raises(LabelMismatch):
        qmath.partial_inner(StateVector((9,), [1, 0]), StateVector((1,), [1, 0]))


def test_partial_inner_full_overlap_is_inner_product():
    rng = np.random.default_rng(2024)
    for _ in range(200):
        labels = tuple(rng.permutation([1, 2, 3]))
        bra = StateVector(labels, rand_c(rng, 8))
        psi = StateVector((1, 2, 3), rand_c(rng, 8))
        out = qmath.partial_inner(bra, psi)
        assert out.labels == () and out.amps.shape == (1,)
        expected = np.vdot(bra.reorder((1, 2, 3)).amps, psi.amps)
        assert abs(out.amps[0] - expected) < 1e-12


@settings(max_examples=60, deadline=None)
@given(st.permutations([1, 2, 3, 4, 5]), st.integers(1, 4), st.integers(0, 2**32 - 1))
def test_partial_inner_matches_bit_loops(order, k, seed):
    rng = np.random.default_rng(seed)
    psi_labels = tuple(order)
    bra_labels = tuple(rng.permutation(psi_labels)[:k].tolist())
    bra_amps, psi_amps = rand_c(rng, 2**k), rand_c(rng, 32)
    out = qmath.partial_inner(StateVector(bra_labels, bra_amps), StateVector(psi_labels, psi_amps))
    rest, expected = partial_inner_loops(bra_labels, bra_amps, psi_labels, psi_amps)
    assert list(out.labels) == rest
    np.testing.assert_allclose(out.amps, expected, atol=1e-12)


# -- determinant --------------------------------------------------------------------


def test_determinant_identity_and_ghz():
    assert qmath.determinant(np.eye(4)) == 1
    assert qmath.determinant(GHZ_OP) == 0


def test_determinant_yeo_chua_unit_modulus():
    d = qmath.determinant(YC_PRINTED)
    assert abs(d - det_cofactor(YC_PRINTED)) < 1e-12
    assert abs(abs(d) - 1.0) < 1e-12


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_determinant_matches_cofactor(n):
    rng = np.random.default_rng(n)
    for _ in range(100):
        m = rng.uniform(-2, 2, (n, n)) + 1j * rng.uniform(-2, 2, (n, n))
        assert abs(qmath.determinant(m) - det_cofactor(m)) < 1e-12 * max(1.0, abs(det_cofactor(m)))


# -- singular values ------------------------------------------------------------------


def test_singular_values_unitary():
    np.testing.assert_allclose(qmath.singular_values(CNOT_OP), [1, 1, 1, 1], atol=1e-15)


def test_singular_values_ghz_and_w():
    np.testing.assert_allclose(qmath.singular_values(GHZ_OP), [S2, S2, 0, 0], atol=1e-15)
    mm = W_OP.T @ W_OP
    np.testing.assert_array_equal(mm, [[2, 0, 0, 0], [0, 1, 1, 0], [0, 1, 1, 0], [0, 0, 0, 0]])
    np.testing.assert_allclose(qmath.singular_values(W_OP), [S2, S2, 0, 0], atol=1e-15)


def test_singular_values_zero_matrix():
    np.testing.assert_array_equal(qmath.singular_values(np.zeros((4, 4))), [0, 0, 0, 0])


def test_singular_values_descending_and_match_eigvalsh(rng):
    for _ in range(50):
        m = rand_c(rng, 4, 4)
        s = qmath.singular_values(m)
        assert np.all(np.diff(s) <= 0)
        ev = np.sort(np.linalg.eigvalsh(m.conj().T @ m))[::-1]
        np.testing.assert_allclose(s**2, ev, atol=1e-10)


def test_singular_values_sweep_cap():
    with pytest.raises(ConvergenceError):
        qmath.singular_values(np.arange(16).reshape(4, 4) + 1j, max_sweeps=0)


def test_product_of_singular_values_is_abs_det():
    rng = np.random.default_rng(11)
    for _ in range(500):
        m = rand_c(rng, 4, 4)
        assert abs(np.prod(qmath.singular_values(m)) - abs(qmath.determinant(m))) < 1e-8


@settings(max_examples=100, deadline=None)
@given(complex_matrices(4))
def test_singular_values_hypothesis(m):
    np.testing.assert_allclose(qmath.singular_values(m), np.linalg.svd(m, compute_uv=False), atol=1e-12)



@pytest.mark.parametrize(
    "m",
    [
        np.full((4, 4), 1 + 5.76144865e-304j),
        np.vstack([[5.76144865e-304 + 1j, 5.76144865e-304 + 1.625j, 5.76144865e-304, 5.76144865e-304],
                   np.full((3, 4), 5.76144865e-304)]),
    ],
)
def test_singular_values_subnormal_gram_entries(m):
    # Gram entries in the subnormal range used to overflow the rotation angle
    np.testing.assert_allclose(qmath.singular_values(m), np.linalg.svd(m, compute_uv=False), atol=1e-12)

# -- inverse / unitarity ---------------------------------------------------------------


def test_inverse_identity_and_cnot():
    np.testing.assert_array_equal(qmath.inverse(np.eye(4)), np.eye(4))
    np.testing.assert_allclose(qmath.inverse(CNOT_OP), CNOT_OP, atol=1e-15)


def test_inverse_yeo_chua_is_adjoint():
    inv = qmath.inverse(YC_PRINTED)
    np.testing.assert_allclose(inv, YC_PRINTED.conj().T, atol=1e-12)
    np.testing.assert_allclose(YC_PRINTED @ inv, np.eye(4), atol=1e-9)


def test_inverse_singular():
    with pytest.raises(SingularMatrix):
        qmath.inverse(GHZ_OP)
    with pytest.raises(SingularMatrix):
        qmath.inverse(np.zeros((4, 4)))


def test_inverse_random(rng):
    for _ in range(100):
        m = rand_c(rng, 4, 4)
        if qmath.singular_values(m)[-1] > 1e-6:
            np.testing.assert_allclose(qmath.inverse(m) @ m, np.eye(4), atol=1e-9)


def test_is_unitary():
    assert qmath.is_unitary(YC_PRINTED, 1e-10)
    assert not qmath.is_unitary(GHZ_OP, 1e-10)
    assert not qmath.is_unitary(0.999 * np.eye(4), 1e-10)


# -- dilation -------------------------------------------------------------------------------


def test_dilation_identity():
    u = qmath.dilation_unitary(np.eye(4))
    np.testing.assert_allclose(u, np.block([[np.eye(4), np.zeros((4, 4))], [np.zeros((4, 4)), -np.eye(4)]]))


def test_dilation_zero_never_succeeds(rng):
    u = qmath.dilation_unitary(np.zeros((4, 4)))
    assert qmath.is_unitary(u, 1e-12)
    v = rand_c(rng, 4)
    v /= np.linalg.norm(v)
    out = u @ np.concatenate([v, np.zeros(4)])
    assert np.linalg.norm(out[:4]) == 0


def test_dilation_norm_exceeded():
    with pytest.raises(NormExceeded):
        qmath.dilation_unitary(1.01 * np.eye(4))


def test_dilation_partial_pair_filter():
    # s_min-scaled inverse of √2·diag(cos, cos, sin, sin) at θ = π/6, on the uniform input
    th = math.pi / 6
    sigma = S2 * np.diag([math.cos(th)] * 2 + [math.sin(th)] * 2)
    s_min = S2 * math.sin(th)
    u = qmath.dilation_unitary(s_min * np.linalg.inv(sigma))
    chi = np.full(4, 0.5)
    raw = sigma @ chi
    raw /= np.linalg.norm(raw)
    out = u @ np.concatenate([raw, np.zeros(4)])  # 8-dimensional simulation
    assert abs(np.vdot(out[:4], out[:4]).real - 0.5) < 1e-12
    assert abs(np.linalg.norm(out) - 1.0) < 1e-12


def test_dilation_random_contractions():
    rng = np.random.default_rng(77)
    for _ in range(200):
        m = rand_c(rng, 4, 4)
        m /= np.linalg.svd(m, compute_uv=False)[0] * rng.uniform(1.0, 3.0)
        u = qmath.dilation_unitary(m)
        assert qmath.is_unitary(u, 1e-9)
        np.testing.assert_allclose(u[:4, :4], m, atol=1e-12)


# -- apply ------------------------------------------------------------------------------------


def test_apply_on_subset_matches_kron(rng):
    v = StateVector((1, 2, 3), rand_c(rng, 8))
    x = np.array([[0, 1], [1, 0]])
    out = qmath.apply(x, v, targets=(2,))
    np.testing.assert_allclose(out.amps, np.kron(np.kron(np.eye(2), x), np.eye(2)) @ v.amps)
