import numpy as np
import pytest
from hypothesis import given, settings, strategies as st
from hypothesis.extra.numpy import arrays
from scipy.stats import ortho_group

from weakslice.algebra import left_mul_matrix
from weakslice.linalg import (
    ComplexStructure,
    conjugated_structure,
    i_basis,
    is_complex_structure,
    kernel_intersection,
    null_space_basis,
    pinv,
    standard_complex_structure,
    verify_mp_conditions,
)
from weakslice.repform import one_i

from conftest import random_slice_unit


def _random_matrices(seed=0, count=100):
    rng = np.random.default_rng(seed)
    shapes = [(4, 4), (16, 8), (32, 64), (16, 32)]
    out = []
    for k in range(count):
        r, c = shapes[k % 4]
        if k % 5 == 4:
            rank = max(1, min(r, c) // 2)
            M = rng.standard_normal((r, rank)) @ rng.standard_normal((rank, c))
        else:
            M = rng.standard_normal((r, c))
        out.append(M)
    return out


def test_pinv_identity():
    np.testing.assert_allclose(pinv(np.eye(5)), np.eye(5), atol=1e-15)


def test_pinv_invertible_is_inverse():
    rng = np.random.default_rng(0)
    M = rng.standard_normal((6, 6)) + 6 * np.eye(6)
    np.testing.assert_allclose(pinv(M), np.linalg.inv(M), atol=1e-12)


def test_pinv_diag_rank_deficient():
    M = np.diag([2.0, 0.0])
    P = pinv(M)
    np.testing.assert_allclose(P, np.diag([0.5, 0.0]), atol=1e-15)
    # the four conditions by hand
    np.testing.assert_allclose(M @ P @ M, M)
    np.testing.assert_allclose(P @ M @ P, P)
    np.testing.assert_allclose((M @ P).T, M @ P)
    np.testing.assert_allclose((P @ M).T, P @ M)


def test_pinv_rejects_nonfinite():
    with pytest.raises(ValueError):
        pinv([[np.nan, 1.0]])


def test_mp_residuals_identity():
    r = verify_mp_conditions(np.eye(3), np.eye(3))
    assert r.max() == 0.0


def test_mp_residuals_shape_mismatch():
    with pytest.raises(ValueError):
        verify_mp_conditions(np.ones((2, 3)), np.ones((2, 3)))


def test_mp_negative_control():
    M = np.array([[1.0, 2.0], [0.0, 1.0]])
    assert verify_mp_conditions(M, M.T).max() > 0.1


def test_mp_random_suite():
    for M in _random_matrices():
        assert verify_mp_conditions(M, pinv(M)).max() <= 1e-9


def test_unitary_sandwich():
    for k, M in enumerate(_random_matrices(seed=1, count=20)):
        U = ortho_group.rvs(M.shape[0], random_state=k)
        V = ortho_group.rvs(M.shape[1], random_state=100 + k)
        lhs = pinv(U @ M @ V)
        rhs = V.T @ pinv(M) @ U.T
        assert np.linalg.norm(lhs - rhs) <= 1e-9 * max(1.0, np.linalg.norm(rhs))


@settings(max_examples=50, deadline=None)
@given(arrays(np.float64, st.tuples(st.integers(1, 6), st.integers(1, 6)),
              elements=st.floats(-10, 10, allow_nan=False, allow_subnormal=False)))
def test_pinv_mp_property(M):
    if np.linalg.norm(M) == 0:
        return
    assert verify_mp_conditions(M, pinv(M)).max() <= 1e-9


def test_null_space_examples():
    assert null_space_basis(np.eye(4)).shape == (4, 0)
    N = null_space_basis(np.array([[1.0, 1.0]]))
    assert N.shape == (2, 1)
    np.testing.assert_allclose(np.abs(N[:, 0]), [2 ** -0.5] * 2, atol=1e-15)
    assert N[0, 0] == pytest.approx(-N[1, 0])


def test_null_space_orthonormal():
    rng = np.random.default_rng(5)
    for _ in range(20):
        M = rng.standard_normal((5, 3)) @ rng.standard_normal((3, 9))
        N = null_space_basis(M)
        assert N.shape[1] == 6
        assert np.max(np.abs(N.T @ N - np.eye(6))) <= 1e-12
        assert np.linalg.norm(M @ N) <= 1e-12 * np.linalg.norm(M) * 10


def test_kernel_of_slice_unit_block(H, O, S):
    rng = np.random.default_rng(6)
    for A in (H, O, S):
        u = random_slice_unit(A, rng)
        L = left_mul_matrix(u)
        N = null_space_basis(one_i(L))
        assert N.shape[1] == A.dim
        # every kernel vector has the form (-L b, b)
        b = N[A.dim:]
        np.testing.assert_allclose(N[:A.dim], -L @ b, atol=1e-12)


def test_kernel_intersection(H):
    Li = left_mul_matrix(H.basis(1))
    assert kernel_intersection([one_i(Li)]).shape[1] == 4
    assert kernel_intersection([one_i(Li), one_i(-Li)]).shape[1] == 0
    assert kernel_intersection([one_i(Li), one_i(Li)]).shape[1] == 4
    with pytest.raises(ValueError):
        kernel_intersection([])
    with pytest.raises(ValueError):
        kernel_intersection([np.ones((2, 3)), np.ones((2, 4))])


def test_kernel_of_duplicated_rows_stays_full(H):
    # ker(1, i) has dimension 2n = 4, so the pair (i, i) keeps 4 of the 8 coordinates free
    Li = left_mul_matrix(H.basis(1))
    Z = np.vstack([one_i(Li), one_i(Li)])
    assert Z.shape[1] - np.linalg.matrix_rank(Z) == 4


def test_is_complex_structure():
    assert is_complex_structure(standard_complex_structure(3))
    assert not is_complex_structure(np.eye(4))
    assert not is_complex_structure(np.ones((3, 3)))
    # I(theta1) = (1,1), I((1,1)) = -theta1
    D = np.array([[1.0, 1.0], [0.0, 1.0]])
    skew = D @ standard_complex_structure(1) @ np.linalg.inv(D)
    np.testing.assert_allclose(skew @ np.array([1.0, 0.0]), [1.0, 1.0])
    assert is_complex_structure(skew)
    with pytest.raises(ValueError):
        ComplexStructure(np.eye(2))


def test_i_basis_standard():
    for n in (1, 2, 4):
        J = standard_complex_structure(n)
        B = i_basis(J)
        np.testing.assert_array_equal(B.theta, np.eye(2 * n)[:, :n])
        np.testing.assert_array_equal(B.d_matrix, np.eye(2 * n))
        np.testing.assert_array_equal(conjugated_structure(J, B), J)


def test_i_basis_quaternion(H):
    L = left_mul_matrix(H.basis(1))
    B = i_basis(ComplexStructure(L))
    assert B.theta.shape == (4, 2)
    assert abs(np.linalg.det(B.d_matrix)) > 0


@pytest.mark.parametrize("order", [None, "reversed"])
def test_i_basis_conjugates_to_standard(H, O, S, R3, order):
    rng = np.random.default_rng(8)
    for A in (H, O, S, R3):
        for _ in range(5):
            L = left_mul_matrix(random_slice_unit(A, rng))
            scan = None if order is None else list(range(A.dim))[::-1]
            B = i_basis(L, scan)
            C = conjugated_structure(L, B)
            assert np.max(np.abs(C - standard_complex_structure(A.n))) <= 1e-10


def test_conjugated_orthogonal_octonion(O):
    rng = np.random.default_rng(9)
    L = left_mul_matrix(random_slice_unit(O, rng))
    C = conjugated_structure(L, i_basis(L))
    assert np.max(np.abs(C.T @ C - np.eye(8))) <= 1e-10


def test_conjugated_sedenion_e8(S):
    L = left_mul_matrix(S.basis(8))
    C = conjugated_structure(L, i_basis(L))
    assert np.max(np.abs(C - standard_complex_structure(8))) <= 1e-12


def test_i_basis_rejects_non_structure():
    with pytest.raises(np.linalg.LinAlgError):
        i_basis(np.eye(4))
