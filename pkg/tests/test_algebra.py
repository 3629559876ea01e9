import itertools

import numpy as np
import pytest

from weakslice.algebra import (
    AlgebraSpec,
    Element,
    builtin_algebra,
    cayley_dickson,
    clifford_algebra,
    is_imaginary_unit,
    is_left_alternative,
    is_lscs,
    is_slice_unit,
    left_alternative_report,
    left_mul_matrix,
    multiply,
    real_numbers,
    sample_imaginary_unit,
)

from conftest import random_unit_imaginary


def blade_sign_oracle(a, b):
    """Product of blades given as sorted index tuples, by explicit bubble sort."""
    seq = list(a) + list(b)
    sign = 1
    for i in range(len(seq)):
        for j in range(len(seq) - 1 - i):
            if seq[j] > seq[j + 1]:
                seq[j], seq[j + 1] = seq[j + 1], seq[j]
                sign = -sign
    out = []
    for s in seq:
        if out and out[-1] == s:
            out.pop()
            sign = -sign  # e_i e_i = -1
        else:
            out.append(s)
    return sign, tuple(out)


def test_cd_of_reals_is_complex():
    C = cayley_dickson(real_numbers())
    assert C.dim == 2
    i = C.basis(1)
    assert (i * i).allclose(-C.one(), 0)


def test_sedenion_table_spot_entries(S):
    e = S.basis
    assert np.array_equal((e(1) * e(2)).coeffs, e(3).coeffs)
    assert np.array_equal((e(1) * e(10)).coeffs, -e(11).coeffs)
    assert np.array_equal((e(1) * e(8)).coeffs, e(9).coeffs)
    assert np.array_equal((e(4) * e(12)).coeffs, -e(8).coeffs)


def test_sedenion_table_matches_reference(S, reference_table):
    assert np.array_equal(S.table, reference_table)


def test_zero_divisor(S):
    e = S.basis
    prod = (e(1) + e(10)) * (e(5) + e(14))
    assert np.all(prod.coeffs == 0.0)


@pytest.mark.parametrize("m", [1, 2, 3, 4])
def test_clifford_against_blade_oracle(m):
    A = clifford_algebra(m)
    blades = [c for g in range(m + 1) for c in itertools.combinations(range(1, m + 1), g)]
    assert A.dim == len(blades) == 2 ** m
    for i, a in enumerate(blades):
        for j, b in enumerate(blades):
            sign, c = blade_sign_oracle(a, b)
            expected = np.zeros(A.dim)
            expected[blades.index(c)] = sign
            np.testing.assert_array_equal(A.table[i, j], expected)


def test_clifford_small_cases():
    C1 = clifford_algebra(1)
    assert (C1.basis(1) * C1.basis(1)).allclose(-C1.one(), 0)
    C2 = clifford_algebra(2)
    e1, e2, e12 = C2.basis(1), C2.basis(2), C2.basis(3)
    assert (e1 * e2).allclose(e12, 0)
    assert (e12 * e12).allclose(-C2.one(), 0)
    C3 = clifford_algebra(3)
    e123 = C3.basis(7)
    assert ((C3.basis(1) * C3.basis(2)) * C3.basis(3)).allclose(e123, 0)
    assert (e123 * e123).allclose(C3.one(), 0)


def test_clifford_rejects_zero():
    with pytest.raises(ValueError):
        clifford_algebra(0)


def test_algebra_validation():
    with pytest.raises(ValueError):
        AlgebraSpec("bad", np.zeros((2, 2, 2)))
    with pytest.raises(ValueError):
        AlgebraSpec("odd", np.ones((3, 3, 3)))


def test_builtin_ids():
    assert builtin_algebra("clifford:2").dim == 4
    assert builtin_algebra("cd:3").dim == 8
    with pytest.raises(ValueError):
        builtin_algebra("cd:0")
    with pytest.raises(ValueError):
        builtin_algebra("nope")


def test_multiply_unit_and_mismatch(H, O):
    rng = np.random.default_rng(1)
    a = H.element(rng.standard_normal(4))
    assert (H.one() * a).allclose(a, 0)
    assert (a * H.one()).allclose(a, 0)
    with pytest.raises(ValueError):
        multiply(a, O.one())


@pytest.mark.parametrize("name", ["quaternion", "octonion", "sedenion", "clifford:3", "clifford:4"])
def test_left_mul_matrix_agrees_with_multiply(name):
    A = builtin_algebra(name)
    rng = np.random.default_rng(2)
    np.testing.assert_array_equal(left_mul_matrix(A.one()), np.eye(A.dim))
    for _ in range(100):
        a = A.element(rng.standard_normal(A.dim))
        b = A.element(rng.standard_normal(A.dim))
        assert np.max(np.abs(left_mul_matrix(a) @ b.coeffs - (a * b).coeffs)) <= 1e-14 * max(1, (a * b).norm())


def test_left_mul_matrix_examples(H, S):
    L = left_mul_matrix(H.basis(1))
    np.testing.assert_array_equal(L @ L, -np.eye(4))
    e = S.basis
    assert np.linalg.matrix_rank(left_mul_matrix(e(1) + e(10))) < 16


def test_imaginary_units(H, S):
    assert is_imaginary_unit(H.basis(1))
    assert not is_imaginary_unit(H.one())
    s = (S.basis(1) + S.basis(9)) / np.sqrt(2)
    assert is_imaginary_unit(s)


def test_slice_units(O, S):
    assert is_slice_unit(O.basis(1))
    assert is_slice_unit(S.basis(1))
    # p + q e8 with s^2 = -1 and pq != qp
    p = np.zeros(8); p[1] = 1.0
    q = np.zeros(8); q[2] = 1.0
    s = S.element(np.concatenate([p, q]) / np.sqrt(2))
    assert is_imaginary_unit(s)
    pp, qq = O.element(p), O.element(q)
    assert (pp * qq - qq * pp).norm() > 1
    assert not is_slice_unit(s)


def test_left_alternative():
    assert is_left_alternative(builtin_algebra("quaternion"))
    assert is_left_alternative(builtin_algebra("octonion"))
    rep = left_alternative_report(builtin_algebra("sedenion"))
    assert not rep.holds
    a, b = rep.witness
    S = builtin_algebra("sedenion")
    A, B = S.element(a), S.element(b)
    assert (A * (A * B) - (A * A) * B).norm() > 1e-6


def test_is_lscs(H, S, R3):
    ok, w = is_lscs(H, 5, 0)
    assert ok and w.allclose(H.basis(1), 0)
    ok, w = is_lscs(R3, 5, 0)
    assert ok and w.allclose(R3.basis(1), 0)
    L = left_mul_matrix(R3.basis(1))
    np.testing.assert_array_equal(L @ L, -np.eye(8))
    ok, w = is_lscs(S, 5, 0)
    assert ok and w.allclose(S.basis(1), 0)
    with pytest.raises(ValueError):
        is_lscs(H, 0, 0)


@pytest.mark.parametrize("name", ["quaternion", "octonion", "clifford:2", "clifford:3", "clifford:4"])
def test_imaginary_iff_slice_unit(name):
    A = builtin_algebra(name)
    rng = np.random.default_rng(3)
    seen = 0
    for _ in range(500):
        start = random_unit_imaginary(A, rng).coeffs
        u = sample_imaginary_unit(A, rng, start=start)
        cand = u if u is not None else A.element(start)
        assert is_imaginary_unit(cand, 1e-9) == is_slice_unit(cand, 1e-9)
        seen += u is not None
    assert seen > 0


def test_element_arithmetic(H):
    a = H.element([1, 2, 3, 4])
    assert (a - a).allclose(H.zero(), 0)
    assert (2 * a).allclose(a + a, 0)
    assert a.conj().allclose(H.element([1, -2, -3, -4]), 0)
    with pytest.raises(ValueError):
        Element(H, [1, 2, 3])
