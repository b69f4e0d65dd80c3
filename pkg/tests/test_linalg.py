import itertools

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from helpers import random_ratmatrix
from degdet.errors import CapExceeded, SingularInput
from degdet.fields import GF, MINUS_INF, QQ, RationalFunctionField, parse_rational
from degdet.linalg import (
    bruhat_ldpu,
    complete_rows,
    deg_det,
    det,
    inverse,
    is_biproper,
    leading_coeff_matrix,
    left_kernel,
    matmul_kt,
    max_minor_degree,
    permutation_sign,
    rank,
    rank_and_kernels,
    ratmatrix,
    right_kernel,
    smith_mcmillan,
)

P = GF(10007)

small_mats = st.integers(1, 4).flatmap(
    lambda r: st.integers(1, 4).flatmap(
        lambda c: st.lists(st.lists(st.integers(0, 2), min_size=c, max_size=c), min_size=r, max_size=r)
    )
)


def leibniz(field, M):
    n = M.shape[0]
    total = field.zero
    for perm in itertools.permutations(range(n)):
        term = field(permutation_sign(list(perm)))
        for i in range(n):
            term = field(term * M[i, perm[i]])
        total = field(total + term)
    return total


# ------------------------------------------------------------- constant


def test_rank_kernel_examples():
    r, K, L = rank_and_kernels(P, P.eye(3))
    assert r == 3 and K.shape == (3, 0) and L.shape == (0, 3)
    r, K, L = rank_and_kernels(P, P.zeros((2, 3)))
    assert r == 0 and K.shape == (3, 3) and L.shape == (2, 2)
    F2 = GF(2)
    r, K, _ = rank_and_kernels(F2, F2.array([[1, 1], [1, 1]]))
    assert r == 1 and K.shape == (2, 1) and list(K[:, 0]) == [1, 1]


@settings(max_examples=80)
@given(small_mats, st.sampled_from([GF(2), GF(3), GF(7), QQ]))
def test_rank_nullity_and_kernels(rows, field):
    M = field.array(rows)
    r = rank(field, M)
    K, L = right_kernel(field, M), left_kernel(field, M)
    assert K.shape[1] == M.shape[1] - r and L.shape[0] == M.shape[0] - r
    assert not field.nonzero(field.matmul(M, K)).any()
    assert not field.nonzero(field.matmul(L, M)).any()
    assert rank(field, M.T.copy()) == r


@settings(max_examples=60)
@given(st.integers(1, 4), st.integers(0, 10**6))
def test_det_matches_leibniz_and_inverse(n, seed):
    rng = np.random.default_rng(seed)
    for field in (GF(5), QQ):
        M = field.array(rng.integers(-3, 4, (n, n)).tolist())
        d = det(field, M)
        assert field(d) == leibniz(field, M)
        if field.is_zero(d):
            with pytest.raises(SingularInput):
                inverse(field, M)
        else:
            assert (field.matmul(M, inverse(field, M)) == field.eye(n)).all()


def test_complete_rows_of_coordinate_subspace_is_permutation():
    basis = P.zeros((1, 3))
    basis[0, 2] = 1
    S = complete_rows(P, basis, 3)
    assert sorted(np.flatnonzero(S[k])[0] for k in range(3)) == [0, 1, 2]
    assert rank(P, S) == 3 and S[0, 2] == 1


# ------------------------------------------------------------- over K(t)


def test_deg_det_examples():
    assert deg_det(QQ, ratmatrix(QQ, [["t^2", 0], [0, "t^-1"]])) == 1
    assert deg_det(QQ, ratmatrix(QQ, [["t", "1"], ["t", "1"]])) is MINUS_INF
    # distinct diagonal sums decide the degree
    assert deg_det(P, ratmatrix(P, [["t^2", "t"], ["1", "t^3"]])) == 5
    assert deg_det(P, ratmatrix(P, [["t^2 + 1", "t^4"], ["1", "t^3"]])) == 5
    # equal sums may cancel
    assert deg_det(P, ratmatrix(P, [["t", "t"], ["t", "t + 1"]])) == 1


def test_max_minor_degree_examples():
    A = ratmatrix(P, [["t^2", "(1)/(t + 1)"], ["t^3", "t"]])
    assert max_minor_degree(P, A, 0) == 0
    assert max_minor_degree(P, A, 1) == 3
    assert max_minor_degree(P, A, 2) == deg_det(P, A)
    with pytest.raises(CapExceeded):
        max_minor_degree(P, ratmatrix(P, [["1"] * 6] * 6), 2)


def test_biproper_examples():
    assert is_biproper(QQ, ratmatrix(QQ, [["1", 0], [0, "1"]]))
    assert not is_biproper(QQ, ratmatrix(QQ, [["t^-1", 0], [0, "1"]]))
    assert is_biproper(QQ, ratmatrix(QQ, [["1", "t^-1"], ["t^-1", "1"]]))


def test_leading_coeff_matrix_examples():
    assert (leading_coeff_matrix(QQ, ratmatrix(QQ, [["t^-1", 0], [0, "2"]])) == QQ.array([[0, 0], [0, 2]])).all()
    assert leading_coeff_matrix(QQ, ratmatrix(QQ, [["(t + 1)/(t)"]]))[0, 0] == 1
    assert not QQ.nonzero(leading_coeff_matrix(QQ, ratmatrix(QQ, [[0, 0]]))).any()


def test_smith_mcmillan_examples():
    sm = smith_mcmillan(QQ, ratmatrix(QQ, [["t", 0], [0, "t^3"]]))
    assert sm.alpha == [3, 1]
    assert smith_mcmillan(QQ, ratmatrix(QQ, [["t", "1"], [0, "1"]])).alpha == [1, 0]


@settings(max_examples=25, deadline=None)
@given(st.integers(1, 3), st.integers(0, 10**6))
def test_smith_mcmillan_reconstructs(n, seed):
    rng = np.random.default_rng(seed)
    A = random_ratmatrix(P, n, rng)
    d = deg_det(P, A)
    if d is MINUS_INF:
        return
    sm = smith_mcmillan(P, A)
    D = matmul_kt(P, matmul_kt(P, sm.S, A), sm.T)
    kt = RationalFunctionField(P)
    for i in range(n):
        for j in range(n):
            assert D[i, j] == (kt(f"t^{sm.alpha[i]}") if i == j else kt(0))
    assert sum(sm.alpha) == d
    assert is_biproper(P, sm.S) and is_biproper(P, sm.T)


@settings(max_examples=25, deadline=None)
@given(st.integers(1, 3), st.integers(0, 10**6))
def test_deg_det_is_multiplicative(n, seed):
    rng = np.random.default_rng(seed)
    A, B = random_ratmatrix(P, n, rng), random_ratmatrix(P, n, rng)
    da, db = deg_det(P, A), deg_det(P, B)
    if da is MINUS_INF or db is MINUS_INF:
        return
    assert deg_det(P, matmul_kt(P, A, B)) == da + db


@settings(max_examples=25, deadline=None)
@given(st.integers(1, 3), st.integers(0, 10**6))
def test_proper_matrices_have_nonpositive_deg_det(n, seed):
    rng = np.random.default_rng(seed)
    kt = RationalFunctionField(P)
    A = random_ratmatrix(P, n, rng, max_deg=1)
    # divide every entry by t^2 to make it proper
    A = np.vectorize(lambda x: x * kt("t^-2"), otypes=[object])(A)
    d = deg_det(P, A)
    if d is MINUS_INF:
        return
    assert d <= 0
    assert (d == 0) == is_biproper(P, A)


@settings(max_examples=25, deadline=None)
@given(st.integers(1, 4), st.integers(0, 10**6))
def test_deg_det_bounds_for_polynomial_matrices(n, seed):
    rng = np.random.default_rng(seed)
    A = random_ratmatrix(P, n, rng, den_prob=0.0)
    d = deg_det(P, A)
    if d is MINUS_INF:
        return
    assert 0 <= d <= n * max_minor_degree(P, A, 1)


# ------------------------------------------------------------- Bruhat


def test_bruhat_examples():
    b = bruhat_ldpu(P, P.array([[2, 3], [4, 5]]))
    assert b.diag == [2, P(5 - 4 * P.inv(2) * 3)]
    b = bruhat_ldpu(P, P.eye(3))
    for M in (b.L, b.D, b.P, b.U):
        assert (M == P.eye(3)).all()
    kt = RationalFunctionField(P)
    A = ratmatrix(P, [["0", "t^2"], ["t^3", "t"]])
    b = bruhat_ldpu(kt, A)
    assert b.perm == [1, 0]
    assert sum(x.deg for x in b.diag) == 5


@settings(max_examples=60)
@given(st.integers(1, 4), st.integers(0, 10**6))
def test_bruhat_reassembles(n, seed):
    rng = np.random.default_rng(seed)
    M = P.array(rng.integers(0, 3, (n, n)).tolist())
    d = det(P, M)
    if P.is_zero(d):
        with pytest.raises(SingularInput):
            bruhat_ldpu(P, M)
        return
    b = bruhat_ldpu(P, M)
    prod = P.matmul(P.matmul(P.matmul(b.L, b.D), b.P), b.U)
    assert (prod == M).all()
    sign_prod = P(permutation_sign(b.perm))
    for x in b.diag:
        sign_prod = P(sign_prod * int(x))
    assert sign_prod == d
