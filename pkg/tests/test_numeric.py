import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from conjnormal import DomainError, Tolerance, make_rng
from conjnormal.ensembles import ginibre, haar_unitary, unit_vectors
from conjnormal.numeric import (adj, as_matrix, cluster_indices, eig_hermitian, frob,
                                is_unitary, kernel_projector, modulus, numerical_rank, opnorm,
                                pinv, psd_leq, range_projector, sqrt_psd, svd)

from strategies import complex_matrices, seeds

TOL = Tolerance()


def assert_close(x, y, atol=1e-10):
    np.testing.assert_allclose(np.asarray(x), np.asarray(y), rtol=0, atol=atol)


# svd


def test_svd_diagonal():
    assert_close(svd(np.diag([3.0, 1.0])).sigma, [3, 1])


def test_svd_nilpotent():
    assert_close(svd([[0, 1], [0, 0]]).sigma, [1, 0])


def test_svd_zero():
    assert_close(svd(np.zeros((2, 2))).sigma, [0, 0])


@given(complex_matrices(cols=st.integers(1, 5)))
def test_svd_reconstructs(a):
    res = svd(a)
    assert frob(res.reconstruct() - a) <= TOL.bound(frob(a)) * 10
    assert np.all(np.diff(res.sigma) <= 0)


@given(complex_matrices())
def test_singular_values_of_adjoint_and_modulus(a):
    s = svd(a).sigma
    scale = TOL.bound(max(s[0], 1.0)) * 10
    assert_close(svd(adj(a)).sigma, s, atol=scale)
    # through the eigenvalue route, independent of the SVD used by modulus()
    assert_close(svd(sqrt_psd(adj(a) @ a)).sigma, s, atol=1e-6 * max(s[0], 1.0))
    assert_close(svd(modulus(a)).sigma, s, atol=scale)


# eig_hermitian


@pytest.mark.parametrize("h, expected", [
    (np.diag([2.0, 1.0]), [2, 1]),
    (np.array([[0, 1], [1, 0]]), [1, -1]),
    (np.eye(3), [1, 1, 1]),
])
def test_eig_hermitian_examples(h, expected):
    w, v = eig_hermitian(h)
    assert_close(w, expected)
    assert is_unitary(v)
    assert_close(v @ np.diag(w) @ adj(v), h)


def test_eig_hermitian_rejects_non_hermitian():
    with pytest.raises(DomainError):
        eig_hermitian([[0, 1], [0, 0]])


# pinv


def test_pinv_examples():
    assert_close(pinv(np.diag([2.0, 0.0])), np.diag([0.5, 0]))
    u = haar_unitary(3, make_rng(5))
    assert_close(pinv(u), adj(u))
    assert_close(pinv([[0, 1], [0, 0]]), [[0, 0], [1, 0]])


@given(complex_matrices(cols=st.integers(1, 5)))
def test_pinv_penrose_conditions(a):
    x = pinv(a)
    s = svd(a).sigma
    r = numerical_rank(s)
    if r and s[0] / s[r - 1] > 1e4:
        return  # ill-conditioned draws are outside the accuracy regime
    tol = 1e-8 * max(1.0, s[0]) ** 2
    assert frob(a @ x @ a - a) <= tol * max(1.0, s[0])
    assert frob(x @ a @ x - x) <= tol * max(1.0, frob(x)) ** 2
    assert frob(adj(a @ x) - a @ x) <= tol
    assert frob(adj(x @ a) - x @ a) <= tol


@given(seeds(), st.integers(1, 6))
def test_pinv_involution_full_rank(seed, n):
    a = ginibre(n, n, make_rng(seed))
    assert frob(pinv(pinv(a)) - a) <= 1e-8 * frob(a) * np.linalg.cond(a)


# sqrt_psd and modulus


def test_sqrt_psd_examples():
    assert_close(sqrt_psd(np.diag([4.0, 9.0])), np.diag([2, 3]))
    assert_close(sqrt_psd(np.zeros((2, 2))), np.zeros((2, 2)))
    r = sqrt_psd(np.array([[2.0, 1.0], [1.0, 2.0]]))
    assert_close(r @ r, [[2, 1], [1, 2]])
    # oracle: eigenvalues 3 and 1 on (1,1)/√2 and (1,-1)/√2
    expected = (np.sqrt(3) * np.ones((2, 2)) + np.array([[1, -1], [-1, 1]])) / 2
    assert_close(r, expected)


def test_sqrt_psd_rejects_negative():
    with pytest.raises(DomainError):
        sqrt_psd(np.diag([1.0, -1.0]))


def test_sqrt_psd_tolerates_roundoff_negatives():
    r = sqrt_psd(np.diag([1.0, -1e-14]))
    assert_close(r, np.diag([1.0, 0.0]))


# projectors


def test_range_projector_examples():
    assert_close(range_projector(np.diag([1.0, 0.0])), np.diag([1, 0]))
    assert_close(range_projector([[1, 2], [3, 4]]), np.eye(2))
    assert_close(range_projector([[1], [1]]), 0.5 * np.ones((2, 2)))


@given(seeds(), st.integers(2, 6))
def test_range_projector_invariant_under_right_invertible(seed, n):
    rng = make_rng(seed)
    rank = int(rng.integers(1, n + 1))
    a = ginibre(n, rank, rng) @ ginibre(rank, n, rng)
    x = ginibre(n, n, rng)
    assert frob(range_projector(a) - range_projector(a @ x)) <= 1e-8 * np.linalg.cond(x)


def test_kernel_projector():
    assert_close(kernel_projector([[0, 1], [0, 0]]), np.diag([1, 0]))


# psd_leq


def test_psd_leq_examples(rng):
    assert psd_leq(np.diag([1.0, 0.0]), np.eye(2))
    assert not psd_leq(np.eye(2), np.diag([1.0, 0.0]))
    # commuting PSD pair: ((a+b)/2)^2 <= a^2+b^2 eigenvalue-wise
    u = haar_unitary(4, rng)
    a_vals, b_vals = rng.uniform(0, 3, 4), rng.uniform(0, 3, 4)
    ma = (u * a_vals) @ adj(u)
    mb = (u * b_vals) @ adj(u)
    assert psd_leq(0.5 * (ma + mb) @ (ma + mb), ma @ ma + mb @ mb)


@given(seeds(), st.integers(1, 6))
def test_weyl_monotonicity(seed, n):
    rng = make_rng(seed)
    g = ginibre(n, n, rng)
    s = g @ adj(g)
    h = ginibre(n, int(rng.integers(1, n + 1)), rng)
    t = s + h @ adj(h)
    assert psd_leq(s, t)
    s_s, s_t = svd(s).sigma, svd(t).sigma
    assert np.all(s_s <= s_t + TOL.bound(s_t[0]))


# tolerance policy and validation


def test_tolerance_rules():
    tol = Tolerance(1e-9, 1e-12)
    assert tol.bound(0) == 1e-12
    assert tol.close(np.eye(2), np.eye(2) + 1e-10)
    assert not tol.close(np.eye(2), np.eye(2) + 1e-6)
    # both sides tiny: only an explicit scale makes the comparison relative
    assert not tol.close(np.zeros(1), np.array([1e-10]))
    assert tol.close(np.zeros(1), np.array([1e-10]), scale=1.0)
    assert numerical_rank(np.array([1.0, 1e-10])) == 1
    with pytest.raises(DomainError):
        Tolerance(-1.0, 0.0)


@pytest.mark.parametrize("bad", [np.zeros(3), np.zeros((0, 2)), [[np.nan, 0], [0, 1]]])
def test_as_matrix_rejects(bad):
    with pytest.raises(DomainError):
        as_matrix(bad)


def test_cluster_indices():
    groups = cluster_indices(np.array([3.0, 3.0 + 1e-12, 2.0, 0.0]))
    assert [list(g) for g in groups] == [[0, 1], [2], [3]]


# ensembles


def test_rng_is_deterministic_and_stream_separated():
    a = make_rng(42, 3).standard_normal(5)
    assert np.array_equal(a, make_rng(42, 3).standard_normal(5))
    assert not np.array_equal(a, make_rng(42, 4).standard_normal(5))
    assert not np.array_equal(a, make_rng(43, 3).standard_normal(5))


@given(seeds(), st.integers(1, 8))
def test_haar_unitary_is_unitary(seed, n):
    assert is_unitary(haar_unitary(n, make_rng(seed)))


def test_unit_vectors():
    v = unit_vectors(5, 7, make_rng(0))
    assert v.shape == (5, 7)
    assert_close(np.linalg.norm(v, axis=0), np.ones(7))
    assert opnorm(v) > 0
