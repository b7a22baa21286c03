import numpy as np
import pytest
import scipy.linalg
from hypothesis import given
from hypothesis import strategies as st

from conjnormal import (DomainError, ModulusMismatch, NotCNormal, RangeError, Tolerance,
                        make_rng)
from conjnormal.antilinear import (AntiLinearMap, antilinear_kernel_projector, canonical,
                                   compose, flip, random_conjugation)
from conjnormal.cnormal import c_normal_battery
from conjnormal.douglas import (antilinear_douglas, antilinear_equal_modulus_factor,
                                antilinear_polar, cnormal_polar, douglas_solve,
                                majorization_constant, partial_isometry_factor,
                                range_included)
from conjnormal.ensembles import ginibre, haar_unitary
from conjnormal.instances import random_cnormal, rank_deficient
from conjnormal.numeric import adj, frob, psd_leq, range_projector, svd

from strategies import seeds

TOL = Tolerance()


def assert_close(x, y, atol=1e-10):
    np.testing.assert_allclose(np.asarray(x), np.asarray(y), rtol=0, atol=atol)


def k_min_oracle(a, b):
    """Top generalized eigenvalue of (AA*, BB*) restricted to ran B."""
    q = scipy.linalg.orth(b, rcond=1e-9)
    lhs = adj(q) @ a @ adj(a) @ q
    rhs = adj(q) @ b @ adj(b) @ q
    return float(scipy.linalg.eigh(lhs, rhs, eigvals_only=True)[-1])


def restricted_cond(b):
    """sigma_max / sigma_min over the numerically nonzero singular values."""
    s = svd(b).sigma
    s = s[s > TOL.cutoff(s[0])]
    return s[0] / s[-1]


def random_pair(rng, n):
    m = int(rng.integers(1, n + 1))
    b = rank_deficient(n, m, int(rng.integers(1, m + 1)), rng)
    x = ginibre(m, int(rng.integers(1, n + 1)), rng)
    return b @ x, b, x


# range inclusion and the linear solver


def test_range_included_examples(rng):
    assert range_included(np.diag([1.0, 0.0]), np.eye(2))
    assert not range_included(np.eye(2), np.diag([1.0, 0.0]))
    b = ginibre(4, 2, rng)
    assert range_included(b @ ginibre(2, 3, rng), b)
    with pytest.raises(DomainError):
        range_included(np.eye(2), np.eye(3))


def test_douglas_examples():
    p = np.diag([1.0, 0.0])
    sol = douglas_solve(p, p)
    assert_close(sol.factor, p)
    assert abs(sol.norm_sq - 1) < 1e-12
    sol = douglas_solve(p, np.eye(2))
    assert_close(sol.factor, p)
    assert abs(sol.k_min - 1) < 1e-12
    sol = douglas_solve(np.zeros((2, 2)), np.eye(2))
    assert_close(sol.factor, np.zeros((2, 2)))
    assert sol.k_min == 0.0


def test_douglas_range_error():
    with pytest.raises(RangeError):
        douglas_solve(np.eye(2), np.diag([1.0, 0.0]))


@given(seeds(), st.integers(1, 7))
def test_douglas_postconditions(seed, n):
    a, b, _ = random_pair(make_rng(seed), n)
    sol = douglas_solve(a, b)
    res = sol.residuals(a, b)
    assert res["reconstruction"] <= 1e-8 * max(1.0, frob(a))
    assert res["kernel"] < 1e-8
    assert res["range"] <= 1e-8 * max(1.0, frob(sol.factor))
    oracle = k_min_oracle(a, b)
    assert abs(sol.norm_sq - oracle) <= 1e-7 * max(oracle, 1e-12)
    assert abs(sol.k_min - oracle) <= 1e-7 * max(oracle, 1e-12)


@given(seeds(), st.integers(1, 6))
def test_douglas_equivalence(seed, n):
    a, b, _ = random_pair(make_rng(seed), n)
    sol = douglas_solve(a, b)
    k = sol.k_min
    assert range_included(a, b)
    assert psd_leq(a @ adj(a), k * b @ adj(b))
    if k == 0:
        return
    # psd_leq resolves k only up to eps_rel * cond(B)^2, so scale the step
    delta = 1000 * TOL.eps_rel * k * restricted_cond(b) ** 2
    if delta < 0.5 * k:
        assert not psd_leq(a @ adj(a), (k - delta) * b @ adj(b))


@given(seeds(), st.integers(1, 6))
def test_douglas_uniqueness(seed, n):
    rng = make_rng(seed)
    a, b, x = random_pair(rng, n)
    # any solution squeezed into ran B* must be the minimal one
    other = range_projector(adj(b)) @ x
    assert frob(b @ other - a) <= 1e-8 * max(1.0, frob(a))
    sol = douglas_solve(a, b)
    assert frob(other - sol.factor) <= 1e-8 * max(1.0, frob(x)) * restricted_cond(b)


def test_majorization_constant_zero_b():
    assert majorization_constant(np.zeros((2, 2)), np.zeros((2, 2))) == 0.0


# anti-linear Douglas


def test_antilinear_douglas_examples(rng):
    c = random_conjugation(3, rng)
    s = AntiLinearMap(rank_deficient(3, 3, 2, rng))
    r = antilinear_douglas(s, s, c)
    assert_close(r, np.eye(3) - antilinear_kernel_projector(s), atol=1e-9)
    assert_close(r @ r, r, atol=1e-9)
    assert_close(antilinear_douglas(AntiLinearMap(np.zeros((3, 3))), s, c), np.zeros((3, 3)))


@given(seeds(), st.integers(1, 6))
def test_antilinear_douglas_reconstruction(seed, n):
    rng = make_rng(seed)
    c = random_conjugation(n, rng)
    s = AntiLinearMap(ginibre(n, n, rng))
    t = AntiLinearMap(ginibre(n, n, rng))
    r = antilinear_douglas(t, s, c)
    assert isinstance(r, np.ndarray)
    assert frob(compose(s, r).mat - t.mat) <= 1e-8 * frob(t.mat) * np.linalg.cond(s.mat)


def test_equal_modulus_factor(rng):
    t = AntiLinearMap(rank_deficient(4, 4, 2, rng))
    p_t = range_projector(t.mat)
    assert_close(antilinear_equal_modulus_factor(t, t), p_t, atol=1e-9)
    u = haar_unitary(4, rng)
    d = antilinear_equal_modulus_factor(compose(u, t), t)
    assert_close(d @ p_t, u @ p_t, atol=1e-9)
    z = AntiLinearMap(np.zeros((2, 2)))
    assert_close(antilinear_equal_modulus_factor(z, z), np.zeros((2, 2)))
    with pytest.raises(ModulusMismatch):
        antilinear_equal_modulus_factor(AntiLinearMap(2 * t.mat), t)


# polar decompositions


def test_antilinear_polar_examples():
    c = random_conjugation(3, make_rng(8))
    pol = antilinear_polar(c)
    assert_close(pol.modulus, np.eye(3))
    assert_close(pol.J.mat, c.mat)
    pol = antilinear_polar(AntiLinearMap(np.diag([2.0, 0.0])))
    assert_close(pol.modulus, np.diag([2, 0]))
    assert_close(pol.J.mat, np.diag([1, 0]))
    pol = antilinear_polar(AntiLinearMap(np.zeros((2, 2))))
    assert_close(pol.J.mat, np.zeros((2, 2)))
    assert_close(pol.modulus, np.zeros((2, 2)))


@given(seeds(), st.integers(1, 7))
def test_antilinear_polar_independent_of_conjugation(seed, n):
    rng = make_rng(seed)
    a = AntiLinearMap(rank_deficient(n, n, int(rng.integers(1, n + 1)), rng))
    p1 = antilinear_polar(a, conjugation=random_conjugation(n, rng))
    p2 = antilinear_polar(a, conjugation=random_conjugation(n, rng))
    assert p1.residuals["reconstruction"] < 1e-9 * frob(a.mat)
    assert frob(p1.J.mat - p2.J.mat) <= 1e-8 * np.sqrt(n)
    assert frob(p1.modulus - p2.modulus) <= 1e-9 * frob(a.mat)


def test_cnormal_polar_examples(n2):
    d = np.diag([1.0, 2.0])
    pol = cnormal_polar(d, canonical(2))
    assert_close(pol.J.mat, np.eye(2))
    assert_close(pol.modulus, d)
    pol = cnormal_polar(n2, flip(2))
    assert_close(pol.modulus, np.diag([0, 1]))
    assert pol.residuals["reconstruction"] < 1e-12
    assert pol.residuals["commutation"] < 1e-12
    ext = cnormal_polar(n2, flip(2), extend=True)
    assert ext.residuals["unitarity"] < 1e-12
    zero = cnormal_polar(np.zeros((2, 2)), flip(2))
    assert_close(zero.J.mat, np.zeros((2, 2)))
    ext = cnormal_polar(np.zeros((2, 2)), flip(2), extend=True)
    assert ext.residuals["unitarity"] < 1e-12


def test_cnormal_polar_rejects_non_cnormal(n2):
    with pytest.raises(NotCNormal):
        cnormal_polar(n2, canonical(2))


@given(seeds(), st.integers(1, 8))
def test_cnormal_polar_round_trip(seed, n):
    rng = make_rng(seed)
    t, c, _, p = random_cnormal(n, rng)
    pol = cnormal_polar(t, c)
    assert frob(pol.modulus - p) <= 1e-9 * max(1.0, frob(p))
    assert frob(c.mat @ np.conj(pol.J.mat) @ p - t) <= 1e-8 * max(1.0, frob(t))


@given(seeds(), st.integers(1, 8))
def test_partial_isometry_factorization(seed, n):
    rng = make_rng(seed)
    t, c, _, p = random_cnormal(n, rng, projection=True)
    u, q = partial_isometry_factor(t, c)
    assert_close(u @ adj(u), np.eye(n), atol=1e-9)
    assert_close(q @ q, q, atol=1e-9)
    assert_close(u @ q, t, atol=1e-9)
    assert c_normal_battery(u, c).verdict


def test_partial_isometry_factor_rejects():
    with pytest.raises(DomainError):
        partial_isometry_factor(2 * np.eye(2), canonical(2))
