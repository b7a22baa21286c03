"""C-normality predicates, Cartesian decomposition and truncated weighted shifts.

Throughout, ``C`` is a :class:`~conjnormal.antilinear.Conjugation` with matrix
``S`` and ``T`` is a square complex matrix. The linear map ``C T C`` has
matrix ``S conj(T) S*``.
"""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .antilinear import Conjugation
from .ensembles import make_rng, unit_vectors
from .errors import DomainError
from .numeric import (DEFAULT_TOL, Tolerance, adj, as_matrix, commutator, frob,
                      is_normal, modulus, opnorm)

__all__ = [
    "CNormalReport", "CartesianPair", "CartesianReport",
    "is_c_symmetric", "is_c_skew", "is_c_normal", "c_normal_battery",
    "left_right_products", "symmetrizations", "cartesian_decompose",
    "cartesian_equivalences", "weighted_shift", "shift_cnormal_criterion",
    "probe_vectors",
]

CONDITION_NAMES = (
    "C|T|C = |T*|",
    "T* is C-normal",
    "CTC is C-normal",
    "CT*C is C-normal",
    "C T*T = TT* C",
    "CT is anti-linearly normal",
    "||TCx|| = ||T*x||",
    "||T*Cx|| = ||Tx||",
    "(CT + T*C)/2 and (CT - T*C)/2 commute",
    "(TC + CT*)/2 and (TC - CT*)/2 commute",
)

_PROBE_SEED = 0x5EED
_N_RANDOM_PROBES = 8


def _check_dims(t: np.ndarray, c: Conjugation) -> np.ndarray:
    t = as_matrix(t, square=True)
    if t.shape[0] != c.dim:
        raise DomainError(f"operator is {t.shape}, conjugation acts on C^{c.dim}")
    return t


def probe_vectors(n: int) -> np.ndarray:
    """Standard basis plus a fixed set of random unit vectors, as columns."""
    rng = make_rng(_PROBE_SEED, n)
    return np.hstack([np.eye(n), unit_vectors(n, _N_RANDOM_PROBES, rng)])


def is_c_symmetric(t, c: Conjugation, tol: Tolerance = DEFAULT_TOL) -> bool:
    t = _check_dims(t, c)
    return tol.close(adj(t), c.sandwich(t), scale=opnorm(t))


def is_c_skew(t, c: Conjugation, tol: Tolerance = DEFAULT_TOL) -> bool:
    t = _check_dims(t, c)
    return tol.close(c.sandwich(adj(t)), -t, scale=opnorm(t))


def _definition_gap(x: np.ndarray, c: Conjugation) -> tuple[np.ndarray, np.ndarray]:
    return c.sandwich(modulus(x)), modulus(adj(x))


def is_c_normal(t, c: Conjugation, tol: Tolerance = DEFAULT_TOL) -> bool:
    """``C|T|C = |T*|``."""
    t = _check_dims(t, c)
    lhs, rhs = _definition_gap(t, c)
    return tol.close(lhs, rhs, scale=opnorm(t))


@dataclass(frozen=True)
class CNormalReport:
    conditions: tuple[bool, ...]
    residuals: tuple[float, ...]

    @property
    def verdict(self) -> bool:
        return self.conditions[0]

    @property
    def consistent(self) -> bool:
        """All ten equivalent conditions returned the same answer."""
        return len(set(self.conditions)) == 1

    def disagreements(self) -> list[int]:
        return [i + 1 for i, c in enumerate(self.conditions) if c != self.verdict]


def _pointwise_gap(lhs_op: np.ndarray, rhs_op: np.ndarray) -> np.ndarray:
    return np.abs(np.linalg.norm(lhs_op, axis=0) ** 2 - np.linalg.norm(rhs_op, axis=0) ** 2)


def c_normal_battery(t, c: Conjugation, tol: Tolerance = DEFAULT_TOL) -> CNormalReport:
    """Evaluate the ten equivalent characterizations of C-normality.

    Identities linear in T are compared at scale ``||T||``, quadratic ones at
    ``||T||^2``. The two norm identities are checked pointwise on
    :func:`probe_vectors` and then certified through the operator identity
    they are equivalent to, since "for all x" cannot be sampled exhaustively.
    """
    t = _check_dims(t, c)
    s = c.mat
    n = t.shape[0]
    lin = opnorm(t)
    quad = lin ** 2
    ts = adj(t)
    ok, res = [], []

    def record(x, y, scale):
        r = tol.residual(x, y)
        res.append(r)
        ok.append(r <= tol.threshold(x, y, scale))

    for x in (t, ts, c.sandwich(t), c.sandwich(ts)):
        record(*_definition_gap(x, c), lin)

    tst, tts = ts @ t, t @ ts
    # anti-linear maps compared through their matrices: C o (T*T) vs (TT*) o C
    record(s @ np.conj(tst), tts @ s, quad)

    m = s @ np.conj(t)
    record(m.T @ np.conj(m), m @ np.conj(m.T), quad)

    probes = probe_vectors(n)
    cprobes = s @ np.conj(probes)
    for lhs_op, rhs_op, op_l, op_r in (
        (t @ cprobes, ts @ probes, c.sandwich(tst), tts),
        (ts @ cprobes, t @ probes, c.sandwich(tts), tst),
    ):
        gap = _pointwise_gap(lhs_op, rhs_op)
        op_res = tol.residual(op_l, op_r)
        bound = tol.bound(quad)
        res.append(max(float(gap.max()), op_res))
        ok.append(bool(gap.max() <= bound) and op_res <= tol.threshold(op_l, op_r, quad))

    for x, y in ((s @ np.conj(t), ts @ s), (t @ s, s @ t.T)):
        plus, minus = (x + y) / 2, (x - y) / 2
        record(plus @ np.conj(minus), minus @ np.conj(plus), quad)

    return CNormalReport(conditions=tuple(bool(v) for v in ok),
                         residuals=tuple(float(r) for r in res))


def left_right_products(t, c: Conjugation,
                        tol: Tolerance = DEFAULT_TOL) -> tuple[np.ndarray, np.ndarray, bool]:
    """``T_L = CTCT`` and ``T_R = TCTC``; both are normal when T is C-normal."""
    t = _check_dims(t, c)
    ctc = c.sandwich(t)
    t_l, t_r = ctc @ t, t @ ctc
    return t_l, t_r, is_normal(t_l, tol) and is_normal(t_r, tol)


def symmetrizations(t) -> tuple[np.ndarray, np.ndarray]:
    """``(T*T - TT*, T*T + TT*)``."""
    t = as_matrix(t, square=True)
    tst, tts = adj(t) @ t, t @ adj(t)
    return tst - tts, tst + tts


@dataclass(frozen=True)
class CartesianPair:
    """``T = A + iB`` with A C-symmetric and B C-skew-symmetric."""

    A: np.ndarray
    B: np.ndarray

    @property
    def T(self) -> np.ndarray:
        return self.A + 1j * self.B

    def residuals(self, c: Conjugation) -> dict[str, float]:
        return {
            "symmetric_part": frob(adj(self.A) - c.sandwich(self.A)),
            "skew_part": frob(c.sandwich(adj(self.B)) + self.B),
        }


def cartesian_decompose(t, c: Conjugation) -> CartesianPair:
    t = _check_dims(t, c)
    cts = c.sandwich(adj(t))
    return CartesianPair(A=(t + cts) / 2, B=(t - cts) / 2j)


@dataclass(frozen=True)
class CartesianReport:
    c_normal: bool
    norm_identity: bool
    adj_commute_1: bool
    adj_commute_2: bool
    consequences: dict[str, bool] = field(default_factory=dict)
    residuals: dict[str, float] = field(default_factory=dict)

    @property
    def equivalences(self) -> tuple[bool, bool, bool, bool]:
        return (self.c_normal, self.norm_identity, self.adj_commute_1, self.adj_commute_2)

    @property
    def consistent(self) -> bool:
        return len(set(self.equivalences)) == 1


def cartesian_equivalences(t, c: Conjugation, tol: Tolerance = DEFAULT_TOL) -> CartesianReport:
    """Check C-normality against the three Cartesian characterizations.

    When T is C-normal the consequences (Gram identities, commuting Gram
    matrices, norm bounds) are checked as well; they are reported but only
    meaningful in that case.
    """
    t = _check_dims(t, c)
    pair = cartesian_decompose(t, c)
    a, b = pair.A, pair.B
    quad = opnorm(t) ** 2
    res: dict[str, float] = {}

    def check(name, x, y, scale=quad):
        res[name] = tol.residual(x, y)
        return res[name] <= tol.threshold(x, y, scale)

    lhs, rhs = _definition_gap(t, c)
    c_normal = check("c_normal", lhs, rhs, opnorm(t))

    ata, btb = adj(a) @ a, adj(b) @ b
    aat, bbt = a @ adj(a), b @ adj(b)
    probes = probe_vectors(t.shape[0])
    sq = lambda m: np.linalg.norm(m @ probes, axis=0) ** 2  # noqa: E731
    gap = np.abs(sq(t) - sq(a) - sq(b))
    res["norm_identity_pointwise"] = float(gap.max())
    tst_ok = check("t_star_t", adj(t) @ t, ata + btb)
    norm_identity = bool(gap.max() <= tol.bound(quad)) and tst_ok

    adj1 = check("adj_commute_1", adj(a) @ b, adj(b) @ a)
    adj2 = check("adj_commute_2", a @ adj(b), b @ adj(a))
    tts_ok = check("t_t_star", t @ adj(t), aat + bbt)
    comm = commutator(ata, btb)
    gram_ok = check("gram_commute", comm, np.zeros_like(comm), quad ** 2)

    na, nb, nt = opnorm(a) ** 2, opnorm(b) ** 2, opnorm(t) ** 2
    slack = tol.bound(quad)
    res["norm_lower"] = max(na, nb) - nt
    res["norm_upper"] = nt - (na + nb)
    consequences = {
        "t_star_t": tst_ok,
        "t_t_star": tts_ok,
        "gram_commute": gram_ok,
        "norm_lower": max(na, nb) <= nt + slack,
        "norm_upper": nt <= na + nb + slack,
    }
    return CartesianReport(c_normal, norm_identity, adj1, adj2, consequences, res)


def weighted_shift(lambdas) -> np.ndarray:
    """``sum_j lambda_j e_j (x) e_{j+1}``: weight j sits at entry (j, j+1)."""
    lam = np.atleast_1d(np.asarray(lambdas, dtype=complex))
    if lam.ndim != 1 or lam.size == 0:
        raise DomainError("need at least one weight")
    n = lam.size + 1
    t = np.zeros((n, n), dtype=complex)
    t[np.arange(n - 1), np.arange(1, n)] = lam
    return t


def shift_cnormal_criterion(lambdas, tol: Tolerance = DEFAULT_TOL) -> bool:
    """``|lambda_j| = |lambda_{n-j}|`` for all j, i.e. the magnitudes are a palindrome.

    Differences are judged against ``eps_abs + eps_rel * max|lambda|``.
    """
    mags = np.abs(np.atleast_1d(np.asarray(lambdas, dtype=complex)))
    if mags.size == 0:
        raise DomainError("need at least one weight")
    gap = np.max(np.abs(mags - mags[::-1]))
    return bool(gap <= tol.bound(float(mags.max())))
