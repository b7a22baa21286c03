"""Singular-value and norm inequalities for C-normal operators.

Reports never raise when an inequality fails; they return ``passed=False``
together with the per-index slack so that a violation can be inspected.
"""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .antilinear import Conjugation
from .cnormal import cartesian_decompose, is_c_normal
from .errors import NotCNormal
from .numeric import (DEFAULT_TOL, Tolerance, adj, as_matrix, commutator, direct_sum,
                      frob, modulus, opnorm, sqrt_psd, svd)

__all__ = [
    "InequalityReport", "SandwichReport", "singular_values",
    "singular_value_sandwich", "product_singular_bound", "self_commutator_bound",
]


def singular_values(x) -> np.ndarray:
    return svd(x).sigma


@dataclass(frozen=True)
class InequalityReport:
    """``lhs[j] <= rhs[j]`` for every j, with ``slack = rhs - lhs``."""

    name: str
    lhs: np.ndarray
    rhs: np.ndarray
    slack: np.ndarray
    passed: bool

    @classmethod
    def build(cls, name: str, lhs, rhs, tol: Tolerance) -> "InequalityReport":
        lhs = np.atleast_1d(np.asarray(lhs, dtype=float))
        rhs = np.atleast_1d(np.asarray(rhs, dtype=float))
        slack = rhs - lhs
        scale = float(max(np.max(np.abs(lhs)), np.max(np.abs(rhs))))
        return cls(name, lhs, rhs, slack, bool(slack.min() >= -tol.bound(scale)))

    @property
    def min_slack(self) -> float:
        return float(self.slack.min())


@dataclass(frozen=True)
class SandwichReport:
    lower: InequalityReport
    upper: InequalityReport
    residuals: dict[str, float] = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return self.lower.passed and self.upper.passed

    def min_ratio(self, tol: Tolerance = DEFAULT_TOL) -> float:
        """Smallest ``s_j(T) / s_j(|A|+|B|)`` over numerically nonzero denominators.

        Always at least ``1/sqrt 2``; NaN when ``|A|+|B| = 0``.
        """
        den = self.upper.rhs
        mask = den > tol.cutoff(float(den.max()))
        return float(np.min(self.upper.lhs[mask] / den[mask])) if mask.any() else float("nan")


def _require_c_normal(t, c, tol):
    t = as_matrix(t, square=True)
    if not is_c_normal(t, c, tol):
        raise NotCNormal("operator is not C-normal for this conjugation")
    return t


def singular_value_sandwich(t, c: Conjugation, tol: Tolerance = DEFAULT_TOL) -> SandwichReport:
    """``s_j(|A|+|B|)/sqrt2 <= s_j(T) <= s_j(|A|+|B|)`` for ``T = A + iB``.

    Also records the two facts the bound rests on: ``|T| = sqrt(|A|²+|B|²)``
    and ``[|A|, |B|] = 0``.
    """
    t = _require_c_normal(t, c, tol)
    pair = cartesian_decompose(t, c)
    ma, mb = modulus(pair.A), modulus(pair.B)
    s_t = singular_values(t)
    s_sum = singular_values(ma + mb)
    lower = InequalityReport.build("sandwich_lower", s_sum / np.sqrt(2), s_t, tol)
    upper = InequalityReport.build("sandwich_upper", s_t, s_sum, tol)
    residuals = {
        "modulus_chain": frob(modulus(t) - sqrt_psd(ma @ ma + mb @ mb, tol)),
        "moduli_commute": frob(commutator(ma, mb)),
    }
    return SandwichReport(lower, upper, residuals)


def product_singular_bound(t, c: Conjugation, tol: Tolerance = DEFAULT_TOL) -> InequalityReport:
    """``2 s_j(AB*) <= s_j(T*T ⊕ TT*)`` over all 2n indices.

    ``s(AB*) = s(BA*)`` always holds; the two lists are compared and the larger
    deviation is folded into the report by using the elementwise max on the left.
    """
    t = _require_c_normal(t, c, tol)
    pair = cartesian_decompose(t, c)
    a, b = pair.A, pair.B
    n = t.shape[0]
    s_ab = singular_values(a @ adj(b))
    s_ba = singular_values(b @ adj(a))
    lhs = np.zeros(2 * n)
    lhs[:n] = 2 * np.maximum(s_ab, s_ba)
    rhs = singular_values(direct_sum(adj(t) @ t, t @ adj(t)))
    return InequalityReport.build("product_singular_bound", lhs, rhs, tol)


def self_commutator_bound(t, c: Conjugation, tol: Tolerance = DEFAULT_TOL) -> InequalityReport:
    """``||T*T - TT*|| <= 2||A|| min(||A-A*||, ||A+A*||) + 2||B|| min(||B-B*||, ||B+B*||)``."""
    t = _require_c_normal(t, c, tol)
    pair = cartesian_decompose(t, c)

    def term(x):
        return 2 * opnorm(x) * min(opnorm(x - adj(x)), opnorm(x + adj(x)))

    lhs = opnorm(adj(t) @ t - t @ adj(t))
    return InequalityReport.build("self_commutator_bound", [lhs],
                                  [term(pair.A) + term(pair.B)], tol)
