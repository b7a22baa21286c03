"""Douglas range-inclusion solver and the factorizations built on it.

For ``ran A ⊆ ran B`` the minimal solution of ``A = B X`` is ``X = B⁺ A``:
it satisfies ``ker X = ker A``, ``ran X ⊆ ran B*`` and
``||X||² = inf{λ : AA* ≤ λ BB*}``. The anti-linear results reduce to this
linear statement by composing with a conjugation.
"""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .antilinear import (AntiLinearMap, Conjugation, PartialAntiIsometry,
                         antilinear_kernel_projector, canonical, compose)
from .cnormal import is_c_normal
from .errors import DomainError, ModulusMismatch, NotCNormal, RangeError
from .numeric import (DEFAULT_TOL, Tolerance, adj, as_matrix, frob, kernel_projector,
                      modulus, null_basis, numerical_rank, opnorm, pinv, range_projector,
                      svd)

__all__ = [
    "DouglasSolution", "PolarDecomposition", "CNormalPolar",
    "range_included", "douglas_solve", "majorization_constant",
    "antilinear_douglas", "antilinear_equal_modulus_factor",
    "antilinear_polar", "cnormal_polar", "partial_isometry_factor",
]


@dataclass(frozen=True)
class DouglasSolution:
    factor: np.ndarray
    norm_sq: float
    k_min: float

    def residuals(self, a, b, tol: Tolerance = DEFAULT_TOL) -> dict[str, float]:
        a, b, x = np.asarray(a), np.asarray(b), self.factor
        return {
            "reconstruction": frob(a - b @ x),
            "kernel": frob(kernel_projector(x, tol) - kernel_projector(a, tol)),
            "range": frob(range_projector(adj(b), tol) @ x - x),
            "norm": abs(self.norm_sq - self.k_min),
        }


def range_included(a, b, tol: Tolerance = DEFAULT_TOL) -> bool:
    """``ran A ⊆ ran B``, tested as ``Π_B A ≈ A``."""
    a, b = as_matrix(a), as_matrix(b)
    if a.shape[0] != b.shape[0]:
        raise DomainError(f"row mismatch: {a.shape} vs {b.shape}")
    return tol.close(range_projector(b, tol) @ a, a, scale=opnorm(a))


def majorization_constant(a, b, tol: Tolerance = DEFAULT_TOL) -> float:
    """Smallest λ with ``AA* ≤ λ BB*``, assuming ``ran A ⊆ ran B``.

    On ran B, with ``B = U Σ V*``, the constraint reads
    ``Σ⁻¹U*AA*UΣ⁻¹ ≤ λ I``, so λ is the top eigenvalue of that compression.
    """
    res = svd(b)
    r = numerical_rank(res.sigma, tol)
    if r == 0:
        return 0.0
    m = (adj(res.U[:, :r]) @ a) / res.sigma[:r, None]
    return float(max(np.linalg.eigvalsh(m @ adj(m))[-1], 0.0))


def douglas_solve(a, b, tol: Tolerance = DEFAULT_TOL) -> DouglasSolution:
    a, b = as_matrix(a), as_matrix(b)
    if not range_included(a, b, tol):
        raise RangeError("ran(A) is not contained in ran(B)")
    x = pinv(b, tol) @ a
    return DouglasSolution(factor=x, norm_sq=opnorm(x) ** 2,
                           k_min=majorization_constant(a, b, tol))


def antilinear_douglas(t: AntiLinearMap, s: AntiLinearMap, c: Conjugation,
                       tol: Tolerance = DEFAULT_TOL) -> np.ndarray:
    """Linear R = CDC with ``T = S R``, from the Douglas factor of ``TC = (SC) D``.

    The result satisfies ``ker R = ker T`` and ``closure ran R = (ker S)^⊥``.
    """
    d = douglas_solve(compose(t, c), compose(s, c), tol).factor
    return c.sandwich(d)


def antilinear_equal_modulus_factor(s: AntiLinearMap, t: AntiLinearMap,
                                    tol: Tolerance = DEFAULT_TOL) -> np.ndarray:
    """Linear partial isometry D with ``S = D T`` when ``S#S = T#T``.

    Initial space ran T, final space ran S.
    """
    ss = compose(s.sharp, s)
    tt = compose(t.sharp, t)
    if not tol.close(ss, tt, scale=max(opnorm(s.mat), opnorm(t.mat)) ** 2):
        raise ModulusMismatch("S#S and T#T differ")
    # S = D T  <=>  M_S* = M_T* D*
    return adj(douglas_solve(adj(s.mat), adj(t.mat), tol).factor)


@dataclass(frozen=True)
class PolarDecomposition:
    isometry_part: PartialAntiIsometry
    modulus: np.ndarray
    residuals: dict[str, float] = field(default_factory=dict)

    @property
    def J(self) -> AntiLinearMap:
        return self.isometry_part.map


def antilinear_polar(a: AntiLinearMap, tol: Tolerance = DEFAULT_TOL,
                     conjugation: Conjugation | None = None) -> PolarDecomposition:
    """``A = J|A|`` with J an anti-linear partial isometry and ``ker J = ker A``.

    ``|A| = |CA|`` for any conjugation C; the Douglas factor of
    ``(CA)* = |A| D`` gives ``J = C D*``. The residual
    ``conjugation_independence`` compares |A| computed through C with the
    value obtained through the canonical conjugation.
    """
    c = conjugation if conjugation is not None else canonical(a.dim)
    ca = compose(c, a)
    mod = modulus(ca)
    d = douglas_solve(adj(ca), mod, tol).factor
    j = compose(c, adj(d))
    part = PartialAntiIsometry(j, range_projector(mod, tol), range_projector(j.mat, tol))
    residuals = {
        "reconstruction": frob(a.mat - compose(j, mod).mat),
        "kernel": frob(antilinear_kernel_projector(j, tol) - antilinear_kernel_projector(a, tol)),
        "isometry": part.isometry_residual(),
        "conjugation_independence": frob(mod - modulus(np.conj(a.mat))),
    }
    return PolarDecomposition(part, mod, residuals)


@dataclass(frozen=True)
class CNormalPolar:
    J: AntiLinearMap
    modulus: np.ndarray
    extended: bool
    residuals: dict[str, float] = field(default_factory=dict)


def cnormal_polar(t, c: Conjugation, tol: Tolerance = DEFAULT_TOL,
                  extend: bool = False) -> CNormalPolar:
    """``T = C J |T|`` with J anti-linear, commuting with |T|.

    J comes from the Douglas factor of ``CT*C = |T*| D*`` as ``J = D C``; it
    is a partial anti-unitary supported on ran|T|. With ``extend=True`` it is
    completed on ker|T| by the canonical conjugation of the orthonormal
    kernel basis returned by the SVD, giving an anti-unitary.
    """
    t = as_matrix(t, square=True)
    if not is_c_normal(t, c, tol):
        raise NotCNormal("operator is not C-normal for this conjugation")
    mod = modulus(t)
    d = adj(douglas_solve(c.sandwich(adj(t)), modulus(adj(t)), tol).factor)
    jm = d @ c.mat
    if extend:
        q = null_basis(t, tol)
        jm = jm + q @ q.T
    j = AntiLinearMap(jm)
    residuals = {
        "reconstruction": frob(t - c.mat @ np.conj(jm) @ mod),
        "commutation": frob(jm @ np.conj(mod) - mod @ jm),
    }
    if extend:
        residuals["unitarity"] = frob(jm @ adj(jm) - np.eye(t.shape[0]))
    else:
        residuals["isometry"] = frob(jm.T @ np.conj(jm) - range_projector(mod, tol))
    return CNormalPolar(j, mod, extend, residuals)


def partial_isometry_factor(t, c: Conjugation,
                            tol: Tolerance = DEFAULT_TOL) -> tuple[np.ndarray, np.ndarray]:
    """``T = U P`` for a C-normal partial isometry T: U unitary C-normal, P a projection."""
    t = as_matrix(t, square=True)
    p = adj(t) @ t
    if not tol.close(p @ p, p, scale=1.0):
        raise DomainError("operator is not a partial isometry")
    polar = cnormal_polar(t, c, tol, extend=True)
    return compose(c, polar.J), polar.modulus
