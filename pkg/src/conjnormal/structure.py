"""Spectral structure of C-normal operators and the CJP factorization."""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np
import scipy.linalg

from .antilinear import AntiLinearMap, Conjugation, make_conjugation
from .cnormal import c_normal_battery, is_c_normal
from .douglas import cnormal_polar
from .errors import DomainError, InvalidConjugation, NotCNormal
from .numeric import (DEFAULT_TOL, Tolerance, adj, as_matrix, cluster_indices,
                      direct_sum, eig_hermitian, frob, is_normal, is_unitary, opnorm,
                      svd, numerical_rank)

__all__ = [
    "SkewStructure", "SpectralReport", "ConjugationBlock", "ConjugationBlocks",
    "skew_structure", "spectral_commutation_check",
    "conjugation_positive_factorization", "cjp_synthesize", "cjp_factor",
    "kernel_compression",
]


@dataclass(frozen=True)
class SkewStructure:
    """``W* T W = T1 ⊕ (-T1*) ⊕ (i T3)`` for normal T with ``CTC = -T``.

    ``partition`` holds the Schur indices of the eigenvalues with positive,
    negative and (numerically) zero real part, in the column order of W.
    """

    unitary: np.ndarray
    block_plus: np.ndarray
    block_imag: np.ndarray
    partition: tuple[np.ndarray, np.ndarray, np.ndarray]
    residuals: dict[str, float] = field(default_factory=dict)

    def model(self) -> np.ndarray:
        t1 = self.block_plus
        return direct_sum(t1, -adj(t1), 1j * self.block_imag)


def _pair_reflected(lam: np.ndarray, plus: np.ndarray, minus: np.ndarray,
                    gap: float) -> np.ndarray:
    """Order ``minus`` so that its k-th eigenvalue is ``-conj`` of the k-th in ``plus``."""
    free = list(minus)
    order = []
    for k in plus:
        target = -np.conj(lam[k])
        j = min(free, key=lambda i: abs(lam[i] - target))
        if abs(lam[j] - target) > gap:
            raise DomainError("spectrum is not symmetric under z -> -conj(z)")
        order.append(j)
        free.remove(j)
    return np.array(order, dtype=int)


def skew_structure(t, c: Conjugation, tol: Tolerance = DEFAULT_TOL) -> SkewStructure:
    t = as_matrix(t, square=True)
    if t.shape[0] != c.dim:
        raise DomainError("dimension mismatch")
    scale = opnorm(t)
    if not is_normal(t, tol):
        raise DomainError("operator is not normal")
    if not tol.close(c.sandwich(t), -t, scale=scale):
        raise DomainError("CTC != -T")

    r, z = scipy.linalg.schur(t, output="complex")
    lam = np.diag(r)
    tau = tol.cutoff(scale)
    idx = np.arange(len(lam))
    plus = idx[lam.real > tau]
    plus = plus[np.lexsort((lam[plus].imag, lam[plus].real))]
    minus = idx[lam.real < -tau]
    zero = idx[np.abs(lam.real) <= tau]
    if len(plus) != len(minus):
        raise DomainError("unequal numbers of eigenvalues in the right and left half-planes")
    minus = _pair_reflected(lam, plus, minus, tol.bound(scale))

    w1, w2, w3 = z[:, plus], z[:, minus], z[:, zero]
    w = np.hstack([w1, w2, w3])
    t1 = adj(w1) @ t @ w1
    t2 = adj(w2) @ t @ w2
    t3 = -1j * (adj(w3) @ t @ w3)
    out = SkewStructure(w, t1, t3, (plus, minus, zero))
    out.residuals.update({
        "reconstruction": frob(adj(w) @ t @ w - out.model()),
        "reflected_block": frob(t2 + adj(t1)),
        "t3_hermitian": frob(t3 - adj(t3)),
        "t1_normal": frob(t1 @ adj(t1) - adj(t1) @ t1),
        # C ran E(Δ) = ran E(-Δ*)  <=>  C P1 C = P2
        "eigenspace_swap": frob(c.sandwich(w1 @ adj(w1)) - w2 @ adj(w2)),
    })
    return out


@dataclass(frozen=True)
class SpectralReport:
    conj_commutes: bool
    ct_commutes: bool
    normal: bool
    eigenvalues: np.ndarray
    multiplicities: tuple[int, ...]
    residuals: dict[str, float] = field(default_factory=dict)


def _spectral_projectors(h: np.ndarray, tol: Tolerance):
    w, v = eig_hermitian(h, tol)
    groups = cluster_indices(w, tol)
    projs = [v[:, g] @ adj(v[:, g]) for g in groups]
    return [float(np.mean(w[g])) for g in groups], [len(g) for g in groups], projs


def spectral_commutation_check(t, c: Conjugation,
                               tol: Tolerance = DEFAULT_TOL) -> SpectralReport:
    """Do C and CT commute with the spectral projections of T*T?

    ``conj_commutes`` is only guaranteed when T is also normal; ``normal``
    records whether it is.
    """
    t = as_matrix(t, square=True)
    if not is_c_normal(t, c, tol):
        raise NotCNormal("operator is not C-normal for this conjugation")
    s = c.mat
    ct = s @ np.conj(t)
    evals, mults, projs = _spectral_projectors(adj(t) @ t, tol)
    conj_res = max(frob(s @ np.conj(p) - p @ s) for p in projs)
    ct_res = max(frob(ct @ np.conj(p) - p @ ct) for p in projs)
    return SpectralReport(
        conj_commutes=conj_res <= tol.bound(1.0),
        ct_commutes=ct_res <= tol.bound(opnorm(t)),
        normal=is_normal(t, tol),
        eigenvalues=np.array(evals),
        multiplicities=tuple(mults),
        residuals={"conj": conj_res, "ct": ct_res},
    )


@dataclass(frozen=True)
class ConjugationBlock:
    eigenvalue: float
    multiplicity: int
    basis: np.ndarray
    block: np.ndarray


@dataclass(frozen=True)
class ConjugationBlocks:
    blocks: list[ConjugationBlock]
    residuals: dict[str, float] = field(default_factory=dict)

    def reassemble(self) -> np.ndarray:
        return sum(b.basis @ b.block @ b.basis.T for b in self.blocks)


def conjugation_positive_factorization(p, c: Conjugation,
                                       tol: Tolerance = DEFAULT_TOL) -> ConjugationBlocks:
    """Split a conjugation commuting with a PSD operator along its eigenspaces.

    On the eigenspace with orthonormal basis V the conjugation acts as
    ``V S_k conj(V*)`` with ``S_k = V* S conj(V)`` symmetric unitary.
    """
    p = as_matrix(p, square=True)
    s = c.mat
    w, v = eig_hermitian(p, tol)
    if w[-1] < -tol.cutoff(float(np.max(np.abs(w)))):
        raise DomainError("operator is not positive semidefinite")
    if not tol.close(s @ np.conj(p), p @ s, scale=opnorm(p)):
        raise DomainError("conjugation does not commute with the operator")
    blocks = []
    for g in cluster_indices(w, tol):
        basis = v[:, g]
        blocks.append(ConjugationBlock(float(np.mean(w[g])), len(g), basis,
                                       adj(basis) @ s @ np.conj(basis)))
    out = ConjugationBlocks(blocks)
    out.residuals.update({
        "reassembly": frob(out.reassemble() - s),
        "symmetric": max(frob(b.block - b.block.T) for b in blocks),
        "unitary": max(frob(b.block @ adj(b.block) - np.eye(b.multiplicity)) for b in blocks),
    })
    return out


def cjp_synthesize(c: Conjugation, j: AntiLinearMap, p,
                   tol: Tolerance = DEFAULT_TOL) -> np.ndarray:
    """``T = C J P`` for anti-unitary J commuting with PSD P; always C-normal."""
    p = as_matrix(p, square=True)
    jm = j.mat
    if not is_unitary(jm, tol):
        raise DomainError("J is not anti-unitary")
    w, _ = eig_hermitian(p, tol)
    if w[-1] < -tol.cutoff(float(np.max(np.abs(w)))):
        raise DomainError("P is not positive semidefinite")
    if not tol.close(jm @ np.conj(p), p @ jm, scale=opnorm(p)):
        raise DomainError("J does not commute with P")
    t = c.mat @ np.conj(jm) @ p
    if not c_normal_battery(t, c, tol).verdict:
        raise NotCNormal("synthesized operator failed the C-normality battery")
    return t


def cjp_factor(t, c: Conjugation,
               tol: Tolerance = DEFAULT_TOL) -> tuple[AntiLinearMap, np.ndarray]:
    """Recover ``(J, P)`` with ``T = C J P``: P = |T|, J the extended polar factor."""
    polar = cnormal_polar(t, c, tol, extend=True)
    return polar.J, polar.modulus


def kernel_compression(t, c: Conjugation,
                       tol: Tolerance = DEFAULT_TOL) -> tuple[np.ndarray, Conjugation]:
    """Compress a normal C-normal T and C to ``(ker T)^⊥``.

    Returns the compressed operator and conjugation in an orthonormal basis
    of ``(ker T)^⊥``; raises InvalidConjugation if C does not reduce there.
    """
    t = as_matrix(t, square=True)
    if not is_normal(t, tol):
        raise DomainError("operator is not normal")
    res = svd(t)
    r = numerical_rank(res.sigma, tol)
    if r == 0:
        raise DomainError("operator is zero")
    q = res.V[:, :r]
    proj = q @ adj(q)
    if not tol.close(c.sandwich(proj), proj):
        raise InvalidConjugation("C does not reduce (ker T)^⊥")
    return adj(q) @ t @ q, make_conjugation(adj(q) @ c.mat @ np.conj(q), tol)
