"""Anti-linear maps and conjugations on C^n.

An anti-linear map is stored as the matrix ``M`` of ``x -> M @ conj(x)``.
With that encoding the anti-linear adjoint is the plain transpose and every
composition is a matrix product, at the cost of a ``conj`` on the right
factor whenever an anti-linear map sits on the left. Linear maps stay plain
numpy arrays; :func:`compose` dispatches on the four cases.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .ensembles import haar_unitary
from .errors import DomainError, InvalidConjugation
from .numeric import (DEFAULT_TOL, Tolerance, adj, as_matrix, as_vector, frob,
                      opnorm, range_projector)

__all__ = [
    "AntiLinearMap", "Conjugation", "PartialAntiIsometry",
    "apply", "sharp_adjoint", "compose", "make_conjugation", "canonical",
    "flip", "random_conjugation", "is_antilinear_normal", "is_antiunitary",
    "antilinear_kernel_projector",
]


@dataclass(frozen=True, eq=False)
class AntiLinearMap:
    mat: np.ndarray

    def __post_init__(self):
        m = as_matrix(self.mat, square=True).copy()
        m.flags.writeable = False
        object.__setattr__(self, "mat", m)

    @property
    def dim(self) -> int:
        return self.mat.shape[0]

    def __call__(self, x):
        return apply(self, x)

    @property
    def sharp(self) -> "AntiLinearMap":
        return sharp_adjoint(self)

    def __repr__(self):
        return f"{type(self).__name__}(dim={self.dim})"


class Conjugation(AntiLinearMap):
    """Anti-linear isometric involution ``x -> S @ conj(x)`` with S symmetric unitary.

    Build instances through :func:`make_conjugation`, which validates S.
    """

    def sandwich(self, t: np.ndarray) -> np.ndarray:
        """Matrix of the linear map ``C T C``."""
        s = self.mat
        return s @ np.conj(t) @ adj(s)


@dataclass(frozen=True, eq=False)
class PartialAntiIsometry:
    """Anti-linear map that is isometric on ran(initial_projector) and zero off it."""

    map: AntiLinearMap
    initial_projector: np.ndarray
    final_projector: np.ndarray

    @property
    def mat(self) -> np.ndarray:
        return self.map.mat

    def isometry_residual(self) -> float:
        # <Jx, Jy> = <y, x> on ran(P) and J = 0 off it  <=>  M^T conj(M) = P
        m, p = self.map.mat, self.initial_projector
        return frob(m.T @ np.conj(m) - p)

    def kernel_projector(self) -> np.ndarray:
        return np.eye(self.map.dim) - self.initial_projector


def _is_anti(x) -> bool:
    return isinstance(x, AntiLinearMap)


def apply(x, v) -> np.ndarray:
    v = as_vector(v)
    m = x.mat if _is_anti(x) else as_matrix(x)
    if m.shape[1] != v.shape[0]:
        raise DomainError(f"dimension mismatch: map {m.shape}, vector {v.shape}")
    return m @ np.conj(v) if _is_anti(x) else m @ v


def sharp_adjoint(x: AntiLinearMap) -> AntiLinearMap:
    """``X#`` with <Xx, y> = <X#y, x>; for the stored matrix this is the transpose."""
    return AntiLinearMap(x.mat.T)


def compose(left, right):
    """``left o right``; returns an ndarray when the result is linear."""
    lm = left.mat if _is_anti(left) else as_matrix(left)
    rm = right.mat if _is_anti(right) else as_matrix(right)
    if lm.shape[1] != rm.shape[0]:
        raise DomainError(f"dimension mismatch: {lm.shape} o {rm.shape}")
    if _is_anti(left):
        prod = lm @ np.conj(rm)
        return prod if _is_anti(right) else AntiLinearMap(prod)
    prod = lm @ rm
    return AntiLinearMap(prod) if _is_anti(right) else prod


def make_conjugation(s, tol: Tolerance = DEFAULT_TOL) -> Conjugation:
    s = np.asarray(s, dtype=complex)
    if s.ndim != 2 or s.shape[0] != s.shape[1] or s.shape[0] == 0:
        raise InvalidConjugation(f"conjugation matrix must be square, got {s.shape}")
    eye = np.eye(s.shape[0])
    if not tol.close(s @ adj(s), eye):
        raise InvalidConjugation("matrix is not unitary")
    if not tol.close(s, s.T):
        raise InvalidConjugation("matrix is not symmetric")
    return Conjugation(s)


def canonical(n: int) -> Conjugation:
    return Conjugation(np.eye(n))


def flip(n: int) -> Conjugation:
    """``(z1, ..., zn) -> (conj zn, ..., conj z1)``."""
    return Conjugation(np.eye(n)[::-1])


def random_conjugation(n: int, rng=None) -> Conjugation:
    """``S = U U^T`` for Haar U; every symmetric unitary has this form (Takagi)."""
    u = haar_unitary(n, rng)
    s = u @ u.T
    return Conjugation((s + s.T) / 2)


def is_antilinear_normal(x: AntiLinearMap, tol: Tolerance = DEFAULT_TOL) -> bool:
    m = x.mat
    return tol.close(m.T @ np.conj(m), m @ np.conj(m.T), scale=opnorm(m) ** 2)


def is_antiunitary(x: AntiLinearMap, tol: Tolerance = DEFAULT_TOL) -> bool:
    m = x.mat
    eye = np.eye(x.dim)
    return tol.close(m @ adj(m), eye) and tol.close(adj(m) @ m, eye)


def antilinear_kernel_projector(x: AntiLinearMap, tol: Tolerance = DEFAULT_TOL) -> np.ndarray:
    """Projector onto ker X; ``M conj(v) = 0`` iff ``v`` lies in ``conj(ker M)``."""
    return np.conj(np.eye(x.dim) - range_projector(adj(x.mat), tol))
