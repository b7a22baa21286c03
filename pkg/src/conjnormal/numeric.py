"""Dense complex linear algebra used by every other module.

Matrices are plain ``complex128`` numpy arrays. All rank and equality
decisions go through a single :class:`Tolerance` so that results are
reproducible and tunable from one place.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DomainError, NumericalFailure

__all__ = [
    "Tolerance", "DEFAULT_TOL", "SvdResult",
    "as_matrix", "as_vector", "adj", "frob", "opnorm", "commutator",
    "svd", "eig_hermitian", "pinv", "sqrt_psd", "modulus",
    "range_projector", "kernel_projector", "null_basis", "numerical_rank",
    "psd_leq", "is_hermitian", "is_unitary", "is_normal", "cluster_indices",
    "direct_sum",
]


@dataclass(frozen=True)
class Tolerance:
    """Numerical equality policy.

    ``X ~ Y`` iff ``||X - Y||_F <= eps_abs + eps_rel * max(||X||_F, ||Y||_F, scale)``.
    ``scale`` lets callers supply the natural size of the operands when both
    sides of an identity can legitimately be tiny (e.g. commutators).
    A singular value counts as nonzero iff it exceeds ``cutoff(sigma_max)``.
    """

    eps_rel: float = 1e-9
    eps_abs: float = 1e-12

    def __post_init__(self):
        if not (self.eps_rel >= 0 and self.eps_abs >= 0):
            raise DomainError("tolerances must be nonnegative")

    def bound(self, scale: float) -> float:
        return self.eps_abs + self.eps_rel * scale

    def cutoff(self, sigma_max: float) -> float:
        return self.eps_abs + self.eps_rel * sigma_max

    def close(self, x, y, scale: float = 0.0) -> bool:
        return self.residual(x, y) <= self.threshold(x, y, scale)

    def threshold(self, x, y, scale: float = 0.0) -> float:
        return self.bound(max(frob(x), frob(y), scale))

    @staticmethod
    def residual(x, y) -> float:
        return frob(np.asarray(x) - np.asarray(y))


DEFAULT_TOL = Tolerance()


@dataclass(frozen=True)
class SvdResult:
    U: np.ndarray
    sigma: np.ndarray
    V: np.ndarray

    def reconstruct(self) -> np.ndarray:
        k = len(self.sigma)
        return (self.U[:, :k] * self.sigma) @ adj(self.V[:, :k])


def as_matrix(a, square: bool = False) -> np.ndarray:
    m = np.asarray(a, dtype=complex)
    if m.ndim != 2 or 0 in m.shape:
        raise DomainError(f"expected a nonempty 2-D matrix, got shape {m.shape}")
    if square and m.shape[0] != m.shape[1]:
        raise DomainError(f"expected a square matrix, got shape {m.shape}")
    if not np.all(np.isfinite(m)):
        raise DomainError("matrix has non-finite entries")
    return m


def as_vector(x) -> np.ndarray:
    v = np.asarray(x, dtype=complex)
    if v.ndim != 1:
        raise DomainError(f"expected a vector, got shape {v.shape}")
    return v


def adj(a: np.ndarray) -> np.ndarray:
    return a.conj().T


def frob(a) -> float:
    a = np.asarray(a)
    return float(np.linalg.norm(a)) if a.size else 0.0


def opnorm(a) -> float:
    a = np.asarray(a)
    if a.size == 0:
        return 0.0
    return float(np.linalg.norm(a, 2))


def commutator(x: np.ndarray, y: np.ndarray) -> np.ndarray:
    return x @ y - y @ x


def svd(a) -> SvdResult:
    """Full SVD with singular values in descending order."""
    a = as_matrix(a)
    try:
        u, s, vh = np.linalg.svd(a)
    except np.linalg.LinAlgError as exc:
        raise NumericalFailure(f"SVD did not converge: {exc}") from exc
    return SvdResult(U=u, sigma=s, V=adj(vh))


def is_hermitian(h, tol: Tolerance = DEFAULT_TOL) -> bool:
    h = np.asarray(h)
    return h.shape[0] == h.shape[1] and tol.close(h, adj(h))


def is_unitary(u, tol: Tolerance = DEFAULT_TOL) -> bool:
    u = np.asarray(u)
    if u.shape[0] != u.shape[1]:
        return False
    eye = np.eye(u.shape[0])
    return tol.close(u @ adj(u), eye) and tol.close(adj(u) @ u, eye)


def is_normal(t, tol: Tolerance = DEFAULT_TOL) -> bool:
    t = np.asarray(t)
    return tol.close(t @ adj(t), adj(t) @ t, scale=opnorm(t) ** 2)


def eig_hermitian(h, tol: Tolerance = DEFAULT_TOL) -> tuple[np.ndarray, np.ndarray]:
    """Eigenvalues (descending) and orthonormal eigenvectors of a Hermitian matrix."""
    h = as_matrix(h, square=True)
    if not is_hermitian(h, tol):
        raise DomainError("matrix is not Hermitian")
    h = (h + adj(h)) / 2
    try:
        w, v = np.linalg.eigh(h)
    except np.linalg.LinAlgError as exc:
        raise NumericalFailure(f"eigh did not converge: {exc}") from exc
    return w[::-1].copy(), v[:, ::-1].copy()


def numerical_rank(sigma: np.ndarray, tol: Tolerance = DEFAULT_TOL) -> int:
    if len(sigma) == 0:
        return 0
    return int(np.sum(sigma > tol.cutoff(sigma[0])))


def pinv(a, tol: Tolerance = DEFAULT_TOL) -> np.ndarray:
    """Moore-Penrose pseudoinverse with the shared rank cutoff."""
    res = svd(a)
    r = numerical_rank(res.sigma, tol)
    return (res.V[:, :r] / res.sigma[:r]) @ adj(res.U[:, :r])


def sqrt_psd(h, tol: Tolerance = DEFAULT_TOL) -> np.ndarray:
    """PSD square root; eigenvalues in ``[-cutoff, 0)`` are treated as roundoff."""
    w, v = eig_hermitian(h, tol)
    cut = tol.cutoff(float(np.max(np.abs(w))))
    if w[-1] < -cut:
        raise DomainError(f"matrix is not PSD (eigenvalue {w[-1]:.3e})")
    w = np.where(w > cut, w, 0.0)
    return (v * np.sqrt(w)) @ adj(v)


def modulus(t) -> np.ndarray:
    """``|T| = (T*T)^(1/2)``, taken from the SVD to avoid squaring the condition number."""
    res = svd(t)
    k = len(res.sigma)
    v = res.V[:, :k]
    return (v * res.sigma) @ adj(v)


def range_projector(a, tol: Tolerance = DEFAULT_TOL) -> np.ndarray:
    res = svd(a)
    r = numerical_rank(res.sigma, tol)
    u = res.U[:, :r]
    return u @ adj(u)


def kernel_projector(a, tol: Tolerance = DEFAULT_TOL) -> np.ndarray:
    """Orthogonal projector onto ker(A), i.e. ``I - range_projector(A*)``."""
    a = as_matrix(a)
    return np.eye(a.shape[1]) - range_projector(adj(a), tol)


def null_basis(a, tol: Tolerance = DEFAULT_TOL) -> np.ndarray:
    """Orthonormal columns spanning ker(A)."""
    res = svd(a)
    r = numerical_rank(res.sigma, tol)
    return res.V[:, r:]


def psd_leq(a, b, tol: Tolerance = DEFAULT_TOL) -> bool:
    """Loewner order ``A <= B`` for Hermitian A, B."""
    a = as_matrix(a, square=True)
    b = as_matrix(b, square=True)
    if not (is_hermitian(a, tol) and is_hermitian(b, tol)):
        raise DomainError("psd_leq needs Hermitian arguments")
    d = b - a
    d = (d + adj(d)) / 2
    return bool(np.linalg.eigvalsh(d)[0] >= -tol.bound(frob(d)))


def cluster_indices(values: np.ndarray, tol: Tolerance = DEFAULT_TOL) -> list[np.ndarray]:
    """Group sorted (descending) reals into clusters of numerically equal values.

    Neighbours closer than ``eps_abs + eps_rel * max|value|`` share a cluster.
    """
    values = np.asarray(values, dtype=float)
    if len(values) == 0:
        return []
    gap = tol.bound(float(np.max(np.abs(values))))
    groups, current = [], [0]
    for i in range(1, len(values)):
        if abs(values[i - 1] - values[i]) <= gap:
            current.append(i)
        else:
            groups.append(np.array(current))
            current = [i]
    groups.append(np.array(current))
    return groups


def direct_sum(*blocks) -> np.ndarray:
    rows = sum(b.shape[0] for b in blocks)
    cols = sum(b.shape[1] for b in blocks)
    out = np.zeros((rows, cols), dtype=complex)
    i = j = 0
    for b in blocks:
        out[i:i + b.shape[0], j:j + b.shape[1]] = b
        i += b.shape[0]
        j += b.shape[1]
    return out
