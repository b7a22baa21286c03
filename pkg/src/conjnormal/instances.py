"""Random test instances with known structure.

Each generator takes a ``numpy.random.Generator`` (see
:func:`conjnormal.ensembles.make_rng`) and returns plain arrays and
conjugations. Eigenvalue clusters are kept at least ``0.1`` apart so that
numerical clustering recovers them unambiguously.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .antilinear import AntiLinearMap, Conjugation, random_conjugation
from .ensembles import ginibre, haar_unitary
from .numeric import adj, direct_sum

__all__ = [
    "ClusteredPSD", "random_partition", "clustered_psd", "commuting_antiunitary",
    "commuting_conjugation", "random_cnormal", "random_normal_cnormal",
    "normal_anticommuting", "random_weights", "rank_deficient",
]


@dataclass(frozen=True)
class ClusteredPSD:
    P: np.ndarray
    basis: np.ndarray
    values: np.ndarray
    sizes: tuple[int, ...]

    def block_unitary(self, blocks) -> np.ndarray:
        """``V (⊕ blocks) V^T``: the matrix of the anti-linear map acting blockwise."""
        return self.basis @ direct_sum(*blocks) @ self.basis.T


def random_partition(n: int, rng, max_part: int = 3) -> tuple[int, ...]:
    parts = []
    while n > 0:
        k = int(rng.integers(1, min(max_part, n) + 1))
        parts.append(k)
        n -= k
    return tuple(parts)


def clustered_psd(n: int, rng, allow_zero: bool = True, max_part: int = 3,
                  projection: bool = False) -> ClusteredPSD:
    """PSD ``P = V diag(p) V*`` with repeated eigenvalues in a random cluster pattern.

    With ``projection=True`` the eigenvalues are 0 and 1 only.
    """
    if projection:
        rank = int(rng.integers(0, n + 1))
        pairs = [(s, v) for s, v in ((rank, 1.0), (n - rank, 0.0)) if s]
        sizes = tuple(s for s, _ in pairs)
        values = np.array([v for _, v in pairs])
    else:
        sizes = random_partition(n, rng, max_part)
        k = len(sizes)
        values = 0.3 + np.cumsum(0.1 + rng.uniform(0, 2.7 / k, size=k))
        values = rng.permutation(values)
        if allow_zero and k > 1 and rng.uniform() < 0.3:
            values[0] = 0.0
    v = haar_unitary(n, rng)
    diag = np.repeat(values, sizes)
    return ClusteredPSD((v * diag) @ adj(v), v, values, tuple(sizes))


def commuting_antiunitary(psd: ClusteredPSD, rng) -> AntiLinearMap:
    """Anti-unitary J with ``J P = P J``: Haar unitary blocks on each eigenspace."""
    return AntiLinearMap(psd.block_unitary([haar_unitary(s, rng) for s in psd.sizes]))


def commuting_conjugation(psd: ClusteredPSD, rng) -> Conjugation:
    """Conjugation commuting with P, built from symmetric unitary blocks."""
    blocks = [random_conjugation(s, rng).mat for s in psd.sizes]
    s = psd.block_unitary(blocks)
    return Conjugation((s + s.T) / 2)


def random_cnormal(n: int, rng, conjugation: Conjugation | None = None,
                   projection: bool = False):
    """C-normal ``T = C J P``; returns ``(T, C, J, P)``."""
    psd = clustered_psd(n, rng, projection=projection)
    j = commuting_antiunitary(psd, rng)
    c = conjugation if conjugation is not None else random_conjugation(n, rng)
    t = c.mat @ np.conj(j.mat) @ psd.P
    return t, c, j, psd.P


def random_normal_cnormal(n: int, rng):
    """Normal and C-normal ``T = C J P`` with C and J both commuting with P."""
    psd = clustered_psd(n, rng)
    j = commuting_antiunitary(psd, rng)
    c = commuting_conjugation(psd, rng)
    t = c.mat @ np.conj(j.mat) @ psd.P
    return t, c, j, psd.P


def normal_anticommuting(n: int, rng, k: int | None = None):
    """Normal T and conjugation C with ``CTC = -T``, built as ``W (T1 ⊕ -T1* ⊕ iT3) W*``.

    T1 is normal with spectrum in ``Re > 0.2``, T3 Hermitian. Returns
    ``(T, C, W, T1, T3)``.
    """
    if k is None:
        k = int(rng.integers(0, n // 2 + 1))
    m = n - 2 * k
    u1 = haar_unitary(k, rng) if k else np.zeros((0, 0))
    lam = rng.uniform(0.2, 2.0, k) + 1j * rng.uniform(-2.0, 2.0, k)
    t1 = (u1 * lam) @ adj(u1)
    u3 = haar_unitary(m, rng) if m else np.zeros((0, 0))
    t3 = (u3 * rng.uniform(-2.0, 2.0, m)) @ adj(u3)
    s1 = u1 @ u1.T
    s3 = u3 @ u3.T
    s0 = np.zeros((n, n), dtype=complex)
    s0[:k, k:2 * k] = s1
    s0[k:2 * k, :k] = s1.T
    s0[2 * k:, 2 * k:] = s3
    w = haar_unitary(n, rng)
    t = w @ direct_sum(t1, -adj(t1), 1j * t3) @ adj(w)
    s = w @ s0 @ w.T
    return t, Conjugation((s + s.T) / 2), w, t1, t3


def random_weights(n: int, rng) -> np.ndarray:
    """``n - 1`` shift weights with magnitudes in [0.5, 2] and uniform phases."""
    mags = rng.uniform(0.5, 2.0, n - 1)
    return mags * np.exp(2j * np.pi * rng.uniform(size=n - 1))


def rank_deficient(rows: int, cols: int, rank: int, rng) -> np.ndarray:
    return ginibre(rows, rank, rng) @ ginibre(rank, cols, rng)
