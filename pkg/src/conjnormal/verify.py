"""Seeded verification suites behind ``conjnormal verify``.

Trial ``k`` of a run with seed ``s`` draws everything from
``make_rng(s, k)``, so any single failure can be replayed in isolation and
reports are identical across runs. Residual checks use
``10·sqrt(n)·tol.bound(scale)`` as their limit, with ``scale`` the natural
norm of the quantity being compared.
"""
from __future__ import annotations

import time
from dataclasses import dataclass, field

import numpy as np

from .antilinear import AntiLinearMap, compose, flip, random_conjugation
from .cnormal import (c_normal_battery, cartesian_equivalences, is_c_skew, left_right_products,
                      shift_cnormal_criterion, symmetrizations, weighted_shift)
from .douglas import (antilinear_douglas, antilinear_polar, cnormal_polar, douglas_solve,
                      partial_isometry_factor)
from .ensembles import ginibre, make_rng
from .errors import ConjNormalError, DomainError
from .inequalities import product_singular_bound, self_commutator_bound, singular_value_sandwich
from .instances import (clustered_psd, commuting_antiunitary, commuting_conjugation,
                        normal_anticommuting, random_cnormal, random_normal_cnormal,
                        random_weights, rank_deficient)
from .numeric import DEFAULT_TOL, Tolerance, adj, frob, opnorm
from .serialize import map_to_json
from .structure import (cjp_factor, cjp_synthesize, conjugation_positive_factorization,
                        skew_structure, spectral_commutation_check)

__all__ = ["SUITES", "RunConfig", "SuiteReport", "run_suite", "run_trial"]

MAX_DIM = 64


@dataclass(frozen=True)
class RunConfig:
    seed: int = 0
    trials: int = 100
    dim_range: tuple[int, int] = (2, 16)
    tol: Tolerance = DEFAULT_TOL
    suite: str = "all"

    def __post_init__(self):
        lo, hi = self.dim_range
        if not 0 <= self.seed < 2 ** 64:
            raise DomainError("seed must be a 64-bit unsigned integer")
        if self.trials < 0:
            raise DomainError("trials must be non-negative")
        if not 1 <= lo <= hi <= MAX_DIM:
            raise DomainError(f"dim_range must satisfy 1 <= min <= max <= {MAX_DIM}")
        if self.suite not in SUITES and self.suite != "all":
            raise DomainError(f"unknown suite {self.suite!r}")


@dataclass
class SuiteReport:
    suite: str
    trials: int
    failures: list[dict] = field(default_factory=list)
    wall_time: float = 0.0

    @property
    def passed(self) -> bool:
        return not self.failures

    def to_json(self) -> dict:
        # wall time lives under its own key so the rest is byte-stable
        return {
            "suite": self.suite,
            "trials": self.trials,
            "passed": self.passed,
            "failures": self.failures,
            "timing": {"wall_time_s": self.wall_time},
        }


class _Trial:
    """Collects failed assertions for one trial."""

    def __init__(self, n: int, tol: Tolerance):
        self.n = n
        self.tol = tol
        self.instance: dict = {}
        self.failed: list[tuple[str, float]] = []

    def limit(self, scale: float = 1.0) -> float:
        return 10 * np.sqrt(self.n) * self.tol.bound(scale)

    def small(self, name: str, residual: float, scale: float = 1.0):
        if not residual <= self.limit(scale):
            self.failed.append((name, float(residual)))

    def holds(self, name: str, ok: bool, residual: float = float("nan")):
        if not ok:
            self.failed.append((name, float(residual)))


def _battery(rng, tr: _Trial):
    n = tr.n
    if rng.uniform() < 0.5:
        t, c, _, _ = random_cnormal(n, rng)
        expect = True
    else:
        t, c, expect = ginibre(n, n, rng), random_conjugation(n, rng), None
    tr.instance = {"T": map_to_json(t), "C": map_to_json(c)}
    rep = c_normal_battery(t, c, tr.tol)
    tr.holds("conditions_agree", rep.consistent, max(rep.residuals))
    if expect is not None:
        tr.holds("synthesized_is_c_normal", rep.verdict, rep.residuals[0])
    _, _, both = left_right_products(t, c, tr.tol)
    if expect:
        tr.holds("left_right_products_normal", both)
        s1, _ = symmetrizations(t)
        tr.holds("self_commutator_c_skew", is_c_skew(s1, c, tr.tol))
    # (T + CT*C)/2 is C-symmetric and (T - CT*C)/2 C-skew for every T
    scale = opnorm(t)
    ct = c.sandwich(adj(t))
    tr.small("cartesian_a_symmetric", frob(c.sandwich(adj(t + ct)) - (t + ct)), scale)
    tr.small("cartesian_b_skew", frob(c.sandwich(adj(t - ct)) + (t - ct)), scale)


def _douglas(rng, tr: _Trial):
    n = tr.n
    m = int(rng.integers(1, n + 1))
    rank = int(rng.integers(1, n + 1))
    b = rank_deficient(n, m, min(rank, m), rng) if rng.uniform() < 0.5 else ginibre(n, m, rng)
    x = ginibre(m, int(rng.integers(1, n + 1)), rng)
    a = b @ x
    tr.instance = {"A": map_to_json(a), "B": map_to_json(b)}
    sol = douglas_solve(a, b, tr.tol)
    res = sol.residuals(a, b, tr.tol)
    tr.small("reconstruction", res["reconstruction"], opnorm(b) * opnorm(x))
    tr.holds("kernel", res["kernel"] < 1e-8, res["kernel"])
    tr.small("range", res["range"], opnorm(sol.factor))
    tr.holds("norm_equals_k_min", res["norm"] <= 1e-7 * max(sol.k_min, 1e-300), res["norm"])
    # anti-linear version with an invertible S
    c = random_conjugation(n, rng)
    s = AntiLinearMap(ginibre(n, n, rng))
    tm = AntiLinearMap(ginibre(n, n, rng))
    r = antilinear_douglas(tm, s, c, tr.tol)
    tr.small("antilinear_reconstruction", frob(tm.mat - compose(s, r).mat),
             opnorm(s.mat) * opnorm(r))


def _polar(rng, tr: _Trial):
    n = tr.n
    rank = int(rng.integers(1, n + 1))
    a = AntiLinearMap(rank_deficient(n, n, rank, rng))
    c = random_conjugation(n, rng)
    tr.instance = {"A": map_to_json(a), "C": map_to_json(c)}
    pol = antilinear_polar(a, tr.tol, conjugation=c)
    na = frob(a.mat)
    tr.holds("antilinear_reconstruction", pol.residuals["reconstruction"] < 1e-9 * na,
             pol.residuals["reconstruction"])
    tr.small("antilinear_kernel", pol.residuals["kernel"])
    tr.small("antilinear_isometry", pol.residuals["isometry"])
    tr.small("conjugation_independence", pol.residuals["conjugation_independence"], opnorm(a.mat))

    t, c2, _, _ = random_cnormal(n, rng)
    scale = opnorm(t)
    part = cnormal_polar(t, c2, tr.tol)
    tr.small("cnormal_reconstruction", part.residuals["reconstruction"], scale)
    tr.holds("cnormal_commutation", part.residuals["commutation"] < 1e-8 * max(scale, 1.0),
             part.residuals["commutation"])
    ext = cnormal_polar(t, c2, tr.tol, extend=True)
    tr.holds("extended_unitarity", ext.residuals["unitarity"] < 1e-9 * np.sqrt(n) * 10,
             ext.residuals["unitarity"])

    tp, c3, _, _ = random_cnormal(n, rng, projection=True)
    u, p = partial_isometry_factor(tp, c3, tr.tol)
    tr.small("partial_isometry_reconstruction", frob(tp - u @ p))
    tr.small("partial_isometry_unitary", frob(u @ adj(u) - np.eye(n)))
    tr.holds("partial_isometry_factor_c_normal",
             c_normal_battery(u, c3, tr.tol).verdict)


def _cartesian(rng, tr: _Trial):
    n = tr.n
    t, c, _, _ = random_cnormal(n, rng)
    tr.instance = {"T": map_to_json(t), "C": map_to_json(c)}
    rep = cartesian_equivalences(t, c, tr.tol)
    tr.holds("equivalences", all(rep.equivalences), max(rep.residuals.values()))
    for name, ok in rep.consequences.items():
        tr.holds(name, ok, rep.residuals.get(name, float("nan")))
    g = ginibre(n, n, rng)
    cg = random_conjugation(n, rng)
    gen = cartesian_equivalences(g, cg, tr.tol)
    tr.holds("generic_agree", gen.consistent)
    # weighted shift against the flip battery, where the gap is decisive
    if n > 1:
        w = _shift_weights(n, rng)
        mags = np.abs(w)
        gap = float(np.max(np.abs(mags - mags[::-1])))
        crit = shift_cnormal_criterion(w, tr.tol)
        bat = c_normal_battery(weighted_shift(w), flip(n), tr.tol).verdict
        if gap == 0.0 or gap > 10 * tr.tol.bound(float(mags.max())):
            tr.holds("shift_criterion_agrees", crit == bat, gap)


def _shift_weights(n: int, rng) -> np.ndarray:
    """Random shift weights; half the time with palindromic magnitudes."""
    w = random_weights(n, rng)
    if rng.uniform() < 0.5:
        mags = np.abs(w)
        w = np.maximum(mags, mags[::-1]) * np.exp(1j * np.angle(w))
    return w


def _structure(rng, tr: _Trial):
    n = tr.n
    t, c, _, _, _ = normal_anticommuting(n, rng)
    tr.instance = {"T": map_to_json(t), "C": map_to_json(c)}
    sk = skew_structure(t, c, tr.tol)
    scale = max(opnorm(t), 1.0)
    tr.holds("skew_reconstruction", sk.residuals["reconstruction"] < 1e-8 * scale,
             sk.residuals["reconstruction"])
    tr.holds("t3_hermitian", sk.residuals["t3_hermitian"] < 1e-9 * scale * 10 * np.sqrt(n),
             sk.residuals["t3_hermitian"])
    tr.small("eigenspace_swap", sk.residuals["eigenspace_swap"])

    tn, cn, _, _ = random_normal_cnormal(n, rng)
    sp = spectral_commutation_check(tn, cn, tr.tol)
    tr.holds("conj_commutes", sp.conj_commutes, sp.residuals["conj"])
    tr.holds("ct_commutes", sp.ct_commutes, sp.residuals["ct"])
    tg, cg, _, _ = random_cnormal(n, rng)
    spg = spectral_commutation_check(tg, cg, tr.tol)
    tr.holds("ct_commutes_non_normal", spg.ct_commutes, spg.residuals["ct"])

    psd = clustered_psd(n, rng)
    cc = commuting_conjugation(psd, rng)
    blocks = conjugation_positive_factorization(psd.P, cc, tr.tol)
    for name in ("reassembly", "symmetric", "unitary"):
        tr.small(f"blocks_{name}", blocks.residuals[name])

    j = commuting_antiunitary(psd, rng)
    cj = random_conjugation(n, rng)
    ts = cjp_synthesize(cj, j, psd.P, tr.tol)
    jf, pf = cjp_factor(ts, cj, tr.tol)
    tr.small("cjp_round_trip", frob(ts - cj.mat @ np.conj(jf.mat) @ pf), opnorm(ts))


def _inequalities(rng, tr: _Trial):
    n = tr.n
    t, c, _, _ = random_cnormal(n, rng)
    tr.instance = {"T": map_to_json(t), "C": map_to_json(c)}
    sw = singular_value_sandwich(t, c, tr.tol)
    reports = [sw.lower, sw.upper, product_singular_bound(t, c, tr.tol),
               self_commutator_bound(t, c, tr.tol)]
    for rep in reports:
        tr.holds(rep.name, rep.min_slack >= -1e-8 * max(1.0, float(rep.rhs.max())),
                 rep.min_slack)
    tr.small("moduli_commute", sw.residuals["moduli_commute"], opnorm(t))


SUITES = {
    "battery": _battery,
    "douglas": _douglas,
    "polar": _polar,
    "cartesian": _cartesian,
    "structure": _structure,
    "inequalities": _inequalities,
}


def run_trial(suite: str, seed: int, offset: int, dim_range: tuple[int, int],
              tol: Tolerance = DEFAULT_TOL) -> list[dict]:
    """Run one trial and return its failure records (empty when it passes)."""
    rng = make_rng(seed, offset)
    n = int(rng.integers(dim_range[0], dim_range[1] + 1))
    tr = _Trial(n, tol)
    try:
        SUITES[suite](rng, tr)
    except ConjNormalError as exc:
        tr.failed.append((f"raised {type(exc).__name__}: {exc}", float("nan")))
    return [{"suite": suite, "seed_offset": offset, "dim": n, "instance": tr.instance,
             "assertion": name, "residual": None if np.isnan(r) else r}
            for name, r in tr.failed]


def run_suite(config: RunConfig) -> SuiteReport:
    names = list(SUITES) if config.suite == "all" else [config.suite]
    start = time.perf_counter()
    failures = []
    for name in names:
        for k in range(config.trials):
            failures.extend(run_trial(name, config.seed, k, config.dim_range, config.tol))
    return SuiteReport(config.suite, config.trials, failures, time.perf_counter() - start)
