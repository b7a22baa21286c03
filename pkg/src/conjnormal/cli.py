"""Command-line front end.

Exit codes: 0 pass, 1 predicate false or operation failure, 2 input error.
The result document is always JSON on stdout (or in ``--out``). By default
it is indented and a one-line summary goes to stderr; ``--json`` gives
compact JSON and keeps stderr for errors only.
"""
from __future__ import annotations

import argparse
import re
import sys
from pathlib import Path

import numpy as np

from . import __version__
from .antilinear import AntiLinearMap, Conjugation, flip, make_conjugation, random_conjugation
from .cnormal import c_normal_battery, cartesian_decompose, shift_cnormal_criterion, weighted_shift
from .douglas import antilinear_polar, cnormal_polar, douglas_solve
from .ensembles import make_rng
from .errors import ConjNormalError, DomainError
from .instances import (clustered_psd, commuting_antiunitary, normal_anticommuting,
                        random_cnormal)
from .numeric import Tolerance, adj, frob, opnorm
from .serialize import (battery_to_json, bundle, dump_json, load_json, map_from_json,
                        map_to_json, matrix_from_json)
from .structure import cjp_factor, skew_structure
from .verify import MAX_DIM, SUITES, RunConfig, run_suite

EXIT_OK, EXIT_FALSE, EXIT_INPUT = 0, 1, 2

DECOMPOSE_KINDS = ("cartesian", "polar", "cnormal-polar", "skew-structure", "cjp", "douglas")
GEN_KINDS = ("conjugation", "cnormal", "normal-anticommuting", "commuting-jp")

_NUM = r"(?:\d+(?:\.\d*)?|\.\d+)(?:[eE][+-]?\d+)?"
_REAL = re.compile(rf"[+-]?{_NUM}")
_IMAG = re.compile(rf"(?P<sign>[+-]?)(?P<mag>{_NUM})?[ij]")
_FULL = re.compile(rf"(?P<re>[+-]?{_NUM})(?P<sign>[+-])(?P<mag>{_NUM})?[ij]")


class InputError(Exception):
    """Bad command-line input; maps to exit code 2."""


def parse_complex(text: str) -> complex:
    """Parse ``a``, ``bi`` or ``a+bi`` (``j`` also accepted), independent of locale."""
    s = text.strip()
    if _REAL.fullmatch(s):
        return complex(float(s), 0.0)
    m = _IMAG.fullmatch(s)
    re_part = 0.0
    if m is None:
        m = _FULL.fullmatch(s)
        if m is None:
            raise InputError(f"cannot parse complex number {text!r}")
        re_part = float(m["re"])
    mag = float(m["mag"]) if m["mag"] else 1.0
    return complex(re_part, -mag if m["sign"] == "-" else mag)


def parse_weights(text: str) -> np.ndarray:
    items = [t for t in re.split(r"[,\s]+", text.strip()) if t]
    if not items:
        raise InputError("need at least one weight")
    return np.array([parse_complex(t) for t in items])


def _tol(args) -> Tolerance:
    try:
        return Tolerance(args.tol_rel, args.tol_abs)
    except DomainError as exc:
        raise InputError(str(exc)) from None


def _input_error(path, exc) -> InputError:
    msg = str(exc)
    return InputError(msg if str(path) in msg else f"{path}: {msg}")


def _load_map(path, tol, kind="linear"):
    try:
        return map_from_json(load_json(path), tol, default_kind=kind)
    except DomainError as exc:
        raise _input_error(path, exc) from None


def _load_matrix(path, square=True) -> np.ndarray:
    try:
        m = matrix_from_json(load_json(path))
    except DomainError as exc:
        raise _input_error(path, exc) from None
    if square and m.shape[0] != m.shape[1]:
        raise InputError(f"{path}: expected a square matrix, got {m.shape}")
    return m


def _load_pair(args, tol) -> tuple[np.ndarray, Conjugation]:
    t = _load_matrix(args.T)
    c = _load_map(args.C, tol, kind="conjugation")
    if not isinstance(c, Conjugation):
        c = _as_conjugation(c, tol)
    if c.dim != t.shape[0]:
        raise InputError(f"dimension mismatch: T is {t.shape[0]}, C is {c.dim}")
    return t, c


def _as_conjugation(x, tol) -> Conjugation:
    mat = x.mat if isinstance(x, AntiLinearMap) else x
    try:
        return make_conjugation(mat, tol)
    except DomainError as exc:
        raise InputError(str(exc)) from None


def _passed(residuals: dict, tol: Tolerance, n: int, scale: float) -> bool:
    limit = 10 * np.sqrt(n) * tol.bound(max(scale, 1.0))
    return all(r <= limit for r in residuals.values())


def cmd_check(args) -> tuple[dict, int, str]:
    tol = _tol(args)
    t, c = _load_pair(args, tol)
    rep = c_normal_battery(t, c, tol)
    code = EXIT_OK if rep.verdict else EXIT_FALSE
    return battery_to_json(rep), code, f"verdict: {str(rep.verdict).lower()}"


def _decompose(kind, args, tol) -> dict:
    if kind == "douglas":
        a = _load_matrix(args.inputs[0], square=False)
        b = _load_matrix(args.inputs[1], square=False)
        if a.shape[0] != b.shape[0]:
            raise InputError(f"row mismatch: A is {a.shape}, B is {b.shape}")
        sol = douglas_solve(a, b, tol)
        res = sol.residuals(a, b, tol)
        scale = opnorm(b) * opnorm(sol.factor)
        return bundle({"X": sol.factor}, res, _passed(res, tol, b.shape[0], scale ** 2),
                      norm_sq=sol.norm_sq, k_min=sol.k_min)
    if kind == "polar":
        a = _load_map(args.inputs[0], tol, kind="antilinear")
        a = a if isinstance(a, AntiLinearMap) else AntiLinearMap(a)
        c = _as_conjugation(_load_map(args.inputs[1], tol, "conjugation"), tol) \
            if len(args.inputs) > 1 else None
        pol = antilinear_polar(a, tol, conjugation=c)
        return bundle({"J": pol.J, "modulus": pol.modulus}, pol.residuals,
                      _passed(pol.residuals, tol, a.dim, opnorm(a.mat)))

    args.T, args.C = args.inputs[0], args.inputs[1]
    t, c = _load_pair(args, tol)
    n, scale = t.shape[0], opnorm(t)
    if kind == "cartesian":
        pair = cartesian_decompose(t, c)
        res = {**pair.residuals(c), "reconstruction": frob(t - pair.T)}
        return bundle({"A": pair.A, "B": pair.B}, res, _passed(res, tol, n, scale))
    if kind == "cnormal-polar":
        pol = cnormal_polar(t, c, tol, extend=args.extend)
        return bundle({"J": pol.J, "P": pol.modulus}, pol.residuals,
                      _passed(pol.residuals, tol, n, scale), extended=pol.extended)
    if kind == "skew-structure":
        sk = skew_structure(t, c, tol)
        return bundle({"W": sk.unitary, "T1": sk.block_plus, "T3": sk.block_imag},
                      sk.residuals, _passed(sk.residuals, tol, n, scale))
    # cjp
    j, p = cjp_factor(t, c, tol)
    res = {"reconstruction": frob(t - c.mat @ np.conj(j.mat) @ p),
           "commutation": frob(j.mat @ np.conj(p) - p @ j.mat),
           "unitarity": frob(j.mat @ adj(j.mat) - np.eye(n))}
    return bundle({"J": j, "P": p}, res, _passed(res, tol, n, scale))


def cmd_decompose(args) -> tuple[dict, int, str]:
    tol = _tol(args)
    need = 1 if args.kind == "polar" else 2
    if not need <= len(args.inputs) <= 2:
        count = "2" if need == 2 else "1 or 2"
        raise InputError(f"decompose {args.kind} takes {count} input files")
    try:
        out = _decompose(args.kind, args, tol)
    except ConjNormalError as exc:
        name = type(exc).__name__
        return {"error": name, "message": str(exc)}, EXIT_FALSE, f"{name}: {exc}"
    code = EXIT_OK if out["passed"] else EXIT_FALSE
    return out, code, f"{args.kind}: passed={str(out['passed']).lower()}"


def cmd_shift(args) -> tuple[dict, int, str]:
    tol = _tol(args)
    if args.weights is not None and args.file is not None:
        raise InputError("give either --weights or --file, not both")
    if args.weights is not None:
        text = args.weights
    elif args.file is not None:
        try:
            text = Path(args.file).read_text()
        except OSError as exc:
            raise InputError(f"cannot read {args.file}: {exc.strerror}") from None
    else:
        raise InputError("need --weights or --file")
    w = parse_weights(text)
    t = weighted_shift(w)
    crit = shift_cnormal_criterion(w, tol)
    bat = c_normal_battery(t, flip(t.shape[0]), tol)
    out = {
        "weights": [[float(z.real), float(z.imag)] for z in w],
        "matrix": map_to_json(t),
        "criterion": crit,
        "battery": bat.verdict,
        "agree": crit == bat.verdict,
        "verdict": crit,
    }
    return out, EXIT_OK if crit else EXIT_FALSE, f"verdict: {str(crit).lower()}"


def cmd_verify(args) -> tuple[dict, int, str]:
    try:
        config = RunConfig(seed=args.seed, trials=args.trials,
                           dim_range=(args.dim_min, args.dim_max), tol=_tol(args),
                           suite=args.suite)
    except DomainError as exc:
        raise InputError(str(exc)) from None
    rep = run_suite(config)
    out = rep.to_json()
    out["config"] = {"seed": config.seed, "trials": config.trials,
                     "dim_range": list(config.dim_range),
                     "tol": {"eps_rel": config.tol.eps_rel, "eps_abs": config.tol.eps_abs}}
    return (out, EXIT_OK if rep.passed else EXIT_FALSE,
            f"{config.suite}: {len(rep.failures)} failures in {config.trials} trials")


def generate(kind: str, n: int, seed: int) -> dict:
    """Named matrices for a generated instance; deterministic in ``(kind, n, seed)``."""
    rng = make_rng(seed, 0)
    if kind == "conjugation":
        return {"C": random_conjugation(n, rng)}
    if kind == "cnormal":
        t, c, j, p = random_cnormal(n, rng)
        return {"T": t, "C": c, "J": j, "P": p}
    if kind == "normal-anticommuting":
        t, c, w, _, _ = normal_anticommuting(n, rng)
        return {"T": t, "C": c, "W": w}
    psd = clustered_psd(n, rng)
    return {"J": commuting_antiunitary(psd, rng), "P": psd.P}


def _gen_checks(kind: str, mats: dict, tol: Tolerance) -> dict:
    if kind == "conjugation":
        c = mats["C"]
        return {"symmetric": frob(c.mat - c.mat.T),
                "unitary": frob(c.mat @ adj(c.mat) - np.eye(c.dim))}
    if kind == "cnormal":
        return {"battery_verdict": c_normal_battery(mats["T"], mats["C"], tol).verdict}
    if kind == "normal-anticommuting":
        t, c = mats["T"], mats["C"]
        return {"anticommutation": frob(c.sandwich(t) + t)}
    j, p = mats["J"].mat, mats["P"]
    return {"commutation": frob(j @ np.conj(p) - p @ j)}


def cmd_gen(args) -> tuple[dict, int, str]:
    if not 1 <= args.dim <= MAX_DIM:
        raise InputError(f"--dim must be in [1, {MAX_DIM}]")
    if not 0 <= args.seed < 2 ** 64:
        raise InputError("--seed must be a 64-bit unsigned integer")
    mats = generate(args.kind, args.dim, args.seed)
    out = {
        "kind": args.kind,
        "dim": args.dim,
        "seed": args.seed,
        "matrices": {name: map_to_json(m) for name, m in mats.items()},
        "checks": _gen_checks(args.kind, mats, _tol(args)),
    }
    return out, EXIT_OK, f"generated {args.kind} of dimension {args.dim}"


def _global_flags(suppress: bool) -> argparse.ArgumentParser:
    # subcommands re-declare the flags with SUPPRESS so they may appear on
    # either side of the subcommand without clobbering each other
    def d(value):
        return argparse.SUPPRESS if suppress else value

    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--tol-rel", type=float, default=d(1e-9))
    common.add_argument("--tol-abs", type=float, default=d(1e-12))
    common.add_argument("--seed", type=int, default=d(0))
    common.add_argument("--out", default=d(None),
                        help="write the JSON result here (a directory for gen)")
    common.add_argument("--json", action="store_true", default=d(False),
                        help="JSON only, no summary on stderr")
    return common


def build_parser() -> argparse.ArgumentParser:
    common = _global_flags(suppress=True)
    parser = argparse.ArgumentParser(prog="conjnormal", parents=[_global_flags(False)],
                                     description="Conjugate-normal operator toolkit.")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("check", parents=[common], help="run the C-normality battery")
    p.add_argument("T")
    p.add_argument("C")
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("decompose", parents=[common], help="compute a decomposition")
    p.add_argument("kind", choices=DECOMPOSE_KINDS)
    p.add_argument("inputs", nargs="+", help="T C (A for polar, A B for douglas)")
    p.add_argument("--extend", action="store_true", help="cnormal-polar: anti-unitary J")
    p.set_defaults(func=cmd_decompose)

    p = sub.add_parser("shift", parents=[common], help="weighted shift criterion")
    p.add_argument("--weights", help='comma-separated complex weights, e.g. "1,0+1i"')
    p.add_argument("--file", help="file holding the weights in the same syntax")
    p.set_defaults(func=cmd_shift)

    p = sub.add_parser("verify", parents=[common], help="run a seeded verification suite")
    p.add_argument("--suite", choices=[*SUITES, "all"], default="all")
    p.add_argument("--trials", type=int, default=100)
    p.add_argument("--dim-min", type=int, default=2)
    p.add_argument("--dim-max", type=int, default=16)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("gen", parents=[common], help="generate a random instance")
    p.add_argument("kind", choices=GEN_KINDS)
    p.add_argument("--dim", type=int, default=4)
    p.set_defaults(func=cmd_gen)
    return parser


def _emit(args, out: dict):
    indent = None if args.json else 2
    if args.out is None:
        sys.stdout.write(dump_json(out, indent))
        return
    target = Path(args.out)
    if args.command == "gen":
        target.mkdir(parents=True, exist_ok=True)
        for name, mat in out["matrices"].items():
            (target / f"{name}.json").write_text(dump_json(mat, indent))
        summary = {k: v for k, v in out.items() if k != "matrices"}
        summary["files"] = sorted(f"{name}.json" for name in out["matrices"])
        sys.stdout.write(dump_json(summary, indent))
    else:
        target.write_text(dump_json(out, indent))


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_INPUT if exc.code else EXIT_OK
    try:
        out, code, summary = args.func(args)
        _emit(args, out)
    except (InputError, DomainError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    if not args.json or "error" in out:
        print(summary, file=sys.stderr)
    return code


if __name__ == "__main__":
    sys.exit(main())
