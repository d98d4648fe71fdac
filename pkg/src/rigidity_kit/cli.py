"""rigidity-kit command line: table verification, audits, regularity checks.

Exit codes: 0 clean, 1 findings (holds=false outside the known-flag ledger,
or a FAIL verdict), 2 usage or I/O errors.
"""
from __future__ import annotations

import argparse
import json
import os
import random
import sys
from importlib import resources
from typing import Sequence

from .algebra import upoly
from .algebra.textio import PolyFormatError
from .mps import (
    MPSParams,
    find_singular_points,
    format_model,
    parse_model,
    random_form,
    random_model,
    section_gamma,
)
from .regcheck import FAIL, CheckConfig, check_point
from .thresholds import (
    AuditResult,
    degree_window_audit,
    epsilon_formula_audit,
    epsilon_min_audit,
    exclusion_main_audit,
    exclusion_s3_audit,
    exclusion_smooth_audit,
    hilbert_convexity_audit,
    hilbert_quadric,
    pair_codim_audit,
    prop15_codim,
    rank_stratum_codim,
    reducible_divisor_codim_audit,
    reduction_step_audit,
    summarize,
    verify_all_tables,
)
from .thresholds.tables import is_admissible, rho_of

EXIT_OK, EXIT_FINDINGS, EXIT_USAGE = 0, 1, 2

AUDIT_IDS = ("hilbert", "hilbert-convexity", "prop14", "prop15", "exclusion-main",
             "exclusion-s3", "exclusion-smooth", "reduction-step", "epsilon-min",
             "degree-window", "epsilon-formula")


class UsageError(Exception):
    pass


def _workers() -> int:
    raw = os.environ.get("RIGIDITY_KIT_THREADS", "1")
    try:
        n = int(raw)
    except ValueError:
        raise UsageError(f"RIGIDITY_KIT_THREADS must be an integer, got {raw!r}")
    if n < 1:
        raise UsageError("RIGIDITY_KIT_THREADS must be positive")
    return n


def _dump(obj) -> str:
    return json.dumps(obj, sort_keys=True, indent=2) + "\n"


def _emit(text: str, path: str | None) -> None:
    if path is None:
        sys.stdout.write(text)
        return
    try:
        with open(path, "w") as fh:
            fh.write(text)
    except OSError as exc:
        raise UsageError(f"cannot write {path}: {exc}")


# -- known flags -------------------------------------------------------------

def load_known_flags(path: str | None) -> set[tuple[str, int, int]]:
    """Parse a ledger of 'claim_id d l' lines ('#' starts a comment)."""
    if path is None:
        text = resources.files("rigidity_kit").joinpath("data/known_flags.txt").read_text()
    else:
        try:
            with open(path) as fh:
                text = fh.read()
        except OSError as exc:
            raise UsageError(f"cannot read {path}: {exc}")
    out = set()
    for n, line in enumerate(text.splitlines(), 1):
        body = line.split("#", 1)[0].split()
        if not body:
            continue
        if len(body) != 3:
            raise UsageError(f"known-flag ledger line {n}: expected 'claim_id d l'")
        try:
            out.add((body[0], int(body[1]), int(body[2])))
        except ValueError:
            raise UsageError(f"known-flag ledger line {n}: d and l must be integers")
    return out


def compare_flags(results: Sequence[AuditResult], known: set, l_max: int, d_max: int) -> dict:
    flagged = {(r.claim_id, r.context.get("d"), r.context.get("l"))
               for r in results if not r.holds}
    in_range = {k for k in known if k[1] <= d_max and k[2] <= l_max}
    return {"new": sorted(flagged - in_range, key=str), "missing": sorted(in_range - flagged, key=str)}


# -- verify-tables -----------------------------------------------------------

def _text_line(r: AuditResult) -> str:
    ctx = " ".join(f"{k}={v}" for k, v in sorted(r.context.items()))
    mark = "holds" if r.holds else "FLAG"
    note = f"  ({r.note})" if r.note else ""
    d = r.to_dict()
    return f"{r.claim_id:26s} {ctx:40s} {d['computed']} {r.relation} {d['threshold']}  {mark}{note}"


def cmd_verify_tables(args) -> int:
    if args.l_max < 2:
        raise UsageError("--l-max must be at least 2")
    known = load_known_flags(args.known_flags)
    results = verify_all_tables(args.l_max, args.d_max, workers=_workers())
    diff = compare_flags(results, known, args.l_max, args.d_max)
    if args.format == "json":
        out = _dump([r.to_dict() for r in results])
    else:
        s = summarize(results)
        lines = [_text_line(r) for r in results if not r.holds]
        lines.append(f"{s['total']} audits, {s['flagged']} flagged")
        out = "\n".join(lines) + "\n"
    _emit(out, args.output)
    for kind in ("new", "missing"):
        for claim, d, l in diff[kind]:
            print(f"{kind} flag: {claim} d={d} l={l}", file=sys.stderr)
    return EXIT_FINDINGS if diff["new"] or diff["missing"] else EXIT_OK


# -- audit -------------------------------------------------------------------

def _need(args, *names):
    missing = [f"--{n.replace('_', '-')}" for n in names if getattr(args, n) is None]
    if missing:
        raise UsageError(f"audit {args.claim} needs {', '.join(missing)}")
    return [getattr(args, n) for n in names]


def run_audit(args) -> list[AuditResult]:
    c = args.claim
    if c == "hilbert":
        N, m = _need(args, "N", "m")
        v = hilbert_quadric(N, m)  # raises if closed form and oracle disagree
        return [AuditResult("hilbert", v, v, True, {"N": N, "m": m}, relation="==",
                            note="closed form agrees with the binomial-difference oracle")]
    if c == "hilbert-convexity":
        N, m, s, t = _need(args, "N", "m", "s", "t")
        return [hilbert_convexity_audit(N, m, s, t)]
    if c == "prop14":
        (N,) = _need(args, "N")
        out = []
        if args.r is not None:
            v = rank_stratum_codim(N, args.r)
            out.append(AuditResult("rank-stratum-codim", v, v, True, {"N": N, "r": args.r},
                                   relation="=="))
        if N >= 5:
            out.append(pair_codim_audit(N))
        if args.m is not None:
            out.append(reducible_divisor_codim_audit(N, args.m))
        if not out:
            raise UsageError("prop14 needs N >= 5, --m or --r")
        return out
    if c == "prop15":
        (N,) = _need(args, "N")
        v = prop15_codim(N)
        return [AuditResult("prop15-codim", v, v, True, {"N": N}, relation="==")]
    if c == "exclusion-main":
        d, l = _need(args, "d", "l")
        return [exclusion_main_audit(d, l, args.rho)]
    if c == "exclusion-s3":
        return [exclusion_s3_audit(*_need(args, "d", "l"))]
    if c == "exclusion-smooth":
        return [exclusion_smooth_audit(*_need(args, "N", "degX"))]
    if c == "reduction-step":
        return [reduction_step_audit(args.samples, args.seed)]
    if c == "epsilon-min":
        return [epsilon_min_audit(*_need(args, "d", "l"))]
    if c == "degree-window":
        return [degree_window_audit(*_need(args, "d", "l"))]
    if c == "epsilon-formula":
        (rho,) = _need(args, "rho")
        return [epsilon_formula_audit(rho)]
    raise UsageError(f"unknown audit {c!r}; choose from {', '.join(AUDIT_IDS)}")


def cmd_audit(args) -> int:
    try:
        results = run_audit(args)
    except ValueError as exc:
        raise UsageError(str(exc))
    if args.format == "json":
        out = _dump([r.to_dict() for r in results])
    else:
        out = "".join(_text_line(r) + "\n" for r in results)
    _emit(out, args.output)
    return EXIT_OK if all(r.holds for r in results) else EXIT_FINDINGS


# -- check-variety -----------------------------------------------------------

def _read(path: str) -> str:
    try:
        with open(path) as fh:
            return fh.read()
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc}")


def _parse_point(text: str) -> tuple[int, ...]:
    try:
        return tuple(int(t) for t in text.split(","))
    except ValueError:
        raise UsageError(f"--point expects comma-separated integers, got {text!r}")


def sample_points(m, count: int, rng: random.Random, max_tries: int = 10_000) -> list[tuple]:
    """Points (x, xi) of V: random x, xi a root of F(x, .)."""
    p = m.field.p
    out: dict[tuple, None] = {}
    for _ in range(max_tries):
        if len(out) >= count:
            break
        x = [rng.randrange(p) for _ in range(m.nvars)]
        if not any(x):
            continue
        # F(x, xi) = xi^d + A_1(x) xi^(d-1) + ... + A_d(x), low degree first
        coeffs = [a.evaluate(x) for a in reversed(m.A)] + [1]
        roots = upoly.roots(upoly.trim(coeffs), p, rng)
        if roots:
            out.setdefault(tuple(x) + (rng.choice(roots),))
    return list(out)


def singular_points_of_V(m, budget: int, rng: random.Random) -> list[tuple]:
    """Singular points of V met by one sampled section within ``budget`` lines."""
    gamma = random_form(m.field, m.nvars, m.params.l, rng)
    h = section_gamma(m, gamma)
    F = m.equation()
    grads = F.gradient()
    out = []
    for sp in find_singular_points(h, budget, rng):
        pt = list(sp.point) + [gamma.evaluate(sp.point)]
        # singular on the section need not mean singular on V
        if all(g.evaluate(pt) == 0 for g in grads):
            out.append(tuple(int(v) for v in pt))
    return out


def cmd_check_variety(args) -> int:
    text = _read(args.model)
    try:
        m = parse_model(text, toy=True if args.toy else None)
    except (PolyFormatError, ValueError) as exc:
        raise UsageError(f"{args.model}: {exc}")
    if args.rho is not None:
        rho = args.rho
    elif is_admissible(m.params.d, m.params.l):
        rho = rho_of(m.params.d, m.params.l)
    else:
        rho = 1
    cfg = CheckConfig(args.trials_p, args.trials_lambda, args.prefix_cap, args.seed)
    rng = random.Random(args.seed)
    pts = [_parse_point(s) for s in args.point or []]
    pts += sample_points(m, args.points, rng)
    pts += [q for q in singular_points_of_V(m, args.budget, rng) if q not in pts]
    reports = []
    for o in pts:
        try:
            rep = check_point(m, o, rho, cfg)
        except ValueError as exc:
            raise UsageError(f"point {o}: {exc}")
        reports.append(rep)
    if args.format == "json":
        out = _dump([r.to_json() for r in reports])
    else:
        lines = []
        for r in reports:
            vs = " ".join(f"{c}={v.status}" for c, v in r.verdicts.items() if v.status != "NOT_APPLICABLE")
            lines.append(f"{','.join(map(str, r.point))}: {vs}")
        out = "\n".join(lines) + "\n"
    _emit(out, args.output)
    return EXIT_FINDINGS if any(r.failures for r in reports) else EXIT_OK


# -- random-model ------------------------------------------------------------

def cmd_random_model(args) -> int:
    try:
        m = random_model(MPSParams(args.d, args.l, args.toy), args.p, args.seed)
    except ValueError as exc:
        raise UsageError(str(exc))
    _emit(format_model(m), args.output)
    return EXIT_OK


# -- parser ------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="rigidity-kit", description=__doc__.splitlines()[0])
    sub = ap.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("--format", choices=("json", "text"), default="json")
        p.add_argument("--output", "-o", default=None, help="write here instead of stdout")

    vt = sub.add_parser("verify-tables", help="sweep every admissible (d, l)")
    vt.add_argument("--l-max", type=int, default=50)
    vt.add_argument("--d-max", type=int, default=18)
    vt.add_argument("--known-flags", default=None,
                    help="ledger of expected flags (default: the packaged one)")
    common(vt)
    vt.set_defaults(func=cmd_verify_tables)

    au = sub.add_parser("audit", help="run one audit")
    au.add_argument("claim", help=", ".join(AUDIT_IDS))
    for name in ("d", "l", "rho", "N", "m", "s", "t", "r"):
        au.add_argument(f"--{name}", type=int, default=None)
    au.add_argument("--degX", "--degx", dest="degX", type=int, default=None)
    au.add_argument("--samples", type=int, default=100_000)
    au.add_argument("--seed", type=int, default=0)
    common(au)
    au.set_defaults(func=cmd_audit)

    cv = sub.add_parser("check-variety", help="regularity checks at sampled points")
    cv.add_argument("model")
    cv.add_argument("--points", type=int, default=5)
    cv.add_argument("--point", action="append", help="extra point x_0,...,x_M,xi (repeatable)")
    cv.add_argument("--seed", type=int, default=0)
    cv.add_argument("--trials-p", type=int, default=8)
    cv.add_argument("--trials-lambda", type=int, default=8)
    cv.add_argument("--prefix-cap", type=int, default=6)
    cv.add_argument("--budget", type=int, default=200, help="random lines in the singular search")
    cv.add_argument("--rho", type=int, default=None)
    cv.add_argument("--toy", action="store_true", help="allow inadmissible (d, l)")
    common(cv)
    cv.set_defaults(func=cmd_check_variety)

    rm = sub.add_parser("random-model", help="write a seeded random model file")
    rm.add_argument("--d", type=int, required=True)
    rm.add_argument("--l", type=int, required=True)
    rm.add_argument("--p", type=int, default=101)
    rm.add_argument("--seed", type=int, default=0)
    rm.add_argument("--toy", action="store_true")
    rm.add_argument("--output", "-o", default=None)
    rm.set_defaults(func=cmd_random_model)
    return ap


def _validate(args) -> None:
    for name in ("points", "trials_p", "trials_lambda", "prefix_cap", "budget", "samples"):
        v = getattr(args, name, None)
        if v is not None and v < (0 if name == "points" else 1):
            raise UsageError(f"--{name.replace('_', '-')} must be positive")
    if getattr(args, "seed", 0) < 0:
        raise UsageError("--seed must be nonnegative")


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code == 0 else EXIT_USAGE
    try:
        _validate(args)
        return args.func(args)
    except UsageError as exc:
        print(f"rigidity-kit: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
