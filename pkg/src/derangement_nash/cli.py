"""Command-line driver.

    python -m derangement_nash synthesize --n 4 --seed 1 --out bundle.json
    python -m derangement_nash verify bundle.json
    python -m derangement_nash mixedvol 2 8
    python -m derangement_nash galois poly.json
    python -m derangement_nash ne game.json

Every command prints a JSON report (or writes it to --out) and exits 0
exactly when its check passes.
"""

from __future__ import annotations

import argparse
import json
import re
import sys
import time
from fractions import Fraction
from pathlib import Path

from .certifier.counts import count_check
from .certifier.galois import (
    CERTIFIED,
    DEFAULT_BUDGET,
    REDUCIBLE,
    certify_full_symmetric,
    certify_irreducible,
    check_dense,
)
from .game import as_coeffs, load_game
from .kernel.upoly import UniPoly, as_fraction
from .pipeline import MAX_N, SynthesisConfig, SynthesisFailure, synthesize, verify
from .solver.boxes import DEFAULT_TOL
from .solver.eliminate import eliminate_all
from .solver.ne import enumerate_ne
from .solver.resultants import DegenerateSystem

_POWER = re.compile(r"^\s*(-?\d+)\s*\^\s*(-?\d+)\s*$")


def parse_rational(text: str) -> Fraction:
    """Exact rational from "p/q", an integer, a decimal or "a^b"."""
    m = _POWER.match(text)
    if m:
        return Fraction(int(m.group(1))) ** int(m.group(2))
    return as_fraction(text)


def _emit(report: dict, out: str | None) -> None:
    text = json.dumps(report, indent=1, sort_keys=True)
    if out:
        Path(out).write_text(text + "\n")
    else:
        print(text)


def cmd_synthesize(args) -> int:
    cfg = SynthesisConfig(
        n=args.n,
        seed=args.seed,
        magnitude=args.magnitude,
        denom_bound=args.denom_bound,
        max_resamples=args.max_resamples,
        tol=args.tol,
        prime_budget=args.prime_budget,
        density_repair=not args.no_density_repair,
        allow_large=args.allow_n6,
    )
    log = (lambda msg: print(msg, file=sys.stderr)) if args.verbose else None
    try:
        bundle = synthesize(cfg, log=log)
    except SynthesisFailure as exc:
        _emit({"passed": False, "error": str(exc), "failures": exc.histogram, "attempts": exc.attempts}, args.out)
        return 1
    if args.out:
        Path(args.out).write_text(bundle.dumps() + "\n")
    else:
        print(bundle.dumps())
    return 0 if bundle.certificate.passed else 1


def cmd_verify(args) -> int:
    try:
        result = verify(args.path)
    except DegenerateSystem as exc:
        _emit({"passed": False, "error": f"DegenerateSystem: {exc}"}, args.out)
        return 2
    _emit(result.to_json(), args.out)
    return 0 if result.passed else 1


def cmd_mixedvol(args) -> int:
    start = time.perf_counter()
    rows = [count_check(n, brute_limit=args.brute_limit) for n in range(args.lo, args.hi + 1)]
    report = {
        "rows": [r.to_json() for r in rows],
        "passed": all(r.ok for r in rows),
        "seconds": round(time.perf_counter() - start, 3),
    }
    _emit(report, args.out)
    return 0 if report["passed"] else 1


def _load_poly(path: str) -> UniPoly:
    return UniPoly.from_json(json.loads(Path(path).read_text()))


def cmd_galois(args) -> int:
    poly = _load_poly(args.path)
    dense = check_dense(poly)
    irr = certify_irreducible(poly, args.prime_budget)
    gal = certify_full_symmetric(poly, args.prime_budget) if poly.degree >= 2 else None
    report = {
        "degree": poly.degree,
        "density": dense.to_json(),
        "irreducibility": irr.to_json(),
        "galois": gal.to_json() if gal else None,
        "verdict": REDUCIBLE if irr.verdict == REDUCIBLE else (gal.verdict if gal else irr.verdict),
        "passed": bool(gal and gal.verdict == CERTIFIED),
    }
    _emit(report, args.out)
    return 0 if report["passed"] else 1


def cmd_ne(args) -> int:
    c = as_coeffs(load_game(args.path))
    if c.n > MAX_N and not args.allow_n6:
        raise SystemExit(f"n = {c.n} exceeds {MAX_N}; pass --allow-n6 to try anyway")
    try:
        el = eliminate_all(c)
    except DegenerateSystem:
        el = None
    report = enumerate_ne(c, args.tol, eliminants=el)
    out = report.to_json()
    out["eliminants"] = [e.to_json() for e in el] if el else None
    out["unique_fully_mixed"] = report.unique_fully_mixed
    out["passed"] = report.complete
    _emit(out, args.out)
    return 0 if report.complete else 1


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="derangement_nash", description=__doc__.split("\n")[0])
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("synthesize", help="search for a certified instance")
    s.add_argument("--n", type=int, default=4)
    s.add_argument("--seed", type=int, default=1)
    s.add_argument("--magnitude", type=parse_rational, default=Fraction(1, 8))
    s.add_argument("--denom-bound", type=int, default=64)
    s.add_argument("--max-resamples", type=int, default=50)
    s.add_argument("--tol", type=parse_rational, default=DEFAULT_TOL)
    s.add_argument("--prime-budget", type=int, default=DEFAULT_BUDGET)
    s.add_argument("--no-density-repair", action="store_true")
    s.add_argument("--allow-n6", action="store_true", help="allow n > 5 (no runtime guarantee)")
    s.add_argument("--verbose", "-v", action="store_true")
    s.add_argument("--out")
    s.set_defaults(func=cmd_synthesize)

    v = sub.add_parser("verify", help="certify a game, payoff tensor or bundle")
    v.add_argument("path")
    v.add_argument("--out")
    v.set_defaults(func=cmd_verify)

    m = sub.add_parser("mixedvol", help="mixed volumes against derangement numbers")
    m.add_argument("lo", type=int)
    m.add_argument("hi", type=int)
    m.add_argument("--brute-limit", type=int, default=7)
    m.add_argument("--out")
    m.set_defaults(func=cmd_mixedvol)

    g = sub.add_parser("galois", help="density, irreducibility and Galois group of a polynomial")
    g.add_argument("path")
    g.add_argument("--prime-budget", type=int, default=DEFAULT_BUDGET)
    g.add_argument("--out")
    g.set_defaults(func=cmd_galois)

    e = sub.add_parser("ne", help="enumerate all Nash equilibria")
    e.add_argument("path")
    e.add_argument("--tol", type=parse_rational, default=DEFAULT_TOL)
    e.add_argument("--allow-n6", action="store_true")
    e.add_argument("--out")
    e.set_defaults(func=cmd_ne)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
