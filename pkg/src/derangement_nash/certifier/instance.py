"""Clause-by-clause certificate for one synthesized game."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

from ..game import CoeffVector, PayoffTensor, as_coeffs
from ..kernel import zpoly
from ..kernel.descartes import RootCounter
from .counts import derangement
from .galois import (
    CERTIFIED,
    DEFAULT_BUDGET,
    IRREDUCIBLE,
    GaloisCertificate,
    certify_full_symmetric,
    certify_irreducible,
    check_dense,
)

CLAUSES = ("unique_ne", "fully_mixed", "degree", "dense", "irreducible", "galois", "ne_root")


@dataclass
class InstanceCertificate:
    n: int
    clauses: dict[str, dict] = field(default_factory=dict)
    galois: list[GaloisCertificate] = field(default_factory=list)
    irradical: bool = False

    @property
    def passed(self) -> bool:
        return all(self.clauses.get(c, {}).get("pass") for c in CLAUSES)

    @property
    def failed_clause(self) -> str | None:
        for c in CLAUSES:
            if not self.clauses.get(c, {}).get("pass"):
                return c
        return None

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "passed": self.passed,
            "failed_clause": self.failed_clause,
            "clauses": self.clauses,
            "irradical": self.irradical,
            "galois": [g.to_json() for g in self.galois],
        }


def _ne_root_ok(eq, player: int, ints: list[int]) -> tuple[bool, str]:
    """The equilibrium's coordinate is the unique root of P_i in its interval.

    Every eliminant vanishes at the coordinates of every torus solution,
    so counting one root inside the interval identifies the coordinate.
    """
    if player in eq.exact:
        v = eq.exact[player]
        ok = zpoly.sign_at(ints, v) == 0
        return ok, f"P({v}) {'=' if ok else '!='} 0"
    iv = eq.interval(player)
    ctr = RootCounter(ints)
    k = ctr.count(iv.low, iv.high)
    return k == 1, f"{k} root(s) in interval"


def certify_instance(
    g: CoeffVector | PayoffTensor,
    eliminants: Sequence,
    ne,
    prime_budget: int = DEFAULT_BUDGET,
    stop_early: bool = True,
) -> InstanceCertificate:
    """Check every clause of the theorem on one instance.

    With stop_early, the expensive algebraic clauses are skipped once a
    cheaper one fails; skipped clauses are recorded as not passing.
    """
    c = as_coeffs(g)
    n = c.n
    D = derangement(n)
    cert = InstanceCertificate(n)
    cl = cert.clauses

    count = len(ne.equilibria)
    cl["unique_ne"] = {"pass": ne.complete and count == 1, "count": count, "complete": ne.complete}
    mixed = count == 1 and ne.equilibria[0].pattern.fully_mixed
    cl["fully_mixed"] = {"pass": mixed, "patterns": [str(e.pattern) for e in ne.equilibria]}

    degs = [e.degree for e in eliminants]
    cl["degree"] = {"pass": len(degs) == n and all(d == D for d in degs), "degrees": degs, "expected": D}

    def skipped(name):
        cl[name] = {"pass": False, "skipped": True}

    if stop_early and not cl["degree"]["pass"]:
        for name in ("dense", "irreducible", "galois"):
            skipped(name)
    else:
        zeros = {e.player: list(check_dense(e.poly).zeros) for e in eliminants}
        cl["dense"] = {"pass": not any(zeros.values()), "zero_indices": zeros}
        if stop_early and not cl["dense"]["pass"]:
            skipped("irreducible")
            skipped("galois")
        else:
            irr = [certify_irreducible(e.poly, prime_budget) for e in eliminants]
            cl["irreducible"] = {
                "pass": all(r.verdict == IRREDUCIBLE for r in irr),
                "results": [r.to_json() for r in irr],
            }
            if stop_early and not cl["irreducible"]["pass"]:
                skipped("galois")
            elif D < 2:
                # linear eliminants (n = 2): the group is S_1, nothing to scan
                cl["galois"] = {"pass": True, "verdicts": ["trivial"] * n}
            else:
                cert.galois = [certify_full_symmetric(e.poly, prime_budget) for e in eliminants]
                cl["galois"] = {
                    "pass": all(gc.verdict == CERTIFIED for gc in cert.galois),
                    "verdicts": [gc.verdict for gc in cert.galois],
                }

    if count == 1:
        eq = ne.equilibria[0]
        checks = [_ne_root_ok(eq, e.player, e.ints) for e in eliminants]
        cl["ne_root"] = {"pass": all(ok for ok, _ in checks) and len(checks) == n, "detail": [d for _, d in checks]}
    else:
        cl["ne_root"] = {"pass": False, "detail": "no unique equilibrium"}

    # S_D is unsolvable for D >= 5, so such coordinates are not expressible by radicals
    cert.irradical = bool(D >= 5 and cl.get("galois", {}).get("pass"))
    return cert
