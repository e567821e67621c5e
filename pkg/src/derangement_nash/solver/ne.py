"""Exhaustive Nash equilibrium enumeration over support patterns.

For a 2-action game a profile x is an equilibrium iff for every player
either x_i = 1 and f_i >= 0, or x_i = 0 and f_i <= 0, or 0 < x_i < 1 and
f_i = 0. Each of the 3^n patterns fixes which case applies; the mixed
players then solve a smaller multi-affine system and the pure players
impose sign conditions that are decided exactly.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterator, Sequence

from ..certifier.counts import derangement
from ..game import CoeffVector, PayoffTensor, as_coeffs
from ..kernel.sturm import Interval
from ..kernel.upoly import fraction_str
from . import affine
from .affine import Affine
from .boxes import DEFAULT_TOL, RootBox, exact_sign_at, solve_real
from .modular import ModularFailure, Parametrization, modular_parametrization
from .resultants import DegenerateSystem

PURE0, PURE1, MIXED = "0", "1", "M"


@dataclass(frozen=True)
class SupportPattern:
    kinds: tuple[str, ...]

    def __post_init__(self):
        if any(k not in (PURE0, PURE1, MIXED) for k in self.kinds):
            raise ValueError(f"bad support pattern {self.kinds!r}")

    def __str__(self) -> str:
        return "".join(self.kinds)

    @classmethod
    def parse(cls, text: str) -> "SupportPattern":
        return cls(tuple(text))

    @property
    def n(self) -> int:
        return len(self.kinds)

    @property
    def mixed(self) -> list[int]:
        return [i for i, k in enumerate(self.kinds) if k == MIXED]

    @property
    def pure(self) -> dict[int, Fraction]:
        return {i: Fraction(int(k)) for i, k in enumerate(self.kinds) if k != MIXED}

    @property
    def fully_mixed(self) -> bool:
        return all(k == MIXED for k in self.kinds)

    @staticmethod
    def all(n: int) -> Iterator["SupportPattern"]:
        for kinds in itertools.product((PURE0, PURE1, MIXED), repeat=n):
            yield SupportPattern(kinds)


@dataclass
class Equilibrium:
    pattern: SupportPattern
    exact: dict[int, Fraction]        # coordinates known as rationals
    box: RootBox | None = None        # the remaining mixed coordinates

    def interval(self, player: int) -> Interval:
        if player in self.exact:
            v = self.exact[player]
            return Interval(v, v)
        return self.box.coordinate(player)

    def to_json(self) -> dict:
        coords = []
        for i in range(self.pattern.n):
            if i in self.exact:
                coords.append(fraction_str(self.exact[i]))
            else:
                coords.append(self.box.coordinate(i).to_json())
        out = {"pattern": str(self.pattern), "coordinates": coords}
        if self.box is not None:
            out["evidence"] = self.box.evidence
        return out


@dataclass
class NEReport:
    n: int
    equilibria: list[Equilibrium] = field(default_factory=list)
    complete: bool = True
    degenerate: list[str] = field(default_factory=list)
    undecided: list[str] = field(default_factory=list)
    patterns: int = 0

    @property
    def unique(self) -> bool:
        return self.complete and len(self.equilibria) == 1

    @property
    def unique_fully_mixed(self) -> bool:
        return self.unique and self.equilibria[0].pattern.fully_mixed

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "count": len(self.equilibria),
            "complete": self.complete,
            "patterns_checked": self.patterns,
            "equilibria": [e.to_json() for e in self.equilibria],
            "degenerate_patterns": list(self.degenerate),
            "undecided_patterns": list(self.undecided),
        }


# -- one pattern -------------------------------------------------------------

@dataclass
class _Outcome:
    equilibria: list[Equilibrium] = field(default_factory=list)
    degenerate: bool = False
    undecided: bool = False


def _sign_ok(kind: str, s: int) -> bool:
    return s >= 0 if kind == PURE1 else s <= 0


def _simplify(eqs: dict[int, Affine], conds: dict[int, Affine], kinds) -> tuple[dict, dict, dict, bool] | None:
    """Settle constant and univariate linear equations exactly.

    Returns (eqs, conds, fixed, dropped) or None when the pattern has no
    equilibrium. dropped reports a vanishing equation (the remaining
    system may then be underdetermined).
    """
    fixed: dict[int, Fraction] = {}
    dropped = False
    changed = True
    while changed:
        changed = False
        for j, f in list(conds.items()):
            if affine.is_constant(f):
                c = affine.constant(f)
                if not _sign_ok(kinds[j], (c > 0) - (c < 0)):
                    return None
                del conds[j]
        for i, f in list(eqs.items()):
            if affine.is_constant(f):
                if affine.constant(f) != 0:
                    return None
                del eqs[i]
                dropped = True
                changed = True
                continue
            v = affine.linear_in(f)
            if v is not None:
                x = -Fraction(f.get(0, 0)) / f[1 << v]
                if not 0 < x < 1:
                    return None
                fixed[v] = x
                del eqs[i]
                eqs = {a: affine.substitute(g, v, x) for a, g in eqs.items()}
                conds = {a: affine.substitute(g, v, x) for a, g in conds.items()}
                changed = True
                break
    return eqs, conds, fixed, dropped


def solve_pattern(polys: Sequence[Affine], pattern: SupportPattern, tol: Fraction = DEFAULT_TOL) -> _Outcome:
    kinds = pattern.kinds
    pure = pattern.pure
    eqs = {i: affine.substitute_many(polys[i], pure) for i in pattern.mixed}
    conds = {j: affine.substitute_many(polys[j], pure) for j in pure}
    simple = _simplify(eqs, conds, kinds)
    if simple is None:
        return _Outcome()
    eqs, conds, fixed, _ = simple
    exact = dict(pure)
    exact.update(fixed)
    free = [i for i in pattern.mixed if i not in fixed]
    if not free:
        # conds were all constant and checked during simplification
        return _Outcome([Equilibrium(pattern, exact)])
    if len(eqs) < len(free):
        return _Outcome(degenerate=True)
    index = {v: a for a, v in enumerate(free)}
    sub_eqs = [affine.relabel(f, index) for f in eqs.values()]
    sub_conds = {j: affine.relabel(f, index) for j, f in conds.items()}
    try:
        sol = solve_real(sub_eqs, len(free), tol=tol, domain="unit", labels=free)
    except DegenerateSystem:
        return _Outcome(degenerate=True)
    out = _Outcome(undecided=bool(sol.undecided))
    for box in sol.boxes:
        ok = True
        for j, f in sub_conds.items():
            s = exact_sign_at(f, box)
            if s is None:
                out.undecided = True
                ok = False
                break
            if not _sign_ok(kinds[j], s):
                ok = False
                break
        if ok:
            box.refine(tol)
            out.equilibria.append(Equilibrium(pattern, dict(exact), box))
    return out


# -- all patterns ------------------------------------------------------------

def _fully_mixed_by_parametrization(c: CoeffVector, tol, eliminants, parametrization) -> list[Equilibrium] | None:
    from .eliminate import eliminate
    from .param import parametrized_boxes

    n = c.n
    par = parametrization
    if par is None and eliminants is not None and getattr(eliminants[0], "parametrization", None) is not None:
        par = eliminants[0].parametrization
    if par is None:
        try:
            par = modular_parametrization(c.system(), derangement(n))
        except ModularFailure:
            return None
    if eliminants is None:
        eliminants = [eliminate(c, i) for i in range(n)]
    ints = [e.ints if hasattr(e, "ints") else list(e) for e in eliminants]
    pattern = SupportPattern((MIXED,) * n)
    return [Equilibrium(pattern, {}, box) for box in parametrized_boxes(par, ints, tol, "unit")]


def enumerate_ne(
    g: CoeffVector | PayoffTensor,
    tol: Fraction = DEFAULT_TOL,
    eliminants=None,
    parametrization: Parametrization | None = None,
    use_parametrization: bool = True,
) -> NEReport:
    """All Nash equilibria of g, pattern by pattern.

    For a full-support game with n >= 3 the fully mixed pattern is read
    off the certified parametrization (falling back to root pairing if
    the modular route fails); every other pattern is solved by pairing.
    """
    c = as_coeffs(g)
    n = c.n
    polys = [affine.clean(c.poly(i)) for i in range(n)]
    report = NEReport(n)
    for pattern in SupportPattern.all(n):
        report.patterns += 1
        if pattern.fully_mixed and use_parametrization and n >= 3 and c.full_support:
            eqs = _fully_mixed_by_parametrization(c, tol, eliminants, parametrization)
            if eqs is not None:
                report.equilibria.extend(eqs)
                continue
        out = solve_pattern(polys, pattern, tol)
        report.equilibria.extend(out.equilibria)
        if out.degenerate:
            report.degenerate.append(str(pattern))
        if out.undecided:
            report.undecided.append(str(pattern))
    report.complete = not report.degenerate and not report.undecided
    return report


def pure_equilibria_brute(g: CoeffVector | PayoffTensor) -> list[tuple[int, ...]]:
    """Pure profiles where nobody gains by switching, by direct comparison.

    Works on payoffs when given a tensor and on advantages otherwise.
    """
    if isinstance(g, PayoffTensor):
        n = g.n
        out = []
        for prof in itertools.product((0, 1), repeat=n):
            ok = True
            for i in range(n):
                other = list(prof)
                other[i] = 1 - prof[i]
                if g.payoff(i, tuple(other)) > g.payoff(i, prof):
                    ok = False
                    break
            if ok:
                out.append(prof)
        return out
    c = as_coeffs(g)
    out = []
    for prof in itertools.product((0, 1), repeat=c.n):
        if all((c.evaluate(i, prof) >= 0) if prof[i] else (c.evaluate(i, prof) <= 0) for i in range(c.n)):
            out.append(prof)
    return out
