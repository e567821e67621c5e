"""Real root isolation and refinement by exact bisection.

Isolation is driven by Descartes' rule of signs; a Sturm chain is kept as
an independent counter for cross-checks.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Callable

from . import zpoly
from .descartes import RootCounter, variations
from .upoly import UniPoly, as_fraction, fraction_str


@dataclass(frozen=True)
class Interval:
    low: Fraction
    high: Fraction

    def __post_init__(self):
        object.__setattr__(self, "low", as_fraction(self.low))
        object.__setattr__(self, "high", as_fraction(self.high))
        if self.low > self.high:
            raise ValueError(f"empty interval [{self.low}, {self.high}]")

    @property
    def width(self) -> Fraction:
        return self.high - self.low

    @property
    def mid(self) -> Fraction:
        return (self.low + self.high) / 2

    def contains(self, x) -> bool:
        x = as_fraction(x)
        return self.low <= x <= self.high

    def overlaps(self, other: "Interval") -> bool:
        return self.low <= other.high and other.low <= self.high

    def to_json(self) -> list[str]:
        return [fraction_str(self.low), fraction_str(self.high)]

    @classmethod
    def from_json(cls, data) -> "Interval":
        return cls(Fraction(data[0]), Fraction(data[1]))

    def __float__(self) -> float:
        return float(self.mid)


def sturm_sequence(a: list[int]) -> list[list[int]]:
    """Sturm chain of an integer polynomial, kept primitive.

    Each remainder is negated and rescaled by a positive factor, which
    preserves the sign-variation counts.
    """
    seq = [zpoly.primitive(list(a))]
    d = zpoly.derivative(seq[0])
    if not d:
        return seq
    seq.append(zpoly.primitive(d))
    while True:
        a0, a1 = seq[-2], seq[-1]
        r = zpoly.trim(zpoly.prem(a0, a1))
        if not r:
            break
        e = len(a0) - len(a1) + 1
        # prem multiplies by lc^e; undo a negative factor
        if a1[-1] < 0 and e % 2:
            r = zpoly.neg(r)
        g = zpoly.content(r)
        seq.append([-(v // g) for v in r])
    return seq


def _variations(seq: list[list[int]], x: Fraction) -> int:
    signs = [s for s in (zpoly.sign_at(p, x) for p in seq) if s]
    return sum(1 for u, v in zip(signs, signs[1:]) if u != v)


def sturm_count(ints: list[int], lo: Fraction, hi: Fraction) -> int:
    """Distinct roots in [lo, hi] by Sturm's theorem.

    Independent of the Descartes counter used elsewhere; the chain gets
    expensive at high degree, so this serves as a cross-check.
    """
    ia = zpoly.primitive(zpoly.squarefree(list(ints)))
    seq = sturm_sequence(ia)
    n = _variations(seq, lo) - _variations(seq, hi)
    return n + (zpoly.sign_at(ia, lo) == 0)


def _require_squarefree(ia: list[int]) -> None:
    if len(zpoly.gcd_poly(ia, zpoly.derivative(ia))) > 1:
        raise ValueError("requires squarefree input")


def root_count(a: UniPoly, rng: Interval) -> int:
    """Distinct real roots of a in the closed interval rng."""
    ia, _ = a.to_integer()
    return RootCounter(ia).count(rng.low, rng.high)


def root_bound(a: UniPoly) -> Fraction:
    ia, _ = a.to_integer()
    return min(zpoly.cauchy_bound(ia), Fraction(zpoly.fujiwara_bound(ia)))


# Counting rules for an open interval with non-root ends. Results 0 and 1
# must be exact; anything larger only asks for another bisection.
Counter = Callable[[Fraction, Fraction], int]


def _descartes_rule(ia: list[int]) -> Counter:
    return lambda l, h: variations(ia, l, h)


def _sturm_rule(ia: list[int]) -> Counter:
    seq = sturm_sequence(ia)
    return lambda l, h: _variations(seq, l) - _variations(seq, h)


def _nudge_off_root(ia, count: Counter, x: Fraction, lo: Fraction, hi: Fraction) -> tuple[Fraction, Fraction]:
    """Shrink a window around root x until it isolates x; returns (l, h)."""
    eps = (hi - lo) / 4 if hi > lo else Fraction(1)
    while True:
        l, h = x - eps, x + eps
        if zpoly.sign_at(ia, l) and zpoly.sign_at(ia, h) and count(l, h) == 1:
            return l, h
        eps /= 2


def isolate_roots(a: UniPoly, rng: Interval | None = None) -> list[Interval]:
    """Disjoint rational isolating intervals for the real roots of a in rng.

    Bisection guided by Descartes' rule of signs. Endpoints of the returned
    intervals are never roots; a root sitting exactly on a bisection point
    or on an end of ``rng`` is enclosed by a small window around it
    instead. Intervals are sorted.
    """
    return _isolate(a, rng, _descartes_rule)


def sturm_isolate(a: UniPoly, rng: Interval | None = None) -> list[Interval]:
    """Same contract as isolate_roots, counting with a Sturm chain."""
    return _isolate(a, rng, _sturm_rule)


def _isolate(a: UniPoly, rng: Interval | None, rule) -> list[Interval]:
    if a.is_zero():
        raise ValueError("requires squarefree input")
    ia, _ = a.to_integer()
    _require_squarefree(ia)
    if len(ia) == 1:
        return []
    if rng is None:
        b = min(zpoly.cauchy_bound(ia), zpoly.fujiwara_bound(ia))
        rng = Interval(-b, b)
    count = rule(ia)
    out: list[Interval] = []

    lo, hi = rng.low, rng.high
    if lo == hi:
        if zpoly.sign_at(ia, lo) == 0:
            l, h = _nudge_off_root(ia, count, lo, lo - 1, lo + 1)
            return [Interval(l, h)]
        return []

    # roots exactly at the ends of the range
    edge: list[Interval] = []
    if zpoly.sign_at(ia, lo) == 0:
        l, h = _nudge_off_root(ia, count, lo, lo, hi)
        edge.append(Interval(l, h))
        lo = h
    if zpoly.sign_at(ia, hi) == 0:
        l, h = _nudge_off_root(ia, count, hi, lo, hi)
        edge.append(Interval(l, h))
        hi = l

    stack = [(lo, hi)]
    while stack:
        l, h = stack.pop()
        k = count(l, h)
        if k == 0:
            continue
        if k == 1:
            out.append(Interval(l, h))
            continue
        m = (l + h) / 2
        if zpoly.sign_at(ia, m) == 0:
            ml, mh = _nudge_off_root(ia, count, m, l, h)
            out.append(Interval(ml, mh))
            stack.append((l, ml))
            stack.append((mh, h))
        else:
            stack.append((l, m))
            stack.append((m, h))
    out.extend(edge)
    out.sort(key=lambda iv: iv.low)
    return _separate(a, out)


def _separate(a: UniPoly, ivs: list[Interval]) -> list[Interval]:
    """Shrink neighbours that share an endpoint until they are disjoint."""
    ia, _ = a.to_integer()
    ivs = list(ivs)
    for k in range(len(ivs) - 1):
        while ivs[k].high >= ivs[k + 1].low:
            ivs[k] = _shrink(ia, ivs[k])
            ivs[k + 1] = _shrink(ia, ivs[k + 1])
    return ivs


def _shrink(ia: list[int], iv: Interval) -> Interval:
    """Halve an isolating interval with non-root ends, keeping the ends off
    the root (a simple root changes sign, so the sign test picks the half)."""
    lo, hi = iv.low, iv.high
    slo = zpoly.sign_at(ia, lo)
    for num in (1, 3, 5, 7):
        m = lo + (hi - lo) * num / 8 if num != 1 else (lo + hi) / 2
        sm = zpoly.sign_at(ia, m)
        if sm:
            return Interval(m, hi) if sm == slo else Interval(lo, m)
    # four distinct sample points cannot all be the single root
    raise AssertionError("unreachable")


def refine_root(a: UniPoly, iv: Interval, width) -> Interval:
    """Bisect an isolating interval down to the requested width.

    The interval must bracket a sign change of a (or be a single root).
    """
    width = as_fraction(width)
    if width <= 0:
        raise ValueError("width must be positive")
    ia, _ = a.to_integer()
    lo, hi = iv.low, iv.high
    slo, shi = zpoly.sign_at(ia, lo), zpoly.sign_at(ia, hi)
    if lo == hi:
        if slo != 0:
            raise ValueError("interval does not bracket a root")
        return iv
    if slo == 0 and shi != 0:
        return Interval(lo, lo)
    if shi == 0 and slo != 0:
        return Interval(hi, hi)
    if slo == 0 or shi == 0 or slo == shi:
        raise ValueError("interval does not bracket a root")
    while hi - lo > width:
        m = (lo + hi) / 2
        sm = zpoly.sign_at(ia, m)
        if sm == 0:
            return Interval(m, m)
        if sm == slo:
            lo = m
        else:
            hi = m
    return Interval(lo, hi)


class RealRoot:
    """A real root of a squarefree polynomial tracked by an isolating interval.

    Refinement is memoised; the object mutates only its own interval.
    """

    __slots__ = ("poly", "ints", "interval", "_slo")

    def __init__(self, poly: UniPoly, interval: Interval):
        self.poly = poly
        self.ints, _ = poly.to_integer()
        self.interval = interval
        self._slo = zpoly.sign_at(self.ints, interval.low)

    def refine(self, width) -> Interval:
        width = as_fraction(width)
        iv = self.interval
        if iv.width <= width:
            return iv
        if iv.low == iv.high:
            return iv
        lo, hi, slo = iv.low, iv.high, self._slo
        while hi - lo > width:
            m = (lo + hi) / 2
            sm = zpoly.sign_at(self.ints, m)
            if sm == 0:
                lo = hi = m
                break
            if sm == slo:
                lo = m
            else:
                hi = m
        self.interval = Interval(lo, hi)
        self._slo = zpoly.sign_at(self.ints, lo)
        return self.interval

    def halve(self) -> Interval:
        return self.refine(self.interval.width / 2)

    def __repr__(self) -> str:
        return f"RealRoot({float(self.interval.low):.6g}..{float(self.interval.high):.6g})"
