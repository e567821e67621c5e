"""Solution boxes read off a certified parametrization.

With x_0 = t and x_j = q_j(t) / (L_j P'(t)) at every root t of P, each
real root of P yields one real solution. Isolating t and evaluating the
rational functions over the isolating interval gives enclosures of
every coordinate; no pairing search is involved.
"""

from __future__ import annotations

from fractions import Fraction
from math import ceil, floor
from typing import Sequence

from ..kernel import zpoly
from ..kernel.descartes import RootCounter
from ..kernel.sturm import Interval, RealRoot
from ..kernel.upoly import UniPoly, fraction_str
from .boxes import DEFAULT_TOL, VERIFIED, RootBox, real_roots
from .modular import Parametrization


def poly_enclosure(a: Sequence[int], iv: Interval) -> tuple[Fraction, Fraction]:
    """Mean-value enclosure a(m) + a'(X)(X - m) of a polynomial over X."""
    m = iv.mid
    r = iv.width / 2
    val = zpoly.value_at(list(a), m)
    d = zpoly.derivative(list(a))
    dlo, dhi = _horner(d, iv)
    mag = max(abs(dlo), abs(dhi))
    return val - mag * r, val + mag * r


def _horner(a: Sequence[int], iv: Interval) -> tuple[Fraction, Fraction]:
    if not a:
        return Fraction(0), Fraction(0)
    lo = hi = Fraction(a[-1])
    for c in reversed(a[:-1]):
        prods = (lo * iv.low, lo * iv.high, hi * iv.low, hi * iv.high)
        lo, hi = min(prods) + c, max(prods) + c
    return lo, hi


def _outward(lo: Fraction, hi: Fraction, extra: int = 8) -> tuple[Fraction, Fraction]:
    """Round an enclosure outward to dyadic ends a few bits finer than its
    width, keeping later sign evaluations cheap."""
    if lo == hi:
        return lo, hi
    w = hi - lo
    bits = max(0, w.denominator.bit_length() - w.numerator.bit_length()) + extra
    s = 1 << bits
    return Fraction(floor(lo * s), s), Fraction(ceil(hi * s), s)


def _divide(num: tuple[Fraction, Fraction], den: tuple[Fraction, Fraction]) -> tuple[Fraction, Fraction] | None:
    if den[0] <= 0 <= den[1]:
        return None
    qs = (num[0] / den[0], num[0] / den[1], num[1] / den[0], num[1] / den[1])
    return _outward(min(qs), max(qs))


class _Coordinate:
    """x_j = q(t) / (L P'(t)) with exact tests for the values 0 and 1."""

    def __init__(self, q: list[int], L: int, P: list[int]):
        self.q = q
        self.den = zpoly.scale(zpoly.derivative(P), L)
        self.at_zero = _common(q, P)
        self.at_one = _common(zpoly.sub(q, self.den), P)

    def enclosure(self, t: Interval):
        return _divide(poly_enclosure(self.q, t), poly_enclosure(self.den, t))


def _common(a: list[int], P: list[int]) -> RootCounter | None:
    g = zpoly.gcd_poly(a, P) if a else list(P)
    if len(g) <= 1:
        return None
    return RootCounter(g)


def _hits(common: RootCounter | None, t: Interval) -> bool:
    """True if the root of P isolated by t is also a root of common.

    Roots of common are roots of P, and t isolates one root of P in its
    interior (or is that root as a point), so counting suffices.
    """
    if common is None:
        return False
    if t.low == t.high:
        return common.sign(t.low) == 0
    inside = common.count(t.low, t.high)
    inside -= common.sign(t.low) == 0
    inside -= common.sign(t.high) == 0
    return inside > 0


def parametrized_boxes(
    par: Parametrization,
    eliminants: Sequence[Sequence[int]],
    tol: Fraction = DEFAULT_TOL,
    domain: str = "unit",
) -> list[RootBox]:
    """Verified boxes for the real solutions, restricted to (0,1)^n for
    domain ``unit`` or to the real torus for ``torus``.

    Coordinate j of each box is refined until it isolates a root of
    eliminants[j] (integer coefficients, index = player).
    """
    P = list(par.P)
    n = len(par.Q) + 1
    coords = []
    for j in range(1, n):
        q, L = par.q_integer(j)
        coords.append(_Coordinate(q, L, P))
    counters = {j: RootCounter(eliminants[j]) for j in range(1, n)}
    out = []
    for root in real_roots(P, domain):
        box = _resolve_point(root, coords, counters, tol, domain)
        if box is not None:
            box.evidence = {
                "route": "parametrization",
                "primes": par.primes,
                "tol": fraction_str(tol),
                "certificate": dict(par.certificate),
            }
            out.append(box)
    return out


def _resolve_point(root: RealRoot, coords, counters, tol: Fraction, domain: str) -> RootBox | None:
    n = len(coords) + 1
    # exact coincidences with 0 or 1 are decided once per root
    for c in coords:
        if _hits(c.at_zero, root.interval):
            return None
        if domain == "unit" and _hits(c.at_one, root.interval):
            return None
    while True:
        encl = [c.enclosure(root.interval) for c in coords]
        if None not in encl:
            if domain == "unit" and any(hi <= 0 or lo >= 1 for lo, hi in encl):
                return None
            inside = domain == "torus" or all(0 < lo and hi < 1 for lo, hi in encl)
            if inside and _isolated(encl, counters):
                break
        prev = root.interval.width
        root.refine(prev / 2)
        if root.interval.width == prev:
            # exact rational t: coordinates are exact rationals too
            t = root.interval.low
            vals = [Fraction(zpoly.value_at(c.q, t)) / zpoly.value_at(c.den, t) for c in coords]
            if domain == "unit" and not all(0 < v < 1 for v in vals):
                return None
            encl = [(v, v) for v in vals]
            break
    roots = [RealRoot(root.poly, root.interval)]
    for j, (lo, hi) in enumerate(encl, start=1):
        ctr = counters[j]
        poly = UniPoly.from_ints(ctr.ints)
        roots.append(RealRoot(poly, Interval(lo, hi) if lo < hi else _point_window(ctr, lo)))
    box = RootBox(roots, VERIFIED, labels=tuple(range(n)))
    box.refine(tol)
    return box


def _isolated(encl, counters) -> bool:
    """Every enclosure holds exactly one root of its eliminant, none at an end."""
    for j, (lo, hi) in enumerate(encl, start=1):
        ctr = counters[j]
        if lo == hi:
            continue
        if not (ctr.sign(lo) and ctr.sign(hi)) or ctr.count(lo, hi) != 1:
            return False
    return True


def _point_window(ctr: RootCounter, x: Fraction) -> Interval:
    w = Fraction(1, 2**32)
    while True:
        iv = Interval(x - w, x + w)
        if ctr.sign(iv.low) and ctr.sign(iv.high) and ctr.count(iv.low, iv.high) == 1:
            return iv
        w /= 2
