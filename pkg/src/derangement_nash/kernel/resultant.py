"""Resultants by the subresultant remainder sequence, gcds, squarefree parts."""

from __future__ import annotations

from fractions import Fraction

from . import zpoly
from .upoly import UniPoly


def resultant_int(a: list[int], b: list[int]) -> int:
    """Res(a, b) for integer polynomials via the subresultant PRS."""
    if not a or not b:
        return 0
    da, db = len(a) - 1, len(b) - 1
    sign = 1
    if da < db:
        a, b = b, a
        da, db = db, da
        if da % 2 and db % 2:
            sign = -1
    if db == 0:
        return sign * b[0] ** da
    ca, cb = zpoly.content(a), zpoly.content(b)
    a = [v // ca for v in a]
    b = [v // cb for v in b]
    t = ca**db * cb**da
    g = h = 1
    while True:
        da, db = len(a) - 1, len(b) - 1
        delta = da - db
        if da % 2 and db % 2:
            sign = -sign
        r = zpoly.trim(zpoly.prem(a, b))
        if not r:
            return 0
        a = b
        div = g * h**delta
        b = [v // div for v in r]
        g = a[-1]
        # h <- h^(1-delta) g^delta, always an exact division
        h = g**delta // h ** (delta - 1) if delta >= 1 else h
        if len(b) == 1:
            break
    da = len(a) - 1
    h = b[-1] ** da // h ** (da - 1) if da >= 1 else h
    return sign * t * h


def resultant(a: UniPoly, b: UniPoly) -> Fraction:
    """Res(a, b) over Q.

    Raises ``ValueError("undefined resultant")`` when both inputs are zero.
    """
    if a.is_zero() and b.is_zero():
        raise ValueError("undefined resultant")
    if a.is_zero() or b.is_zero():
        return Fraction(0)
    ia, la = a.to_integer()
    ib, lb = b.to_integer()
    # Res(ia/la, ib/lb) = la^-deg b * lb^-deg a * Res(ia, ib)
    r = resultant_int(ia, ib)
    return Fraction(r, la ** b.degree * lb ** a.degree)


def gcd(a: UniPoly, b: UniPoly) -> UniPoly:
    """Primitive integer gcd with positive leading coefficient."""
    if a.is_zero() and b.is_zero():
        return UniPoly()
    if a.is_zero():
        return b.primitive()
    if b.is_zero():
        return a.primitive()
    ia, _ = a.to_integer()
    ib, _ = b.to_integer()
    return UniPoly.from_ints(zpoly.gcd_poly(ia, ib))


def squarefree_part(a: UniPoly) -> UniPoly:
    """a / gcd(a, a'), primitive with positive leading coefficient."""
    if a.is_zero():
        raise ValueError("squarefree part of the zero polynomial")
    ia, _ = a.to_integer()
    return UniPoly.from_ints(zpoly.squarefree(ia))


def is_squarefree(a: UniPoly) -> bool:
    if a.is_zero():
        return False
    ia, _ = a.to_integer()
    return len(zpoly.gcd_poly(ia, zpoly.derivative(ia))) <= 1


def discriminant(a: UniPoly) -> Fraction:
    """disc(a) = (-1)^(d(d-1)/2) Res(a, a') / lc(a)."""
    d = a.degree
    if d < 1:
        raise ValueError("discriminant needs degree >= 1")
    r = resultant(a, a.derivative())
    s = -1 if (d * (d - 1) // 2) % 2 else 1
    return s * r / a.lc
