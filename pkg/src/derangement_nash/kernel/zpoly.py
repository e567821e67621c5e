"""Dense integer polynomials as plain lists, lowest degree first.

These helpers are the fast path behind :class:`UniPoly`; they never
allocate fractions. The zero polynomial is the empty list.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd

import flint

ZPoly = list  # list[int], index = power of t


def trim(a: ZPoly) -> ZPoly:
    while a and a[-1] == 0:
        a.pop()
    return a


def degree(a: ZPoly) -> int:
    return len(a) - 1 if a else -1


def add(a: ZPoly, b: ZPoly) -> ZPoly:
    if len(a) < len(b):
        a, b = b, a
    out = list(a)
    for k, v in enumerate(b):
        out[k] += v
    return trim(out)


def sub(a: ZPoly, b: ZPoly) -> ZPoly:
    out = list(a) + [0] * max(0, len(b) - len(a))
    for k, v in enumerate(b):
        out[k] -= v
    return trim(out)


def neg(a: ZPoly) -> ZPoly:
    return [-v for v in a]


def scale(a: ZPoly, c: int) -> ZPoly:
    if c == 0:
        return []
    return [c * v for v in a]


def mul(a: ZPoly, b: ZPoly) -> ZPoly:
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return trim(out)


def content(a: ZPoly) -> int:
    g = 0
    for v in a:
        g = gcd(g, v)
        if g == 1:
            break
    return g


def primitive(a: ZPoly) -> ZPoly:
    """Primitive part with positive leading coefficient."""
    if not a:
        return []
    g = content(a)
    if a[-1] < 0:
        g = -g
    return [v // g for v in a]


def derivative(a: ZPoly) -> ZPoly:
    return trim([k * a[k] for k in range(1, len(a))])


def prem(a: ZPoly, b: ZPoly) -> ZPoly:
    """Pseudo-remainder lc(b)^(deg a - deg b + 1) * a mod b."""
    if not b:
        raise ZeroDivisionError("pseudo-division by zero polynomial")
    r = list(a)
    db = len(b) - 1
    lb = b[-1]
    e = len(a) - len(b) + 1
    if e <= 0:
        return r
    while r and len(r) - 1 >= db:
        lr = r[-1]
        shift = len(r) - 1 - db
        r = [lb * v for v in r]
        for k, v in enumerate(b):
            r[shift + k] -= lr * v
        r.pop()
        trim(r)
        e -= 1
    if e:
        f = lb**e
        r = [f * v for v in r]
    return r


def divexact(a: ZPoly, b: ZPoly) -> ZPoly:
    """Exact quotient a / b; raises if b does not divide a over Z."""
    if not b:
        raise ZeroDivisionError("division by zero polynomial")
    r = list(a)
    db = len(b) - 1
    lb = b[-1]
    q = [0] * max(0, len(a) - db)
    while r and len(r) - 1 >= db:
        c, rem = divmod(r[-1], lb)
        if rem:
            raise ArithmeticError("inexact polynomial division")
        shift = len(r) - 1 - db
        q[shift] = c
        for k, v in enumerate(b):
            r[shift + k] -= c * v
        r.pop()
        trim(r)
    if r:
        raise ArithmeticError("inexact polynomial division")
    return trim(q)


def divides(b: ZPoly, a: ZPoly) -> bool:
    """Whether b divides a over Q.

    For primitive b, Gauss's lemma makes this an exact division over Z,
    which fails fast instead of growing pseudo-remainders.
    """
    if not b:
        return not a
    if not a:
        return True
    try:
        divexact(primitive(a), primitive(b))
    except ArithmeticError:
        return False
    return True


_COPRIME_PRIMES = (2147483647, 2147483629, 2147483587)


def _degree_gcd_mod(a: ZPoly, b: ZPoly, p: int) -> int:
    x = trim([v % p for v in a])
    y = trim([v % p for v in b])
    while y:
        inv = pow(y[-1], -1, p)
        dy = len(y) - 1
        while x and len(x) - 1 >= dy:
            c = x[-1] * inv % p
            shift = len(x) - 1 - dy
            for k in range(dy):
                x[shift + k] = (x[shift + k] - c * y[k]) % p
            x.pop()
            trim(x)
        x, y = y, x
    return len(x) - 1


def coprime_mod_p(a: ZPoly, b: ZPoly) -> bool:
    """Sufficient test: coprime modulo a prime that keeps both degrees."""
    for p in _COPRIME_PRIMES:
        if a[-1] % p and b[-1] % p:
            return _degree_gcd_mod(a, b, p) == 0
    return False


def gcd_poly(a: ZPoly, b: ZPoly) -> ZPoly:
    """Primitive gcd over Q[t] with positive leading coefficient (flint)."""
    a, b = trim(list(a)), trim(list(b))
    if not a and not b:
        return []
    g = flint.fmpz_poly(a).gcd(flint.fmpz_poly(b))
    return primitive([int(v) for v in g.coeffs()])


def gcd_prs(a: ZPoly, b: ZPoly) -> ZPoly:
    """Same gcd by the primitive remainder sequence; an independent route.

    A gcd of degree 0 modulo a degree-preserving prime settles the common
    coprime case without building the remainder sequence.
    """
    a, b = primitive(list(a)), primitive(list(b))
    if a and b and len(a) > 1 and len(b) > 1 and coprime_mod_p(a, b):
        return [1]
    if len(a) < len(b):
        a, b = b, a
    while b:
        r = prem(a, b)
        a, b = b, primitive(trim(r))
    return primitive(a)


def squarefree(a: ZPoly) -> ZPoly:
    g = gcd_poly(a, derivative(a))
    return primitive(divexact(a, g)) if len(g) > 1 else primitive(list(a))


def compose_shift(a: ZPoly, num: int, den: int) -> tuple[ZPoly, int]:
    """Return (b, s) with a(t + num/den) = b(t) / s, b integer.

    Taylor shift by Horner on den^deg-scaled coefficients.
    """
    d = len(a) - 1
    if d < 0:
        return [], 1
    # a(t + r) * den^d = sum a_k (den t + num)^k den^(d-k); substitute u = t
    # work with c_k = a_k * den^(d-k), shift polynomial in (den*t) by num
    c = [a[k] * den ** (d - k) for k in range(d + 1)]
    # Horner: p(y) with y = den*t + num ; shift c in variable y by num
    for i in range(d):
        for k in range(d - 1, i - 1, -1):
            c[k] += num * c[k + 1]
    # now poly in y' where y = y'+... : c represents p(y'+num) in y' = den*t
    # coefficient of t^k = c_k * den^k ; total scale den^d
    b = [c[k] * den**k for k in range(d + 1)]
    return trim(b), den**d


def sign_at(a: ZPoly, x: Fraction) -> int:
    """Exact sign of a at rational x (homogenised Horner over Z)."""
    if not a:
        return 0
    p, q = x.numerator, x.denominator
    acc = 0
    qk = 1
    # sum a_k p^k q^(d-k)
    for v in reversed(a):
        acc = acc * p + v * qk
        qk *= q
    return (acc > 0) - (acc < 0)


def value_at(a: ZPoly, x: Fraction) -> Fraction:
    acc = Fraction(0)
    for v in reversed(a):
        acc = acc * x + v
    return acc


def cauchy_bound(a: ZPoly) -> Fraction:
    """Every complex root has modulus < returned bound."""
    lead = abs(a[-1])
    return 1 + Fraction(max((abs(v) for v in a[:-1]), default=0), lead)


def _ceil_root(num: int, den: int, k: int) -> int:
    """Smallest integer r >= 1 with r**k >= num / den."""
    lo, hi = 1, 1
    while hi**k * den < num:
        hi *= 2
    while lo < hi:
        mid = (lo + hi) // 2
        if mid**k * den >= num:
            hi = mid
        else:
            lo = mid + 1
    return lo


def fujiwara_bound(a: ZPoly) -> int:
    """Integer B with every complex root of modulus <= B (Fujiwara).

    Usually far tighter than the Cauchy bound when the coefficients
    grow geometrically.
    """
    d = len(a) - 1
    lead = abs(a[-1])
    best = 0
    for k in range(1, d + 1):
        c = abs(a[d - k])
        if not c:
            continue
        if k == d:
            best = max(best, _ceil_root(c, 2 * lead, k))
        else:
            best = max(best, _ceil_root(c, lead, k))
    return 2 * max(best, 1)


def from_fractions(coeffs) -> tuple[ZPoly, int]:
    """Clear denominators: returns (integer coeffs, positive multiplier L)."""
    from math import lcm

    L = 1
    for c in coeffs:
        L = lcm(L, Fraction(c).denominator)
    return trim([int(Fraction(c) * L) for c in coeffs]), L
