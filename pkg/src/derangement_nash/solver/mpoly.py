"""Sparse multivariate integer polynomials for resultant elimination.

A polynomial is a dict mapping exponent tuples to nonzero ints. All
polynomials in one computation share the same number of variables.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd, lcm
from typing import Mapping

MPoly = dict[tuple[int, ...], int]


def const(c: int, k: int) -> MPoly:
    return {(0,) * k: c} if c else {}


def from_multiaffine(f: Mapping[int, Fraction], k: int) -> MPoly:
    """Integer primitive multiple of a multi-affine polynomial given by masks."""
    den = lcm(1, *(Fraction(v).denominator for v in f.values()))
    out = {}
    for m, v in f.items():
        v = Fraction(v) * den
        if v:
            out[tuple((m >> j) & 1 for j in range(k))] = int(v)
    return primitive(out)


def add(a: MPoly, b: MPoly) -> MPoly:
    out = dict(a)
    for e, c in b.items():
        v = out.get(e, 0) + c
        if v:
            out[e] = v
        else:
            out.pop(e, None)
    return out


def neg(a: MPoly) -> MPoly:
    return {e: -c for e, c in a.items()}


def sub(a: MPoly, b: MPoly) -> MPoly:
    return add(a, neg(b))


def scale(a: MPoly, c: int) -> MPoly:
    if not c:
        return {}
    return {e: v * c for e, v in a.items()}


def mul(a: MPoly, b: MPoly) -> MPoly:
    if len(a) > len(b):
        a, b = b, a
    out: dict = {}
    for ea, ca in a.items():
        for eb, cb in b.items():
            e = tuple(x + y for x, y in zip(ea, eb))
            out[e] = out.get(e, 0) + ca * cb
    return {e: c for e, c in out.items() if c}


def content(a: MPoly) -> int:
    g = 0
    for c in a.values():
        g = gcd(g, c)
        if g == 1:
            break
    return g


def primitive(a: MPoly) -> MPoly:
    """Divide by the content; make the lex-leading coefficient positive."""
    if not a:
        return {}
    g = content(a)
    if a[max(a)] < 0:
        g = -g
    return {e: c // g for e, c in a.items()}


def degree(a: MPoly, v: int) -> int:
    return max((e[v] for e in a), default=-1)


def variables(a: MPoly) -> set[int]:
    out = set()
    for e in a:
        out.update(j for j, x in enumerate(e) if x)
    return out


def is_constant(a: MPoly) -> bool:
    return all(not any(e) for e in a)


def coeffs_in(a: MPoly, v: int) -> list[MPoly]:
    """Coefficients of a as a polynomial in x_v (index = power)."""
    d = degree(a, v)
    out: list[MPoly] = [{} for _ in range(d + 1)]
    for e, c in a.items():
        k = e[v]
        out[k][e[:v] + (0,) + e[v + 1:]] = c
    return out


def from_coeffs(cs: list[MPoly], v: int) -> MPoly:
    out: MPoly = {}
    for k, p in enumerate(cs):
        for e, c in p.items():
            out[e[:v] + (k,) + e[v + 1:]] = c
    return out


def divexact(a: MPoly, b: MPoly) -> MPoly:
    """Quotient a / b, which must be exact (lex-order division)."""
    if not b:
        raise ZeroDivisionError("division by the zero polynomial")
    lb = max(b)
    cb = b[lb]
    r = dict(a)
    q: MPoly = {}
    while r:
        lr = max(r)
        cr = r[lr]
        e = tuple(x - y for x, y in zip(lr, lb))
        if min(e) < 0 or cr % cb:
            raise ArithmeticError("inexact multivariate division")
        c = cr // cb
        q[e] = c
        for eb, vb in b.items():
            t = tuple(x + y for x, y in zip(e, eb))
            v = r.get(t, 0) - c * vb
            if v:
                r[t] = v
            else:
                r.pop(t, None)
    return q


def substitute(a: MPoly, v: int, value: Fraction) -> MPoly:
    """den^deg_v(a) * a(x_v = value), an integer polynomial free of x_v."""
    value = Fraction(value)
    d = degree(a, v)
    if d <= 0:
        return dict(a)
    p, q = value.numerator, value.denominator
    out: dict = {}
    for e, c in a.items():
        k = e[v]
        t = e[:v] + (0,) + e[v + 1:]
        out[t] = out.get(t, 0) + c * p**k * q ** (d - k)
    return {e: c for e, c in out.items() if c}


def to_univariate(a: MPoly, v: int) -> list[int]:
    """Dense coefficient list of a polynomial that only involves x_v."""
    d = degree(a, v)
    out = [0] * (d + 1)
    for e, c in a.items():
        if any(x for j, x in enumerate(e) if j != v):
            raise ValueError("polynomial involves other variables")
        out[e[v]] += c
    return out


def evaluate(a: MPoly, point) -> Fraction:
    total = Fraction(0)
    for e, c in a.items():
        t = Fraction(c)
        for x, k in zip(point, e):
            if k:
                t *= Fraction(x) ** k
        total += t
    return total


def _det_bareiss(m: list[list[MPoly]]) -> MPoly:
    """Fraction-free determinant of a square matrix of polynomials."""
    n = len(m)
    if n == 0:
        return {}
    a = [list(row) for row in m]
    sign = 1
    prev: MPoly | None = None
    for k in range(n - 1):
        if not a[k][k]:
            swap = next((i for i in range(k + 1, n) if a[i][k]), None)
            if swap is None:
                return {}
            a[k], a[swap] = a[swap], a[k]
            sign = -sign
        piv = a[k][k]
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                v = sub(mul(piv, a[i][j]), mul(a[i][k], a[k][j]))
                if prev is not None and v:
                    v = divexact(v, prev)
                a[i][j] = v
            a[i][k] = {}
        prev = piv
    det = a[n - 1][n - 1]
    return neg(det) if sign < 0 else det


def resultant(a: MPoly, b: MPoly, v: int) -> MPoly:
    """Res_{x_v}(a, b) as a polynomial in the remaining variables."""
    if not a or not b:
        return {}
    ca, cb = coeffs_in(a, v), coeffs_in(b, v)
    da, db = len(ca) - 1, len(cb) - 1
    if da == 0 and db == 0:
        return _one_like(a)
    if da == 0:
        return _power(ca[0], db)
    if db == 0:
        return _power(cb[0], da)
    if da == 1 or db == 1:
        # Res(a1 x + a0, q) = sum_j q_j (-a0)^j a1^(d-j), up to sign
        swap = da != 1
        lin, other = (cb, ca) if swap else (ca, cb)
        d = len(other) - 1
        a1, a0 = lin[1], neg(lin[0])
        pw0 = [_one_like(a)]
        for _ in range(d):
            pw0.append(mul(pw0[-1], a0))
        pw1 = [_one_like(a)]
        for _ in range(d):
            pw1.append(mul(pw1[-1], a1))
        out: MPoly = {}
        for j, qj in enumerate(other):
            if qj:
                out = add(out, mul(qj, mul(pw0[j], pw1[d - j])))
        # Res(b, a) = (-1)^(da db) Res(a, b)
        if swap and (da * db) % 2:
            out = neg(out)
        return out
    # Sylvester matrix, rows of a then rows of b, columns by descending power
    size = da + db
    rows = []
    for i in range(db):
        row: list[MPoly] = [{} for _ in range(size)]
        for k in range(da + 1):
            row[i + da - k] = ca[k]
        rows.append(row)
    for i in range(da):
        row = [{} for _ in range(size)]
        for k in range(db + 1):
            row[i + db - k] = cb[k]
        rows.append(row)
    return _det_bareiss(rows)


def _one_like(a: MPoly) -> MPoly:
    k = len(next(iter(a)))
    return {(0,) * k: 1}


def _power(a: MPoly, e: int) -> MPoly:
    out = _one_like(a)
    for _ in range(e):
        out = mul(out, a)
    return out
