"""Polynomials over GF(p) and distinct-degree factorization."""

from __future__ import annotations

from dataclasses import dataclass

from sympy import isprime

from .upoly import UniPoly


@dataclass(frozen=True)
class PrimePoly:
    modulus: int
    coeffs: tuple[int, ...]

    def __post_init__(self):
        p = self.modulus
        cs = [c % p for c in self.coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        object.__setattr__(self, "coeffs", tuple(cs))

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @classmethod
    def reduce(cls, a: UniPoly, p: int) -> "PrimePoly":
        return cls(p, tuple(a.int_coeffs()))


def _trim(a: list[int]) -> list[int]:
    while a and a[-1] == 0:
        a.pop()
    return a


def _mul(a: list[int], b: list[int], p: int) -> list[int]:
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return _trim([v % p for v in out])


def _rem(a: list[int], f: list[int], p: int, finv: int) -> list[int]:
    """a mod f with f having leading-coefficient inverse finv."""
    r = list(a)
    df = len(f) - 1
    while len(r) - 1 >= df and r:
        c = r[-1] * finv % p
        if c:
            shift = len(r) - 1 - df
            for k in range(df):
                r[shift + k] = (r[shift + k] - c * f[k]) % p
        r.pop()
        _trim(r)
    return r


def _divmod(a: list[int], f: list[int], p: int) -> tuple[list[int], list[int]]:
    finv = pow(f[-1], -1, p)
    r = list(a)
    df = len(f) - 1
    q = [0] * max(0, len(a) - df)
    while len(r) - 1 >= df and r:
        c = r[-1] * finv % p
        shift = len(r) - 1 - df
        q[shift] = c
        for k in range(df):
            r[shift + k] = (r[shift + k] - c * f[k]) % p
        r.pop()
        _trim(r)
    return _trim(q), r


def _gcd(a: list[int], b: list[int], p: int) -> list[int]:
    a, b = _trim(list(a)), _trim(list(b))
    while b:
        a, b = b, _rem(a, b, p, pow(b[-1], -1, p))
    if a:
        inv = pow(a[-1], -1, p)
        a = [v * inv % p for v in a]
    return a


def _powmod_x(e: int, f: list[int], p: int) -> list[int]:
    """x^e mod f."""
    finv = pow(f[-1], -1, p)
    result = [1]
    base = _rem([0, 1], f, p, finv)
    while e:
        if e & 1:
            result = _rem(_mul(result, base, p), f, p, finv)
        base = _rem(_mul(base, base, p), f, p, finv)
        e >>= 1
    return result


def distinct_degree_degrees(f: list[int], p: int) -> list[int]:
    """Degrees of the irreducible factors of a squarefree monic f mod p."""
    f = list(f)
    n = len(f) - 1
    if n <= 0:
        return []
    finv = pow(f[-1], -1, p)
    # Frobenius matrix: row i = x^(i p) mod f
    xp = _powmod_x(p, f, p)
    rows = [[1]]
    for _ in range(1, n):
        rows.append(_rem(_mul(rows[-1], xp, p), f, p, finv))
    frob = [r + [0] * (n - len(r)) for r in rows]

    def frobenius(h: list[int]) -> list[int]:
        out = [0] * n
        for i, c in enumerate(h):
            if c:
                row = frob[i]
                for j in range(n):
                    out[j] += c * row[j]
        return _trim([v % p for v in out])

    degrees: list[int] = []
    cur = f
    h = [0, 1]
    d = 0
    while len(cur) - 1 >= 2 * (d + 1):
        d += 1
        h = _rem(frobenius(h), cur, p, pow(cur[-1], -1, p))
        hx = list(h) + [0] * max(0, 2 - len(h))
        hx[1] = (hx[1] - 1) % p
        g = _gcd(cur, _trim(hx), p)
        if len(g) > 1:
            k = len(g) - 1
            degrees.extend([d] * (k // d))
            cur, _ = _divmod(cur, g, p)
            h = _rem(h, cur, p, pow(cur[-1], -1, p)) if len(cur) > 1 else []
    if len(cur) > 1:
        degrees.append(len(cur) - 1)
    return sorted(degrees, reverse=True)


def cycle_type(a: UniPoly, p: int) -> tuple[int, ...] | None:
    """Factor-degree multiset of a mod p (sorted descending).

    Returns ``None`` (a rejection, not an error) when p divides the
    leading coefficient or a is not squarefree mod p.
    """
    if not isprime(p):
        raise ValueError(f"{p} is not prime")
    if a.is_zero() or a.degree < 1:
        raise ValueError("cycle type needs a polynomial of degree >= 1")
    if any(c.denominator != 1 for c in a.coeffs):
        a = a.primitive()
    f = [c.numerator % p for c in a.coeffs]
    if f[-1] == 0:
        return None
    inv = pow(f[-1], -1, p)
    f = [v * inv % p for v in f]
    df = _trim([k * f[k] % p for k in range(1, len(f))])
    if not df or len(_gcd(f, df, p)) > 1:
        return None
    return tuple(distinct_degree_degrees(f, p))


def count_roots_mod_p(a: UniPoly, p: int) -> int:
    """Number of distinct roots of a in GF(p) (a nonzero mod p)."""
    f = [c.numerator % p for c in a.primitive().coeffs]
    _trim(f)
    if len(f) <= 1:
        return 0
    xp = _powmod_x(p, f, p)
    xp = list(xp) + [0] * max(0, 2 - len(xp))
    xp[1] = (xp[1] - 1) % p
    return len(_gcd(f, _trim(xp), p)) - 1
