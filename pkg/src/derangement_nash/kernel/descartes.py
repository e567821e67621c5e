"""Root counting by Descartes' rule of signs on Moebius-transformed polynomials.

The roots of p in (lo, hi) correspond to the positive roots of
(1 + x)^d p((lo + hi x) / (1 + x)). By Descartes the sign variations of
that polynomial bound the count and share its parity, so 0 or 1 variations
are exact; anything larger is settled by bisection, which terminates for
squarefree p. Only Taylor shifts of p are needed, so the coefficient size
stays close to that of p (a Sturm chain of a degree-44 polynomial with
1500-bit coefficients grows past 100k bits).
"""

from __future__ import annotations

from fractions import Fraction

from . import zpoly


def taylor_shift(c: list[int], a: int) -> list[int]:
    """Coefficients of p(z + a)."""
    c = list(c)
    n = len(c)
    if a == 0:
        return c
    for i in range(n - 1):
        for k in range(n - 2, i - 1, -1):
            c[k] += a * c[k + 1]
    return c


def _sign_changes(c: list[int]) -> int:
    count = 0
    prev = 0
    for v in c:
        if v:
            if prev and (v > 0) != (prev > 0):
                count += 1
            prev = v
    return count


def interval_transform(ints: list[int], lo: Fraction, hi: Fraction) -> list[int]:
    """Integer polynomial whose positive roots correspond to the roots of
    ints in the open interval (lo, hi)."""
    lo, hi = Fraction(lo), Fraction(hi)
    d = len(ints) - 1
    B = lo.denominator * hi.denominator
    A = lo.numerator * hi.denominator
    W = hi.numerator * lo.denominator - A
    # B^d p((A + W y) / B), y in (0, 1)
    c = [v * B ** (d - k) for k, v in enumerate(ints)]
    c = taylor_shift(c, A)
    Wk = 1
    for k in range(d + 1):
        c[k] *= Wk
        Wk *= W
    # y = 1 / (1 + x)
    c.reverse()
    return taylor_shift(c, 1)


def variations(ints: list[int], lo: Fraction, hi: Fraction) -> int:
    """Descartes bound on the number of roots in (lo, hi); exact if <= 1."""
    if lo >= hi:
        return 0
    return _sign_changes(interval_transform(ints, lo, hi))


class RootCounter:
    """Exact counts of the distinct real roots of one integer polynomial."""

    def __init__(self, ints: list[int]):
        self.ints = zpoly.primitive(zpoly.squarefree(list(ints)))

    def sign(self, x: Fraction) -> int:
        return zpoly.sign_at(self.ints, x)

    def open_count(self, lo: Fraction, hi: Fraction) -> int:
        """Distinct roots in (lo, hi)."""
        total = 0
        stack = [(Fraction(lo), Fraction(hi))]
        while stack:
            l, h = stack.pop()
            v = variations(self.ints, l, h)
            if v <= 1:
                total += v
                continue
            m = (l + h) / 2
            total += self.sign(m) == 0
            stack.append((l, m))
            stack.append((m, h))
        return total

    def count(self, lo: Fraction, hi: Fraction) -> int:
        """Distinct roots in the closed interval [lo, hi]."""
        lo, hi = Fraction(lo), Fraction(hi)
        if lo == hi:
            return int(self.sign(lo) == 0)
        return self.open_count(lo, hi) + (self.sign(lo) == 0) + (self.sign(hi) == 0)

    def isolates(self, lo: Fraction, hi: Fraction) -> bool:
        """(lo, hi) holds exactly one root and neither end is a root."""
        return lo < hi and self.sign(lo) != 0 and self.sign(hi) != 0 and variations(self.ints, lo, hi) == 1
