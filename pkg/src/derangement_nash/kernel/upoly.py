"""Dense univariate polynomials with exact rational coefficients."""

from __future__ import annotations

import json
from fractions import Fraction
from typing import Iterable, Sequence

from . import zpoly


def as_fraction(x) -> Fraction:
    """Parse ints, Fractions and ``"num/den"`` / decimal strings exactly."""
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x.strip())
    raise TypeError(f"cannot interpret {x!r} as an exact rational")


def fraction_str(x: Fraction) -> str:
    x = Fraction(x)
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


class UniPoly:
    """Polynomial sum(coeffs[k] * t**k) over Q.

    Immutable; trailing zeros are stripped so the zero polynomial has
    ``coeffs == ()`` and degree -1.
    """

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable = ()):
        cs = [as_fraction(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        object.__setattr__(self, "coeffs", tuple(cs))

    def __setattr__(self, name, value):
        raise AttributeError("UniPoly is immutable")

    def __reduce__(self):
        return (UniPoly, (self.coeffs,))

    # -- constructors ------------------------------------------------------
    @classmethod
    def from_ints(cls, coeffs: Sequence[int]) -> "UniPoly":
        obj = object.__new__(cls)
        cs = [Fraction(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        object.__setattr__(obj, "coeffs", tuple(cs))
        return obj

    @classmethod
    def from_roots(cls, roots: Iterable) -> "UniPoly":
        p = cls([1])
        for r in roots:
            p = p * cls([-as_fraction(r), 1])
        return p

    @classmethod
    def t(cls) -> "UniPoly":
        return cls([0, 1])

    # -- basic queries -----------------------------------------------------
    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @property
    def lc(self) -> Fraction:
        return self.coeffs[-1] if self.coeffs else Fraction(0)

    def is_zero(self) -> bool:
        return not self.coeffs

    def __getitem__(self, k: int) -> Fraction:
        return self.coeffs[k] if 0 <= k < len(self.coeffs) else Fraction(0)

    def __len__(self) -> int:
        return len(self.coeffs)

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction)):
            other = UniPoly([other])
        return isinstance(other, UniPoly) and self.coeffs == other.coeffs

    def __hash__(self) -> int:
        return hash(self.coeffs)

    def __repr__(self) -> str:
        if not self.coeffs:
            return "UniPoly(0)"
        terms = []
        for k in range(len(self.coeffs) - 1, -1, -1):
            c = self.coeffs[k]
            if c == 0:
                continue
            mono = "" if k == 0 else ("t" if k == 1 else f"t^{k}")
            terms.append(f"{fraction_str(c)}{'*' if mono else ''}{mono}")
        return "UniPoly(" + " + ".join(terms) + ")"

    # -- arithmetic --------------------------------------------------------
    def __add__(self, other) -> "UniPoly":
        other = _coerce(other)
        n = max(len(self.coeffs), len(other.coeffs))
        return UniPoly(self[k] + other[k] for k in range(n))

    __radd__ = __add__

    def __neg__(self) -> "UniPoly":
        return UniPoly(-c for c in self.coeffs)

    def __sub__(self, other) -> "UniPoly":
        return self + (-_coerce(other))

    def __rsub__(self, other) -> "UniPoly":
        return _coerce(other) - self

    def __mul__(self, other) -> "UniPoly":
        other = _coerce(other)
        if self.is_zero() or other.is_zero():
            return UniPoly()
        a, la = self.to_integer()
        b, lb = other.to_integer()
        prod = zpoly.mul(a, b)
        den = la * lb
        return UniPoly(Fraction(v, den) for v in prod)

    __rmul__ = __mul__

    def __divmod__(self, other) -> tuple["UniPoly", "UniPoly"]:
        other = _coerce(other)
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        r = list(self.coeffs)
        d = other.degree
        inv = 1 / other.lc
        q = [Fraction(0)] * max(0, len(r) - d)
        while len(r) - 1 >= d and r:
            c = r[-1] * inv
            shift = len(r) - 1 - d
            q[shift] = c
            for k, v in enumerate(other.coeffs):
                r[shift + k] -= c * v
            r.pop()
            while r and r[-1] == 0:
                r.pop()
        return UniPoly(q), UniPoly(r)

    def __floordiv__(self, other) -> "UniPoly":
        return divmod(self, other)[0]

    def __mod__(self, other) -> "UniPoly":
        return divmod(self, other)[1]

    def __pow__(self, e: int) -> "UniPoly":
        out = UniPoly([1])
        base = self
        while e:
            if e & 1:
                out = out * base
            base = base * base
            e >>= 1
        return out

    def __call__(self, x):
        """Exact evaluation at a rational, or Horner on any ring element."""
        if isinstance(x, (int, Fraction, str)):
            x = as_fraction(x)
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def derivative(self) -> "UniPoly":
        return UniPoly(k * self.coeffs[k] for k in range(1, len(self.coeffs)))

    def shift(self, lam) -> "UniPoly":
        """Return p(t + lam)."""
        lam = as_fraction(lam)
        if self.is_zero():
            return self
        a, L = self.to_integer()
        b, s = zpoly.compose_shift(a, lam.numerator, lam.denominator)
        return UniPoly(Fraction(v, s * L) for v in b)

    def monic(self) -> "UniPoly":
        if self.is_zero():
            return self
        inv = 1 / self.lc
        return UniPoly(c * inv for c in self.coeffs)

    # -- integer views -----------------------------------------------------
    def to_integer(self) -> tuple[list[int], int]:
        """(integer coefficients, L) with self = ints / L."""
        return zpoly.from_fractions(self.coeffs)

    def primitive(self) -> "UniPoly":
        """Primitive integer associate with positive leading coefficient."""
        a, _ = self.to_integer()
        return UniPoly.from_ints(zpoly.primitive(a))

    def int_coeffs(self) -> list[int]:
        """Integer coefficients; raises if any coefficient is non-integral."""
        out = []
        for c in self.coeffs:
            if c.denominator != 1:
                raise ValueError("polynomial has non-integer coefficients")
            out.append(c.numerator)
        return out

    def is_primitive_integer(self) -> bool:
        if any(c.denominator != 1 for c in self.coeffs):
            return False
        ints = [c.numerator for c in self.coeffs]
        return bool(ints) and zpoly.content(ints) == 1

    # -- serialisation -----------------------------------------------------
    def to_json(self) -> list[str]:
        return [fraction_str(c) for c in self.coeffs]

    @classmethod
    def from_json(cls, data) -> "UniPoly":
        if isinstance(data, str):
            data = json.loads(data)
        if isinstance(data, dict):
            data = data.get("coeffs", data.get("poly"))
        return cls(as_fraction(x) if not isinstance(x, str) else Fraction(x) for x in data)


def _coerce(x) -> UniPoly:
    if isinstance(x, UniPoly):
        return x
    if isinstance(x, (int, Fraction, str)):
        return UniPoly([as_fraction(x)])
    return NotImplemented


def poly_arith(a: UniPoly, b: UniPoly, op: str) -> UniPoly:
    """Exact ``add``, ``sub`` or ``mul`` of two polynomials."""
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    raise ValueError(f"unknown polynomial operation {op!r}")
