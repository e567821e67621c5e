"""Multi-affine polynomials over k variables as {mask: Fraction} dicts.

Unlike the advantage polynomials of a game, these may mention any
variable; they arise after substituting pure strategies or fixed values.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Mapping, Sequence

from ..kernel.sturm import Interval

Affine = dict[int, Fraction]


def clean(f: Mapping[int, Fraction]) -> Affine:
    return {m: Fraction(v) for m, v in f.items() if v}


def support(f: Mapping[int, Fraction]) -> int:
    """Mask of the variables that appear in f."""
    out = 0
    for m in f:
        out |= m
    return out


def is_constant(f: Mapping[int, Fraction]) -> bool:
    return all(m == 0 for m in f)


def constant(f: Mapping[int, Fraction]) -> Fraction:
    return Fraction(f.get(0, 0))


def substitute(f: Mapping[int, Fraction], v: int, value) -> Affine:
    """f with x_v replaced by a rational value."""
    bit = 1 << v
    value = Fraction(value)
    out: dict[int, Fraction] = {}
    for m, c in f.items():
        if m & bit:
            if value:
                out[m ^ bit] = out.get(m ^ bit, 0) + c * value
        else:
            out[m] = out.get(m, 0) + c
    return clean(out)


def substitute_many(f: Mapping[int, Fraction], values: Mapping[int, Fraction]) -> Affine:
    for v, x in values.items():
        f = substitute(f, v, x)
    return dict(f)


def relabel(f: Mapping[int, Fraction], mapping: Mapping[int, int]) -> Affine:
    """Rename variables: old index v becomes mapping[v]."""
    out = {}
    for m, c in f.items():
        nm = 0
        v = 0
        while m >> v:
            if (m >> v) & 1:
                nm |= 1 << mapping[v]
            v += 1
        out[nm] = c
    return out


def derivative(f: Mapping[int, Fraction], v: int) -> Affine:
    bit = 1 << v
    return {m ^ bit: c for m, c in f.items() if m & bit}


def linear_in(f: Mapping[int, Fraction]) -> int | None:
    """The variable v if f = a x_v + b with a != 0, else None."""
    s = support(f)
    if s and not s & (s - 1):
        return s.bit_length() - 1
    return None


def evaluate(f: Mapping[int, Fraction], x: Sequence) -> Fraction:
    total = Fraction(0)
    for m, c in f.items():
        t = c
        v = 0
        while m >> v:
            if (m >> v) & 1:
                t *= x[v]
            v += 1
        total += t
    return total


def value_range(f: Mapping[int, Fraction], box: Sequence[Interval]) -> tuple[Fraction, Fraction]:
    """Exact range of f over a box.

    A multi-affine function attains its extremes at vertices, so the
    min and max over the vertex values is the true range, not an
    overestimate.
    """
    vals = _vertex_values(dict(f), support(f), box)
    return min(vals), max(vals)


def _vertex_values(f: Affine, mask: int, box: Sequence[Interval]) -> list[Fraction]:
    if not mask:
        return [Fraction(f.get(0, 0))]
    v = (mask & -mask).bit_length() - 1
    rest = mask & (mask - 1)
    iv = box[v]
    lo = _vertex_values(substitute(f, v, iv.low), rest, box)
    if iv.low == iv.high:
        return lo
    return lo + _vertex_values(substitute(f, v, iv.high), rest, box)
