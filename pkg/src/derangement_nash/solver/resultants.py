"""Eliminants by iterated resultants.

Each advantage polynomial is affine in every variable, so one pivot per
eliminated variable suffices: the pivot is resolved against every other
polynomial that mentions the variable, and then dropped. The result
vanishes at the kept coordinate of every solution, possibly with extra
factors coming from points where the pivot's leading coefficient dies.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from ..game import MultiAffineSystem
from ..kernel import zpoly
from . import mpoly


class DegenerateSystem(ValueError):
    """Raised when elimination collapses to the zero polynomial."""


@dataclass
class ResultantTrace:
    keep: int
    order: tuple[int, ...]
    degrees: list[int] = field(default_factory=list)
    inconsistent: bool = False


def system_mpolys(sys: MultiAffineSystem) -> list[mpoly.MPoly]:
    return [mpoly.from_multiaffine(f, sys.n) for f in sys.polys]


def pivot_eliminate(polys: list[mpoly.MPoly], keep: int, order) -> tuple[list[int], ResultantTrace]:
    """Univariate polynomial in x_keep from one elimination order.

    Returns ``[]`` when elimination collapses to zero and ``[c]`` (a
    nonzero constant) when the system is inconsistent.
    """
    trace = ResultantTrace(keep, tuple(order))
    live = [p for p in polys if p]
    for m in order:
        if m == keep:
            continue
        with_m = [p for p in live if mpoly.degree(p, m) > 0]
        rest = [p for p in live if mpoly.degree(p, m) <= 0]
        if not with_m:
            continue
        with_m.sort(key=lambda p: (mpoly.degree(p, m), len(p)))
        pivot = with_m[0]
        new = []
        for q in with_m[1:]:
            r = mpoly.primitive(mpoly.resultant(pivot, q, m))
            if r:
                new.append(r)
        live = rest + new
        trace.degrees.append(max((mpoly.degree(p, keep) for p in live), default=-1))
    unis = []
    for p in live:
        if mpoly.variables(p) - {keep}:
            # a variable survived every pivot: the system is underdetermined
            return [], trace
        u = zpoly.trim(mpoly.to_univariate(p, keep)) if p else []
        if len(u) == 1:
            trace.inconsistent = True
            return [1], trace
        if u:
            unis.append(u)
    if not unis:
        return [], trace
    g = unis[0]
    for u in unis[1:]:
        g = zpoly.gcd_poly(g, u)
    if len(g) == 1:
        trace.inconsistent = True
    return zpoly.primitive(g), trace


def orders_for(k: int, keep: int, extra: bool = False) -> list[tuple[int, ...]]:
    """Ascending and descending orders; with extra, every rotation too."""
    rest = [m for m in range(k) if m != keep]
    orders = [tuple(rest)]
    if len(rest) > 1:
        orders.append(tuple(reversed(rest)))
    if extra:
        for r in range(1, len(rest)):
            for o in (tuple(rest[r:] + rest[:r]), tuple(reversed(rest[r:] + rest[:r]))):
                if o not in orders:
                    orders.append(o)
    return orders


def eliminant_polys(
    polys: list[mpoly.MPoly], k: int, keep: int, dual: bool = True, target: int | None = None
) -> tuple[list[int], list[ResultantTrace]]:
    """Squarefree primitive eliminant for x_keep of arbitrary polynomials.

    The gcd is taken over the ascending and descending orders when dual.
    If target is given and the gcd still has larger degree, further
    orders are tried until the degree drops to target or they run out.
    Returns ``[1]`` for an inconsistent system; raises DegenerateSystem
    when every order collapses to zero.
    """
    orders = orders_for(k, keep, extra=target is not None)
    first = orders[: 2 if dual else 1]
    g: list[int] | None = None
    traces = []
    for idx, order in enumerate(orders):
        if idx >= len(first) and (target is None or (g is not None and len(g) - 1 <= target)):
            break
        u, tr = pivot_eliminate(polys, keep, order)
        traces.append(tr)
        if u == [1]:
            return [1], traces
        if u:
            g = u if g is None else zpoly.gcd_poly(g, u)
    if g is None:
        raise DegenerateSystem("degenerate system: elimination collapsed to zero; resample")
    g = zpoly.primitive(zpoly.squarefree(g)) if len(g) > 1 else [1]
    return g, traces


def resultant_eliminant(
    sys: MultiAffineSystem, keep: int, dual: bool = True, target: int | None = None
) -> tuple[list[int], list[ResultantTrace]]:
    """Eliminant of x_keep for an advantage system."""
    return eliminant_polys(system_mpolys(sys), sys.n, keep, dual, target)


def _to_sympy(p: mpoly.MPoly, xs):
    import sympy

    return sympy.Add(*(c * sympy.Mul(*(x**e for x, e in zip(xs, exps))) for exps, c in p.items()))


def strip_extraneous(
    polys: list[mpoly.MPoly], k: int, keep: int, g: list[int]
) -> tuple[list[int], list[list[int]]]:
    """Drop irreducible factors of g that no solution's x_keep satisfies.

    A factor q is extraneous exactly when the system together with
    q(x_keep) = 0 has reduced Groebner basis {1}. Real and complex roots
    are handled alike, which root matching against real boxes cannot do.
    """
    import flint
    import sympy

    if len(g) <= 1:
        return g, []
    xs = sympy.symbols(f"x0:{k}")
    system = [_to_sympy(p, xs) for p in polys if p]
    kept: list[int] = [1]
    removed = []
    _, factors = flint.fmpz_poly(g).factor()
    for f, _e in factors:
        q = [int(v) for v in f.coeffs()]
        qs = sympy.Add(*(c * xs[keep] ** i for i, c in enumerate(q)))
        basis = sympy.groebner(system + [qs], *xs, order="grevlex")
        if basis.exprs == [1]:
            removed.append(zpoly.primitive(q))
        else:
            kept = zpoly.mul(kept, q)
    return zpoly.primitive(kept), removed
