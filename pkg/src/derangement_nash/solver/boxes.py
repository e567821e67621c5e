"""Pairing eliminant roots into certified solution boxes.

Every real solution has coordinate v among the real roots of the
eliminant g_v, so candidate boxes are tuples of isolating intervals.
A candidate is rejected as soon as the exact range of some equation
over the box misses 0. A candidate is verified once it has survived
refinement down to the tolerance and the Krawczyk operator maps the
box into its interior. The Krawczyk test proves that a real solution
lies in the box, and since each interval isolates one eliminant root,
that solution is exactly the candidate.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from math import lcm
from typing import Sequence

from ..game import CoeffVector, PayoffTensor, as_coeffs
from ..kernel import zpoly
from ..kernel.sturm import Interval, RealRoot, root_count, isolate_roots
from ..kernel.upoly import UniPoly, fraction_str
from . import affine, mpoly
from .affine import Affine
from .resultants import DegenerateSystem, eliminant_polys

VERIFIED = "verified-solution"
SPURIOUS = "spurious"
UNDECIDED = "undecided"

DEFAULT_TOL = Fraction(1, 2**64)
MIN_TOL = Fraction(1, 2**512)


@dataclass
class RootBox:
    """One candidate solution: an isolating interval per variable."""

    roots: list[RealRoot]
    status: str = UNDECIDED
    evidence: dict = field(default_factory=dict)
    labels: tuple[int, ...] = ()      # player index of each coordinate
    equations: list[Affine] = field(default_factory=list, repr=False)

    @property
    def intervals(self) -> list[Interval]:
        return [r.interval for r in self.roots]

    @property
    def width(self) -> Fraction:
        return max((iv.width for iv in self.intervals), default=Fraction(0))

    def halve(self) -> None:
        target = self.width / 2
        for r in self.roots:
            r.refine(target)

    def refine(self, width) -> None:
        for r in self.roots:
            r.refine(width)

    def midpoint(self) -> list[Fraction]:
        return [iv.mid for iv in self.intervals]

    def coordinate(self, player: int) -> Interval:
        return self.intervals[self.labels.index(player)]

    def copy(self) -> "RootBox":
        roots = [RealRoot(r.poly, r.interval) for r in self.roots]
        return RootBox(roots, self.status, dict(self.evidence), self.labels, self.equations)

    def to_json(self) -> dict:
        return {
            "players": list(self.labels),
            "intervals": [iv.to_json() for iv in self.intervals],
            "status": self.status,
            "evidence": self.evidence,
        }


# -- interval linear algebra -----------------------------------------------

def _float_inverse(a: list[list[float]]) -> list[list[float]] | None:
    n = len(a)
    m = [row[:] + [float(i == j) for j in range(n)] for i, row in enumerate(a)]
    for col in range(n):
        piv = max(range(col, n), key=lambda r: abs(m[r][col]))
        if m[piv][col] == 0.0:
            return None
        m[col], m[piv] = m[piv], m[col]
        p = m[col][col]
        m[col] = [x / p for x in m[col]]
        for r in range(n):
            if r != col and m[r][col]:
                f = m[r][col]
                m[r] = [x - f * y for x, y in zip(m[r], m[col])]
    return [row[n:] for row in m]


def krawczyk(eqs: Sequence[Affine], ivs: Sequence[Interval]) -> bool:
    """True if K(X) lies in the interior of X for the square system eqs.

    Then X contains exactly one solution. The preconditioner is a float
    inverse of the midpoint Jacobian turned into exact rationals; any
    matrix is valid there, a good one just makes the test succeed.
    """
    k = len(ivs)
    if len(eqs) != k or any(iv.width == 0 for iv in ivs):
        return False
    mid = [iv.mid for iv in ivs]
    rad = [iv.width / 2 for iv in ivs]
    derivs = [[affine.derivative(f, v) for v in range(k)] for f in eqs]
    jm = [[float(affine.evaluate(d, mid)) for d in row] for row in derivs]
    inv = _float_inverse(jm)
    if inv is None:
        return False
    y = [[Fraction(x) for x in row] for row in inv]
    fm = [affine.evaluate(f, mid) for f in eqs]
    jx = [[affine.value_range(d, ivs) for d in row] for row in derivs]
    for a in range(k):
        center = mid[a] - sum(y[a][b] * fm[b] for b in range(k))
        spread = Fraction(0)
        for v in range(k):
            lo = hi = Fraction(int(a == v))
            for b in range(k):
                yab = y[a][b]
                if not yab:
                    continue
                jlo, jhi = jx[b][v]
                if yab > 0:
                    lo -= yab * jhi
                    hi -= yab * jlo
                else:
                    lo -= yab * jlo
                    hi -= yab * jhi
            spread += max(abs(lo), abs(hi)) * rad[v]
        if not (ivs[a].low < center - spread and center + spread < ivs[a].high):
            return False
    return True


def _open_window(root: RealRoot, w: Fraction) -> Interval:
    """Isolating window of positive width around a root known exactly."""
    x = root.interval.low
    ints = root.ints
    while True:
        iv = Interval(x - w, x + w)
        if zpoly.sign_at(ints, iv.low) and zpoly.sign_at(ints, iv.high) and root_count(root.poly, iv) == 1:
            return iv
        w /= 2


def _krawczyk_box(box: RootBox, eqs: Sequence[Affine], tol: Fraction) -> bool:
    ivs = [
        _open_window(r, tol) if r.interval.width == 0 else r.interval
        for r in box.roots
    ]
    return krawczyk(eqs, ivs)


def _square_subset(eqs: list[Affine], box: RootBox) -> tuple[list[Affine], list[Affine]]:
    """Pick k equations whose midpoint Jacobian is best conditioned."""
    k = len(box.roots)
    if len(eqs) == k:
        return eqs, []
    mid = box.midpoint()
    best, best_det = None, -1.0
    for combo in itertools.combinations(range(len(eqs)), k):
        jm = [[float(affine.evaluate(affine.derivative(eqs[a], v), mid)) for v in range(k)] for a in combo]
        det = abs(_float_det(jm))
        if det > best_det:
            best, best_det = combo, det
    chosen = [eqs[a] for a in best]
    rest = [eqs[a] for a in range(len(eqs)) if a not in best]
    return chosen, rest


def _float_det(a: list[list[float]]) -> float:
    n = len(a)
    m = [row[:] for row in a]
    det = 1.0
    for col in range(n):
        piv = max(range(col, n), key=lambda r: abs(m[r][col]))
        if m[piv][col] == 0.0:
            return 0.0
        if piv != col:
            m[col], m[piv] = m[piv], m[col]
            det = -det
        det *= m[col][col]
        for r in range(col + 1, n):
            f = m[r][col] / m[col][col]
            m[r] = [x - f * y for x, y in zip(m[r], m[col])]
    return det


# -- candidate resolution --------------------------------------------------

def _excluded(eqs: Sequence[Affine], ivs: Sequence[Interval]) -> bool:
    for f in eqs:
        lo, hi = affine.value_range(f, ivs)
        if lo > 0 or hi < 0:
            return True
    return False


def resolve(box: RootBox, eqs: list[Affine], tol: Fraction = DEFAULT_TOL, min_tol: Fraction = MIN_TOL) -> str:
    """Refine a candidate until it is rejected or verified.

    Once the box is narrower than tol every further level also tries the
    Krawczyk test, which amounts to halving tol down to min_tol before
    the candidate is reported undecided.
    """
    square, rest = _square_subset(eqs, box)
    levels = 0
    while True:
        if _excluded(eqs, box.intervals):
            box.status = SPURIOUS
            box.evidence = {"excluded_at_width": fraction_str(box.width), "levels": levels}
            return SPURIOUS
        w = box.width
        if w <= tol and _krawczyk_box(box, square, tol):
            signs = [exact_sign_at(f, box) for f in rest]
            if None in signs:
                break
            if any(signs):
                box.status = SPURIOUS
                box.evidence = {"residual_signs": signs, "levels": levels}
                return SPURIOUS
            box.status = VERIFIED
            box.evidence = {"tol": fraction_str(tol), "width": fraction_str(box.width), "krawczyk": True}
            return VERIFIED
        if w <= min_tol:
            break
        box.halve()
        levels += 1
        if box.width == w:
            # every coordinate is an exact rational root: evaluate exactly
            x = box.midpoint()
            ok = all(affine.evaluate(f, x) == 0 for f in eqs)
            box.status = VERIFIED if ok else SPURIOUS
            box.evidence = {"exact": True}
            return box.status
    box.status = UNDECIDED
    box.evidence = {"width": fraction_str(box.width), "levels": levels}
    return UNDECIDED


# -- real solutions of small systems ---------------------------------------

def torus_part(ints: list[int]) -> list[int]:
    """Drop factors of t."""
    k = 0
    while k < len(ints) - 1 and ints[k] == 0:
        k += 1
    return list(ints[k:])


def unit_part(ints: list[int]) -> list[int]:
    """Drop factors of t and of t - 1."""
    a = torus_part(ints)
    while len(a) > 1 and sum(a) == 0:
        a = zpoly.divexact(a, [-1, 1])
    return a


def real_roots(ints: list[int], domain: str) -> list[RealRoot]:
    """Real roots of an eliminant in the torus or in the open unit interval."""
    if domain == "torus":
        a = torus_part(ints)
        rng = None
    elif domain == "unit":
        a = unit_part(ints)
        rng = Interval(0, 1)
    else:
        raise ValueError(f"unknown domain {domain!r}")
    if len(a) <= 1:
        return []
    a = zpoly.primitive(zpoly.squarefree(a))
    poly = UniPoly.from_ints(a)
    return [RealRoot(poly, iv) for iv in isolate_roots(poly, rng)]


@dataclass
class RealSolutions:
    boxes: list[RootBox]          # verified
    undecided: list[RootBox]
    candidates: int = 0


def system_eliminants(eqs: Sequence[Affine], k: int) -> list[list[int]]:
    """Resultant eliminant of every variable of a small system.

    Raises DegenerateSystem for positive-dimensional systems.
    """
    polys = [mpoly.from_multiaffine(f, k) for f in eqs]
    out = []
    for v in range(k):
        g, _ = eliminant_polys(polys, k, v)
        out.append(g)
        if g == [1]:
            return [[1]] * k
    return out


def solve_real(
    eqs: list[Affine],
    k: int,
    eliminants: Sequence[list[int]] | None = None,
    tol: Fraction = DEFAULT_TOL,
    domain: str = "torus",
    labels: Sequence[int] | None = None,
) -> RealSolutions:
    """All real solutions of eqs (k variables, at least k equations)."""
    if len(eqs) < k:
        raise DegenerateSystem("degenerate system: fewer equations than unknowns")
    labels = tuple(labels) if labels is not None else tuple(range(k))
    if eliminants is None:
        eliminants = system_eliminants(eqs, k)
    if any(list(g) == [1] for g in eliminants):
        return RealSolutions([], [])
    cands = [real_roots(list(g), domain) for g in eliminants]
    if any(not c for c in cands):
        return RealSolutions([], [])
    hull = [Interval(min(r.interval.low for r in c), max(r.interval.high for r in c)) for c in cands]
    verified: list[RootBox] = []
    undecided: list[RootBox] = []
    count = 0

    def descend(level: int, chosen: list[RealRoot]) -> None:
        nonlocal count
        if level == k:
            count += 1
            box = RootBox([RealRoot(r.poly, r.interval) for r in chosen], labels=labels, equations=eqs)
            status = resolve(box, eqs, tol)
            if status == VERIFIED:
                verified.append(box)
            elif status == UNDECIDED:
                undecided.append(box)
            return
        for r in cands[level]:
            ivs = [x.interval for x in chosen] + [r.interval] + hull[level + 1:]
            if level + 1 < k and _excluded(eqs, ivs):
                continue
            descend(level + 1, chosen + [r])

    descend(0, [])
    return RealSolutions(verified, undecided, count)


def solve_boxes(g: CoeffVector | PayoffTensor, tol: Fraction = DEFAULT_TOL, eliminants=None) -> list[RootBox]:
    """Verified boxes for every real torus solution of the advantage system.

    Undecided candidates (if any survive the automatic tolerance halving)
    are returned too, with status ``undecided``.
    """
    from .eliminate import eliminate

    c = as_coeffs(g)
    n = c.n
    if eliminants is None:
        eliminants = [eliminate(c, i) for i in range(n)]
    ints = [e.ints if hasattr(e, "ints") else list(e) for e in eliminants]
    eqs = [affine.clean(c.poly(i)) for i in range(n)]
    sol = solve_real(eqs, n, ints, tol, "torus")
    return sol.boxes + sol.undecided


# -- exact signs at algebraic points ---------------------------------------

SIGN_REFINEMENTS = 96


def exact_sign_at(f: Affine, box: RootBox, max_rounds: int = 4096) -> int | None:
    """Sign of a multi-affine f at the solution identified by a verified box.

    Interval refinement decides nonzero values. If the sign is still open
    after SIGN_REFINEMENTS halvings, the eliminant E(y) of the value
    y = f(x) over the box's system is computed. When E(0) != 0 the value
    is nonzero and refinement must terminate; otherwise 0 is isolated
    among the real roots of E, and once the range of f fits inside that
    window the value is exactly 0. Returns None only for a degenerate
    value eliminant or when max_rounds is exhausted.
    """
    f = affine.clean(f)
    if affine.is_constant(f):
        c = affine.constant(f)
        return (c > 0) - (c < 0)
    window: Interval | None = None
    for rounds in range(max_rounds):
        lo, hi = affine.value_range(f, box.intervals)
        if lo > 0:
            return 1
        if hi < 0:
            return -1
        if window is not None and window.low < lo and hi < window.high:
            return 0
        if rounds == SIGN_REFINEMENTS:
            found, window = _zero_window(f, box)
            if not found:
                return None
        prev = box.width
        box.halve()
        if box.width == prev:
            # every coordinate is an exact rational
            v = affine.evaluate(f, [iv.low for iv in box.intervals])
            return (v > 0) - (v < 0)
    return None


def _zero_window(f: Affine, box: RootBox) -> tuple[bool, Interval | None]:
    """Window around 0 that holds no other value of f at a solution.

    Returns (True, None) when 0 is not a value at all, so refinement alone
    will decide, and (False, None) when the value eliminant degenerates.
    """
    k = len(box.roots)
    polys = [_lift(mpoly.from_multiaffine(e, k), k + 1) for e in box.equations]
    den = lcm(*(c.denominator for c in f.values()))
    value: mpoly.MPoly = {(0,) * k + (1,): den}
    for m, c in f.items():
        e = tuple((m >> j) & 1 for j in range(k)) + (0,)
        value[e] = value.get(e, 0) - int(c * den)
    try:
        g, _ = eliminant_polys(polys + [value], k + 1, k)
    except DegenerateSystem:
        return False, None
    if len(g) <= 1:
        return False, None
    if g[0] != 0:
        return True, None
    ints = zpoly.primitive(zpoly.squarefree(g))
    poly = UniPoly.from_ints(ints)
    w = Fraction(1)
    while True:
        iv = Interval(-w, w)
        if zpoly.sign_at(ints, w) and zpoly.sign_at(ints, -w) and root_count(poly, iv) == 1:
            return True, iv
        w /= 2


def _lift(p: mpoly.MPoly, k: int) -> mpoly.MPoly:
    return {e + (0,) * (k - len(e)): c for e, c in p.items()}
