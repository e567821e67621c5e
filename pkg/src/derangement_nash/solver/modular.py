"""Multi-modular eliminants and rational parametrizations.

For a square multi-affine system the null space of a multigraded Macaulay
matrix (rows f_i * x^e, columns the monomials of a box) is spanned by the
evaluation vectors of the solutions once the box is large enough. Working
mod p, the shift by x_0 on a well-chosen set S of monomials gives a D x D
matrix A whose characteristic polynomial is the x_0-eliminant, and a
Krylov solve expresses every other coordinate as x_j = Q_j(x_0) / P'(x_0).

Results are lifted by CRT and rational reconstruction. Nothing here is
trusted on its own: ``certify`` checks the lifted answer exactly.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd, isqrt, lcm

import flint
from sympy import prevprime

from ..game import MultiAffineSystem
from ..kernel import zpoly
from . import mpoly

FIRST_PRIME = 2**31 - 1

# boxes whose null space has dimension !n with a full-rank x_0-inner block
KNOWN_BOXES = {
    2: (1, 1),
    3: (1, 1, 1),
    4: (2, 2, 2, 2),
    5: (3, 3, 2, 2, 2),
}


class ModularFailure(RuntimeError):
    pass


def primes_descending(start: int = FIRST_PRIME):
    p = start + 1
    while True:
        p = prevprime(p)
        yield p


def rational_reconstruct(a: int, m: int) -> Fraction | None:
    """r/s with r = a s (mod m) and |r|, |s| <= sqrt(m/2), if one exists."""
    bound = isqrt(m // 2)
    r0, r1 = m, a % m
    s0, s1 = 0, 1
    while r1 > bound:
        q = r0 // r1
        r0, r1 = r1, r0 - q * r1
        s0, s1 = s1, s0 - q * s1
    if s1 == 0 or abs(s1) > bound or gcd(r1, abs(s1)) != 1:
        return None
    return Fraction(r1, s1)


@dataclass
class Macaulay:
    n: int
    box: tuple[int, ...]
    monomials: list[tuple[int, ...]]
    index: dict[tuple[int, ...], int]
    rows: list[list[tuple[int, int]]]  # sparse integer rows
    flat: list[tuple[int, int]] = field(default_factory=list)  # (position, coefficient)
    _integer: "flint.fmpz_mat | None" = field(default=None, repr=False)

    @classmethod
    def build(cls, polys: list[mpoly.MPoly], n: int, box: tuple[int, ...]) -> "Macaulay":
        mons = list(itertools.product(*[range(a + 1) for a in box]))
        idx = {m: k for k, m in enumerate(mons)}
        rows = []
        for i, f in enumerate(polys):
            ranges = [range(box[j] + 1) if j == i else range(box[j]) for j in range(n)]
            terms = list(f.items())
            for e in itertools.product(*ranges):
                rows.append([(idx[tuple(a + b for a, b in zip(e, d))], c) for d, c in terms])
        width = len(mons)
        flat = [(r * width + k, c) for r, row in enumerate(rows) for k, c in row]
        return cls(n, box, mons, idx, rows, flat)

    def mod(self, p: int) -> "flint.nmod_mat":
        if self._integer is None:
            width = len(self.monomials)
            entries = [0] * (len(self.rows) * width)
            for pos, c in self.flat:
                entries[pos] = c
            self._integer = flint.fmpz_mat(len(self.rows), width, entries)
        return flint.nmod_mat(self._integer, p)

    def inner(self) -> list[int]:
        a0 = self.box[0]
        return [k for k, m in enumerate(self.monomials) if m[0] < a0]

    def shifted(self, k: int) -> int:
        m = self.monomials[k]
        return self.index[(m[0] + 1,) + m[1:]]

    def unit(self, j: int) -> int:
        e = [0] * self.n
        if j >= 0:
            e[j] = 1
        return self.index[tuple(e)]


def _pivot_columns(rref: "flint.nmod_mat", rank: int) -> list[int]:
    cols = []
    r = 0
    for c in range(rref.ncols()):
        if r == rank:
            break
        if int(rref[r, c]) != 0:
            cols.append(c)
            r += 1
    return cols


@dataclass
class PrimeImage:
    prime: int
    nullity: int
    inner_rank: int
    S: list[int]
    P: list[int]          # monic eliminant mod p, low to high
    Q: list[list[int]]    # Q_j mod p for j = 1..n-1


def prime_image(mac: Macaulay, p: int, D: int | None = None) -> PrimeImage | None:
    """Eliminant and parametrization mod p, or None for an unlucky prime."""
    M = mac.mod(p)
    N, nul = M.nullspace()
    if nul == 0 or (D is not None and nul != D):
        return PrimeImage(p, nul, 0, [], [], []) if D is not None and nul < D else None
    inner = mac.inner()
    T = flint.nmod_mat([[int(N[k, c]) for k in inner] for c in range(nul)], p)
    R, rank = T.rref()
    if rank < nul:
        return PrimeImage(p, nul, rank, [], [], [])
    S = [inner[c] for c in _pivot_columns(R, rank)]
    NS = flint.nmod_mat([[int(N[k, c]) for c in range(nul)] for k in S], p)
    NX = flint.nmod_mat([[int(N[mac.shifted(k), c]) for c in range(nul)] for k in S], p)
    try:
        A = NS.solve(NX)
    except ZeroDivisionError:
        return None
    P = A.charpoly()
    dP = P.derivative()
    if P.gcd(dP).degree() > 0:
        return None
    # Krylov rows e_1 A^k express powers of x_0 in the dual basis
    row = flint.nmod_mat([[int(N[mac.unit(-1), c]) for c in range(nul)]], p)
    krylov = [row]
    for _ in range(nul - 1):
        krylov.append(krylov[-1] * A)
    KT = flint.nmod_mat([[int(k[0, c]) for k in krylov] for c in range(nul)], p)
    Q = []
    for j in range(1, mac.n):
        rhs = flint.nmod_mat([[int(N[mac.unit(j), c])] for c in range(nul)], p)
        try:
            a = KT.solve(rhs)
        except ZeroDivisionError:
            return None
        g = flint.nmod_poly([int(a[k, 0]) for k in range(nul)], p)
        Q.append(_coeffs((g * dP) % P, nul))
    return PrimeImage(p, nul, rank, S, _coeffs(P, nul + 1), Q)


def _coeffs(f: "flint.nmod_poly", length: int) -> list[int]:
    c = [int(x) for x in f.coeffs()]
    return c + [0] * (length - len(c))


@dataclass
class Parametrization:
    """x_0 = t, x_j = Q_j(t) / P'(t) at every root t of the eliminant P."""

    P: list[int]                  # primitive integer eliminant
    Q: list[list[Fraction]]       # rational numerators for j = 1..n-1
    primes: int
    box: tuple[int, ...]
    certificate: dict = field(default_factory=dict)

    def q_integer(self, j: int) -> tuple[list[int], int]:
        """(integer numerator, L) with Q_j = ints / L (j counted from 1)."""
        return zpoly.from_fractions(self.Q[j - 1])


def _candidate_boxes(n: int):
    if n in KNOWN_BOXES:
        yield KNOWN_BOXES[n]
    box = [2] * n
    seen = set()
    for _ in range(4 * n):
        b = tuple(box)
        if b not in seen:
            seen.add(b)
            yield b
        k = min(range(n), key=lambda j: (box[j], j))
        box[k] += 1


def choose_box(polys: list[mpoly.MPoly], n: int, D: int, max_columns: int = 40000) -> Macaulay:
    p = FIRST_PRIME
    for box in _candidate_boxes(n):
        size = 1
        for a in box:
            size *= a + 1
        if size > max_columns:
            break
        mac = Macaulay.build(polys, n, box)
        img = prime_image(mac, p, D)
        if img is not None and img.nullity == D and img.inner_rank == D and img.P:
            return mac
    raise ModularFailure(f"no Macaulay box with nullity {D} found for n={n}")


def _crt_step(res: list[int] | None, mod: int, vec: list[int], p: int) -> list[int]:
    if res is None:
        return list(vec)
    inv = pow(mod, -1, p)
    return [r + mod * ((c - r) * inv % p) for r, c in zip(res, vec)]


# -- exact certificate -----------------------------------------------------

def _numerators(par: Parametrization, n: int):
    """(U_j, W_j) with x_j = U_j / W_j as integer polynomials."""
    dP = zpoly.derivative(par.P)
    out = [([0, 1], [1])]
    for j in range(1, n):
        q, L = par.q_integer(j)
        out.append((q, zpoly.scale(dP, L)))
    return out


def _clear(f: mpoly.MPoly, k: int, frac, n: int) -> list[int]:
    """prod_{j != k} W_j * f_k(U / W) as an integer polynomial in t."""
    others = [j for j in range(n) if j != k]

    def expand(terms, depth):
        # split on the next variable: W_j * (terms without x_j) + U_j * (terms with x_j)
        if depth == len(others):
            return [sum(c for _, c in terms)] if terms else []
        j = others[depth]
        lo = [(e, c) for e, c in terms if not e[j]]
        hi = [(e, c) for e, c in terms if e[j]]
        U, W = frac[j]
        out: list[int] = []
        if lo:
            out = zpoly.mul(W, expand(lo, depth + 1))
        if hi:
            out = zpoly.add(out, zpoly.mul(U, expand(hi, depth + 1)))
        return out

    return zpoly.trim(expand(list(f.items()), 0))


def certify(mac: Macaulay, par: Parametrization, D: int, polys: list[mpoly.MPoly]) -> dict:
    """Exact checks proving that the roots of P parametrize all solutions.

    1. P is squarefree of degree D with P(0) != 0.
    2. f_k(t, Q_2/P', ...) vanishes mod P for every k (exact division).
    3. At a prime p: the Macaulay null space has dimension D and the
       monomials S evaluated along the parametrization are independent.
       Then every complex solution has its evaluation vector in the span
       of the D known ones, which forces it to be one of them.
    4. Q_j is coprime to P, so no solution leaves the torus.
    """
    n = mac.n
    P = par.P
    out = {"ok": False, "degree": len(P) - 1}
    if len(P) - 1 != D:
        out["fail"] = "degree"
        return out
    if len(zpoly.gcd_poly(P, zpoly.derivative(P))) > 1:
        out["fail"] = "squarefree"
        return out
    if P[0] == 0:
        out["fail"] = "torus"
        return out
    frac = _numerators(par, n)
    for k, f in enumerate(polys):
        num = _clear(f, k, frac, n)
        if num and not zpoly.divides(P, num):
            out["fail"] = f"equation {k}"
            return out
    out["equations"] = "exact"
    # rank certificate at a fresh prime
    for attempt, p in enumerate(primes_descending(FIRST_PRIME // 2)):
        if attempt == 12:
            out["fail"] = "rank"
            return out
        if P[-1] % p == 0 or any(x.denominator % p == 0 for q in par.Q for x in q):
            continue
        img = prime_image(mac, p, D)
        if img is None or img.nullity != D or img.inner_rank != D:
            continue
        Pp = flint.nmod_poly([c % p for c in P], p)
        dPp = Pp.derivative()
        if Pp.gcd(dPp).degree() > 0:
            continue
        inv = _inverse_mod(dPp, Pp, p)
        xs = [flint.nmod_poly([0, 1], p)]
        for j in range(1, n):
            q = flint.nmod_poly([x.numerator * pow(x.denominator, -1, p) % p for x in par.Q[j - 1]], p)
            if q.gcd(Pp).degree() > 0:
                out["fail"] = "torus"
                return out
            xs.append((q * inv) % Pp)
        rows = []
        for k in img.S:
            m = mac.monomials[k]
            v = flint.nmod_poly([1], p)
            for j, e in enumerate(m):
                for _ in range(e):
                    v = (v * xs[j]) % Pp
            rows.append(_coeffs(v, D))
        if flint.nmod_mat(rows, p).rank() != D:
            continue
        out.update(ok=True, rank_prime=p, nullity=D)
        return out


def _inverse_mod(a: "flint.nmod_poly", m: "flint.nmod_poly", p: int) -> "flint.nmod_poly":
    g, s, _ = a.xgcd(m)
    if g.degree() != 0:
        raise ModularFailure("derivative not invertible modulo the eliminant")
    return (s * pow(int(g[0]), -1, p)) % m


def _lift_stable(res: list[int], mod: int, prev: list | None, probe: list[int]) -> tuple[list | None, bool]:
    """Reconstruct the probe coefficients first; the full vector only when
    they repeat the previous round."""
    if prev is not None:
        for k in probe:
            if rational_reconstruct(res[k], mod) != prev[k]:
                break
        else:
            rec = [rational_reconstruct(r, mod) for r in res]
            return rec, rec == prev
    rec = [rational_reconstruct(r, mod) for r in res]
    return rec, False


def modular_parametrization(sys: MultiAffineSystem, D: int, max_primes: int = 1500) -> Parametrization:
    """Certified eliminant of x_0 and parametrization of all solutions."""
    polys = [mpoly.from_multiaffine(f, sys.n) for f in sys.polys]
    mac = choose_box(polys, sys.n, D)
    res = None
    mod = 1
    prev = None
    used = 0
    step = 4
    for p in primes_descending():
        if used >= max_primes:
            break
        img = prime_image(mac, p, D)
        if img is None or not img.P or img.nullity != D:
            continue
        vec = img.P + [x for q in img.Q for x in q]
        res = _crt_step(res, mod, vec, p)
        mod *= p
        used += 1
        if used % step:
            continue
        step = max(4, used // 8)
        probe = [0, D // 2, D, len(res) - 1, len(res) - D // 2]
        if prev is None:
            # cheap gate: wait until the probes reconstruct at all
            if any(rational_reconstruct(res[k], mod) is None for k in probe):
                continue
        rec, stable = _lift_stable(res, mod, prev, probe)
        if stable:
            P = rec[: D + 1]
            L = lcm(*(x.denominator for x in P))
            Pint = zpoly.primitive([int(x * L) for x in P])
            # Q_j was lifted against the monic eliminant; rescale to Pint
            Q = [[x * Pint[-1] for x in rec[D + 1 + k * D: D + 1 + (k + 1) * D]] for k in range(sys.n - 1)]
            par = Parametrization(Pint, Q, used, mac.box)
            cert = certify(mac, par, D, polys)
            if cert["ok"]:
                par.certificate = cert
                return par
        prev = rec if None not in rec else None
    raise ModularFailure(f"reconstruction did not certify within {max_primes} primes")
