"""Density, irreducibility and full-symmetric Galois group certificates.

By Dedekind's theorem the factor degrees of P mod a good prime p are the
cycle lengths of a Frobenius element of the Galois group. A few such
cycle types pin the group down to S_D:

* type (D): the group is transitive and contains a D-cycle;
* one part equal to a prime q with D/2 < q < D - 2 and no other part
  divisible by q: a power of that element is a q-cycle, and a transitive
  group with such a cycle is A_D or S_D (Jordan);
* an odd number of even parts: an odd permutation, so not inside A_D.

No prime q fits the Jordan window when D <= 7. There a D-cycle, a
(D-1)-cycle and a transposition power (one part 2, all others odd) are
used instead: the first two make the group 2-transitive, hence
primitive, and a primitive group with a transposition is S_D.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from sympy import isprime, nextprime

from ..kernel import zpoly
from ..kernel.modp import cycle_type
from ..kernel.resultant import discriminant
from ..kernel.sturm import RealRoot, isolate_roots
from ..kernel.upoly import UniPoly

DEFAULT_BUDGET = 2000
DISCRIMINANT_MAX_DEGREE = 20

CERTIFIED = "CertifiedSymmetric"
INCONCLUSIVE = "Inconclusive"
IRREDUCIBLE = "Irreducible"
REDUCIBLE = "Reducible"

ROLE_DCYCLE = "transitivity-Dcycle"
ROLE_JORDAN = "jordan-qcycle"
ROLE_ODD = "odd-permutation"
ROLE_D1CYCLE = "two-transitivity-(D-1)cycle"
ROLE_TRANSPOSITION = "transposition-power"


def _int_poly(p: UniPoly) -> UniPoly:
    return UniPoly.from_ints(zpoly.primitive(p.to_integer()[0]))


# -- density -----------------------------------------------------------------

@dataclass(frozen=True)
class DensityReport:
    poly: UniPoly
    zeros: tuple[int, ...]

    @property
    def dense(self) -> bool:
        return not self.zeros

    def to_json(self) -> dict:
        return {"degree": self.poly.degree, "zero_indices": list(self.zeros), "dense": self.dense}


def check_dense(p: UniPoly) -> DensityReport:
    if p.is_zero():
        raise ValueError("density of the zero polynomial is undefined")
    return DensityReport(p, tuple(k for k, c in enumerate(p.coeffs) if c == 0))


# -- cycle-type rules --------------------------------------------------------

def is_dcycle(ct: tuple[int, ...], D: int) -> bool:
    return ct == (D,)


def jordan_prime(ct: tuple[int, ...], D: int) -> int | None:
    """The prime q of a usable Jordan cycle in ct, if any."""
    for q in set(ct):
        if 2 * q > D and q < D - 2 and isprime(q) and ct.count(q) == 1:
            if all(part % q for part in ct if part != q):
                return q
    return None


def is_odd(ct: tuple[int, ...]) -> bool:
    return sum(1 for part in ct if part % 2 == 0) % 2 == 1


def is_d1cycle(ct: tuple[int, ...], D: int) -> bool:
    return D >= 3 and sorted(ct) == [1, D - 1]


def is_transposition_power(ct: tuple[int, ...]) -> bool:
    return ct.count(2) == 1 and all(part % 2 for part in ct if part != 2)


def jordan_window_empty(D: int) -> bool:
    return not any(isprime(q) and 2 * q > D and q < D - 2 for q in range(2, D))


def roles_needed(D: int) -> tuple[str, ...]:
    if D == 2:
        return (ROLE_DCYCLE,)
    if D == 3:
        return (ROLE_DCYCLE, ROLE_ODD)
    if jordan_window_empty(D):
        return (ROLE_DCYCLE, ROLE_D1CYCLE, ROLE_TRANSPOSITION)
    return (ROLE_DCYCLE, ROLE_JORDAN, ROLE_ODD)


def roles_of(ct: tuple[int, ...], D: int) -> list[str]:
    out = []
    if is_dcycle(ct, D):
        out.append(ROLE_DCYCLE)
    if jordan_prime(ct, D) is not None:
        out.append(ROLE_JORDAN)
    if is_odd(ct):
        out.append(ROLE_ODD)
    if is_d1cycle(ct, D):
        out.append(ROLE_D1CYCLE)
    if is_transposition_power(ct):
        out.append(ROLE_TRANSPOSITION)
    return out


# -- Galois certificate ------------------------------------------------------

@dataclass
class GaloisCertificate:
    poly: UniPoly
    degree: int
    evidence: list[tuple[int, tuple[int, ...], str]] = field(default_factory=list)
    verdict: str = INCONCLUSIVE
    primes_scanned: int = 0
    rule: str = "jordan"
    discriminant_square: bool | None = None

    def to_json(self) -> dict:
        return {
            "poly": self.poly.to_json(),
            "degree": self.degree,
            "rule": self.rule,
            "evidence": [{"prime": p, "cycle_type": list(ct), "role": role} for p, ct, role in self.evidence],
            "verdict": self.verdict,
            "primes_scanned": self.primes_scanned,
            "discriminant_square": self.discriminant_square,
        }

    @classmethod
    def from_json(cls, data: dict) -> "GaloisCertificate":
        return cls(
            UniPoly.from_json(data["poly"]),
            int(data["degree"]),
            [(int(e["prime"]), tuple(e["cycle_type"]), e["role"]) for e in data["evidence"]],
            data["verdict"],
            int(data.get("primes_scanned", 0)),
            data.get("rule", "jordan"),
            data.get("discriminant_square"),
        )

    def recheck(self) -> bool:
        """Recompute every recorded cycle type and the verdict from them."""
        poly = _int_poly(self.poly)
        D = poly.degree
        if D != self.degree:
            return False
        found = set()
        for p, ct, role in self.evidence:
            if cycle_type(poly, p) != tuple(ct) or role not in roles_of(tuple(ct), D):
                return False
            found.add(role)
        disc = None
        if self.discriminant_square is not None:
            disc = _is_rational_square(discriminant(poly))
            if disc != self.discriminant_square:
                return False
        complete = _complete(found, roles_needed(D), disc)
        return complete == (self.verdict == CERTIFIED)


def scan_primes(lead: int, start: int = 2):
    p = start if isprime(start) else nextprime(start)
    while True:
        if lead % p:
            yield p
        p = nextprime(p)


def certify_full_symmetric(p: UniPoly, prime_budget: int = DEFAULT_BUDGET, use_discriminant: bool | None = None) -> GaloisCertificate:
    """Scan primes for cycle types proving Gal(P) = S_D.

    Never claims a proper subgroup: without all evidence the verdict is
    Inconclusive. The minimal qualifying prime is recorded per role.
    """
    poly = _int_poly(p)
    D = poly.degree
    if D < 2:
        raise ValueError("Galois certification needs degree >= 2")
    need = roles_needed(D)
    cert = GaloisCertificate(poly, D, rule="small-degree" if D > 3 and jordan_window_empty(D) else "jordan")
    if use_discriminant is None:
        use_discriminant = D <= DISCRIMINANT_MAX_DEGREE
    if use_discriminant:
        disc = discriminant(poly)
        cert.discriminant_square = _is_rational_square(disc)
    found: dict[str, tuple[int, tuple[int, ...]]] = {}
    lead = poly.int_coeffs()[-1]
    scanned = 0
    for prime in scan_primes(lead):
        if scanned >= prime_budget:
            break
        scanned += 1
        ct = cycle_type(poly, prime)
        if ct is None:
            continue
        for role in roles_of(ct, D):
            if role in need and role not in found:
                found[role] = (prime, ct)
        if _complete(set(found), need, cert.discriminant_square):
            break
    cert.primes_scanned = scanned
    cert.evidence = sorted(((pr, ct, role) for role, (pr, ct) in found.items()), key=lambda e: (e[0], e[2]))
    if _complete(set(found), need, cert.discriminant_square):
        cert.verdict = CERTIFIED
    return cert


def _complete(found: set[str], need: tuple[str, ...], disc_square: bool | None) -> bool:
    """All roles present; a nonsquare discriminant may stand in for an
    odd permutation (both exclude the alternating group)."""
    missing = [r for r in need if r not in found]
    return not missing or (missing == [ROLE_ODD] and disc_square is False)


def _is_rational_square(x: Fraction) -> bool:
    x = Fraction(x)
    if x < 0:
        return False
    from math import isqrt

    a, b = x.numerator, x.denominator
    return isqrt(a) ** 2 == a and isqrt(b) ** 2 == b


# -- irreducibility ----------------------------------------------------------

@dataclass
class IrreducibilityResult:
    verdict: str
    witness: int | None = None                  # prime with cycle type (D)
    factor: list[int] | None = None             # exhibited factor, integer coefficients
    possible_degrees: list[int] = field(default_factory=list)
    primes_scanned: int = 0

    def to_json(self) -> dict:
        return {
            "verdict": self.verdict,
            "witness_prime": self.witness,
            "factor": self.factor,
            "possible_factor_degrees": self.possible_degrees,
            "primes_scanned": self.primes_scanned,
        }


def _subset_sums(ct: tuple[int, ...]) -> set[int]:
    sums = {0}
    for part in ct:
        sums |= {s + part for s in sums}
    return sums


def rational_roots(ints: list[int]) -> list[Fraction]:
    """All rational roots of an integer polynomial.

    A rational root a/b in lowest terms has b | lc. Once a real root is
    isolated in an interval narrower than 1/(2 lc^2), at most one fraction
    with denominator <= lc lies in it, and the best approximation finds it.
    """
    a = zpoly.primitive(list(ints))
    out = []
    k = 0
    while k < len(a) - 1 and a[k] == 0:
        k += 1
    if k:
        out.append(Fraction(0))
        a = a[k:]
    if len(a) <= 1:
        return out
    sq = zpoly.primitive(zpoly.squarefree(a))
    lead = abs(sq[-1])
    poly = UniPoly.from_ints(sq)
    width = Fraction(1, 4 * lead * lead)
    for iv in isolate_roots(poly):
        root = RealRoot(poly, iv)
        iv = root.refine(width)
        cand = iv.mid.limit_denominator(lead)
        if iv.contains(cand) and zpoly.sign_at(sq, cand) == 0:
            out.append(cand)
    return sorted(out)


def certify_irreducible(p: UniPoly, prime_budget: int = DEFAULT_BUDGET) -> IrreducibilityResult:
    """Irreducible with a witness prime, Reducible with an exhibited factor,
    otherwise Inconclusive.

    The prime scan runs first; the rational-root search refines to a width
    near 1/lc^2 and is only worth paying for when the scan fails.
    """
    poly = _int_poly(p)
    D = poly.degree
    if D < 1:
        raise ValueError("irreducibility needs degree >= 1")
    if D == 1:
        return IrreducibilityResult(IRREDUCIBLE, possible_degrees=[1])
    ints = poly.int_coeffs()
    g = zpoly.gcd_poly(ints, zpoly.derivative(ints))
    if len(g) > 1:
        # a repeated factor is an explicit proper factor
        return IrreducibilityResult(REDUCIBLE, factor=zpoly.primitive(g))
    possible = set(range(D + 1))
    scanned = 0
    for prime in scan_primes(ints[-1]):
        if scanned >= prime_budget:
            break
        scanned += 1
        ct = cycle_type(poly, prime)
        if ct is None:
            continue
        if ct == (D,):
            return IrreducibilityResult(IRREDUCIBLE, witness=prime, possible_degrees=[D], primes_scanned=scanned)
        possible &= _subset_sums(ct)
        if possible == {0, D}:
            return IrreducibilityResult(IRREDUCIBLE, possible_degrees=[D], primes_scanned=scanned)
    if 1 in possible:
        roots = rational_roots(ints)
        if roots:
            r = roots[0]
            return IrreducibilityResult(
                REDUCIBLE, factor=[-r.numerator, r.denominator], possible_degrees=sorted(possible - {0}), primes_scanned=scanned
            )
    return IrreducibilityResult(INCONCLUSIVE, possible_degrees=sorted(possible - {0}), primes_scanned=scanned)
