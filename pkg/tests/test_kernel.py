from fractions import Fraction

import pytest
import sympy
from hypothesis import assume, given
from hypothesis import strategies as st

from derangement_nash.kernel import (
    Interval,
    PrimePoly,
    RealRoot,
    UniPoly,
    cycle_type,
    discriminant,
    gcd,
    is_squarefree,
    isolate_roots,
    poly_arith,
    refine_root,
    resultant,
    root_count,
    squarefree_part,
    sturm_count,
    sturm_isolate,
)
from derangement_nash.kernel import zpoly
from derangement_nash.kernel.descartes import RootCounter, taylor_shift, variations
from derangement_nash.kernel.sturm import sturm_sequence

from conftest import int_poly, small_fracs

T = sympy.Symbol("t")


def sym(p: UniPoly):
    return sympy.Poly([sympy.Rational(c.numerator, c.denominator) for c in reversed(p.coeffs)], T)


# -- arithmetic ---------------------------------------------------------------

def test_poly_arith_examples():
    t = UniPoly.t()
    assert poly_arith(t + 1, t - 1, "mul") == UniPoly([-1, 0, 1])
    p = UniPoly([3, 0, 5])
    assert poly_arith(p, UniPoly(), "add") == p
    assert poly_arith(UniPoly([-2, 0, 1]), UniPoly([-3, 0, 1]), "mul") == UniPoly([6, 0, -5, 0, 1])
    with pytest.raises(ValueError):
        poly_arith(p, p, "div")


@given(st.lists(small_fracs, max_size=6), st.lists(small_fracs, max_size=6))
def test_add_sub_roundtrip(a, b):
    a, b = UniPoly(a), UniPoly(b)
    assert (a + b) - b == a


@given(st.lists(small_fracs, max_size=5), st.lists(small_fracs, max_size=5))
def test_mul_degree(a, b):
    a, b = UniPoly(a), UniPoly(b)
    prod = a * b
    if a.is_zero() or b.is_zero():
        assert prod.is_zero()
    else:
        assert prod.degree == a.degree + b.degree
        assert sym(prod) == sym(a) * sym(b)


def test_zero_poly_and_trailing_zeros():
    assert UniPoly([0, 0]).degree == -1
    assert UniPoly([1, 2, 0]).coeffs == (Fraction(1), Fraction(2))
    assert UniPoly.from_json(UniPoly([Fraction(1, 3), -2]).to_json()) == UniPoly([Fraction(1, 3), -2])
    assert UniPoly([Fraction(1, 3), -2]).to_json() == ["1/3", "-2"]


# -- resultants, gcd, squarefree ---------------------------------------------

def test_resultant_examples():
    assert resultant(UniPoly([-2, 0, 1]), UniPoly([-3, 0, 1])) == 1
    a, b = Fraction(2, 3), Fraction(-5, 7)
    assert resultant(UniPoly([-a, 1]), UniPoly([-b, 1])) == a - b
    assert resultant(UniPoly([-2, 0, 1]), UniPoly([-1, 1])) == -1
    with pytest.raises(ValueError, match="undefined resultant"):
        resultant(UniPoly(), UniPoly())


def sylvester_det(a, b):
    """Resultant as the Sylvester determinant (sympy's resultant disagrees
    in sign on some inputs, so the matrix is built here)."""
    da, db = len(a) - 1, len(b) - 1
    size = da + db
    rows = []
    for k in range(db):
        rows.append([0] * k + list(reversed(a)) + [0] * (size - da - 1 - k))
    for k in range(da):
        rows.append([0] * k + list(reversed(b)) + [0] * (size - db - 1 - k))
    return sympy.Matrix(rows).det()


@given(int_poly(5, 9), int_poly(5, 9))
def test_resultant_matches_sylvester(a, b):
    pa, pb = UniPoly.from_ints(a), UniPoly.from_ints(b)
    assert resultant(pa, pb) == sylvester_det(a, b)


@given(int_poly(4, 6), int_poly(4, 6))
def test_resultant_zero_iff_common_factor(a, b):
    pa, pb = UniPoly.from_ints(a), UniPoly.from_ints(b)
    assert (resultant(pa, pb) == 0) == (gcd(pa, pb).degree > 0)


@given(int_poly(4, 6), int_poly(4, 6))
def test_gcd_two_routes(a, b):
    # flint-backed gcd against the primitive remainder sequence
    assert zpoly.gcd_poly(a, b) == zpoly.gcd_prs(a, b)


def test_squarefree_examples():
    t = UniPoly.t()
    assert squarefree_part((t - 1) ** 2 * (t + 2)) == (t - 1) * (t + 2)
    selmer = UniPoly([-1, -1, 0, 0, 0, 0, 0, 0, 0, 1])
    assert squarefree_part(selmer) == selmer
    assert squarefree_part(t**3) == t
    with pytest.raises(ValueError):
        squarefree_part(UniPoly())


@given(int_poly(6, 5))
def test_squarefree_part_is_squarefree(a):
    s = squarefree_part(UniPoly.from_ints(a))
    assert is_squarefree(s)
    assert gcd(s, s.derivative()).degree == 0


def test_discriminant_quadratic():
    # b^2 - 4ac
    assert discriminant(UniPoly([1, 3, 1])) == 5
    assert discriminant(UniPoly([-2, 0, 1])) == 8


# -- root isolation -----------------------------------------------------------

def test_isolate_examples():
    t = UniPoly.t()
    (iv,) = isolate_roots(t**2 - 2, Interval(0, 2))
    root = RealRoot(t**2 - 2, iv)
    w = root.refine(Fraction(1, 1000))
    assert w.width <= Fraction(1, 1000) and w.low**2 < 2 < w.high**2
    assert isolate_roots(t**2 + 1, Interval(-10, 10)) == []
    two = isolate_roots((t - Fraction(1, 4)) * (t - Fraction(3, 4)), Interval(0, 1))
    assert len(two) == 2 and two[0].high < two[1].low
    assert two[0].contains(Fraction(1, 4)) and two[1].contains(Fraction(3, 4))
    with pytest.raises(ValueError, match="requires squarefree input"):
        isolate_roots((t - 1) ** 2)


def test_endpoints_are_never_roots():
    t = UniPoly.t()
    p = (t - Fraction(1, 2)) * (t - Fraction(1, 4)) * (t - Fraction(3, 4)) * (t + 3)
    for isolate in (isolate_roots, sturm_isolate):
        ivs = isolate(p, Interval(0, 1))
        assert len(ivs) == 3
        ints, _ = p.to_integer()
        for a, b in zip(ivs, ivs[1:]):
            assert a.high < b.low
        for iv in ivs:
            assert zpoly.sign_at(ints, iv.low) and zpoly.sign_at(ints, iv.high)
    # a root on the end of the range
    ivs = isolate_roots(p, Interval(Fraction(1, 4), 1))
    assert len(ivs) == 3 and ivs[0].contains(Fraction(1, 4))


@given(st.lists(st.fractions(min_value=-3, max_value=3, max_denominator=8), min_size=1, max_size=6, unique=True))
def test_isolation_finds_explicit_roots(roots):
    p = UniPoly.from_roots(roots)
    ivs = isolate_roots(p, Interval(-4, 4))
    assert len(ivs) == len(roots)
    for r in roots:
        assert sum(iv.contains(r) for iv in ivs) == 1


@given(int_poly(7, 30))
def test_descartes_and_sturm_isolation_agree(a):
    p = squarefree_part(UniPoly.from_ints(a))
    assume(p.degree >= 1)
    d, s = isolate_roots(p), sturm_isolate(p)
    assert len(d) == len(s) == sympy.Poly(sym(p)).count_roots()


@given(int_poly(7, 30), small_fracs, small_fracs)
def test_root_counters_agree(a, lo, hi):
    assume(lo <= hi)
    ints = zpoly.squarefree(a)
    assume(len(ints) > 1)
    oracle = sympy.Poly(list(reversed(ints)), T).count_roots(sympy.Rational(lo), sympy.Rational(hi))
    assert RootCounter(ints).count(lo, hi) == oracle
    assert sturm_count(ints, lo, hi) == oracle


def test_sturm_count_matches_variation_count():
    # the invariant stated for isolation: interval count = Sturm variation count
    p = UniPoly.from_roots([Fraction(-5, 2), Fraction(1, 3), Fraction(7, 5), 2])
    ints, _ = p.to_integer()
    seq = sturm_sequence(ints)
    assert len(seq) == 5
    assert len(sturm_isolate(p, Interval(-3, 3))) == sturm_count(ints, Fraction(-3), Fraction(3)) == 4


def test_descartes_rule_is_exact_for_zero_and_one():
    t = UniPoly.t()
    ints, _ = ((t - Fraction(1, 3)) * (t - 2)).to_integer()
    assert variations(ints, Fraction(0), Fraction(1)) == 1
    assert variations(ints, Fraction(1, 2), Fraction(3, 2)) == 0
    assert taylor_shift([1, 2, 1], 1) == [4, 4, 1]   # (t + 2)^2


def test_refine_root_examples():
    t = UniPoly.t()
    iv = refine_root(t**2 - 2, Interval(1, 2), Fraction(1, 1000))
    assert iv.width <= Fraction(1, 1000) and iv.low**2 <= 2 <= iv.high**2
    half = refine_root(2 * t - 1, Interval(0, 1), Fraction(1, 10))
    assert half.contains(Fraction(1, 2))
    with pytest.raises(ValueError):
        refine_root(t**2 - 2, Interval(2, 3), Fraction(1, 10))


def test_root_count_closed_interval():
    t = UniPoly.t()
    assert root_count(t * (t - 1), Interval(0, 1)) == 2
    assert root_count(t * (t - 1), Interval(Fraction(1, 3), Fraction(2, 3))) == 0


def test_fujiwara_bound_encloses_roots():
    p = UniPoly.from_roots([-7, Fraction(1, 9), 3, Fraction(-1, 2)])
    ints, _ = p.to_integer()
    b = zpoly.fujiwara_bound(ints)
    assert b >= 7 and b <= zpoly.cauchy_bound(ints) * 2


# -- cycle types --------------------------------------------------------------

def test_cycle_type_examples():
    assert cycle_type(UniPoly([1, 0, 1]), 3) == (2,)
    assert cycle_type(UniPoly([1, 0, 1]), 5) == (1, 1)
    assert cycle_type(UniPoly([-2, 0, 1]), 2) is None
    with pytest.raises(ValueError):
        cycle_type(UniPoly([1, 0, 1]), 9)


def sympy_cycle_type(ints, p):
    f = sympy.Poly(list(reversed(ints)), T, modulus=p)
    return tuple(sorted((g.degree() for g, e in f.factor_list()[1] for _ in range(e)), reverse=True))


@given(int_poly(8, 40), st.sampled_from([3, 5, 7, 11, 13, 101]))
def test_cycle_type_matches_sympy(a, p):
    ct = cycle_type(UniPoly.from_ints(a), p)
    if ct is None:
        # rejected: leading coefficient vanishes or repeated factor mod p
        f = sympy.Poly(list(reversed(a)), T, modulus=p)
        assert a[-1] % p == 0 or f.gcd(f.diff(T)).degree() > 0
    else:
        assert sum(ct) == len(a) - 1
        assert ct == sympy_cycle_type(a, p)


def test_prime_poly_reduction():
    pp = PrimePoly.reduce(UniPoly([7, -1, 3]), 5)
    assert pp.coeffs == (2, 4, 3) and pp.degree == 2
