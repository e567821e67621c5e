import itertools
import json
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from derangement_nash.game import (
    CoeffVector,
    MultiAffineSystem,
    PayoffTensor,
    advantage_from_payoffs,
    anchor_coeffs,
    as_coeffs,
    game_from_json,
    payoffs_from_advantage,
    permute_players,
    perturb,
    shift_coeffs,
    subsets_without,
)

from conftest import coeff_vectors, small_fracs

H = Fraction(1, 2)


def matching_pennies() -> PayoffTensor:
    u = {}
    for a in itertools.product((0, 1), repeat=2):
        match = 1 if a[0] == a[1] else -1
        u[(0, a)] = match
        u[(1, a)] = -match
    return PayoffTensor(2, u)


def test_matching_pennies_advantage():
    sys = advantage_from_payoffs(matching_pennies())
    # f_0 = -2 + 4 x_1, f_1 = 2 - 4 x_0
    assert sys.polys[0] == {0: -2, 2: 4}
    assert sys.polys[1] == {0: 2, 1: -4}


def test_zero_payoffs_give_zero_system():
    u = {(i, a): 0 for i in range(3) for a in itertools.product((0, 1), repeat=3)}
    sys = advantage_from_payoffs(PayoffTensor(3, u))
    assert all(v == 0 for p in sys.polys for v in p.values())


def test_payoffs_from_half_advantage():
    sys = MultiAffineSystem(2, ({0: Fraction(-1, 2), 2: Fraction(1)}, {0: Fraction(0), 1: Fraction(0)}))
    g = payoffs_from_advantage(sys)
    assert g.multiplier == 2
    assert g.payoff(0, (1, 0)) == -1 and g.payoff(0, (1, 1)) == 1
    assert g.payoff(0, (0, 0)) == 0 and g.payoff(0, (0, 1)) == 0


def test_integer_advantages_copy_directly():
    sys = advantage_from_payoffs(matching_pennies())
    g = payoffs_from_advantage(sys)
    assert g.multiplier == 1
    assert advantage_from_payoffs(g) == sys


@given(coeff_vectors(full=False))
def test_payoff_roundtrip_scales_by_m(c):
    g = payoffs_from_advantage(c.system())
    assert all(isinstance(v, int) for v in g.u.values())
    assert all(g.payoff(i, a) == 0 for (i, a) in g.u if a[i] == 0)
    assert advantage_from_payoffs(g) == c.system().scaled(g.multiplier)


@given(st.integers(2, 4), st.data())
def test_advantage_reproduces_payoff_differences(n, data):
    u = {
        (i, a): data.draw(st.integers(-9, 9))
        for i in range(n)
        for a in itertools.product((0, 1), repeat=n)
    }
    g = PayoffTensor(n, u)
    sys = advantage_from_payoffs(g)
    for i in range(n):
        for a in itertools.product((0, 1), repeat=n):
            hi = tuple(1 if j == i else a[j] for j in range(n))
            lo = tuple(0 if j == i else a[j] for j in range(n))
            assert sys.evaluate(i, a) == g.payoff(i, hi) - g.payoff(i, lo)


def test_anchor_examples():
    c = anchor_coeffs(4)
    x = [Fraction(k, 7) for k in (1, 2, 3, 4)]
    assert [c.evaluate(i, x) for i in range(4)] == [2 * x[1] - 1, 2 * x[2] - 1, 2 * x[3] - 1, 1 - 2 * x[0]]
    c2 = anchor_coeffs(2)
    assert c2.poly(0) == {0: -1, 2: 2} and c2.poly(1) == {0: 1, 1: -2}
    with pytest.raises(ValueError):
        anchor_coeffs(1)


@pytest.mark.parametrize("n", [2, 3, 4, 5])
def test_anchor_vanishes_at_half(n):
    c = anchor_coeffs(n)
    assert all(c.evaluate(i, [H] * n) == 0 for i in range(n))
    assert c.full_support == (n == 2)


def test_coeff_vector_size_and_keys():
    c = anchor_coeffs(4)
    assert c.size == 4 * 2**3
    for i in range(4):
        assert sorted(c.poly(i)) == sorted(subsets_without(4, i))
    with pytest.raises(ValueError):
        CoeffVector(2, {(0, 1): Fraction(1)})


def test_shift_examples():
    c = anchor_coeffs(3)
    assert shift_coeffs(c, [0, 0, 0]) == c
    f = CoeffVector(2, {(0, 0): Fraction(0), (0, 2): Fraction(1), (1, 0): Fraction(0), (1, 1): Fraction(0)})
    g = shift_coeffs(f, [0, Fraction(1, 3)])
    assert g.poly(0) == {0: Fraction(1, 3), 2: 1}
    with pytest.raises(ValueError):
        shift_coeffs(c, [0, 0])


@given(coeff_vectors(), st.data())
def test_shift_pointwise_and_inverse(c, data):
    lam = [data.draw(small_fracs) for _ in range(c.n)]
    x = [data.draw(small_fracs) for _ in range(c.n)]
    s = shift_coeffs(c, lam)
    moved = [xi + li for xi, li in zip(x, lam)]
    assert all(s.evaluate(i, x) == c.evaluate(i, moved) for i in range(c.n))
    assert shift_coeffs(s, [-v for v in lam]) == c


def test_perturb_contract():
    c0 = anchor_coeffs(4)
    a = perturb(c0, 64, Fraction(1, 8), seed=7)
    b = perturb(c0, 64, Fraction(1, 8), seed=7)
    assert a == b
    assert a != perturb(c0, 64, Fraction(1, 8), seed=8)
    for key, v in a.entries.items():
        d = v - c0.entries[key]
        assert d != 0 and abs(d) <= Fraction(1, 8) and d.denominator <= 64
    with pytest.raises(ValueError):
        perturb(c0, 64, Fraction(0), seed=1)
    with pytest.raises(ValueError):
        perturb(c0, 1, Fraction(1, 8), seed=1)


@given(st.integers(0, 10**9), st.integers(2, 5))
def test_perturbed_anchor_has_full_support(seed, n):
    assert perturb(anchor_coeffs(n), seed=seed).full_support


@given(coeff_vectors(full=False))
def test_json_roundtrip(c):
    assert CoeffVector.from_json(json.loads(json.dumps(c.to_json()))) == c
    g = payoffs_from_advantage(c.system())
    back = game_from_json(json.loads(json.dumps(g.to_json())))
    assert back == g and back.multiplier == g.multiplier


@given(coeff_vectors(n=3), st.permutations(range(3)))
def test_permute_players_moves_values(c, perm):
    p = permute_players(c, perm)
    x = [Fraction(1, 3), Fraction(2, 5), Fraction(-1, 2)]
    y = [None] * 3
    for i in range(3):
        y[perm[i]] = x[i]
    assert all(p.evaluate(perm[i], y) == c.evaluate(i, x) for i in range(3))


def test_as_coeffs_from_payoffs_scales():
    g = matching_pennies()
    c = as_coeffs(g)
    assert c.poly(0) == {0: -2, 2: 4}
