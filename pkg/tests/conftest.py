import random
from fractions import Fraction

import pytest
from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from derangement_nash.game import CoeffVector, PayoffTensor, subsets_without

settings.register_profile(
    "repo",
    deadline=None,
    max_examples=60,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("repo")


small_fracs = st.fractions(min_value=-4, max_value=4, max_denominator=12)
nonzero_fracs = small_fracs.filter(lambda v: v != 0)


def int_poly(max_degree=6, bound=20):
    return st.lists(st.integers(-bound, bound), min_size=2, max_size=max_degree + 1).filter(lambda c: c[-1] != 0)


@st.composite
def coeff_vectors(draw, n=None, full=True):
    n = draw(st.integers(2, 4)) if n is None else n
    entries = {}
    for i in range(n):
        for m in subsets_without(n, i):
            entries[(i, m)] = draw(nonzero_fracs if full else small_fracs)
    return CoeffVector(n, entries)


def random_coeffs(n: int, rng: random.Random, bound: int = 6, denom: int = 5) -> CoeffVector:
    entries = {}
    for i in range(n):
        for m in subsets_without(n, i):
            v = Fraction(0)
            while v == 0:
                v = Fraction(rng.randint(-bound, bound), rng.randint(1, denom))
            entries[(i, m)] = v
    return CoeffVector(n, entries)


def random_payoffs(n: int, rng: random.Random, bound: int = 3) -> PayoffTensor:
    import itertools

    u = {(i, a): rng.randint(-bound, bound) for i in range(n) for a in itertools.product((0, 1), repeat=n)}
    return PayoffTensor(n, u)


@pytest.fixture
def rng():
    return random.Random(20240611)
