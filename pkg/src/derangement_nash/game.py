"""n-player 2-action games as payoff tensors and as advantage coefficients.

Players are indexed from 0. A subset s of players is a bitmask; the
advantage polynomial of player i is

    f_i(x) = sum_s c[i, s] * prod_{j in s} x_j,     bit i never set in s,

where x_j is the probability that player j plays action 1. Payoffs use
action 1 = bit set in the pure profile.
"""

from __future__ import annotations

import itertools
import json
import random
from dataclasses import dataclass, field
from fractions import Fraction
from math import lcm
from pathlib import Path
from typing import Iterable, Mapping, Sequence

from .kernel.upoly import as_fraction, fraction_str


def subsets_without(n: int, i: int) -> list[int]:
    """All bitmasks over n players with bit i clear, ascending."""
    return [m for m in range(1 << n) if not (m >> i) & 1]


def mask_to_list(mask: int) -> list[int]:
    return [j for j in range(mask.bit_length()) if (mask >> j) & 1]


def list_to_mask(players: Iterable[int]) -> int:
    m = 0
    for j in players:
        m |= 1 << j
    return m


@dataclass(frozen=True)
class MultiAffineSystem:
    """Sparse advantage polynomials; ``polys[i]`` maps mask -> coefficient."""

    n: int
    polys: tuple[Mapping[int, Fraction], ...]

    def __post_init__(self):
        if len(self.polys) != self.n:
            raise ValueError("need one polynomial per player")
        cleaned = []
        for i, f in enumerate(self.polys):
            g = {}
            for m, v in f.items():
                if (m >> i) & 1:
                    raise ValueError(f"f_{i} mentions its own variable x_{i}")
                if m >> self.n:
                    raise ValueError(f"subset {m:b} exceeds {self.n} players")
                v = as_fraction(v)
                if v:
                    g[m] = v
            cleaned.append(g)
        object.__setattr__(self, "polys", tuple(cleaned))

    def evaluate(self, i: int, x: Sequence) -> Fraction:
        total = Fraction(0)
        for m, v in self.polys[i].items():
            term = v
            for j in mask_to_list(m):
                term *= x[j]
            total += term
        return total

    def scaled(self, factor) -> "MultiAffineSystem":
        factor = as_fraction(factor)
        return MultiAffineSystem(self.n, tuple({m: v * factor for m, v in f.items()} for f in self.polys))

    def __eq__(self, other):
        return (
            isinstance(other, MultiAffineSystem)
            and self.n == other.n
            and all(dict(a) == dict(b) for a, b in zip(self.polys, other.polys))
        )

    def __hash__(self):
        return hash((self.n, tuple(frozenset(f.items()) for f in self.polys)))


@dataclass(frozen=True)
class CoeffVector:
    """Dense coefficient vector c = (c[i, s]) with N = n 2^(n-1) entries."""

    n: int
    entries: Mapping[tuple[int, int], Fraction] = field(hash=False)

    def __post_init__(self):
        if self.n < 1:
            raise ValueError("need at least one player")
        full = {}
        for i in range(self.n):
            for m in subsets_without(self.n, i):
                full[(i, m)] = Fraction(0)
        for key, v in self.entries.items():
            if key not in full:
                raise ValueError(f"illegal coefficient index {key}")
            full[key] = as_fraction(v)
        object.__setattr__(self, "entries", full)

    @property
    def size(self) -> int:
        return len(self.entries)

    def __getitem__(self, key: tuple[int, int]) -> Fraction:
        return self.entries[key]

    def poly(self, i: int) -> dict[int, Fraction]:
        return {m: self.entries[(i, m)] for m in subsets_without(self.n, i)}

    def system(self) -> MultiAffineSystem:
        return MultiAffineSystem(self.n, tuple(self.poly(i) for i in range(self.n)))

    @classmethod
    def from_system(cls, sys: MultiAffineSystem) -> "CoeffVector":
        return cls(sys.n, {(i, m): v for i, f in enumerate(sys.polys) for m, v in f.items()})

    def zero_entries(self) -> list[tuple[int, int]]:
        return [k for k, v in self.entries.items() if v == 0]

    @property
    def full_support(self) -> bool:
        return all(v != 0 for v in self.entries.values())

    def evaluate(self, i: int, x: Sequence) -> Fraction:
        return self.system().evaluate(i, x)

    def __eq__(self, other):
        return isinstance(other, CoeffVector) and self.n == other.n and self.entries == other.entries

    def __hash__(self):
        return hash((self.n, tuple(sorted(self.entries.items()))))

    # -- JSON ----------------------------------------------------------------
    def to_json(self) -> dict:
        return {
            "n": self.n,
            "coeffs": [
                {"i": i, "s": mask_to_list(m), "v": fraction_str(v)}
                for (i, m), v in sorted(self.entries.items())
            ],
        }

    @classmethod
    def from_json(cls, data: Mapping) -> "CoeffVector":
        n = int(data["n"])
        entries = {}
        for row in data["coeffs"]:
            key = (int(row["i"]), list_to_mask(int(j) for j in row["s"]))
            if key in entries:
                raise ValueError(f"duplicate coefficient {key}")
            entries[key] = as_fraction(str(row["v"]))
        return cls(n, entries)


@dataclass(frozen=True)
class PayoffTensor:
    """Integer payoffs u[i][profile] on all 2^n pure profiles.

    ``profile`` is a tuple of 0/1 actions; ``multiplier`` is the clearing
    factor M used when the tensor was realised from rational advantages.
    """

    n: int
    u: Mapping[tuple[int, tuple[int, ...]], int] = field(hash=False)
    multiplier: int = 1

    def __post_init__(self):
        need = {(i, a) for i in range(self.n) for a in itertools.product((0, 1), repeat=self.n)}
        if set(self.u) != need:
            raise ValueError("payoff tensor must define every (player, profile) cell")
        for v in self.u.values():
            if not isinstance(v, int):
                raise TypeError("payoffs must be integers")

    def payoff(self, i: int, profile: Sequence[int]) -> int:
        return self.u[(i, tuple(profile))]

    def to_json(self) -> dict:
        rows = []
        for a in itertools.product((0, 1), repeat=self.n):
            rows.append([list(a), [str(self.u[(i, a)]) for i in range(self.n)]])
        return {"n": self.n, "M": str(self.multiplier), "u": rows}

    @classmethod
    def from_json(cls, data: Mapping) -> "PayoffTensor":
        n = int(data["n"])
        u = {}
        for profile, values in data["u"]:
            a = tuple(int(b) for b in profile)
            if len(a) != n or len(values) != n:
                raise ValueError("profile/payoff length does not match n")
            for i, v in enumerate(values):
                u[(i, a)] = int(v)
        return cls(n, u, int(data.get("M", 1)))


def _profile(n: int, i: int, ai: int, others_mask: int) -> tuple[int, ...]:
    return tuple(ai if j == i else (others_mask >> j) & 1 for j in range(n))


def advantage_from_payoffs(g: PayoffTensor) -> MultiAffineSystem:
    """Multi-affine advantage f_i = E[u_i | a_i = 1] - E[u_i | a_i = 0].

    Coefficients come from the Moebius transform of the vertex values.
    """
    n = g.n
    polys = []
    for i in range(n):
        masks = subsets_without(n, i)
        diff = {
            m: Fraction(g.payoff(i, _profile(n, i, 1, m)) - g.payoff(i, _profile(n, i, 0, m)))
            for m in masks
        }
        for j in range(n):
            if j == i:
                continue
            bit = 1 << j
            for m in masks:
                if m & bit:
                    diff[m] -= diff[m ^ bit]
        polys.append(diff)
    return MultiAffineSystem(n, tuple(polys))


def vertex_values(sys: MultiAffineSystem, i: int) -> dict[int, Fraction]:
    """f_i at every pure profile of the other players (zeta transform)."""
    n = sys.n
    masks = subsets_without(n, i)
    vals = {m: sys.polys[i].get(m, Fraction(0)) for m in masks}
    for j in range(n):
        if j == i:
            continue
        bit = 1 << j
        for m in masks:
            if m & bit:
                vals[m] += vals[m ^ bit]
    return vals


def payoffs_from_advantage(sys: MultiAffineSystem) -> PayoffTensor:
    """Integer payoffs u_i(1, v) = M f_i(v), u_i(0, v) = 0."""
    n = sys.n
    values = [vertex_values(sys, i) for i in range(n)]
    M = lcm(1, *(v.denominator for vals in values for v in vals.values()))
    u = {}
    for i in range(n):
        for m, v in values[i].items():
            u[(i, _profile(n, i, 1, m))] = int(v * M)
            u[(i, _profile(n, i, 0, m))] = 0
    return PayoffTensor(n, u, M)


def anchor_coeffs(n: int) -> CoeffVector:
    """The cyclic anchor game f_i = 2 x_{i+1} - 1 (i < n-1), f_{n-1} = 1 - 2 x_0."""
    if n < 2:
        raise ValueError("anchor game needs n >= 2")
    entries = {}
    for i in range(n - 1):
        entries[(i, 0)] = Fraction(-1)
        entries[(i, 1 << (i + 1))] = Fraction(2)
    entries[(n - 1, 0)] = Fraction(1)
    entries[(n - 1, 1)] = Fraction(-2)
    return CoeffVector(n, entries)


def shift_coeffs(c: CoeffVector, lam: Sequence) -> CoeffVector:
    """Coefficients of f_i(x + lam), expanded back into multi-affine form."""
    n = c.n
    if len(lam) != n:
        raise ValueError(f"shift needs {n} entries")
    lam = [as_fraction(v) for v in lam]
    entries = {}
    for i in range(n):
        masks = subsets_without(n, i)
        coef = c.poly(i)
        for j in range(n):
            if j == i or lam[j] == 0:
                continue
            bit = 1 << j
            for m in masks:
                if m & bit and coef[m]:
                    coef[m ^ bit] += lam[j] * coef[m]
        for m, v in coef.items():
            entries[(i, m)] = v
    return CoeffVector(n, entries)


def random_delta(rng: random.Random, denom_bound: int, magnitude: Fraction) -> Fraction:
    """Nonzero rational with |delta| <= magnitude and denominator <= denom_bound."""
    while True:
        q = rng.randint(1, denom_bound)
        top = int(magnitude * q)
        if top < 1:
            continue
        num = rng.randint(1, top) * rng.choice((-1, 1))
        return Fraction(num, q)


def perturb(c0: CoeffVector, denom_bound: int = 64, magnitude=Fraction(1, 8), seed: int = 0) -> CoeffVector:
    """Full-support rational perturbation of c0, deterministic in seed."""
    magnitude = as_fraction(magnitude)
    if magnitude <= 0:
        raise ValueError("magnitude must be positive")
    if denom_bound < 2:
        raise ValueError("denom_bound must be at least 2")
    if magnitude * denom_bound < 1:
        raise ValueError("no nonzero rational fits the magnitude and denominator bounds")
    rng = random.Random(seed)
    entries = {}
    for key in sorted(c0.entries):
        while True:
            v = c0.entries[key] + random_delta(rng, denom_bound, magnitude)
            if v != 0:
                break
        entries[key] = v
    return CoeffVector(c0.n, entries)


def permute_players(c: CoeffVector, perm: Sequence[int]) -> CoeffVector:
    """Relabel players: new player perm[i] plays the role of old player i."""
    n = c.n
    entries = {}
    for (i, m), v in c.entries.items():
        nm = list_to_mask(perm[j] for j in mask_to_list(m))
        entries[(perm[i], nm)] = v
    return CoeffVector(n, entries)


# -- file loading ------------------------------------------------------------

def load_game(path: str | Path) -> CoeffVector | PayoffTensor:
    """Read a game JSON file (coefficient vector, payoff tensor or bundle)."""
    data = json.loads(Path(path).read_text())
    return game_from_json(data)


def game_from_json(data: Mapping) -> CoeffVector | PayoffTensor:
    if "game" in data and isinstance(data["game"], Mapping):
        data = data["game"]
    if "coeffs" in data:
        return CoeffVector.from_json(data)
    if "u" in data:
        return PayoffTensor.from_json(data)
    raise ValueError("JSON is neither a coefficient vector nor a payoff tensor")


def as_coeffs(g: CoeffVector | PayoffTensor | MultiAffineSystem) -> CoeffVector:
    if isinstance(g, CoeffVector):
        return g
    if isinstance(g, PayoffTensor):
        return CoeffVector.from_system(advantage_from_payoffs(g))
    if isinstance(g, MultiAffineSystem):
        return CoeffVector.from_system(g)
    raise TypeError(f"not a game: {type(g).__name__}")
