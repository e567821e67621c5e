"""Derangement numbers and the two root counts they must agree with."""

from __future__ import annotations

import itertools
from dataclasses import dataclass

MAX_MIXED_VOLUME_N = 10


def derangement(n: int) -> int:
    """!n by the recurrence !n = (n-1)(!(n-1) + !(n-2))."""
    if n < 0:
        raise ValueError("derangement needs n >= 0")
    a, b = 1, 0  # !0, !1
    if n == 0:
        return a
    for k in range(2, n + 1):
        a, b = b, (k - 1) * (a + b)
    return b


def mixed_volume_full(n: int) -> int:
    """Coefficient of lambda_0 ... lambda_{n-1} in prod_j sum_{i != j} lambda_i.

    The product is expanded over square-free monomials only (a factor
    whose variable is already used is dropped), so the state is a map
    from subsets to coefficients.
    """
    if not 2 <= n <= MAX_MIXED_VOLUME_N:
        raise ValueError(f"mixed_volume_full supports 2 <= n <= {MAX_MIXED_VOLUME_N}")
    state = {0: 1}
    for j in range(n):
        nxt: dict[int, int] = {}
        for mask, c in state.items():
            for i in range(n):
                if i == j or (mask >> i) & 1:
                    continue
                m = mask | (1 << i)
                nxt[m] = nxt.get(m, 0) + c
        state = nxt
    return state.get((1 << n) - 1, 0)


def permanent_brute(matrix: list[list[int]]) -> int:
    """Permanent by summing over all permutations (small n only)."""
    n = len(matrix)
    total = 0
    for perm in itertools.permutations(range(n)):
        p = 1
        for i, j in enumerate(perm):
            p *= matrix[i][j]
            if not p:
                break
        total += p
    return total


def ones_minus_identity(n: int) -> list[list[int]]:
    return [[int(i != j) for j in range(n)] for i in range(n)]


@dataclass(frozen=True)
class CountCheck:
    n: int
    derangement: int
    mixed_volume: int
    permanent: int | None  # None when brute force is too large

    @property
    def ok(self) -> bool:
        vals = {self.derangement, self.mixed_volume}
        if self.permanent is not None:
            vals.add(self.permanent)
        return len(vals) == 1

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "derangement": self.derangement,
            "mixed_volume": self.mixed_volume,
            "permanent": self.permanent,
            "ok": self.ok,
        }


def count_check(n: int, brute_limit: int = 7) -> CountCheck:
    perm = permanent_brute(ones_minus_identity(n)) if n <= brute_limit else None
    return CountCheck(n, derangement(n), mixed_volume_full(n), perm)
