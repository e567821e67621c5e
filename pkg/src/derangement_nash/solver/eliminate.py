"""Per-coordinate eliminants of an advantage system."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any

from ..certifier.counts import derangement
from ..game import CoeffVector, PayoffTensor, as_coeffs, permute_players
from ..kernel import zpoly
from ..kernel.upoly import UniPoly
from .modular import ModularFailure, Parametrization, modular_parametrization
from .resultants import DegenerateSystem, resultant_eliminant, strip_extraneous, system_mpolys

METHODS = ("auto", "resultant", "modular")


@dataclass(frozen=True)
class Eliminant:
    """Primitive integer polynomial vanishing at x_player of every torus solution."""

    player: int
    poly: UniPoly
    provenance: dict = field(default_factory=dict, compare=False)
    parametrization: Parametrization | None = field(default=None, compare=False, repr=False)

    @property
    def degree(self) -> int:
        return self.poly.degree

    @property
    def ints(self) -> list[int]:
        return self.poly.int_coeffs()

    def to_json(self) -> dict:
        return {
            "player": self.player,
            "degree": self.degree,
            "poly": self.poly.to_json(),
            "provenance": self.provenance,
        }

    @classmethod
    def from_json(cls, data: dict) -> "Eliminant":
        return cls(int(data["player"]), UniPoly.from_json(data["poly"]), dict(data.get("provenance", {})))


def swap_to_front(n: int, player: int) -> list[int]:
    """Transposition that makes `player` the new player 0."""
    perm = list(range(n))
    perm[0], perm[player] = player, 0
    return perm


def _choose(method: str, c: CoeffVector) -> str:
    if method not in METHODS:
        raise ValueError(f"unknown elimination method {method!r}")
    if method != "auto":
        return method
    return "modular" if c.full_support and c.n >= 5 else "resultant"


def eliminate(
    g: CoeffVector | PayoffTensor, player: int, method: str = "auto", cross_check: bool = False
) -> Eliminant:
    """Eliminant P_player of the advantage system of g.

    The player is first relabelled to position 0. Resultants run in two
    orders and the gcd removes factors that only one order introduces;
    for a full-support system further orders are tried while the degree
    exceeds !n. Factors shared by every order are then tested one by one
    and dropped when no solution lies on them. The modular route returns a polynomial whose roots are
    certified to be exactly the solution coordinates.

    Raises DegenerateSystem if elimination collapses to zero.
    """
    c = as_coeffs(g)
    n = c.n
    if n < 2:
        raise ValueError("elimination needs at least two players")
    if not 0 <= player < n:
        raise ValueError(f"player {player} out of range for n={n}")
    perm = swap_to_front(n, player)
    cc = permute_players(c, perm) if player else c
    D = derangement(n)
    route = _choose(method, c)
    par = None
    prov: dict[str, Any] = {"relabel": perm}
    if route == "modular":
        try:
            par = modular_parametrization(cc.system(), D)
        except ModularFailure as exc:
            if n > 4 or method == "modular":
                raise
            prov["modular_failure"] = str(exc)
            route = "resultant"
    if route == "modular":
        ints = par.P
        prov.update(method="modular", primes=par.primes, box=list(par.box), certificate=par.certificate)
    else:
        ints, traces = resultant_eliminant(cc.system(), 0, target=D if c.full_support else None)
        ints, removed = strip_extraneous(system_mpolys(cc.system()), n, 0, ints)
        prov.update(
            method="resultant",
            orders=[[perm[v] for v in tr.order] for tr in traces],
            degrees=[tr.degrees for tr in traces],
            extraneous=removed,
        )
    ints = zpoly.primitive(list(ints))
    if cross_check:
        other = "resultant" if route == "modular" else "modular"
        try:
            alt = eliminate(c, player, method=other)
            prov["cross_check"] = {"method": other, "agree": alt.poly.coeffs == UniPoly.from_ints(ints).coeffs}
        except (ModularFailure, DegenerateSystem) as exc:
            prov["cross_check"] = {"method": other, "error": str(exc)}
    return Eliminant(player, UniPoly.from_ints(ints), prov, par)


def eliminate_all(g: CoeffVector | PayoffTensor, method: str = "auto") -> list[Eliminant]:
    c = as_coeffs(g)
    return [eliminate(c, i, method) for i in range(c.n)]
