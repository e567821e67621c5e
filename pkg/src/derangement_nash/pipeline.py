"""Synthesis of certified instances and offline re-verification."""

from __future__ import annotations

import hashlib
import json
import time
from collections import Counter
from dataclasses import asdict, dataclass, field
from datetime import datetime, timezone
from fractions import Fraction
from pathlib import Path

from sympy import primerange

from .certifier.galois import DEFAULT_BUDGET, check_dense
from .certifier.instance import InstanceCertificate, certify_instance
from .game import (
    CoeffVector,
    PayoffTensor,
    advantage_from_payoffs,
    anchor_coeffs,
    as_coeffs,
    game_from_json,
    payoffs_from_advantage,
    perturb,
    shift_coeffs,
)
from .kernel import zpoly
from .kernel.upoly import as_fraction, fraction_str
from .solver.boxes import DEFAULT_TOL
from .solver.eliminate import Eliminant, eliminate_all
from .solver.modular import ModularFailure
from .solver.ne import NEReport, enumerate_ne
from .solver.resultants import DegenerateSystem

MAX_N = 5
SHIFT_PRIMES = tuple(primerange(2, 98))


class SynthesisFailure(RuntimeError):
    """Resample budget exhausted; carries the per-clause failure histogram."""

    def __init__(self, message: str, histogram: dict[str, int], attempts: list[dict]):
        super().__init__(message)
        self.histogram = histogram
        self.attempts = attempts


@dataclass(frozen=True)
class SynthesisConfig:
    n: int = 4
    seed: int = 1
    magnitude: Fraction = Fraction(1, 8)
    denom_bound: int = 64
    max_resamples: int = 50
    tol: Fraction = DEFAULT_TOL
    prime_budget: int = DEFAULT_BUDGET
    density_repair: bool = True
    allow_large: bool = False

    def __post_init__(self):
        object.__setattr__(self, "magnitude", as_fraction(self.magnitude))
        object.__setattr__(self, "tol", as_fraction(self.tol))
        if self.n < 3:
            raise ValueError("synthesis needs n >= 3")
        if self.n > MAX_N and not self.allow_large:
            raise ValueError(f"n > {MAX_N} needs allow_large (no runtime guarantee)")
        if self.max_resamples < 1:
            raise ValueError("max_resamples must be at least 1")
        if self.tol <= 0:
            raise ValueError("tol must be positive")

    def to_json(self) -> dict:
        d = asdict(self)
        d["magnitude"] = fraction_str(self.magnitude)
        d["tol"] = fraction_str(self.tol)
        return d

    @classmethod
    def from_json(cls, data: dict) -> "SynthesisConfig":
        return cls(**data)


def attempt_seed(seed: int, attempt: int) -> int:
    """Seed of the attempt-th resample; a fixed chain, independent of timing."""
    h = hashlib.sha256(f"{seed}:{attempt}".encode()).digest()
    return int.from_bytes(h[:8], "big")


@dataclass
class InstanceBundle:
    config: SynthesisConfig
    game: CoeffVector
    payoffs: PayoffTensor
    eliminants: list[Eliminant]
    ne: NEReport
    certificate: InstanceCertificate
    provenance: dict = field(default_factory=dict)
    timestamp: str = ""

    def to_json(self) -> dict:
        return {
            "config": self.config.to_json(),
            "game": self.game.to_json(),
            "payoffs": self.payoffs.to_json(),
            "eliminants": [e.to_json() for e in self.eliminants],
            "ne": self.ne.to_json(),
            "certificate": self.certificate.to_json(),
            "provenance": self.provenance,
            "timestamp": self.timestamp,
        }

    def dumps(self) -> str:
        return json.dumps(self.to_json(), indent=1, sort_keys=True)


# -- density repair ----------------------------------------------------------

def shift_ladder():
    """Candidate shifts +-1/q, smallest magnitude first."""
    for q in reversed(SHIFT_PRIMES):
        yield Fraction(1, q)
        yield Fraction(-1, q)


def shifted_eliminant(ints: list[int], lam: Fraction) -> list[int]:
    """Primitive P(t + lam)."""
    b, _ = zpoly.compose_shift(list(ints), lam.numerator, lam.denominator)
    return zpoly.primitive(b)


def choose_shift(eliminants: list[Eliminant]) -> list[Fraction] | None:
    """Per-player shift making every P_i(t + lam_i) dense, or None.

    The eliminant of player i only sees lam_i, so each coordinate is
    chosen on its own; dense players keep lam_i = 0.
    """
    lam = []
    for e in eliminants:
        if check_dense(e.poly).dense:
            lam.append(Fraction(0))
            continue
        for cand in shift_ladder():
            if all(shifted_eliminant(e.ints, cand)):
                lam.append(cand)
                break
        else:
            return None
    return lam


# -- one attempt -------------------------------------------------------------

@dataclass
class _Attempt:
    game: CoeffVector
    eliminants: list[Eliminant]
    ne: NEReport
    certificate: InstanceCertificate
    record: dict


def _solve(c: CoeffVector, cfg: SynthesisConfig):
    el = eliminate_all(c)
    ne = enumerate_ne(c, cfg.tol, eliminants=el)
    return el, ne


def _attempt(c: CoeffVector, cfg: SynthesisConfig, record: dict) -> _Attempt:
    el, ne = _solve(c, cfg)
    cert = certify_instance(c, el, ne, cfg.prime_budget)
    dense = cert.clauses.get("dense", {})
    if cfg.density_repair and not dense.get("pass", True) and not dense.get("skipped"):
        lam = choose_shift(el)
        record["density_repair"] = {"lambda": None if lam is None else [fraction_str(v) for v in lam]}
        if lam is not None:
            shifted = shift_coeffs(c, lam)
            el2, ne2 = _solve(shifted, cfg)
            expected = [shifted_eliminant(e.ints, l) for e, l in zip(el, lam)]
            record["density_repair"]["shift_identity"] = [e.ints == x for e, x in zip(el2, expected)]
            record["density_repair"]["ne_count_before"] = len(ne.equilibria)
            record["density_repair"]["ne_count_after"] = len(ne2.equilibria)
            c, el, ne = shifted, el2, ne2
            cert = certify_instance(c, el, ne, cfg.prime_budget)
    return _Attempt(c, el, ne, cert, record)


def synthesize(cfg: SynthesisConfig, log=None) -> InstanceBundle:
    """Resample perturbations of the anchor until one passes every clause."""
    anchor = anchor_coeffs(cfg.n)
    failures: Counter[str] = Counter()
    attempts: list[dict] = []
    for k in range(cfg.max_resamples):
        s = attempt_seed(cfg.seed, k)
        record: dict = {"attempt": k, "seed": s}
        start = time.perf_counter()
        c = perturb(anchor, cfg.denom_bound, cfg.magnitude, s)
        try:
            out = _attempt(c, cfg, record)
        except (DegenerateSystem, ModularFailure) as exc:
            record["failed_clause"] = "elimination"
            record["error"] = str(exc)
            failures["elimination"] += 1
            attempts.append(record)
            if log:
                log(f"attempt {k}: elimination failed ({exc})")
            continue
        elapsed = time.perf_counter() - start
        record["failed_clause"] = out.certificate.failed_clause
        attempts.append(record)
        if log:
            log(f"attempt {k}: {'pass' if out.certificate.passed else 'fail ' + str(out.certificate.failed_clause)} ({elapsed:.1f}s)")
        if not out.certificate.passed:
            failures[out.certificate.failed_clause] += 1
            continue
        lam = (record.get("density_repair") or {}).get("lambda")
        provenance = {
            "seed": cfg.seed,
            "attempt_seed": s,
            "resamples": k,
            "lambda": lam if lam is not None else ["0"] * cfg.n,
            "failures": dict(sorted(failures.items())),
            "attempts": attempts,
        }
        return InstanceBundle(
            cfg,
            out.game,
            payoffs_from_advantage(out.game.system()),
            out.eliminants,
            out.ne,
            out.certificate,
            provenance,
            datetime.now(timezone.utc).isoformat(timespec="seconds"),
        )
    hist = dict(sorted(failures.items()))
    raise SynthesisFailure(f"no certified instance in {cfg.max_resamples} resamples: {hist}", hist, attempts)


# -- verification ------------------------------------------------------------

@dataclass
class Verification:
    game: CoeffVector
    eliminants: list[Eliminant]
    ne: NEReport
    certificate: InstanceCertificate
    checks: dict = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return self.certificate.passed and all(self.checks.values())

    def to_json(self) -> dict:
        return {
            "passed": self.passed,
            "checks": self.checks,
            "eliminants": [e.to_json() for e in self.eliminants],
            "ne": self.ne.to_json(),
            "certificate": self.certificate.to_json(),
        }


def verify_game(
    g: CoeffVector | PayoffTensor,
    tol: Fraction = DEFAULT_TOL,
    prime_budget: int = DEFAULT_BUDGET,
) -> Verification:
    """Run the whole solver and certifier stack on one game."""
    c = as_coeffs(g)
    el = eliminate_all(c)
    ne = enumerate_ne(c, tol, eliminants=el)
    cert = certify_instance(c, el, ne, prime_budget)
    return Verification(c, el, ne, cert)


def verify(path: str | Path) -> Verification:
    """Verify a game, payoff tensor or bundle file; the file is only read.

    For a bundle the embedded payoffs, eliminants and certificate are also
    compared against the recomputation.
    """
    data = json.loads(Path(path).read_text())
    g = game_from_json(data)
    bundle = "certificate" in data and "game" in data
    tol, budget = DEFAULT_TOL, DEFAULT_BUDGET
    if bundle and "config" in data:
        cfg = data["config"]
        tol = as_fraction(str(cfg.get("tol", fraction_str(tol))))
        budget = int(cfg.get("prime_budget", budget))
    result = verify_game(g, tol, budget)
    if bundle:
        checks = result.checks
        c = result.game
        if "payoffs" in data:
            pay = PayoffTensor.from_json(data["payoffs"])
            checks["payoffs_match_game"] = advantage_from_payoffs(pay) == c.system().scaled(pay.multiplier)
        if "eliminants" in data:
            stored = [Eliminant.from_json(e) for e in data["eliminants"]]
            checks["eliminants_match"] = [e.ints for e in stored] == [e.ints for e in result.eliminants]
        checks["certificate_match"] = _comparable(data["certificate"]) == _comparable(result.certificate.to_json())
    return result


def _comparable(cert: dict) -> str:
    return json.dumps(cert, sort_keys=True)
