import json
from fractions import Fraction

import pytest

from derangement_nash import cli
from derangement_nash.certifier import check_dense
from derangement_nash.game import anchor_coeffs, perturb, shift_coeffs
from derangement_nash.pipeline import (
    SynthesisConfig,
    SynthesisFailure,
    _attempt,
    attempt_seed,
    choose_shift,
    shift_ladder,
    synthesize,
    verify,
)
from derangement_nash.solver import eliminate

from test_game import matching_pennies


def _strip(bundle_json: dict) -> dict:
    return {k: v for k, v in bundle_json.items() if k != "timestamp"}


@pytest.fixture(scope="module")
def bundle4():
    return synthesize(SynthesisConfig(n=4, seed=1))


# -- config -------------------------------------------------------------------

def test_config_validation():
    with pytest.raises(ValueError):
        SynthesisConfig(n=2)
    with pytest.raises(ValueError):
        SynthesisConfig(n=6)
    assert SynthesisConfig(n=6, allow_large=True).n == 6
    with pytest.raises(ValueError):
        SynthesisConfig(max_resamples=0)
    cfg = SynthesisConfig(n=3, magnitude="1/16")
    assert cfg.magnitude == Fraction(1, 16)
    assert SynthesisConfig.from_json(json.loads(json.dumps(cfg.to_json()))) == cfg


def test_seed_chain_is_fixed():
    assert attempt_seed(1, 0) == attempt_seed(1, 0)
    assert len({attempt_seed(s, k) for s in range(5) for k in range(5)}) == 25


def test_shift_ladder_order():
    ladder = list(shift_ladder())
    assert ladder[0] == Fraction(1, 97) and ladder[1] == Fraction(-1, 97)
    assert ladder[-1] == Fraction(-1, 2)
    assert all(abs(a) <= abs(b) for a, b in zip(ladder, ladder[1:]))


# -- synthesis ----------------------------------------------------------------

def test_synthesize_n3_quadratics():
    b = synthesize(SynthesisConfig(n=3, seed=1))
    assert b.certificate.passed
    assert [e.degree for e in b.eliminants] == [2, 2, 2]
    assert b.certificate.galois[0].rule == "jordan"
    assert all(isinstance(v, int) for v in b.payoffs.u.values())


def test_synthesize_n4(bundle4):
    b = bundle4
    assert b.certificate.passed and b.certificate.irradical
    assert [e.degree for e in b.eliminants] == [9] * 4
    assert all(all(e.ints) for e in b.eliminants)
    assert b.ne.complete and b.ne.patterns == 81 and len(b.ne.equilibria) == 1
    assert b.ne.equilibria[0].pattern.fully_mixed
    assert b.payoffs.multiplier >= 1
    prov = b.provenance
    assert prov["seed"] == 1 and prov["attempt_seed"] == attempt_seed(1, prov["resamples"])


def test_synthesis_is_deterministic(bundle4):
    again = synthesize(SynthesisConfig(n=4, seed=1))
    assert _strip(again.to_json()) == _strip(bundle4.to_json())


def test_large_magnitude_reports_failures():
    cfg = SynthesisConfig(n=3, seed=3, magnitude=Fraction(8), denom_bound=2, max_resamples=6)
    try:
        b = synthesize(cfg)
    except SynthesisFailure as exc:
        assert sum(exc.histogram.values()) == 6
        assert len(exc.attempts) == 6
        assert all(a["failed_clause"] for a in exc.attempts)
    else:
        # some attempt may still pass; failures before it are tallied
        assert sum(b.provenance["failures"].values()) == b.provenance["resamples"]


def test_failure_histogram_counts_clauses():
    cfg = SynthesisConfig(n=3, seed=5, magnitude=Fraction(8), denom_bound=2, max_resamples=12)
    try:
        hist = synthesize(cfg).provenance["failures"]
    except SynthesisFailure as exc:
        hist = exc.histogram
    assert set(hist) <= {"unique_ne", "fully_mixed", "degree", "dense", "irreducible", "galois", "ne_root", "elimination"}
    assert sum(hist.values()) >= 1


# -- density repair -----------------------------------------------------------

def _sparse_game():
    """A perturbed n=3 game shifted so that P_0 has no linear term."""
    c = perturb(anchor_coeffs(3), seed=2)
    const, lin, lead = eliminate(c, 0).ints
    s = shift_coeffs(c, [Fraction(-lin, 2 * lead), Fraction(0), Fraction(0)])
    assert check_dense(eliminate(s, 0).poly).zeros == (1,)
    return s


def test_choose_shift_only_moves_sparse_players():
    s = _sparse_game()
    els = [eliminate(s, i) for i in range(3)]
    lam = choose_shift(els)
    assert lam[0] != 0 and lam[1] == lam[2] == 0


def test_density_repair_recomputes_eliminants():
    s = _sparse_game()
    record = {}
    out = _attempt(s, SynthesisConfig(n=3), record)
    rep = record["density_repair"]
    assert rep["lambda"][0] != "0" and rep["shift_identity"] == [True, True, True]
    assert out.certificate.clauses["dense"]["pass"]
    assert rep["ne_count_before"] == rep["ne_count_after"]


def test_density_repair_can_be_disabled():
    s = _sparse_game()
    record = {}
    out = _attempt(s, SynthesisConfig(n=3, density_repair=False), record)
    assert "density_repair" not in record
    assert not out.certificate.clauses["dense"]["pass"]


# -- verification -------------------------------------------------------------

def test_verify_bundle_roundtrip(bundle4, tmp_path):
    path = tmp_path / "bundle.json"
    path.write_text(bundle4.dumps())
    before = path.read_text()
    v = verify(path)
    assert v.passed
    assert v.checks == {"payoffs_match_game": True, "eliminants_match": True, "certificate_match": True}
    assert path.read_text() == before


def test_verify_detects_edited_bundle(bundle4, tmp_path):
    data = bundle4.to_json()
    data["eliminants"][0]["poly"][0] = str(int(data["eliminants"][0]["poly"][0]) + 1)
    path = tmp_path / "bad.json"
    path.write_text(json.dumps(data))
    v = verify(path)
    assert not v.passed and v.checks["eliminants_match"] is False


def test_verify_anchor(tmp_path):
    path = tmp_path / "anchor4.json"
    path.write_text(json.dumps(anchor_coeffs(4).to_json()))
    v = verify(path)
    assert not v.passed and v.certificate.failed_clause == "degree"
    (eq,) = v.ne.equilibria
    assert all(eq.interval(i).contains(Fraction(1, 2)) for i in range(4))


def test_verify_matching_pennies(tmp_path):
    path = tmp_path / "mp.json"
    path.write_text(json.dumps(matching_pennies().to_json()))
    v = verify(path)
    assert len(v.ne.equilibria) == 1 and str(v.ne.equilibria[0].pattern) == "MM"
    # !2 = 1: linear eliminants, trivial Galois group
    assert v.passed and v.certificate.clauses["galois"]["verdicts"] == ["trivial", "trivial"]


# -- command line ---------------------------------------------------------------

def _run(argv, capsys):
    code = cli.main(argv)
    return code, json.loads(capsys.readouterr().out)


def test_cli_mixedvol(capsys):
    code, out = _run(["mixedvol", "2", "8"], capsys)
    assert code == 0
    assert [r["mixed_volume"] for r in out["rows"]] == [1, 2, 9, 44, 265, 1854, 14833]


def test_cli_galois(tmp_path, capsys):
    cases = {
        "selmer": (["-1", "-1", "0", "0", "0", "0", "0", "0", "0", "1"], "CertifiedSymmetric", 0),
        "radical": (["-7", "0", "32", "0", "128", "0", "-2048", "0", "4096"], "Inconclusive", 1),
        "square": (["-1", "0", "1"], "Reducible", 1),
    }
    for name, (coeffs, verdict, code) in cases.items():
        path = tmp_path / f"{name}.json"
        path.write_text(json.dumps(coeffs))
        got, out = _run(["galois", str(path), "--prime-budget", "500"], capsys)
        assert (got, out["verdict"]) == (code, verdict), name


def test_cli_ne_anchor(tmp_path, capsys):
    path = tmp_path / "anchor.json"
    path.write_text(json.dumps(anchor_coeffs(4).to_json()))
    code, out = _run(["ne", str(path), "--tol", "2^-64"], capsys)
    assert code == 0 and out["unique_fully_mixed"] and out["count"] == 1
    assert all(e["poly"] in (["-1", "2"], ["1", "-2"]) for e in out["eliminants"])


def test_cli_synthesize_and_verify(tmp_path, capsys):
    bundle = tmp_path / "b.json"
    assert cli.main(["synthesize", "--n", "3", "--seed", "2", "--out", str(bundle)]) == 0
    code, out = _run(["verify", str(bundle)], capsys)
    assert code == 0 and out["passed"]


def test_cli_verify_degenerate(tmp_path, capsys):
    path = tmp_path / "zero.json"
    from derangement_nash.game import CoeffVector

    c = CoeffVector(2, {(0, 0): Fraction(0), (0, 2): Fraction(0), (1, 0): Fraction(0), (1, 1): Fraction(0)})
    path.write_text(json.dumps(c.to_json()))
    code, out = _run(["verify", str(path)], capsys)
    assert code == 2 and "DegenerateSystem" in out["error"]


def test_parse_rational():
    assert cli.parse_rational("2^-64") == Fraction(1, 2**64)
    assert cli.parse_rational("3/8") == Fraction(3, 8)
    assert cli.parse_rational("7") == 7
