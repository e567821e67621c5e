"""Synthesize over a range of seeds and tabulate success, resamples and time.

    python scripts/synthesis_sweep.py --n 4 --seeds 1-10 --out results/sweep_n4.json
"""

from __future__ import annotations

import argparse
import json
import time
from pathlib import Path

from derangement_nash.pipeline import SynthesisConfig, SynthesisFailure, synthesize


def seed_range(text: str) -> list[int]:
    lo, _, hi = text.partition("-")
    return list(range(int(lo), int(hi or lo) + 1))


def main() -> None:
    ap = argparse.ArgumentParser()
    ap.add_argument("--n", type=int, default=4)
    ap.add_argument("--seeds", default="1-10")
    ap.add_argument("--max-resamples", type=int, default=50)
    ap.add_argument("--bundles", help="directory for the passing bundles")
    ap.add_argument("--out")
    args = ap.parse_args()

    rows = []
    for seed in seed_range(args.seeds):
        cfg = SynthesisConfig(n=args.n, seed=seed, max_resamples=args.max_resamples)
        start = time.perf_counter()
        try:
            b = synthesize(cfg)
        except SynthesisFailure as exc:
            row = {"seed": seed, "ok": False, "failures": exc.histogram}
        else:
            row = {
                "seed": seed,
                "ok": True,
                "resamples": b.provenance["resamples"],
                "failures": b.provenance["failures"],
                "galois_primes": [max(p for p, _, _ in g.evidence) for g in b.certificate.galois],
            }
            if args.bundles:
                Path(args.bundles).mkdir(parents=True, exist_ok=True)
                Path(args.bundles, f"n{args.n}_seed{seed}.json").write_text(b.dumps() + "\n")
        row["seconds"] = round(time.perf_counter() - start, 2)
        rows.append(row)
        print(json.dumps(row), flush=True)

    summary = {"n": args.n, "succeeded": sum(r["ok"] for r in rows), "seeds": len(rows), "rows": rows}
    print(f"{summary['succeeded']}/{summary['seeds']} seeds certified")
    if args.out:
        Path(args.out).parent.mkdir(parents=True, exist_ok=True)
        Path(args.out).write_text(json.dumps(summary, indent=1) + "\n")


if __name__ == "__main__":
    main()
