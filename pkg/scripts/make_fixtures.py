"""Write the small JSON inputs used by the CLI examples in the README.

    python scripts/make_fixtures.py fixtures/
"""

import argparse
import itertools
import json
from pathlib import Path

from derangement_nash.game import PayoffTensor, anchor_coeffs

POLYS = {
    "selmer9.json": [-1, -1, 0, 0, 0, 0, 0, 0, 0, 1],
    "radical8.json": [-7, 0, 32, 0, 128, 0, -2048, 0, 4096],
    "square.json": [-1, 0, 1],
}


def matching_pennies() -> PayoffTensor:
    u = {}
    for a in itertools.product((0, 1), repeat=2):
        match = 1 if a[0] == a[1] else -1
        u[(0, a)] = match
        u[(1, a)] = -match
    return PayoffTensor(2, u)


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.split("\n")[0])
    ap.add_argument("outdir", nargs="?", default="fixtures")
    args = ap.parse_args()
    out = Path(args.outdir)
    out.mkdir(parents=True, exist_ok=True)
    for name, coeffs in POLYS.items():
        (out / name).write_text(json.dumps([str(c) for c in coeffs]) + "\n")
    for n in (4, 5):
        (out / f"anchor{n}.json").write_text(json.dumps(anchor_coeffs(n).to_json(), indent=1) + "\n")
    (out / "matching_pennies.json").write_text(json.dumps(matching_pennies().to_json(), indent=1) + "\n")
    print(f"wrote {len(POLYS) + 3} files to {out}")


if __name__ == "__main__":
    main()
