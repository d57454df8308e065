"""Tabulate shadow area, d' and rigidity verdicts over the shipped scenarios."""

import argparse
import json
from pathlib import Path

from cobar import serial
from cobar.scenario import check_distance_vs_shadow, check_rigidity

ROOT = Path(__file__).resolve().parent.parent / "fixtures" / "scenarios"


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--dir", type=Path, default=ROOT)
    args = ap.parse_args()
    print(f"{'scenario':28} {'S':>6} {'d':>6} {'a':>6} {'b':>6}  rigidity")
    for path in sorted(args.dir.glob("*.json")):
        sc = serial.scenario_from_json(json.loads(path.read_text()))
        row = [sc.name]
        if sc.movie is not None:
            rep = check_distance_vs_shadow(sc)
            row += [str(rep.shadow), str(rep.distance), str(rep.a), str(rep.b)]
        else:
            row += ["-"] * 4
        verdict = check_rigidity(sc).verdict if sc.hom_minus else "-"
        print(f"{row[0]:28} {row[1]:>6} {row[2]:>6} {row[3]:>6} {row[4]:>6}  {verdict}")


if __name__ == "__main__":
    main()
