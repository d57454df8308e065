"""d' between a random complex and its translates, against the |c| bound."""

import argparse
import random
from fractions import Fraction as Q

from cobar.barcode import decompose
from cobar.core import complex_from, translate
from cobar.interleave import interleaving_distance


def random_complex(rng, bars):
    gens, diff = [], []
    for k in range(bars):
        b = Q(rng.randint(0, 8), 2)
        gens.append((f"a{k}", 0, b))
        if rng.random() < 0.7:
            gens.append((f"b{k}", 1, b + Q(rng.randint(1, 6), 2)))
            diff.append((f"a{k}", f"b{k}"))
    return complex_from(gens, diff)


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--bars", type=int, default=3)
    ap.add_argument("--trials", type=int, default=5)
    args = ap.parse_args()
    rng = random.Random(args.seed)
    shifts = [Q(k, 4) for k in range(-8, 9)]
    for t in range(args.trials):
        F = random_complex(rng, args.bars)
        print(f"trial {t}: {decompose(F)}")
        for c in shifts:
            d = interleaving_distance(F, translate(F, c))
            flag = "" if d <= abs(c) else "  BOUND BROKEN"
            print(f"  c = {str(c):>5}  d' = {d}{flag}")


if __name__ == "__main__":
    main()
