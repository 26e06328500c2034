"""Compare matrix decompositions with the closed-form rules over a label sample.

    python3 scripts/oracle_vs_rules.py --p 3 --nmax 2
    python3 scripts/oracle_vs_rules.py --p 5 --nmax 1 --families X,P,E
"""

import argparse
import itertools
import sys
import time

from uqbar.homlib import decompose
from uqbar.repcore import build, tensor
from uqbar.rules import label_sample, tensor_rule


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--p", type=int, default=3)
    ap.add_argument("--nmax", type=int, default=2)
    ap.add_argument("--families", default="X,P,M,W,E")
    ap.add_argument("--limit", type=int, default=0, help="stop after this many pairs (0 = all)")
    args = ap.parse_args(argv)

    fams = set(args.families.split(","))
    labs = [l for l in label_sample(args.p, args.nmax) if l.family in fams]
    reps = {l: build(args.p, l) for l in labs}
    pairs = list(itertools.product(labs, labs))
    if args.limit:
        pairs = pairs[: args.limit]
    t0 = time.perf_counter()
    bad = 0
    for a, b in pairs:
        oracle = decompose(tensor(reps[a], reps[b]))
        formula = tensor_rule(args.p, a, b)
        if oracle != formula:
            bad += 1
            print(f"MISMATCH {a} ⊗ {b}\n  matrix:  {oracle}\n  formula: {formula}")
    took = time.perf_counter() - t0
    print(f"p={args.p}: {len(pairs)} pairs, {bad} mismatches, {took:.1f}s")
    return 1 if bad else 0


if __name__ == "__main__":
    sys.exit(main())
