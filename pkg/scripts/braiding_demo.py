"""Commutativity of tensor products, with and without the double cover.

Without the cover the formula engine finds pairs with A⊗B ≇ B⊗A. After
lifting, sigma∘R gives an explicit isomorphism for liftable modules.

    python3 scripts/braiding_demo.py --p 3
"""

import argparse
import itertools

from uqbar import doublecover
from uqbar.repcore import build
from uqbar.rules import commutes, label_sample


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--p", type=int, default=3)
    ap.add_argument("--nmax", type=int, default=1)
    ap.add_argument("--rmatrix-pairs", type=int, default=6)
    args = ap.parse_args(argv)
    p = args.p

    sample = label_sample(p, args.nmax)
    bad = [(a, b) for a, b in itertools.product(sample, sample) if not commutes(p, a, b)[0]]
    print(f"{len(bad)} of {len(sample) ** 2} ordered pairs have A⊗B ≇ B⊗A")
    for a, b in bad[:5]:
        print(f"  {a} ⊗ {b}: {commutes(p, a, b)[1]}")

    lifts = []
    for lab in sample:
        res = doublecover.lift(build(p, lab))
        if res.liftable:
            lifts.append((lab, res.module))
    print(f"\nR-matrix check on lifted pairs ({len(lifts)} liftable labels):")
    for (la, A), (lb, B) in itertools.islice(itertools.product(lifts, lifts), args.rmatrix_pairs):
        print(f"  {la} ⊗ {lb}: {'ok' if doublecover.braiding_check(A, B) else 'FAILED'}")
    T = doublecover.build_T(p, 1, 1, (1, 1), 1)
    X2 = doublecover.lift(build(p, sample[0])).module
    print(f"  T^1(1,(1,1),1) ⊗ lift({sample[0]}): {'ok' if doublecover.braiding_check(T, X2) else 'FAILED'}")


if __name__ == "__main__":
    main()
