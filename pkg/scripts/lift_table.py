"""Which modules of the label sample extend to the double cover.

    python3 scripts/lift_table.py --p 3 --nmax 2
"""

import argparse

from uqbar.doublecover import lift
from uqbar.repcore import build
from uqbar.rules import label_sample


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--p", type=int, default=3)
    ap.add_argument("--nmax", type=int, default=2)
    ap.add_argument("--verbose", action="store_true", help="print obstructions")
    args = ap.parse_args(argv)

    counts = {True: 0, False: 0, None: 0}
    for lab in label_sample(args.p, args.nmax):
        res = lift(build(args.p, lab))
        counts[res.liftable] += 1
        verdict = {True: "liftable", False: "not liftable", None: "undetermined"}[res.liftable]
        print(f"{str(lab):<20} {verdict}")
        if args.verbose and res.liftable is False:
            for line in res.obstruction:
                print(f"    {line}")
    print(f"\n{counts[True]} liftable, {counts[False]} not liftable, {counts[None]} undetermined")


if __name__ == "__main__":
    main()
