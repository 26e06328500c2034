"""Print dim Ext^1 between E-modules of one block as a lambda-by-lambda grid.

    python3 scripts/ext_table.py --p 3 --s 1 --n 2 --m 2
"""

import argparse

from uqbar.cyclo import field
from uqbar.homlib import ext1
from uqbar.labels import E, ProjPoint
from uqbar.repcore import build

LAMS = [(1, 0), (0, 1), (1, 1), (1, -1), (1, 2)]


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--p", type=int, default=3)
    ap.add_argument("--s", type=int, default=1)
    ap.add_argument("--m", type=int, default=2)
    ap.add_argument("--n", type=int, default=2)
    ap.add_argument("--sign", type=int, choices=(1, -1), default=1)
    args = ap.parse_args(argv)

    ctx = field(args.p)
    lams = [ProjPoint.of(ctx, a, b) for a, b in LAMS]
    p, s, g = args.p, args.s, args.sign
    for title, right in [
        (f"Ext^1(E(s={s},m={args.m};λ), E(s={s},n={args.n};μ))", lambda mu: E(s, args.n, mu, g)),
        (f"Ext^1(E(s={s},m={args.m};λ), E(s={p - s},n={args.n};-μ), other sign)",
         lambda mu: E(p - s, args.n, -mu, -g)),
    ]:
        print(title)
        print("λ \\ μ".ljust(10) + "".join(str(mu).rjust(9) for mu in lams))
        for lam in lams:
            A = build(p, E(s, args.m, lam, g))
            row = [ext1(A, build(p, right(mu))) for mu in lams]
            print(str(lam).ljust(10) + "".join(str(x).rjust(9) for x in row))
        print()


if __name__ == "__main__":
    main()
