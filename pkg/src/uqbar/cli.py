"""Command-line front end.

Exit codes: 0 on success or agreement, 2 when the matrix and formula
engines disagree, 1 on usage or engine errors.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import doublecover, homlib, rules
from .cyclo import field
from .labels import FormalDecomp, ProjPoint, E, X, parse_label
from .repcore import build, dual, tensor

EXIT_OK, EXIT_ERROR, EXIT_DISAGREE = 0, 1, 2


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        raise UsageError(message)


def _emit(args, payload: dict, text: str):
    if args.format == "json":
        print(json.dumps(payload, ensure_ascii=False, sort_keys=True))
    else:
        print(text)


def _labels(p, texts):
    try:
        return [parse_label(t, p) for t in texts]
    except ValueError as exc:
        raise UsageError(str(exc)) from None


# -- commands -------------------------------------------------------------

def cmd_decompose(args) -> int:
    p = args.p
    A, B = _labels(p, [args.A, args.B])
    out = {"p": p, "left": str(A), "right": str(B), "method": args.method, "seed": args.seed}
    lines = []
    results = {}
    if args.method in ("matrix", "both"):
        Z = tensor(build(p, A), build(p, B))
        results["matrix"] = homlib.decompose(Z, certify=args.certify, seed=args.seed)
    if args.method in ("formula", "both"):
        results["formula"] = rules.tensor_rule(p, A, B)
    for name, fd in results.items():
        out[name] = fd.to_dict()
        lines.append(f"{name}: {fd}" if len(results) > 1 else str(fd))
    code = EXIT_OK
    if len(results) == 2:
        agree = results["matrix"] == results["formula"]
        out["agree"] = agree
        if agree:
            lines.append("agree")
        else:
            out["diff"] = {k: list(v) for k, v in results["matrix"].diff(results["formula"]).items()}
            lines.append("DISAGREE: " + json.dumps(out["diff"], ensure_ascii=False))
            code = EXIT_DISAGREE
    _emit(args, out, "\n".join(lines))
    return code


def _grid(p, fn):
    return [[fn(s, s2) for s2 in range(1, p + 1)] for s in range(1, p + 1)]


def _fmt_set(xs):
    return "{" + ",".join(map(str, xs)) + "}" if xs else "∅"


def cmd_table(args) -> int:
    p = args.p
    payload = {"p": p}
    chunks = []
    if args.family:
        fams = [f.strip() for f in args.family.split(",") if f.strip()]
        for f in fams:
            if f not in ("X", "P", "M", "W"):
                raise UsageError(f"--family accepts X, P, M, W (got {f!r})")
        labs = [l for l in rules.label_sample(p, args.nmax, lams=[]) if l.family in fams]
        rows = []
        for a in labs:
            for b in labs:
                rows.append({"left": str(a), "right": str(b), "decomp": str(rules.tensor_rule(p, a, b))})
        payload["products"] = rows
        chunks.append("\n".join(f"{r['left']} ⊗ {r['right']} = {r['decomp']}" for r in rows))
    else:
        for which in args.sets:
            if which == "I":
                g = _grid(p, lambda s, s2: rules.index_I(p, s, s2))
            else:
                g = _grid(p, lambda s, s2: rules.index_J(p, s + s2))
            payload[which] = g
            width = max(len(_fmt_set(c)) for row in g for c in row) + 2
            head = f"{which:>3} |" + "".join(f"{s2:>{width}}" for s2 in range(1, p + 1))
            body = [f"{s:>3} |" + "".join(f"{_fmt_set(c):>{width}}" for c in row)
                    for s, row in enumerate(g, start=1)]
            chunks.append("\n".join([head, "-" * len(head)] + body))
    _emit(args, payload, "\n\n".join(chunks))
    return EXIT_OK


def _witness_pair(p):
    """The standard pair first, then the whole label sample."""
    ctx = field(p)
    if p >= 3:
        yield E(1, 1, ProjPoint.of(ctx, 1, 1)), X(2)
    sample = rules.label_sample(p, 2)
    for a in sample:
        for b in sample:
            yield a, b


def cmd_braiding_witness(args) -> int:
    p = args.p
    for a, b in _witness_pair(p):
        ok, diff = rules.commutes(p, a, b)
        if ok:
            continue
        ZA, ZB = build(p, a), build(p, b)
        ab, ba = tensor(ZA, ZB), tensor(ZB, ZA)
        dab, dba = homlib.decompose(ab, seed=args.seed), homlib.decompose(ba, seed=args.seed)
        lams = sorted({l.lam for l in dab.labels() + dba.labels() if l.family == "E"}, key=ProjPoint.sort_key)
        ab.meta["labels"] = dab.labels()
        ba.meta["labels"] = dba.labels()
        cert = homlib.is_iso(ab, ba, seed=args.seed)
        payload = {
            "p": p,
            "witness": [str(a), str(b)],
            "left_right": dab.to_dict(),
            "right_left": dba.to_dict(),
            "formula_diff": {k: list(v) for k, v in diff.items()},
            "verdict": cert.verdict,
            "fingerprint": list(cert.witness) if cert.verdict == "not-iso" else None,
            "fingerprint_lambdas": [str(l) for l in lams],
        }
        text = (f"witness: {a} ⊗ {b}\n"
                f"  {a} ⊗ {b} = {dab}\n"
                f"  {b} ⊗ {a} = {dba}\n"
                f"  verdict: {cert.verdict}")
        if cert.verdict == "not-iso":
            lab, side, da, db = cert.witness
            text += f" (dim Hom {side} {lab}: {da} vs {db})"
        _emit(args, payload, text)
        return EXIT_OK if cert.verdict == "not-iso" else EXIT_DISAGREE
    _emit(args, {"p": p, "witness": None, "message": "no witness: category commutes"},
          "no witness: category commutes")
    return EXIT_OK


def cmd_ext(args) -> int:
    p = args.p
    A, B = _labels(p, [args.A, args.B])
    d = homlib.ext1(build(p, A), build(p, B))
    _emit(args, {"p": p, "left": str(A), "right": str(B), "ext1": d}, f"dim Ext^1({A}, {B}) = {d}")
    return EXIT_OK


def cmd_dual(args) -> int:
    p = args.p
    (A,) = _labels(p, [args.A])
    payload = {"p": p, "module": str(A), "side": args.side}
    formula = FormalDecomp.of(p, [rules.dual_rule(A, p, args.side)])
    lines = []
    code = EXIT_OK
    if args.method in ("formula", "both"):
        payload["formula"] = formula.to_dict()
        lines.append(f"formula: {formula}")
    if args.method in ("matrix", "both"):
        matrix = homlib.decompose(dual(build(p, A), args.side), seed=args.seed)
        payload["matrix"] = matrix.to_dict()
        lines.append(f"matrix: {matrix}")
        if args.method == "both":
            payload["agree"] = matrix == formula
            if matrix != formula:
                code = EXIT_DISAGREE
    _emit(args, payload, "\n".join(lines))
    return code


def cmd_lift(args) -> int:
    p = args.p
    (A,) = _labels(p, [args.A])
    res = doublecover.lift(build(p, A))
    payload = {"p": p, "module": str(A), **res.to_dict()}
    if res.liftable:
        text = f"{A}: liftable (t diagonal: {', '.join(str(x) for x in res.module['t'].diagonal())})"
    elif res.liftable is None:
        text = f"{A}: undetermined"
    else:
        text = f"{A}: not liftable\n" + "\n".join("  " + e for e in res.obstruction)
    _emit(args, payload, text)
    return EXIT_OK if res.liftable is not None else EXIT_ERROR


# -- parser ---------------------------------------------------------------

def make_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--p", type=int, required=True, help="the root of unity has order 2p")
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--format", choices=("text", "json"), default="text")

    parser = _Parser(prog="uqbar", description="Tensor products of U_q(sl2)-bar modules")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    d = sub.add_parser("decompose", parents=[common], help="decompose A ⊗ B")
    d.add_argument("A")
    d.add_argument("B")
    d.add_argument("--method", choices=("matrix", "formula", "both"), default="formula")
    d.add_argument("--certify", action="store_true", help="certify the matrix result by an explicit isomorphism")
    d.set_defaults(func=cmd_decompose)

    t = sub.add_parser("table", parents=[common], help="index-set grids or a product table")
    t.add_argument("--sets", choices=("I", "J", "IJ"), default="IJ")
    t.add_argument("--family", help="comma-separated families (X,P,M,W) for a product table")
    t.add_argument("--nmax", type=int, default=2)
    t.set_defaults(func=cmd_table)

    b = sub.add_parser("braiding-witness", parents=[common], help="find A, B with A⊗B ≇ B⊗A")
    b.set_defaults(func=cmd_braiding_witness)

    e = sub.add_parser("ext", parents=[common], help="dim Ext^1(A, B)")
    e.add_argument("A")
    e.add_argument("B")
    e.set_defaults(func=cmd_ext)

    u = sub.add_parser("dual", parents=[common], help="class of the dual module")
    u.add_argument("A")
    u.add_argument("--side", choices=("R", "L"), default="R")
    u.add_argument("--method", choices=("matrix", "formula", "both"), default="formula")
    u.set_defaults(func=cmd_dual)

    l = sub.add_parser("lift", parents=[common], help="lift a module to the double cover")
    l.add_argument("A")
    l.set_defaults(func=cmd_lift)
    return parser


def main(argv=None) -> int:
    parser = make_parser()
    try:
        args = parser.parse_args(argv)
        if args.p < 2:
            raise UsageError("--p must be at least 2")
        if getattr(args, "sets", None):
            args.sets = list(args.sets)
        return args.func(args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ERROR
    except (ValueError, ArithmeticError, RuntimeError) as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
