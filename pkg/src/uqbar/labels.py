"""Symbolic names for indecomposable modules and formal direct sums.

Label grammar::

    X+(s)   X-(s)   P+(s)   M+(s,n)   W-(s,n)   E+(s,n,[a:b])

where ``a`` and ``b`` are field elements in the string form of
:class:`uqbar.cyclo.FieldElem`.
"""

from __future__ import annotations

import json
import re
from collections import Counter
from dataclasses import dataclass, field as dc_field

from .cyclo import FieldCtx, FieldElem, field

FAMILY_RANK = {"X": 0, "M": 1, "W": 2, "E": 3, "P": 4}


def norm_sign(sign) -> int:
    if sign in (1, "+", "plus"):
        return 1
    if sign in (-1, "-", "minus"):
        return -1
    raise ValueError(f"bad sign {sign!r}")


def sign_str(sign: int) -> str:
    return "+" if sign > 0 else "-"


class ProjPoint:
    """A point [a:b] of the projective line over Q(zeta).

    The pair as given is kept (constructors use it verbatim); equality and
    hashing go through the canonical form [1:b/a] or [0:1].
    """

    __slots__ = ("a", "b", "_canon")

    def __init__(self, a: FieldElem, b: FieldElem):
        if not a and not b:
            raise ValueError("[0:0] is not a point of P^1")
        self.a = a
        self.b = b
        ctx = a.ctx
        if a:
            self._canon = (ctx.one, b / a)
        else:
            self._canon = (ctx.zero, ctx.one)

    @classmethod
    def of(cls, ctx: FieldCtx, a, b) -> "ProjPoint":
        return cls(ctx.coerce(a), ctx.coerce(b))

    @classmethod
    def affine(cls, beta: FieldElem) -> "ProjPoint":
        return cls(beta.ctx.one, beta)

    @property
    def ctx(self):
        return self.a.ctx

    @property
    def canon(self):
        return self._canon

    @property
    def is_infinite(self) -> bool:
        """True for [0:1]."""
        return not self.a

    def beta(self) -> FieldElem:
        if not self.a:
            raise ValueError("[0:1] has no affine coordinate")
        return self._canon[1]

    def scale(self, c) -> "ProjPoint":
        """c.[a:b] = [c*a : b]."""
        c = self.ctx.coerce(c)
        if not c:
            raise ValueError("scaling a point of P^1 by zero")
        return ProjPoint(self.a * c, self.b)

    def __neg__(self):
        return self.scale(-1)

    def __eq__(self, other):
        if not isinstance(other, ProjPoint):
            return NotImplemented
        return self._canon == other._canon

    def __hash__(self):
        return hash(self._canon)

    def sort_key(self):
        a, b = self._canon
        return (a.sort_key(), b.sort_key())

    def __str__(self):
        a, b = self._canon
        return f"[{a}:{b}]"

    def __repr__(self):
        return f"ProjPoint{self}"


@dataclass(frozen=True)
class Label:
    family: str
    sign: int
    s: int
    n: int = 1
    lam: ProjPoint | None = None

    def __post_init__(self):
        if self.family not in FAMILY_RANK:
            raise ValueError(f"unknown family {self.family!r}")
        object.__setattr__(self, "sign", norm_sign(self.sign))
        if (self.family == "E") != (self.lam is not None):
            raise ValueError("lambda is given exactly for E-labels")

    def __str__(self):
        sg = sign_str(self.sign)
        if self.family in ("X", "P"):
            return f"{self.family}{sg}({self.s})"
        if self.family in ("M", "W"):
            return f"{self.family}{sg}({self.s},{self.n})"
        return f"E{sg}({self.s},{self.n},{self.lam})"

    def __repr__(self):
        return f"Label({self})"

    def with_sign(self, sign) -> "Label":
        return Label(self.family, sign, self.s, self.n, self.lam)


def X(s, sign=1):
    return Label("X", sign, s)


def P(s, sign=1):
    return Label("P", sign, s)


def M(s, n, sign=1):
    return Label("M", sign, s, n)


def W(s, n, sign=1):
    return Label("W", sign, s, n)


def E(s, n, lam: ProjPoint, sign=1):
    return Label("E", sign, s, n, lam)


def check_label(label: Label, p: int) -> None:
    f, s, n = label.family, label.s, label.n
    if f in ("X", "P"):
        if not 1 <= s <= p:
            raise ValueError(f"{label}: s must lie in 1..{p}")
    elif not 1 <= s <= p - 1:
        raise ValueError(f"{label}: s must lie in 1..{p - 1}")
    if n < 1:
        raise ValueError(f"{label}: n must be positive")
    if f in ("M", "W") and n < 1:
        raise ValueError(f"{label}: n must be positive")
    if f == "E" and label.lam.ctx is not field(p):
        raise ValueError(f"{label}: lambda lives in the wrong field")


def canonical(label: Label, p: int) -> Label:
    """Apply the aliases P(p)=X(p), M_{p-s}^{-e}(1)=W_s^e(1)=X_s^e."""
    check_label(label, p)
    f = label.family
    if f == "P" and label.s == p:
        return X(p, label.sign)
    if f == "M" and label.n == 1:
        return X(p - label.s, -label.sign)
    if f == "W" and label.n == 1:
        return X(label.s, label.sign)
    if f == "E":
        a, b = label.lam.canon
        return Label("E", label.sign, label.s, label.n, ProjPoint(a, b))
    return label


def label_dim(label: Label, p: int) -> int:
    f, s, n = label.family, label.s, label.n
    if f == "X":
        return s
    if f == "P":
        return p if s == p else 2 * p
    if f == "M":
        return p * n - s
    if f == "W":
        return p * n - p + s
    return p * n


def label_block(label: Label, p: int) -> int:
    """Block id: block s holds X_s^+ and X_{p-s}^-."""
    s = label.s
    if label.family in ("X", "P") and s == p:
        return p if label.sign > 0 else 0
    return s if label.sign > 0 else p - s


_LABEL_RE = re.compile(r"^\s*([XPMWE])\s*([+-])\s*\((.*)\)\s*$")


def parse_label(text: str, p: int) -> Label:
    m = _LABEL_RE.match(text)
    if not m:
        raise ValueError(f"cannot parse module label {text!r}")
    fam, sg, args = m.group(1), m.group(2), m.group(3)
    if fam == "E":
        m2 = re.match(r"^\s*(\d+)\s*,\s*(\d+)\s*,\s*\[([^:\]]+):([^\]]+)\]\s*$", args)
        if not m2:
            raise ValueError(f"cannot parse E-label arguments in {text!r}")
        ctx = field(p)
        lam = ProjPoint(ctx.parse(m2.group(3)), ctx.parse(m2.group(4)))
        lab = Label("E", sg, int(m2.group(1)), int(m2.group(2)), lam)
    else:
        parts = [x.strip() for x in args.split(",")]
        try:
            nums = [int(x) for x in parts]
        except ValueError:
            raise ValueError(f"cannot parse label arguments in {text!r}") from None
        want = 1 if fam in ("X", "P") else 2
        if len(nums) != want:
            raise ValueError(f"{text!r}: expected {want} integer argument(s)")
        lab = Label(fam, sg, *nums)
    check_label(lab, p)
    return lab


def sort_key(label: Label, p: int):
    lam = label.lam.sort_key() if label.lam is not None else ()
    return (label_block(label, p), FAMILY_RANK[label.family], label.n, lam, -label.sign, label.s)


@dataclass
class FormalDecomp:
    """A multiset of canonical labels for a fixed p."""

    p: int
    counts: Counter = dc_field(default_factory=Counter)
    certificate: str = "formula-only"

    @classmethod
    def of(cls, p, items, certificate="formula-only"):
        fd = cls(p, Counter(), certificate)
        for item in items:
            if isinstance(item, Label):
                fd.add(item)
            else:
                fd.add(*item)
        return fd

    def add(self, label: Label, mult: int = 1):
        if mult < 0:
            raise ValueError("negative multiplicity")
        if mult:
            self.counts[canonical(label, self.p)] += mult
        return self

    def extend(self, other: "FormalDecomp", mult: int = 1):
        for lab, k in other.counts.items():
            self.add(lab, k * mult)
        return self

    def items(self):
        return sorted(self.counts.items(), key=lambda kv: sort_key(kv[0], self.p))

    def labels(self):
        out = []
        for lab, k in self.items():
            out.extend([lab] * k)
        return out

    def dim(self) -> int:
        return sum(label_dim(l, self.p) * k for l, k in self.counts.items())

    def __len__(self):
        return sum(self.counts.values())

    def __eq__(self, other):
        if not isinstance(other, FormalDecomp):
            return NotImplemented
        return self.p == other.p and +self.counts == +other.counts

    def __str__(self):
        if not self.counts:
            return "0"
        parts = []
        for lab, k in self.items():
            parts.append(str(lab) if k == 1 else f"{lab}^{k}")
        return " ⊕ ".join(parts)

    def __repr__(self):
        return f"FormalDecomp(p={self.p}: {self})"

    def to_dict(self):
        return {
            "p": self.p,
            "summands": [{"label": str(l), "mult": k} for l, k in self.items()],
            "dim": self.dim(),
            "certificate": self.certificate,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), ensure_ascii=False)

    @classmethod
    def from_dict(cls, data) -> "FormalDecomp":
        p = data["p"]
        fd = cls(p, Counter(), data.get("certificate", "formula-only"))
        for item in data["summands"]:
            fd.add(parse_label(item["label"], p), item["mult"])
        return fd

    def diff(self, other: "FormalDecomp"):
        """Labels with differing multiplicity as {label: (self, other)}."""
        keys = set(self.counts) | set(other.counts)
        return {
            str(k): (self.counts.get(k, 0), other.counts.get(k, 0))
            for k in sorted(keys, key=lambda l: sort_key(l, self.p))
            if self.counts.get(k, 0) != other.counts.get(k, 0)
        }
