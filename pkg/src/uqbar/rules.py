"""Closed-form decomposition rules.

Everything here works on labels only.  The printed formulas cover the
case where both factors carry the sign ``+``; other sign combinations are
reduced to it through tensoring with ``X-(1)`` on either side, and the two
possible reductions are computed independently and compared.
"""

from __future__ import annotations

from collections import Counter

from .cyclo import field, qint
from .labels import (
    FormalDecomp,
    Label,
    ProjPoint,
    canonical,
    check_label,
    label_dim,
    E,
    M,
    P,
    W,
    X,
    sort_key,
)


class RuleError(RuntimeError):
    pass


# -- sign algebra ---------------------------------------------------------

def sign_mul(a: int, b: int) -> int:
    return a * b


def kappa(a: int, p: int | None = None) -> int:
    """The character with kappa(+)=1 and kappa(-)=-1."""
    return 1 if a > 0 else -1


# -- index sets -----------------------------------------------------------

def index_I(p: int, s: int, s2: int) -> list[int]:
    if not (1 <= s <= p and 1 <= s2 <= p):
        raise ValueError(f"index_I: arguments must lie in 1..{p}")
    a, b = min(s, s2), max(s, s2)
    return sorted(t for t in (b - a + 2 * i - 1 for i in range(1, a + 1)) if t <= 2 * p - a - b)


def index_J(p: int, sigma: int) -> list[int]:
    """J depends only on sigma = s + s'."""
    if not 2 <= sigma <= 2 * p:
        raise ValueError(f"index_J: sum must lie in 2..{2 * p}")
    a = max(1, sigma - p)
    b = sigma - a
    if a > b:
        a, b = b, a
    return sorted(t for t in (2 * p - 2 * i - b + a + 1 for i in range(1, a + 1)) if t <= p)


def index_J_pair(p: int, s: int, s2: int) -> list[int]:
    """J_{s,s'} straight from the definition (used to check sum-dependence)."""
    a, b = min(s, s2), max(s, s2)
    return sorted(t for t in (2 * p - 2 * i - b + a + 1 for i in range(1, a + 1)) if t <= p)


# -- helpers --------------------------------------------------------------

def _ratio(p, s, t):
    ctx = field(p)
    return qint(ctx, s) / qint(ctx, t)


def _is_projective(lab: Label, p: int) -> bool:
    return lab.family == "P" or (lab.family == "X" and lab.s == p)


def twist_label_left(lab: Label, p: int) -> Label:
    """X-(1) (x) lab."""
    if lab.family == "E":
        lam = lab.lam if p % 2 == 1 else -lab.lam
        return canonical(E(lab.s, lab.n, lam, -lab.sign), p)
    return lab.with_sign(-lab.sign)


def twist_label_right(lab: Label, p: int) -> Label:
    """lab (x) X-(1)."""
    if lab.family == "E":
        return canonical(E(lab.s, lab.n, -lab.lam, -lab.sign), p)
    return lab.with_sign(-lab.sign)


def _twist(fd: FormalDecomp, side: str) -> FormalDecomp:
    f = twist_label_left if side == "L" else twist_label_right
    out = FormalDecomp(fd.p)
    for lab, k in fd.counts.items():
        out.add(f(lab, fd.p), k)
    return out


def composition_factors_rule(lab: Label, p: int) -> Counter:
    lab = canonical(lab, p)
    f, s, n, sg = lab.family, lab.s, lab.n, lab.sign
    if f == "X":
        return Counter({lab: 1})
    if f == "P":
        return Counter({X(s, sg): 2, X(p - s, -sg): 2})
    if f == "M":
        return Counter({X(s, sg): n - 1, X(p - s, -sg): n})
    if f == "W":
        return Counter({X(s, sg): n, X(p - s, -sg): n - 1})
    return Counter({X(s, sg): n, X(p - s, -sg): n})


# -- the formulas for two plus-signed factors -----------------------------

class _Acc:
    def __init__(self, p):
        self.p = p
        self.fd = FormalDecomp(p)

    def add(self, lab, k=1):
        if k:
            self.fd.add(lab, k)

    def J(self, sigma, sign, k):
        if k:
            for t in index_J(self.p, sigma):
                self.fd.add(P(t, sign), k)


def _simple_simple(p, s, s2):
    acc = _Acc(p)
    for t in index_I(p, s, s2):
        acc.add(X(t))
    acc.J(s + s2, 1, 1)
    return acc.fd


def _proj_simple(p, s, s2):
    acc = _Acc(p)
    for t in index_I(p, s, s2):
        acc.add(P(t))
    acc.J(s + s2, 1, 2)
    acc.J(p - s + s2, -1, 2)
    return acc.fd


def _mw_simple(p, lab, s2):
    s, n = lab.s, lab.n
    acc = _Acc(p)
    for t in index_I(p, s, s2):
        acc.add(Label(lab.family, 1, t, n))
    if lab.family == "M":
        acc.J(s + s2, 1, n - 1)
        acc.J(p - s + s2, -1, n)
    else:
        acc.J(s + s2, 1, n)
        acc.J(p - s + s2, -1, n - 1)
    return acc.fd


def _Y(acc, t, m, n):
    p = acc.p
    if m > n:
        acc.add(M(t, m - n + 1))
        acc.add(P(t), m * (n - 1))
    elif m == n:
        acc.add(X(p - t, -1))
        acc.add(P(t), n * (n - 1))
    else:
        acc.add(W(p - t, n - m + 1, -1))
        acc.add(P(t), (m - 1) * n)


def _mw_mw(p, A, B):
    """Products of M/W with M/W.

    For a mixed pair the M-factor's length plays the role of m and the
    W-factor's length that of n, whichever side each factor is on (the
    products commute; checked against the matrix engine).
    """
    if A.family == "W" and B.family == "M":
        A, B = B, A
    s, m, s2, n = A.s, A.n, B.s, B.n
    acc = _Acc(p)
    I = index_I(p, s, s2)
    if A.family == "M" and B.family == "M":
        for t in I:
            acc.add(M(p - t, m + n - 1, -1))
            acc.add(P(t), (m - 1) * (n - 1))
        acc.J(s + s2, 1, (m - 1) * (n - 1))
        acc.J(2 * p - s - s2, 1, m * n)
        acc.J(p + s - s2, -1, (m - 1) * n)
        acc.J(p - s + s2, -1, m * (n - 1))
    elif A.family == "W":
        for t in I:
            acc.add(W(t, m + n - 1))
            acc.add(P(t), (m - 1) * (n - 1))
        acc.J(s + s2, 1, m * n)
        acc.J(2 * p - s - s2, 1, (m - 1) * (n - 1))
        acc.J(p + s - s2, -1, m * (n - 1))
        acc.J(p - s + s2, -1, (m - 1) * n)
    else:
        for t in I:
            _Y(acc, t, m, n)
        acc.J(s + s2, 1, (m - 1) * n)
        acc.J(2 * p - s - s2, 1, m * (n - 1))
        acc.J(p + s - s2, -1, (m - 1) * (n - 1))
        acc.J(p - s + s2, -1, m * n)
    return acc.fd


def _e_simple(p, e, s2, left):
    """E(n;lam) (x) X(s2), or X(s2) (x) E(n;lam) when ``left``."""
    s, n, lam = e.s, e.n, e.lam
    sgn = (-1) ** (s2 - 1) if left else 1
    acc = _Acc(p)
    for t in index_I(p, s, s2):
        acc.add(E(t, n, lam.scale(_ratio(p, s, t) * sgn)))
    acc.J(s + s2, 1, n)
    acc.J(p - s + s2, -1, n)
    return acc.fd


def _e_mw(p, e, b, left):
    """E(m;lam) (x) M/W(n), or the reverse order when ``left``."""
    s, m, lam = e.s, e.n, e.lam
    s2, n = b.s, b.n
    acc = _Acc(p)
    for t in index_I(p, s, s2):
        r = _ratio(p, s, t)
        if b.family == "M":
            c = (-1) ** s2 if left else -1
            acc.add(E(p - t, m, lam.scale(r * c), -1))
        else:
            c = (-1) ** (s2 - 1) if left else 1
            acc.add(E(t, m, lam.scale(r * c)))
        acc.add(P(t), m * (n - 1))
    if b.family == "M":
        acc.J(s + s2, 1, m * (n - 1))
        acc.J(2 * p - s - s2, 1, m * n)
        acc.J(p + s - s2, -1, m * n)
        acc.J(p - s + s2, -1, m * (n - 1))
    else:
        acc.J(s + s2, 1, m * n)
        acc.J(2 * p - s - s2, 1, m * (n - 1))
        acc.J(p + s - s2, -1, m * (n - 1))
        acc.J(p - s + s2, -1, m * n)
    return acc.fd


def v_t(p, s, s2, m, n, lam, mu, t) -> FormalDecomp:
    """The block-t piece of E_s(m;lam) (x) E_s2(n;mu)."""
    acc = _Acc(p)
    nu = lam.scale(_ratio(p, s, t))
    other = mu.scale(_ratio(p, s2, t) * (-1) ** (s - 1))
    if nu == other:
        l = min(m, n)
        acc.add(E(t, l, nu))
        acc.add(E(p - t, l, -nu, -1))
        acc.add(P(t), m * n - l)
    else:
        acc.add(P(t), m * n)
    return acc.fd


def _e_e(p, A, B):
    s, m, s2, n = A.s, A.n, B.s, B.n
    acc = _Acc(p)
    for t in index_I(p, s, s2):
        acc.fd.extend(v_t(p, s, s2, m, n, A.lam, B.lam, t))
    k = m * n
    acc.J(s + s2, 1, k)
    acc.J(2 * p - s - s2, 1, k)
    acc.J(p + s - s2, -1, k)
    acc.J(p - s + s2, -1, k)
    return acc.fd


def _plus_plus(p, A, B) -> FormalDecomp:
    fa, fb = A.family, B.family
    if fa == "X" and fb == "X":
        return _simple_simple(p, A.s, B.s)
    if fa == "P" and fb == "X":
        return _proj_simple(p, A.s, B.s)
    if fa == "X" and fb == "P":
        return _proj_simple(p, B.s, A.s)
    if _is_projective(A, p) or _is_projective(B, p):
        out = FormalDecomp(p)
        if _is_projective(A, p):
            for f, k in composition_factors_rule(B, p).items():
                out.extend(_tensor(p, A, f, "split"), k)
        else:
            for f, k in composition_factors_rule(A, p).items():
                out.extend(_tensor(p, f, B, "split"), k)
        return out
    if fa in "MW" and fb == "X":
        return _mw_simple(p, A, B.s)
    if fa == "X" and fb in "MW":
        return _mw_simple(p, B, A.s)
    if fa in "MW" and fb in "MW":
        return _mw_mw(p, A, B)
    if fa == "E" and fb == "X":
        return _e_simple(p, A, B.s, left=False)
    if fa == "X" and fb == "E":
        return _e_simple(p, B, A.s, left=True)
    if fa == "E" and fb in "MW":
        return _e_mw(p, A, B, left=False)
    if fa in "MW" and fb == "E":
        return _e_mw(p, B, A, left=True)
    if fa == "E" and fb == "E":
        return _e_e(p, A, B)
    raise RuleError(f"no rule for {A} (x) {B}")


# -- sign reduction -------------------------------------------------------

def _strip_left(lab: Label, p: int) -> tuple[int, Label]:
    """lab = X(1)^a (x) base with base plus-signed."""
    if lab.sign > 0:
        return 1, lab
    return -1, twist_label_left(lab, p)


def _strip_right(lab: Label, p: int) -> tuple[int, Label]:
    """lab = base (x) X(1)^a with base plus-signed."""
    if lab.sign > 0:
        return 1, lab
    return -1, twist_label_right(lab, p)


def _tensor(p, A, B, route) -> FormalDecomp:
    if route == "split":
        a, A0 = _strip_left(A, p)
        b, B0 = _strip_right(B, p)
        fd = _plus_plus(p, A0, B0)
        if a < 0:
            fd = _twist(fd, "L")
        if b < 0:
            fd = _twist(fd, "R")
        return fd
    # move every sign to the right-hand end
    a, A0 = _strip_right(A, p)
    B1 = twist_label_left(B, p) if a < 0 else B
    b, B0 = _strip_right(B1, p)
    fd = _plus_plus(p, A0, B0)
    if b < 0:
        fd = _twist(fd, "R")
    return fd


def tensor_rule(p: int, A: Label, B: Label) -> FormalDecomp:
    """Formula-side decomposition of A (x) B, order-sensitive."""
    A, B = canonical(A, p), canonical(B, p)
    out = _tensor(p, A, B, "split")
    alt = _tensor(p, A, B, "right")
    if out != alt:
        raise RuleError(f"sign reductions disagree for {A} (x) {B}: {out.diff(alt)}")
    want = out.dim()
    if want != label_dim(A, p) * label_dim(B, p):
        raise RuleError(f"dimension mismatch for {A} (x) {B}")
    return out


def tensor_rule_decomp(X1: FormalDecomp, X2: FormalDecomp) -> FormalDecomp:
    p = X1.p
    out = FormalDecomp(p)
    for a, i in X1.counts.items():
        for b, j in X2.counts.items():
            out.extend(tensor_rule(p, a, b), i * j)
    return out


# -- duals ----------------------------------------------------------------

def dual_rule(A: Label, p: int, side: str = "R") -> Label:
    """Class of the dual module.  Both sides give the same class."""
    if side not in ("R", "L"):
        raise ValueError("side must be 'R' or 'L'")
    A = canonical(A, p)
    f, s, n, sg = A.family, A.s, A.n, A.sign
    if f in ("X", "P"):
        return A
    if f == "M":
        return canonical(W(p - s, n, -sg), p)
    if f == "W":
        return canonical(M(p - s, n, -sg), p)
    if sg > 0:
        return canonical(E(p - s, n, A.lam.scale((-1) ** s), -1), p)
    return canonical(E(p - s, n, A.lam.scale((-1) ** (p - s)), 1), p)


def dual_decomp(fd: FormalDecomp, side: str = "R") -> FormalDecomp:
    out = FormalDecomp(fd.p)
    for lab, k in fd.counts.items():
        out.add(dual_rule(lab, fd.p, side), k)
    return out


# -- commutativity --------------------------------------------------------

def commutes(p: int, A: Label, B: Label):
    """(True, {}) if A(x)B and B(x)A have the same decomposition, else (False, diff)."""
    ab = tensor_rule(p, A, B)
    ba = tensor_rule(p, B, A)
    if ab == ba:
        return True, {}
    return False, ab.diff(ba)


def label_sample(p: int, nmax: int = 2, lams=None) -> list[Label]:
    """Every canonical indecomposable label with n <= nmax."""
    ctx = field(p)
    if lams is None:
        lams = [ProjPoint.of(ctx, 1, 0), ProjPoint.of(ctx, 0, 1), ProjPoint.of(ctx, 1, 1), ProjPoint.of(ctx, 1, -1)]
    out = []
    for sg in (1, -1):
        for s in range(1, p + 1):
            out.append(X(s, sg))
        for s in range(1, p):
            out.append(P(s, sg))
            for n in range(2, nmax + 1):
                out.append(M(s, n, sg))
                out.append(W(s, n, sg))
            for n in range(1, nmax + 1):
                for lam in lams:
                    out.append(canonical(E(s, n, lam, sg), p))
    for lab in out:
        check_label(lab, p)
    return sorted(set(out), key=lambda l: sort_key(l, p))
