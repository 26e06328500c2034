"""Kronecker invariants of a matrix pencil (A, B) over Q(zeta).

A and B map a source space U to a target space V.  The invariants are the
column minimal indices, the row minimal indices, and the Jordan data of the
regular part, split into finite eigenvalues beta (blocks of A + x B
equivalent to (I, beta I + N)) and the eigenvalue at infinity.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field as dc_field

from .cyclo import FieldCtx, FieldElem
from .linalg import Echelon, Mat, nullspace, vec_axpy_inplace


class PencilError(ArithmeticError):
    pass


@dataclass
class KroneckerData:
    col: Counter = dc_field(default_factory=Counter)   # epsilon -> count
    row: Counter = dc_field(default_factory=Counter)   # eta -> count
    finite: dict = dc_field(default_factory=dict)      # beta -> sorted Jordan sizes
    infinite: list = dc_field(default_factory=list)    # Jordan sizes at [0:1]


def _apply(m: Mat, v: dict) -> dict:
    return m.apply(v)


def _col_counts(ctx: FieldCtx, A: Mat, B: Mat) -> Counter:
    """Column minimal indices from kernels of the block bidiagonal matrices."""
    u, w = A.ncols, A.nrows
    out = Counter()
    if u == 0:
        return out
    Acols, Bcols = A.columns(), B.columns()
    prev_c = 0
    prev_d = 0
    total = 0
    for k in range(u):
        # unknowns v_0..v_k (blocks of size u); equations A v_0, A v_i + B v_{i-1}, B v_k
        rows = []
        for i in range(k + 2):
            blk = [{} for _ in range(w)]
            if i <= k:
                for j, col in enumerate(Acols):
                    for r, c in col.items():
                        blk[r][i * u + j] = c
            if i >= 1:
                for j, col in enumerate(Bcols):
                    for r, c in col.items():
                        blk[r][(i - 1) * u + j] = c
            rows.extend(b for b in blk if b)
        c_k = len(nullspace(ctx, rows, (k + 1) * u))
        d_k = c_k - prev_c          # number of indices <= k
        if d_k - prev_d:
            out[k] += d_k - prev_d
        total += (d_k - prev_d) * (k + 1)
        prev_c, prev_d = c_k, d_k
        if total >= u:
            break
    return out


def _span_basis(ctx, vecs):
    ech = Echelon(ctx)
    for v in vecs:
        ech.add(v)
    return ech.basis()


def _annihilator(ctx, basis, n):
    """Rows spanning the annihilator of span(basis) inside an n-dim space."""
    return nullspace(ctx, basis, n)


def _preimage(ctx, B: Mat, S: list[dict]) -> list[dict]:
    """Basis of {v : B v in span(S)}."""
    if not S:
        return nullspace(ctx, B.rows, B.ncols)
    ann = _annihilator(ctx, S, B.nrows)
    if not ann:
        return [{j: ctx.one} for j in range(B.ncols)]
    Bcols = B.columns()
    rows = []
    for a in ann:
        row = {}
        for j, col in enumerate(Bcols):
            s = None
            for r, c in col.items():
                x = a.get(r)
                if x is not None:
                    t = x * c
                    s = t if s is None else s + t
            if s:
                row[j] = s
        if row:
            rows.append(row)
    return nullspace(ctx, rows, B.ncols)


def _wong(ctx, A: Mat, B: Mat) -> list[dict]:
    """Limit of V_0 = all, V_{i+1} = {v : B v in A V_i}: singular plus finite part."""
    V = [{j: ctx.one} for j in range(A.ncols)]
    while True:
        AV = _span_basis(ctx, [A.apply(v) for v in V])
        nxt = _preimage(ctx, B, AV)
        if len(nxt) == len(V):
            return V
        V = nxt


def _wong_increasing(ctx, A: Mat, B: Mat) -> list[dict]:
    """Limit of W_0 = 0, W_{i+1} = {v : A v in B W_i}: singular plus infinite part."""
    W: list[dict] = []
    while True:
        BW = _span_basis(ctx, [B.apply(v) for v in W])
        nxt = _preimage(ctx, A, BW) if BW else nullspace(ctx, A.rows, A.ncols)
        if len(nxt) == len(W):
            return W
        W = nxt


def _intersect(ctx, X: list[dict], Y: list[dict], n: int) -> list[dict]:
    annY = nullspace(ctx, Y, n) if Y else [{j: ctx.one} for j in range(n)]
    # v = sum c_i x_i with annY . v = 0
    rows = []
    for a in annY:
        row = {}
        for i, x in enumerate(X):
            s = None
            for r, c in x.items():
                y = a.get(r)
                if y is not None:
                    t = y * c
                    s = t if s is None else s + t
            if s:
                row[i] = s
        if row:
            rows.append(row)
    coeffs = nullspace(ctx, rows, len(X))
    out = []
    for cvec in coeffs:
        v = {}
        for i, c in cvec.items():
            vec_axpy_inplace(v, c, X[i])
        out.append(v)
    return out


def _regular_part(ctx, A: Mat, B: Mat, Vstar, Scol):
    """Matrix M with B e_i = sum_j M[j][i] A e_j modulo A S_col, on V*/S_col."""
    Tcol = [A.apply(v) for v in Scol]
    ech = Echelon(ctx)
    for v in Scol:
        ech.add(v)
    comp = [v for v in Vstar if ech.add(v)]
    r = len(comp)
    if r == 0:
        return Mat.zeros(ctx, 0, 0)
    tgt = Echelon(ctx, track=True)
    nT = 0
    for t in Tcol:
        tgt.add(t)
        nT += 1
    for e in comp:
        if not tgt.add(A.apply(e)):
            raise PencilError("regular part: A is not injective modulo the singular part")
    M = Mat.zeros(ctx, r, r)
    for i, e in enumerate(comp):
        coords = tgt.express(B.apply(e))
        for idx, c in coords.items():
            if idx >= nT:
                M.rows[idx - nT][i] = c
    return M


def charpoly(M: Mat) -> list[FieldElem]:
    """Characteristic polynomial det(x I - M), coefficients lowest degree first (Faddeev-LeVerrier)."""
    ctx = M.ctx
    n = M.nrows
    coeffs = [ctx.zero] * (n + 1)
    coeffs[n] = ctx.one
    Mk = Mat.zeros(ctx, n, n)
    I = Mat.identity(ctx, n)
    for k in range(1, n + 1):
        Mk = M @ (Mk + I.scale(coeffs[n - k + 1]))
        tr = ctx.zero
        for i, row in enumerate(Mk.rows):
            x = row.get(i)
            if x is not None:
                tr = tr + x
        coeffs[n - k] = -tr / k
    return coeffs


def _poly_trim(f):
    f = list(f)
    while len(f) > 1 and not f[-1]:
        f.pop()
    return f


def _poly_divmod(f, g):
    f = list(f)
    g = _poly_trim(g)
    ctx = g[-1].ctx
    if len(f) < len(g):
        return [ctx.zero], f
    q = [ctx.zero] * (len(f) - len(g) + 1)
    inv = g[-1].inverse()
    for k in range(len(f) - len(g), -1, -1):
        c = f[k + len(g) - 1] * inv
        q[k] = c
        if c:
            for i, gi in enumerate(g):
                f[k + i] = f[k + i] - c * gi
    rem = _poly_trim(f[: len(g) - 1] or [ctx.zero])
    return q, rem


def _poly_gcd(f, g):
    f, g = _poly_trim(f), _poly_trim(g)
    while len(g) > 1 or g[0]:
        _, r = _poly_divmod(f, g)
        f, g = g, r
    inv = f[-1].inverse()
    return [c * inv for c in f]


def _deriv(f):
    ctx = f[0].ctx
    out = [f[k] * k for k in range(1, len(f))]
    return out or [ctx.zero]


def field_roots(f: list[FieldElem]) -> list[FieldElem]:
    """Distinct roots in Q(zeta) of a polynomial that splits there.

    Degree one squarefree parts are solved directly; anything else goes to
    sympy's factorization over the algebraic field QQ<zeta>.
    """
    f = _poly_trim(f)
    if len(f) == 1:
        return []
    g = _poly_gcd(f, _deriv(f))
    sqf, _ = _poly_divmod(f, g)
    sqf = _poly_trim(sqf)
    if len(sqf) == 2:
        return [-sqf[0] / sqf[1]]
    return _sympy_roots(sqf)


def _sympy_roots(f):
    import sympy
    from sympy import I, Poly, QQ, exp, pi, symbols

    ctx = f[0].ctx
    N = ctx.N
    x = symbols("x")
    zeta = exp(2 * I * pi / N)
    K = QQ.algebraic_field(zeta)
    minpoly = [int(c) for c in K.mod.to_list()] if hasattr(K.mod, "to_list") else None
    phi_desc = list(reversed(ctx.phi))
    if minpoly is not None and minpoly != phi_desc:
        raise PencilError("sympy picked an unexpected primitive element")

    def to_K(e):
        coeffs = [sympy.Rational(int(c.numerator), int(c.denominator)) for c in e.c]
        return K.from_sympy(sum(c * zeta**k for k, c in enumerate(coeffs)))

    poly = Poly.from_list([to_K(c) for c in reversed(f)], x, domain=K)
    roots = []
    _, factors = poly.factor_list()
    for fac, _mult in factors:
        if fac.degree() != 1:
            raise PencilError("pencil eigenvalue lies outside Q(zeta)")
        a1, a0 = fac.all_coeffs()
        r = -a0 / a1
        rep = r.rep if hasattr(r, "rep") else K.convert(r).rep
        lst = rep.to_list() if hasattr(rep, "to_list") else list(rep)
        lst = list(reversed(lst))
        from gmpy2 import mpq

        c = [mpq(0)] * ctx.d
        for k, v in enumerate(lst):
            c[k] = mpq(int(v.numerator), int(v.denominator))
        roots.append(type(f[0])(ctx, tuple(c)))
    return roots


def jordan_sizes(M: Mat, beta: FieldElem) -> list[int]:
    """Sizes of Jordan blocks of M at eigenvalue beta."""
    ctx = M.ctx
    n = M.nrows
    N = M - Mat.identity(ctx, n).scale(beta)
    ranks = [n]
    P = Mat.identity(ctx, n)
    while True:
        P = P @ N
        r = P.rank()
        ranks.append(r)
        if r == ranks[-2]:
            break
    # blocks of size >= k: ranks[k-1] - ranks[k]
    ge = [ranks[k - 1] - ranks[k] for k in range(1, len(ranks))]
    sizes = []
    for k in range(1, len(ge) + 1):
        exact = ge[k - 1] - (ge[k] if k < len(ge) else 0)
        sizes.extend([k] * exact)
    return sorted(sizes)


def kronecker(ctx: FieldCtx, A: Mat, B: Mat) -> KroneckerData:
    if A.shape != B.shape:
        raise PencilError("pencil matrices differ in shape")
    out = KroneckerData()
    out.col = _col_counts(ctx, A, B)
    out.row = _col_counts(ctx, A.T, B.T)
    if A.ncols == 0 or A.nrows == 0:
        return out
    Vstar = _wong(ctx, A, B)
    Wstar = _wong_increasing(ctx, A, B)
    Scol = _intersect(ctx, Vstar, Wstar, A.ncols) if Vstar and Wstar else []
    Mfin = _regular_part(ctx, A, B, Vstar, Scol)
    if Mfin.nrows:
        for beta in field_roots(charpoly(Mfin)):
            out.finite[beta] = jordan_sizes(Mfin, beta)
        if sum(sum(v) for v in out.finite.values()) != Mfin.nrows:
            raise PencilError("finite spectrum does not account for the regular part")
    Ninf = _regular_part(ctx, B, A, Wstar, Scol)
    if Ninf.nrows:
        out.infinite = jordan_sizes(Ninf, ctx.zero)
        if sum(out.infinite) != Ninf.nrows:
            raise PencilError("infinite part is not nilpotent")
    # dimension bookkeeping: every source vector is accounted for
    used = sum((e + 1) * k for e, k in out.col.items()) + sum(e * k for e, k in out.row.items())
    used += sum(sum(v) for v in out.finite.values()) + sum(out.infinite)
    if used != A.ncols:
        raise PencilError(f"Kronecker data covers {used} of {A.ncols} source dimensions")
    return out
