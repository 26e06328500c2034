"""The double cover D (generators e, f, t with t^2 = K) and its R-matrix.

Modules over D are :class:`~uqbar.repcore.Rep` objects tagged ``"D"``.
Restriction along E->e, F->f, K->t^2 turns them into U-modules; lifting
goes the other way and is not always possible.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field

from .cyclo import FieldElem, field, qfact, qint
from .homlib import hom_space, is_iso, is_intertwiner
from .labels import ProjPoint
from .linalg import Echelon, Mat, block_diag, hstack, kernel, solve_left_inverse_square
from .repcore import Rep, RepError, build, build_E_direct, check_valid, direct_sum, make_rep, tensor


class NotLiftable(Exception):
    """Raised by :func:`lift` with ``require=True``; carries the certificate."""

    def __init__(self, certificate):
        super().__init__("module does not lift to the double cover")
        self.certificate = certificate


@dataclass
class LiftResult:
    liftable: bool | None          # None means undetermined
    module: Rep | None = None
    obstruction: list = dc_field(default_factory=list)
    witness: object = None

    def to_dict(self):
        if self.liftable:
            t = self.module["t"]
            return {"liftable": True, "witness_t": [[str(x) for x in row] for row in t.to_dense()]}
        if self.liftable is None:
            return {"liftable": None, "undetermined": True}
        return {"liftable": False, "obstruction": self.obstruction}


def _alpha(ctx, alpha) -> FieldElem:
    if isinstance(alpha, str):
        table = {"1": ctx.one, "-1": -ctx.one, "i": ctx.i, "-i": -ctx.i}
        if alpha not in table:
            raise ValueError(f"alpha must be one of 1, -1, i, -i (got {alpha!r})")
        return table[alpha]
    a = ctx.coerce(alpha)
    if a ** 4 != ctx.one:
        raise ValueError("alpha must be a fourth root of unity")
    return a


def build_T(p: int, s: int, alpha, kappa, n: int) -> Rep:
    """The D-module T^s(alpha, kappa, n) of dimension 2pn.

    Basis: e_u(m) at (m-1)p + u, then hat-e_u(m) at np + (m-1)p + u.
    """
    if not 1 <= s <= p - 1:
        raise ValueError(f"s must lie in 1..{p - 1}")
    if n < 1:
        raise ValueError("n must be positive")
    ctx = field(p)
    a = _alpha(ctx, alpha)
    k1, k2 = (ctx.coerce(k) for k in kappa)
    if not k1 or not k2:
        raise ValueError("kappa entries must be nonzero")
    dim = 2 * p * n

    def idx(hat, u, m):
        return hat * n * p + (m - 1) * p + u

    e, f = {}, {}
    tdiag = [None] * dim
    a2 = a * a
    for hat in (0, 1):
        other = 1 - hat
        kap = k2 if hat else k1
        for m in range(1, n + 1):
            for u in range(p):
                i = idx(hat, u, m)
                ev = a * ctx.zeta_power(s - 1 - 2 * u)
                tdiag[i] = -ev if hat else ev
                if u + 1 < p:
                    f[(idx(hat, u + 1, m), i)] = ctx.one
                if u:
                    c = a2 * qint(ctx, u) * qint(ctx, s - u)
                    if c:
                        e[(idx(hat, u - 1, m), i)] = c
                else:
                    e[(idx(other, p - 1, m), i)] = kap
                    if m > 1:
                        e[(idx(other, p - 1, m - 1), i)] = ctx.one
    action = {
        "e": Mat.from_entries(ctx, dim, dim, e),
        "f": Mat.from_entries(ctx, dim, dim, f),
        "t": Mat.diag(ctx, tdiag),
        "ti": Mat.diag(ctx, [x.inverse() for x in tdiag]),
    }
    meta = {"T": (s, str(a), (str(k1), str(k2)), n)}
    return make_rep(p, "D", action, label=f"T^{s}({a},({k1},{k2}),{n})", meta=meta)


def restrict_to_U(Z: Rep) -> Rep:
    if Z.tag != "D":
        raise RepError("restrict_to_U expects a D-module")
    t, ti = Z["t"], Z["ti"]
    action = {"E": Z["e"], "F": Z["f"], "K": t @ t, "Ki": ti @ ti}
    return make_rep(Z.p, "U", action, label=None)


# -- splitting of T under restriction ----------------------------------------

def _jordan(ctx, n, beta):
    return Mat.from_entries(ctx, n, n, {**{(i, i): beta for i in range(n)},
                                       **{(i - 1, i): 1 for i in range(1, n)}})


def _jordan_chain(A: Mat, beta, n):
    """Columns v_1..v_n with (A - beta) v_1 = 0 and (A - beta) v_k = v_{k-1}."""
    ctx = A.ctx
    B = A - Mat.identity(ctx, A.nrows).scale(beta)
    top = kernel(B ** n)
    lower = kernel(B ** (n - 1)) if n > 1 else []
    ech = Echelon(ctx)
    for v in lower:
        ech.add(v)
    v = next((w for w in top if not ech.contains(w)), None)
    if v is None:
        raise ValueError("no Jordan chain of the requested length")
    chain = [v]
    for _ in range(n - 1):
        chain.append(B.apply(chain[-1]))
    return chain[::-1]


def jordan_matrix_Q(p: int, kappa, n: int, beta) -> Mat:
    """Q with Q^-1 [[0, J(k2)], [J(k1), 0]] Q = diag(J(beta), J(-beta))."""
    ctx = field(p)
    k1, k2 = (ctx.coerce(k) for k in kappa)
    beta = ctx.coerce(beta)
    if beta * beta != k1 * k2:
        raise ValueError("beta^2 must equal kappa1*kappa2")
    Z = Mat.zeros(ctx, n, n)
    top = hstack(ctx, [Z, _jordan(ctx, n, k2)])
    bot = hstack(ctx, [_jordan(ctx, n, k1), Z])
    A = Mat(ctx, 2 * n, 2 * n, [dict(r) for r in top.rows] + [dict(r) for r in bot.rows])
    cols = _jordan_chain(A, beta, n) + _jordan_chain(A, -beta, n)
    Q = Mat.from_columns(ctx, 2 * n, cols)
    target = block_diag(ctx, [_jordan(ctx, n, beta), _jordan(ctx, n, -beta)])
    if A @ Q != Q @ target:
        raise ArithmeticError("Jordan conjugation check failed")
    return Q


@dataclass
class SplitCheck:
    passed: bool
    psi: Mat | None
    reason: str = ""

    def __bool__(self):
        return self.passed


def jordan_split_check(p: int, s: int, alpha, kappa, n: int, beta) -> SplitCheck:
    """Verify T^s(alpha,kappa,n)|_U = E_s(n;[1:beta]) + E_s(n;[1:-beta]) by an explicit map."""
    ctx = field(p)
    a = _alpha(ctx, alpha)
    if a * a != ctx.one:
        raise ValueError("the splitting is stated for alpha = 1 or -1")
    Q = jordan_matrix_Q(p, kappa, n, beta)
    beta = ctx.coerce(beta)
    T = build_T(p, s, a, kappa, n)
    R = restrict_to_U(T)
    target = direct_sum([
        build_E_direct(p, s, 1, n, ProjPoint.affine(beta)),
        build_E_direct(p, s, 1, n, ProjPoint.affine(-beta)),
    ])
    dim = 2 * p * n
    # new basis b_u(m) = sum_k Q[k, m] (e|hat-e)_u(k); column u-block ordering
    cols = []
    targets = []
    half = n * p
    for c in range(2 * n):
        part, m = divmod(c, n)
        for u in range(p):
            v = {}
            for k in range(2 * n):
                qv = Q.get(k, c)
                if qv:
                    hat, kk = divmod(k, n)
                    v[hat * n * p + kk * p + u] = qv
            cols.append(v)
            if u < s:
                targets.append(part * half + m * s + u)
            else:
                targets.append(part * half + n * s + m * (p - s) + (u - s))
    B = Mat.from_columns(ctx, dim, cols)
    Binv = solve_left_inverse_square(B)
    perm = Mat.from_entries(ctx, dim, dim, {(targets[j], j): 1 for j in range(dim)})
    psi = perm @ Binv
    if not is_intertwiner(psi, R, target):
        return SplitCheck(False, psi, "not an intertwiner")
    if psi.rank() != dim:
        return SplitCheck(False, psi, "not bijective")
    return SplitCheck(True, psi)


# -- the universal R-matrix ---------------------------------------------------

def _t_exponents(Z: Rep):
    if Z.tag != "D":
        raise RepError("R-matrix needs D-modules")
    if Z.weights is None:
        raise RepError("t must act diagonally")
    return Z.weights


def rmatrix_on(A: Rep, B: Rep) -> Mat:
    """The matrix of R on A (x) B (t acting diagonally on both)."""
    p = A.p
    ctx = field(p)
    N = 4 * p
    wa, wb = _t_exponents(A), _t_exponents(B)
    q, qi = ctx.q, ctx.qinv
    em = Mat.identity(ctx, A.dim)
    fm = Mat.identity(ctx, B.dim)
    out = {}
    for m in range(p):
        c = (q - qi) ** m / qfact(ctx, m)
        base = m * (m - 1)
        ecols, fcols = em.columns(), fm.columns()
        for j, ka in enumerate(wa):
            if not ecols[j]:
                continue
            for l, kb in enumerate(wb):
                if not fcols[l]:
                    continue
                # sum over the two t-powers collapses to a single root of unity
                expo = base + (kb - 2 * m) * (2 * m + ka)
                coef = c * ctx.zeta_power(expo % N)
                col = j * B.dim + l
                for i, x in ecols[j].items():
                    for k, y in fcols[l].items():
                        key = (i * B.dim + k, col)
                        v = out.get(key)
                        out[key] = coef * x * y if v is None else v + coef * x * y
        em = A["e"] @ em
        fm = B["f"] @ fm
    return Mat.from_entries(ctx, A.dim * B.dim, A.dim * B.dim, {k: v for k, v in out.items() if v})


def flip(ctx, da: int, db: int) -> Mat:
    """sigma: A (x) B -> B (x) A."""
    return Mat.from_entries(ctx, da * db, da * db, {(j * da + i, i * db + j): 1
                                                    for i in range(da) for j in range(db)})


@dataclass
class BraidingCheck:
    passed: bool
    reason: str = ""

    def __bool__(self):
        return self.passed


def braiding_check(A: Rep, B: Rep) -> BraidingCheck:
    """sigma o R : A(x)B -> B(x)A is an invertible D-intertwiner."""
    ctx = A.ctx
    check_valid(A)
    check_valid(B)
    R = rmatrix_on(A, B)
    S = flip(ctx, A.dim, B.dim) @ R
    AB, BA = tensor(A, B), tensor(B, A)
    for g in ("e", "f", "t"):
        if S @ AB[g] != BA[g] @ S:
            return BraidingCheck(False, f"fails to commute with {g}")
    if S.rank() != S.nrows:
        return BraidingCheck(False, "not invertible")
    return BraidingCheck(True)


# -- lifting U-modules --------------------------------------------------------

def _twisted(Z: Rep) -> Rep:
    """The U-module that any t/zeta^w must map Z onto."""
    p = Z.p
    ctx = Z.ctx
    w = Z.weights
    twoP = 2 * p
    E = Mat(ctx, Z.dim, Z.dim)
    F = Mat(ctx, Z.dim, Z.dim)
    for i, row in enumerate(Z.E.rows):
        for j, v in row.items():
            E.rows[i][j] = -v if w[j] + 2 >= twoP else v
    for i, row in enumerate(Z.F.rows):
        for j, v in row.items():
            F.rows[i][j] = -v if w[j] - 2 < 0 else v
    return Rep(p, "U", {"E": E, "F": F, "K": Z.K, "Ki": Z.Ki}, None, w, {})


def _sign_system(Z: Rep):
    """Solve sigma_i * sigma_j = eps along every E/F edge.

    Returns (signs, None) or (None, equations) with an inconsistent cycle.
    """
    p = Z.p
    w = Z.weights
    twoP = 2 * p
    adj = {i: [] for i in range(Z.dim)}
    for gname, mat in (("E", Z.E), ("F", Z.F)):
        for i, row in enumerate(mat.rows):
            for j in row:
                if gname == "E":
                    eps = -1 if w[j] + 2 >= twoP else 1
                else:
                    eps = -1 if w[j] - 2 < 0 else 1
                adj[i].append((j, eps, f"{gname}[{i},{j}]"))
                adj[j].append((i, eps, f"{gname}[{i},{j}]"))
    sign = {}
    parent = {}
    for root in range(Z.dim):
        if root in sign:
            continue
        sign[root] = 1
        parent[root] = None
        stack = [root]
        while stack:
            i = stack.pop()
            for j, eps, name in adj[i]:
                want = sign[i] * eps
                if j not in sign:
                    sign[j] = want
                    parent[j] = (i, eps, name)
                    stack.append(j)
                elif sign[j] != want:
                    return None, _cycle_equations(parent, i, j, eps, name, w)
    return [sign[i] for i in range(Z.dim)], None


def _path_to_root(parent, i):
    path = []
    while parent[i] is not None:
        j, eps, name = parent[i]
        path.append((i, j, eps, name))
        i = j
    return path, i


def _cycle_equations(parent, i, j, eps, name, w):
    pi, _ = _path_to_root(parent, i)
    pj, _ = _path_to_root(parent, j)
    eqs = []
    for a, b, e, nm in pi + pj:
        eqs.append(f"s{a} = {'+' if e > 0 else '-'}s{b}  [{nm}, weights {w[b]}->{w[a]}]")
    eqs.append(f"s{j} = {'+' if eps > 0 else '-'}s{i}  [{name}, weights {w[i]}->{w[j]}]")
    eqs.append("product of the signs around this cycle is -1: no sign choice satisfies all equations")
    return eqs


def lift(Z: Rep, require: bool = False) -> LiftResult:
    """Try to extend the U-action on Z to D.

    A lift is t = D0 S with D0 = diag(zeta^w) (w in 0..2p-1) and S an
    involution that intertwines Z with its sign-twisted copy.  Diagonal S
    is tried first; when that fails, a lift would force Z to be isomorphic
    to the twisted copy, which is tested by Hom fingerprints.
    """
    if Z.tag != "U" or Z.weights is None:
        raise RepError("lift needs a U-module with diagonal K")
    ctx = Z.ctx
    signs, eqs = _sign_system(Z)
    if signs is not None:
        tdiag = [ctx.zeta_power(w) * sg for w, sg in zip(Z.weights, signs)]
        action = {"e": Z.E, "f": Z.F, "t": Mat.diag(ctx, tdiag),
                  "ti": Mat.diag(ctx, [x.inverse() for x in tdiag])}
        D = make_rep(Z.p, "D", action, label=Z.label)
        check_valid(D)
        return LiftResult(True, D)
    Zt = _twisted(Z)
    cert = is_iso(Z, Zt)
    if cert.verdict == "not-iso":
        lab, side, da, db = cert.witness
        eqs = list(eqs) + [f"Z is not isomorphic to its twisted copy: Hom {side} {lab} has dims {da} vs {db}"]
        res = LiftResult(False, None, eqs, cert.witness)
        if require:
            raise NotLiftable(res)
        return res
    # an isomorphism exists; look for an involutive one in the intertwiner space
    hs = hom_space(Z, Zt)
    I = Mat.identity(ctx, Z.dim)
    for S in hs.basis + ([hs.combine([1] * hs.dim)] if hs.dim else []):
        S2 = S @ S
        if S2.is_diagonal() and S2.nrows and all(x == S2.get(0, 0) for x in S2.diagonal()):
            c = S2.get(0, 0)
            if c == ctx.one:
                T = _diag_zeta(Z) @ S
                action = {"e": Z.E, "f": Z.F, "t": T, "ti": solve_left_inverse_square(T)}
                D = make_rep(Z.p, "D", action, label=Z.label)
                if D.weights is not None and check_valid(D) and (T @ T) == Z.K:
                    return LiftResult(True, D)
    return LiftResult(None)


def _diag_zeta(Z: Rep) -> Mat:
    ctx = Z.ctx
    return Mat.diag(ctx, [ctx.zeta_power(w) for w in Z.weights])


def lift_verdicts(p: int, labels) -> dict:
    return {str(lab): lift(build(p, lab)).liftable for lab in labels}
