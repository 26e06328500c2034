"""Explicit matrix modules over the restricted quantum group and its double cover.

Every U-module built here keeps K diagonal, so each basis vector carries a
weight ``w`` (K v = q^w v, w mod 2p).  D-modules store the exponent of zeta
for ``t`` instead when ``t`` is diagonal.  The weight data lets the Hom
solver restrict to weight-matching unknowns.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from functools import lru_cache

from .cyclo import FieldCtx, FieldElem, field, qint
from .labels import Label, ProjPoint, canonical, check_label, norm_sign
from .linalg import Echelon, Mat, nullspace, vec_axpy_inplace

GENS = {"U": ("E", "F", "K", "Ki"), "D": ("e", "f", "t", "ti")}


class RepError(ValueError):
    pass


@dataclass(frozen=True, eq=False)
class Rep:
    p: int
    tag: str
    action: dict
    label: object = None
    weights: tuple | None = None
    meta: dict = dc_field(default_factory=dict)

    @property
    def ctx(self) -> FieldCtx:
        return field(self.p)

    @property
    def dim(self) -> int:
        return self.action[GENS[self.tag][0]].nrows

    def __getitem__(self, name) -> Mat:
        return self.action[name]

    @property
    def E(self):
        return self.action["E"]

    @property
    def F(self):
        return self.action["F"]

    @property
    def K(self):
        return self.action["K"]

    @property
    def Ki(self):
        return self.action["Ki"]

    def gens(self):
        return GENS[self.tag]

    def __repr__(self):
        name = f" {self.label}" if self.label is not None else ""
        return f"Rep<{self.tag}, p={self.p}, dim={self.dim}{name}>"

    def relabel(self, label):
        return Rep(self.p, self.tag, self.action, label, self.weights, dict(self.meta))


def _weights_from_diag(ctx: FieldCtx, diag, order: int, step: int):
    """Exponents k with diag[i] = zeta^(step*k), or None."""
    lookup = {}
    for k in range(order):
        lookup[ctx.zeta_power(step * k).c] = k
    out = []
    for d in diag:
        k = lookup.get(d.c)
        if k is None:
            return None
        out.append(k)
    return tuple(out)


def make_rep(p: int, tag: str, action: dict, label=None, meta=None) -> Rep:
    """Wrap matrices into a Rep, deriving weights when the Cartan part is diagonal."""
    ctx = field(p)
    weights = None
    if tag == "U":
        K = action["K"]
        if K.is_diagonal():
            weights = _weights_from_diag(ctx, K.diagonal(), 2 * p, 2)
    else:
        t = action["t"]
        if t.is_diagonal():
            weights = _weights_from_diag(ctx, t.diagonal(), 4 * p, 1)
    return Rep(p, tag, action, label, weights, meta or {})


def from_weights(p: int, weights, E: Mat, F: Mat, label=None) -> Rep:
    """U-module with K = diag(q^w)."""
    ctx = field(p)
    w = tuple(x % (2 * p) for x in weights)
    K = Mat.diag(ctx, [ctx.qpow(x) for x in w])
    Ki = Mat.diag(ctx, [ctx.qpow(-x) for x in w])
    return Rep(p, "U", {"E": E, "F": F, "K": K, "Ki": Ki}, label, w, {})


def weight_of(rep: Rep, i: int) -> int:
    return rep.weights[i]


# -- constructors ------------------------------------------------------------


def _ranges(p, s):
    if not 1 <= s <= p:
        raise RepError(f"s={s} out of range 1..{p}")


def build_simple(p: int, s: int, sign=1) -> Rep:
    """X_s^sign: K a_n = sign q^{s-1-2n} a_n, E a_n = sign [n][s-n] a_{n-1}, F a_n = a_{n+1}."""
    _ranges(p, s)
    sign = norm_sign(sign)
    ctx = field(p)
    shift = 0 if sign > 0 else p
    weights = [s - 1 - 2 * n + shift for n in range(s)]
    E = Mat.zeros(ctx, s, s)
    F = Mat.zeros(ctx, s, s)
    for n in range(1, s):
        c = qint(ctx, n) * qint(ctx, s - n)
        if sign < 0:
            c = -c
        if c:
            E.rows[n - 1][n] = c
    for n in range(s - 1):
        F.rows[n + 1][n] = ctx.one
    return from_weights(p, weights, E, F, label=Label("X", sign, s))


def glue(p: int, s: int, sign, n_top: int, n_soc: int, GF, GE, label=None) -> Rep:
    """Length-two module with top (X_s^sign)^n_top over socle (X_{p-s}^-sign)^n_soc.

    Top copy c has basis b_0..b_{s-1}; socle copy d has x_0..x_{p-s-1}.  The
    gluing enters as F b_{s-1}(c) = sum_d GF[d][c] x_0(d) and
    E b_0(c) = sum_d GE[d][c] x_{p-s-1}(d).  ``GF``/``GE`` are dicts keyed by
    (d, c).  Any pair of matrices gives a module.
    """
    if not 1 <= s <= p - 1:
        raise RepError(f"s={s} out of range 1..{p - 1}")
    sign = norm_sign(sign)
    ctx = field(p)
    sp = p - s
    dim = n_top * s + n_soc * sp

    def bi(c, n):
        return c * s + n

    def xi(d, m):
        return n_top * s + d * sp + m

    shift_top = 0 if sign > 0 else p
    shift_soc = p - shift_top
    weights = [0] * dim
    E = Mat.zeros(ctx, dim, dim)
    F = Mat.zeros(ctx, dim, dim)
    ee_top = [None] + [qint(ctx, n) * qint(ctx, s - n) * sign for n in range(1, s)]
    ee_soc = [None] + [qint(ctx, m) * qint(ctx, sp - m) * (-sign) for m in range(1, sp)]
    for c in range(n_top):
        for n in range(s):
            weights[bi(c, n)] = s - 1 - 2 * n + shift_top
            if n:
                E.rows[bi(c, n - 1)][bi(c, n)] = ee_top[n]
            if n < s - 1:
                F.rows[bi(c, n + 1)][bi(c, n)] = ctx.one
    for d in range(n_soc):
        for m in range(sp):
            weights[xi(d, m)] = sp - 1 - 2 * m + shift_soc
            if m:
                E.rows[xi(d, m - 1)][xi(d, m)] = ee_soc[m]
            if m < sp - 1:
                F.rows[xi(d, m + 1)][xi(d, m)] = ctx.one
    for (d, c), v in dict(GF).items():
        v = ctx.coerce(v)
        if v:
            F.rows[xi(d, 0)][bi(c, s - 1)] = v
    for (d, c), v in dict(GE).items():
        v = ctx.coerce(v)
        if v:
            E.rows[xi(d, sp - 1)][bi(c, 0)] = v
    rep = from_weights(p, weights, E, F, label=label)
    rep.meta.update({"glue": (s, sign, n_top, n_soc)})
    return rep


def _as_point(ctx, lam) -> ProjPoint:
    if isinstance(lam, ProjPoint):
        return lam
    a, b = lam
    return ProjPoint(ctx.coerce(a), ctx.coerce(b))


def build_E_direct(p: int, s: int, sign, n: int, lam) -> Rep:
    """E_s^sign(n; lam) from the explicit basis, both signs printed directly.

    For n >= 2 the gluing is G_F = a*I, G_E = b*I + N with N the shift
    b_0(m) -> x(m-1).  At a = 0 that pencil splits, so there the roles are
    swapped to G_F = N, G_E = b*I, which is the Jordan form at infinity.
    """
    ctx = field(p)
    lam = _as_point(ctx, lam)
    if n < 1:
        raise RepError("n must be positive")
    a, b = lam.a, lam.b
    GF, GE = {}, {}
    for m in range(n):
        if a:
            GF[(m, m)] = a
            GE[(m, m)] = b
            if m:
                GE[(m - 1, m)] = ctx.one
        else:
            GE[(m, m)] = b
            if m:
                GF[(m - 1, m)] = ctx.one
    return glue(p, s, sign, n, n, GF, GE, label=Label("E", sign, s, n, lam))


def twist_left(rep: Rep) -> Rep:
    """X_1^- (x) Z, written on the basis of Z: (E, F, K) -> (E, -F, -K)."""
    ctx = rep.ctx
    if rep.tag != "U":
        raise RepError("twist is defined for U-modules")
    w = tuple((x + rep.p) % (2 * rep.p) for x in rep.weights)
    return Rep(rep.p, "U", {"E": rep.E, "F": -rep.F, "K": -rep.K, "Ki": -rep.Ki}, None, w, {})


def twist_right(rep: Rep) -> Rep:
    """Z (x) X_1^-: (E, F, K) -> (-E, F, -K)."""
    w = tuple((x + rep.p) % (2 * rep.p) for x in rep.weights)
    return Rep(rep.p, "U", {"E": -rep.E, "F": rep.F, "K": -rep.K, "Ki": -rep.Ki}, None, w, {})


def build_E(p: int, s: int, sign, n: int, lam, construction: str = "twist") -> Rep:
    """E_s^sign(n; lam).

    Minus-sign members default to X_1^- (x) E_s^+(n; (-1)^(p-1) lam); the
    ``direct`` construction uses the printed lower-sign formulas.
    """
    if not 1 <= s <= p - 1:
        raise RepError(f"s={s} out of range 1..{p - 1}")
    if n < 1:
        raise RepError("n must be positive")
    sign = norm_sign(sign)
    ctx = field(p)
    lam = _as_point(ctx, lam)
    if sign > 0 or construction == "direct":
        return build_E_direct(p, s, sign, n, lam)
    if construction != "twist":
        raise RepError(f"unknown construction {construction!r}")
    plus = build_E_direct(p, s, 1, n, lam.scale((-1) ** (p - 1)))
    return twist_left(plus).relabel(Label("E", -1, s, n, lam))


def _mw_gluing(n, family):
    if family == "M":
        n_top, n_soc = n - 1, n
        GF = {(i, i): 1 for i in range(n - 1)}
        GE = {(i + 1, i): 1 for i in range(n - 1)}
    else:
        n_top, n_soc = n, n - 1
        GF = {(i, i): 1 for i in range(n - 1)}
        GE = {(i, i + 1): 1 for i in range(n - 1)}
    return n_top, n_soc, GF, GE


def build_MW(p: int, s: int, sign, n: int, family: str, construction: str = "twist") -> Rep:
    """M_s^sign(n) (top n-1, socle n) or W_s^sign(n) (top n, socle n-1)."""
    if family not in ("M", "W"):
        raise RepError(f"family must be M or W, got {family!r}")
    if not 1 <= s <= p - 1:
        raise RepError(f"s={s} out of range 1..{p - 1}")
    if n < 2:
        raise RepError("n must be at least 2 (n=1 is a simple module)")
    sign = norm_sign(sign)
    lab = Label(family, sign, s, n)
    if sign < 0 and construction == "twist":
        return twist_left(build_MW(p, s, 1, n, family)).relabel(lab)
    n_top, n_soc, GF, GE = _mw_gluing(n, family)
    return glue(p, s, sign, n_top, n_soc, GF, GE, label=lab)


def tensor(A: Rep, B: Rep) -> Rep:
    """A (x) B through the coproduct; basis index i*dim(B) + j."""
    if A.tag != B.tag or A.p != B.p:
        raise RepError("tensor of modules over different algebras")
    ctx = A.ctx
    IA = Mat.identity(ctx, A.dim)
    IB = Mat.identity(ctx, B.dim)
    if A.tag == "U":
        E = A.E.kron(B.K) + IA.kron(B.E)
        F = A.F.kron(IB) + A.Ki.kron(B.F)
        K = A.K.kron(B.K)
        Ki = A.Ki.kron(B.Ki)
        action = {"E": E, "F": F, "K": K, "Ki": Ki}
        if A.weights is not None and B.weights is not None:
            m = 2 * A.p
            w = tuple((a + b) % m for a in A.weights for b in B.weights)
            return Rep(A.p, "U", action, None, w, {})
        return make_rep(A.p, "U", action)
    t2B = B["t"] @ B["t"]
    e = A["e"].kron(t2B) + IA.kron(B["e"])
    f = A["f"].kron(IB) + (A["ti"] @ A["ti"]).kron(B["f"])
    t = A["t"].kron(B["t"])
    ti = A["ti"].kron(B["ti"])
    return make_rep(A.p, "D", {"e": e, "f": f, "t": t, "ti": ti})


def direct_sum(reps) -> Rep:
    reps = list(reps)
    if not reps:
        raise RepError("empty direct sum")
    p, tag = reps[0].p, reps[0].tag
    from .linalg import block_diag

    ctx = field(p)
    action = {g: block_diag(ctx, [r[g] for r in reps]) for g in GENS[tag]}
    if all(r.weights is not None for r in reps):
        w = tuple(x for r in reps for x in r.weights)
        return Rep(p, tag, action, None, w, {})
    return make_rep(p, tag, action)


def dual(Z: Rep, side: str = "R") -> Rep:
    """Right dual (via S) or left dual (via S^-1); the action is the transpose."""
    if side not in ("R", "L"):
        raise RepError("side must be 'R' or 'L'")
    if Z.tag == "U":
        E, F, K, Ki = Z.E, Z.F, Z.K, Z.Ki
        if side == "R":
            nE = -((E @ Ki).T)
            nF = -((K @ F).T)
        else:
            nE = -((Ki @ E).T)
            nF = -((F @ K).T)
        action = {"E": nE, "F": nF, "K": Ki.T, "Ki": K.T}
    else:
        e, f, t, ti = Z["e"], Z["f"], Z["t"], Z["ti"]
        t2, ti2 = t @ t, ti @ ti
        if side == "R":
            ne = -((e @ ti2).T)
            nf = -((t2 @ f).T)
        else:
            ne = -((ti2 @ e).T)
            nf = -((f @ t2).T)
        action = {"e": ne, "f": nf, "t": ti.T, "ti": t.T}
    if Z.tag == "U" and Z.weights is not None:
        w = tuple((-x) % (2 * Z.p) for x in Z.weights)
        return Rep(Z.p, "U", action, None, w, {})
    return make_rep(Z.p, Z.tag, action)


# -- validation ----------------------------------------------------------------


def validate(Z: Rep) -> str | None:
    """Name of the first violated defining relation, or None when all hold."""
    ctx = Z.ctx
    p = Z.p
    n = Z.dim
    I = Mat.identity(ctx, n)
    Zero = Mat.zeros(ctx, n, n)
    q, qi = ctx.q, ctx.qinv
    if Z.tag == "U":
        E, F, K, Ki = Z.E, Z.F, Z.K, Z.Ki
        names = ("KK^-1=K^-1K=1", "KEK^-1=q^2E", "KFK^-1=q^-2F", "EF-FE=(K-K^-1)/(q-q^-1)",
                 "K^2p=1", "E^p=0", "F^p=0")
        checks = (
            lambda: K @ Ki == I and Ki @ K == I,
            lambda: K @ E == (E @ K).scale(q * q),
            lambda: K @ F == (F @ K).scale(qi * qi),
            lambda: ((E @ F) - (F @ E)).scale(q - qi) == K - Ki,
            lambda: K ** (2 * p) == I,
            lambda: E ** p == Zero,
            lambda: F ** p == Zero,
        )
    elif Z.tag == "D":
        e, f, t, ti = Z["e"], Z["f"], Z["t"], Z["ti"]
        names = ("tt^-1=t^-1t=1", "tet^-1=qe", "tft^-1=q^-1f", "ef-fe=(t^2-t^-2)/(q-q^-1)",
                 "t^4p=1", "e^p=0", "f^p=0")
        checks = (
            lambda: t @ ti == I and ti @ t == I,
            lambda: t @ e == (e @ t).scale(q),
            lambda: t @ f == (f @ t).scale(qi),
            lambda: ((e @ f) - (f @ e)).scale(q - qi) == (t @ t) - (ti @ ti),
            lambda: t ** (4 * p) == I,
            lambda: e ** p == Zero,
            lambda: f ** p == Zero,
        )
    else:
        return "unknown algebra tag"
    for name, chk in zip(names, checks):
        if not chk():
            return name
    return None


def check_valid(Z: Rep) -> Rep:
    bad = validate(Z)
    if bad is not None:
        raise RepError(f"relation {bad} fails")
    return Z


# -- subspaces, submodules, quotients ------------------------------------------


def split_by_weight(Z: Rep, v: dict) -> list[dict]:
    parts = {}
    for i, c in v.items():
        parts.setdefault(Z.weights[i], {})[i] = c
    return [parts[w] for w in sorted(parts)]


def restrict(Z: Rep, basis: list[dict], label=None) -> Rep:
    """Action on an invariant subspace spanned by independent ``basis`` vectors."""
    ctx = Z.ctx
    k = len(basis)
    ech = Echelon(ctx, track=True)
    for b in basis:
        if not ech.add(b):
            raise RepError("restrict: basis vectors are dependent")
    action = {}
    for g in Z.gens():
        cols = Z[g].columns()
        out = Mat.zeros(ctx, k, k)
        for j, b in enumerate(basis):
            img = {}
            for i, c in b.items():
                vec_axpy_inplace(img, c, cols[i])
            try:
                coords = ech.express(img)
            except ValueError:
                raise RepError(f"restrict: subspace is not {g}-invariant") from None
            for i, c in coords.items():
                out.rows[i][j] = c
        action[g] = out
    return make_rep(Z.p, Z.tag, action, label)


def quotient(Z: Rep, sub: list[dict]):
    """(Z/sub, projection matrix, complement index list).

    The complement uses standard basis vectors, so weight bases stay weight
    bases.
    """
    ctx = Z.ctx
    ech = Echelon(ctx)
    for v in sub:
        ech.add(v)
    comp = []
    for i in range(Z.dim):
        if ech.add({i: ctx.one}):
            comp.append(i)
    full = Echelon(ctx, track=True)
    for v in sub:
        full.add(v)
    nsub = full.n_added
    if full.rank != nsub:
        raise RepError("quotient: submodule basis is dependent")
    for i in comp:
        full.add({i: ctx.one})
    k = len(comp)
    action = {}
    for g in Z.gens():
        cols = Z[g].columns()
        out = Mat.zeros(ctx, k, k)
        for j, i in enumerate(comp):
            coords = full.express(cols[i])
            for idx, c in coords.items():
                if idx >= nsub:
                    out.rows[idx - nsub][j] = c
        action[g] = out
    # projection Z -> Z/sub in the complement coordinates
    proj_cols = []
    for i in range(Z.dim):
        coords = full.express({i: ctx.one})
        proj_cols.append({idx - nsub: c for idx, c in coords.items() if idx >= nsub})
    proj = Mat.from_columns(ctx, k, proj_cols)
    return make_rep(Z.p, Z.tag, action), proj, comp


def submodule_generated(Z: Rep, vectors) -> tuple[Rep, Mat]:
    """Closure of ``vectors`` under the generators; returns (submodule, inclusion)."""
    ctx = Z.ctx
    ech = Echelon(ctx)
    basis = []
    queue = []

    def push(v):
        if Z.weights is not None and Z.tag == "U":
            pieces = split_by_weight(Z, v)
        else:
            pieces = [v]
        for piece in pieces:
            if ech.add(piece):
                basis.append(piece)
                queue.append(piece)

    for v in vectors:
        push(dict(v))
    gens = ("E", "F") if (Z.tag == "U" and Z.weights is not None) else Z.gens()
    colmaps = {g: Z[g].columns() for g in gens}
    steps = 0
    while queue:
        steps += 1
        if steps > Z.dim * (len(gens) + 1) + len(basis) + 10:
            raise RepError("submodule closure failed to stabilize")
        v = queue.pop()
        for g in gens:
            img = {}
            for i, c in v.items():
                vec_axpy_inplace(img, c, colmaps[g][i])
            if img:
                push(img)
    sub = restrict(Z, basis)
    incl = Mat.from_columns(ctx, Z.dim, basis)
    return sub, incl


def weight_spaces(Z: Rep) -> dict:
    """Map K-eigenvalue exponent w (K = q^w) to a basis of that weight space."""
    ctx = Z.ctx
    if Z.tag != "U":
        raise RepError("weight_spaces expects a U-module")
    if Z.weights is not None:
        out = {}
        for i, w in enumerate(Z.weights):
            out.setdefault(w, []).append({i: ctx.one})
        return dict(sorted(out.items()))
    out = {}
    total = 0
    for w in range(2 * Z.p):
        M = Z.K - Mat.identity(ctx, Z.dim).scale(ctx.qpow(w))
        ker = nullspace(ctx, M.rows, Z.dim)
        if ker:
            out[w] = ker
            total += len(ker)
    if total != Z.dim:
        raise RepError("K does not act diagonalizably")
    return out


def change_basis(Z: Rep, cols: list[dict]) -> Rep:
    """Rewrite Z in the basis given by ``cols`` (which must span Z)."""
    if len(cols) != Z.dim:
        raise RepError("change_basis needs dim(Z) vectors")
    return restrict(Z, cols)


# -- Casimir and blocks -----------------------------------------------------------


def casimir_value(p: int, s: int) -> FieldElem:
    """Scalar of C on block s: (q^s + q^-s)/(q - q^-1)^2."""
    ctx = field(p)
    d = ctx.q - ctx.qinv
    return (ctx.qpow(s) + ctx.qpow(-s)) / (d * d)


def casimir_action(Z: Rep) -> Mat:
    ctx = Z.ctx
    d = ctx.q - ctx.qinv
    c = (d * d).inverse()
    return (Z.E @ Z.F) + (Z.K.scale(ctx.qinv * c) + Z.Ki.scale(ctx.q * c))


def _block_parity_ok(p, s, w):
    return (w - (s - 1)) % 2 == 0


def block_decompose(Z: Rep) -> list[tuple[int, Rep]]:
    """Split Z into generalized Casimir eigenspaces, labelled by block id."""
    if Z.tag != "U" or Z.weights is None:
        raise RepError("block_decompose expects a U-module in a weight basis")
    ctx = Z.ctx
    p = Z.p
    C = casimir_action(Z)
    if not (C @ Z.E == Z.E @ C and C @ Z.F == Z.F @ C and C @ Z.K == Z.K @ C):
        raise RepError("Casimir fails to be central on this module")
    vals = {s: casimir_value(p, s) for s in range(p + 1)}
    by_weight = {}
    for i, w in enumerate(Z.weights):
        by_weight.setdefault(w, []).append(i)
    pieces: dict[int, list[dict]] = {}
    for w, idx in by_weight.items():
        Cw = C.submatrix(idx, idx)
        k = len(idx)
        if Cw.is_diagonal():
            diag = Cw.diagonal()
            found = 0
            for s, val in vals.items():
                sel = [idx[j] for j in range(k) if diag[j] == val]
                if sel:
                    pieces.setdefault(s, []).extend({i: ctx.one} for i in sel)
                    found += len(sel)
            if found != k:
                raise RepError("Casimir eigenvalue outside the known block values")
            continue
        found = 0
        for s, val in vals.items():
            if not _block_parity_ok(p, s, w) and s not in (0, p):
                continue
            Mw = (Cw - Mat.identity(ctx, k).scale(val)) ** k
            ker = nullspace(ctx, Mw.rows, k)
            if ker:
                for v in ker:
                    pieces.setdefault(s, []).append({idx[j]: c for j, c in v.items()})
                found += len(ker)
        if found != k:
            raise RepError("Casimir eigenvalue outside the known block values")
    out = []
    for s in sorted(pieces):
        if len(pieces[s]) == Z.dim and len(pieces) == 1:
            out.append((s, Z))
        else:
            out.append((s, restrict(Z, pieces[s])))
    return out


# -- projectives -----------------------------------------------------------------


@lru_cache(maxsize=None)
def build_P(p: int, s: int, sign=1) -> Rep:
    """P_s^sign in the basis F^i v, E^j v, F^(p-s+i) E^(p-s) v from a top vector v.

    Obtained as the block component of X_p^sign (x) X_{p-s+1}^+.
    """
    if not 1 <= s <= p - 1:
        raise RepError(f"s={s} out of range 1..{p - 1}")
    sign = norm_sign(sign)
    ctx = field(p)
    big = tensor(build_simple(p, p, sign), build_simple(p, p - s + 1, 1))
    target_block = s if sign > 0 else p - s
    comp = dict(block_decompose(big))[target_block]
    if comp.dim != 2 * p:
        raise RepError(f"block component has dim {comp.dim}, expected {2 * p}")
    top_w = (s - 1 + (0 if sign > 0 else p)) % (2 * p)
    cands = [i for i, w in enumerate(comp.weights) if w == top_w]
    trial = [{i: ctx.one} for i in cands]
    if len(cands) > 1:
        trial.append({i: ctx.one for i in cands})
    Ecols, Fcols = comp.E.columns(), comp.F.columns()

    def app(cols, v):
        out = {}
        for i, c in v.items():
            vec_axpy_inplace(out, c, cols[i])
        return out

    for v in trial:
        mons = []
        cur = v
        for _ in range(p):
            mons.append(cur)
            cur = app(Fcols, cur)
        cur = v
        for _ in range(p - s):
            cur = app(Ecols, cur)
            mons.append(cur)
        for _ in range(p - s):
            cur = app(Fcols, cur)
        for _ in range(s):
            mons.append(cur)
            cur = app(Fcols, cur)
        ech = Echelon(ctx)
        if all(ech.add(m) for m in mons):
            rep = restrict(comp, mons, label=Label("P", sign, s))
            return rep
    raise RepError("no generating top vector found for the projective module")


def build(p: int, label: Label, construction: str = "twist") -> Rep:
    """Matrix module for a label."""
    label = canonical(label, p)
    f = label.family
    if f == "X":
        rep = build_simple(p, label.s, label.sign)
    elif f == "P":
        rep = build_P(p, label.s, label.sign)
    elif f in ("M", "W"):
        rep = build_MW(p, label.s, label.sign, label.n, f, construction)
    else:
        rep = build_E(p, label.s, label.sign, label.n, label.lam, construction)
    return rep.relabel(label)


# -- serialization ---------------------------------------------------------------


def rep_to_dict(Z: Rep) -> dict:
    out = {"p": Z.p, "algebra": Z.tag, "dim": Z.dim}
    for g in Z.gens():
        out[g] = [[str(x) for x in row] for row in Z[g].to_dense()]
    if Z.label is not None:
        out["label"] = str(Z.label)
    return out


def rep_from_dict(data: dict) -> Rep:
    p = data["p"]
    ctx = field(p)
    tag = data["algebra"]
    action = {g: Mat.from_dense(ctx, [[ctx.parse(x) for x in row] for row in data[g]]) for g in GENS[tag]}
    return make_rep(p, tag, action)
