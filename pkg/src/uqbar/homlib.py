"""Hom spaces, socles and radicals, Ext^1, isomorphism tests and decomposition.

``decompose`` is the matrix-side oracle: it splits a module into blocks,
peels off projective summands with explicit split monomorphisms, and reads
the remaining length-two part off the Kronecker invariants of its gluing
pencils.
"""

from __future__ import annotations

import random
from collections import Counter
from dataclasses import dataclass, field as dc_field
from functools import lru_cache
from itertools import product

from .cyclo import field
from .labels import FormalDecomp, Label, ProjPoint, X, canonical, label_block
from .linalg import Echelon, Mat, hstack, nullspace, vec_axpy_inplace, block_diag
from .pencil import kronecker
from .repcore import (
    Rep,
    RepError,
    block_decompose,
    build,
    build_P,
    build_simple,
    direct_sum,
    quotient,
    restrict,
)


class HomError(RuntimeError):
    pass


@dataclass
class HomSpace:
    source: Rep
    target: Rep
    basis: list

    @property
    def dim(self) -> int:
        return len(self.basis)

    def combine(self, coeffs) -> Mat:
        ctx = self.source.ctx
        out = Mat.zeros(ctx, self.target.dim, self.source.dim)
        for c, m in zip(coeffs, self.basis):
            c = ctx.coerce(c)
            if c:
                out = out + m.scale(c)
        return out


def _pairs(A: Rep, B: Rep):
    """Unknown positions (i in B, j in A) allowed by the grading."""
    if A.weights is not None and B.weights is not None:
        by_w = {}
        for j, w in enumerate(A.weights):
            by_w.setdefault(w, []).append(j)
        out = []
        for i, w in enumerate(B.weights):
            for j in by_w.get(w, ()):
                out.append((i, j))
        return out, False
    return [(i, j) for i in range(B.dim) for j in range(A.dim)], True


def hom_space(A: Rep, B: Rep) -> HomSpace:
    """Basis of {T : T rho_A(g) = rho_B(g) T}."""
    if A.tag != B.tag or A.p != B.p:
        raise HomError("Hom between modules over different algebras")
    ctx = A.ctx
    pairs, need_cartan = _pairs(A, B)
    if not pairs:
        return HomSpace(A, B, [])
    index = {pq: k for k, pq in enumerate(pairs)}
    by_row = {}
    by_col = {}
    for (i, j), k in index.items():
        by_row.setdefault(i, []).append((j, k))
        by_col.setdefault(j, []).append((i, k))
    gens = A.gens()[:2] + ((A.gens()[2],) if need_cartan else ())
    eqs = {}
    for g in gens:
        Ag, Bg = A[g], B[g]
        Bcols = Bg.columns()
        # sum_k T[i,k] A[k,j]
        for (i, k), u in index.items():
            for j, a in Ag.rows[k].items():
                row = eqs.setdefault((g, i, j), {})
                c = row.get(u)
                row[u] = a if c is None else c + a
        # - sum_k B[i,k] T[k,j]
        for (k, j), u in index.items():
            for i, b in Bcols[k].items():
                row = eqs.setdefault((g, i, j), {})
                c = row.get(u)
                row[u] = -b if c is None else c - b
    rows = []
    for r in eqs.values():
        r = {k: v for k, v in r.items() if v}
        if r:
            rows.append(r)
    sols = nullspace(ctx, rows, len(pairs))
    basis = []
    for sol in sols:
        m = Mat.zeros(ctx, B.dim, A.dim)
        for u, v in sol.items():
            i, j = pairs[u]
            m.rows[i][j] = v
        basis.append(m)
    return HomSpace(A, B, basis)


def hom_dim(A: Rep, B: Rep) -> int:
    return hom_space(A, B).dim


def is_intertwiner(T: Mat, A: Rep, B: Rep) -> bool:
    return all(T @ A[g] == B[g] @ T for g in A.gens())


# -- simples and projectives ------------------------------------------------------


def simple_labels(p: int) -> list[Label]:
    return [X(s, sg) for sg in (1, -1) for s in range(1, p + 1)]


@lru_cache(maxsize=None)
def simple(p: int, s: int, sign: int) -> Rep:
    return build_simple(p, s, sign)


def _simple_rep(p, lab: Label) -> Rep:
    return simple(p, lab.s, lab.sign)


def projective_of(p: int, lab: Label) -> Label:
    """Projective cover label of a simple label."""
    if lab.s == p:
        return lab
    return Label("P", lab.sign, lab.s)


@lru_cache(maxsize=None)
def projective_rep(p: int, s: int, sign: int) -> Rep:
    if s == p:
        return simple(p, p, sign)
    return build_P(p, s, sign)


def _gen_index(p, s):
    """Top generator index inside the projective basis."""
    return 0


def _soc_index(p, s):
    """Index of the socle highest weight vector F^(p-s) E^(p-s) v."""
    if s == p:
        return 0
    return p + (p - s)


def _present_weights(Z: Rep):
    return set(Z.weights) if Z.weights is not None else None


def _candidates(Z: Rep):
    """Simple labels whose highest weight occurs in Z."""
    p = Z.p
    ws = _present_weights(Z)
    out = []
    for lab in simple_labels(p):
        hw = (lab.s - 1 + (0 if lab.sign > 0 else p)) % (2 * p)
        if ws is None or hw in ws:
            out.append(lab)
    return out


# -- socle, radical, top --------------------------------------------------------------


@dataclass
class Layer:
    module: Rep
    basis: list            # vectors of the ambient module spanning the layer
    mult: Counter          # simple label -> multiplicity


def socle(Z: Rep) -> Layer:
    ctx = Z.ctx
    ech = Echelon(ctx)
    mult = Counter()
    for lab in _candidates(Z):
        hs = hom_space(_simple_rep(Z.p, lab), Z)
        if hs.dim:
            mult[lab] = hs.dim
            for f in hs.basis:
                for col in f.columns():
                    if col:
                        ech.add(col)
    basis = ech.basis()
    mod = restrict(Z, basis) if basis else None
    return Layer(mod, basis, mult)


def _radical_basis(Z: Rep):
    ctx = Z.ctx
    rows = []
    mult = Counter()
    for lab in _candidates(Z):
        hs = hom_space(Z, _simple_rep(Z.p, lab))
        if hs.dim:
            mult[lab] = hs.dim
            for f in hs.basis:
                rows.extend(r for r in f.rows if r)
    return nullspace(ctx, rows, Z.dim), mult


def radical(Z: Rep) -> Layer:
    basis, mult = _radical_basis(Z)
    mod = restrict(Z, basis) if basis else None
    return Layer(mod, basis, mult)


def top(Z: Rep) -> Layer:
    basis, mult = _radical_basis(Z)
    mod, _proj, _comp = quotient(Z, basis)
    return Layer(mod, basis, mult)


def radical_series(Z: Rep) -> list[Counter]:
    """Top multiplicities of Z, rad Z, rad^2 Z, ..."""
    layers = []
    cur = Z
    while cur is not None and cur.dim:
        basis, mult = _radical_basis(cur)
        layers.append(mult)
        if len(basis) == cur.dim:
            raise HomError("radical did not shrink")
        cur = restrict(cur, basis) if basis else None
    return layers


def semisimple_length(Z: Rep) -> int:
    return len(radical_series(Z))


def composition_factors(Z: Rep) -> Counter:
    out = Counter()
    for layer in radical_series(Z):
        out.update(layer)
    return out


# -- projective covers and Ext ---------------------------------------------------------


@dataclass
class Cover:
    cover: Rep
    labels: list
    surjection: Mat
    kernel_basis: list

    def kernel(self) -> Rep:
        return restrict(self.cover, self.kernel_basis)


def projective_cover(Z: Rep) -> Cover:
    """Minimal projective P with a surjection onto Z.

    For each simple S in the top, maps P(S) -> Z are chosen greedily so that
    the images of the top generators stay independent modulo rad Z.
    """
    ctx = Z.ctx
    p = Z.p
    rad_basis, top_mult = _radical_basis(Z)
    ech = Echelon(ctx)
    for v in rad_basis:
        ech.add(v)
    pieces, maps, labels = [], [], []
    for lab in sorted(top_mult, key=lambda l: (-l.sign, l.s)):
        need = top_mult[lab]
        Plab = projective_of(p, lab)
        Prep = projective_rep(p, lab.s, lab.sign)
        hs = hom_space(Prep, Z)
        got = 0
        for f in hs.basis:
            img = {}
            for i, c in f.columns()[_gen_index(p, lab.s)].items():
                img[i] = c
            if img and ech.add(img):
                pieces.append(Prep)
                maps.append(f)
                labels.append(Plab)
                got += 1
                if got == need:
                    break
        if got != need:
            raise HomError(f"projective cover: found {got} of {need} maps from {Plab}")
    if not pieces:
        raise HomError("projective cover of the zero module")
    cover = direct_sum(pieces)
    surj = hstack(ctx, maps)
    if surj.rank() != Z.dim:
        raise HomError("projective cover map is not surjective")
    kernel_basis = nullspace(ctx, surj.rows, cover.dim)
    return Cover(cover, labels, surj, kernel_basis)


def ext1(A: Rep, B: Rep) -> int:
    """dim Ext^1(A, B) from 0 -> Omega -> P -> A -> 0."""
    cov = projective_cover(A)
    omega_dim = 0
    if cov.kernel_basis:
        omega = cov.kernel()
        omega_dim = hom_dim(omega, B)
    return omega_dim - hom_dim(cov.cover, B) + hom_dim(A, B)


# -- isomorphism ------------------------------------------------------------------------


@dataclass
class IsoCertificate:
    verdict: str                   # "iso", "not-iso" or "undetermined"
    witness: object = None         # Mat for iso, (test label, side, dimA, dimB) for not-iso

    def __bool__(self):
        return self.verdict == "iso"


def _lambda_tests(A: Rep, B: Rep):
    """Points lambda whose E(1; lambda) test modules can tell A and B apart."""
    known = [Z.meta.get("labels") or ([Z.label] if isinstance(Z.label, Label) else []) for Z in (A, B)]
    if not any(known) and A.tag == "U":
        known = [decompose(A).labels(), decompose(B).labels()]
    lams = []
    for labs in known:
        for lab in labs:
            if lab.family == "E" and lab.lam not in lams:
                lams.append(lab.lam)
    return lams


def fingerprint_tests(p: int, lams=()) -> list[Label]:
    tests = list(simple_labels(p))
    tests += [Label("P", sg, s) for sg in (1, -1) for s in range(1, p)]
    for lam in lams:
        tests += [Label("E", sg, t, 1, lam) for sg in (1, -1) for t in range(1, p)]
    return tests


def _test_rep(p, lab):
    if lab.family == "X":
        return simple(p, lab.s, lab.sign)
    if lab.family == "P":
        return projective_rep(p, lab.s, lab.sign)
    return build(p, lab)


def is_iso(A: Rep, B: Rep, seed: int = 0, search_bound: int = 64) -> IsoCertificate:
    if A.tag != B.tag or A.p != B.p:
        return IsoCertificate("not-iso", ("algebra", None, None, None))
    if A.dim != B.dim:
        return IsoCertificate("not-iso", ("dim", None, A.dim, B.dim))
    if A.weights is not None and B.weights is not None and sorted(A.weights) != sorted(B.weights):
        return IsoCertificate("not-iso", ("weights", None, None, None))
    p = A.p
    for lab in fingerprint_tests(p, _lambda_tests(A, B)):
        C = _test_rep(p, lab)
        da, db = hom_dim(A, C), hom_dim(B, C)
        if da != db:
            return IsoCertificate("not-iso", (str(lab), "to", da, db))
        da, db = hom_dim(C, A), hom_dim(C, B)
        if da != db:
            return IsoCertificate("not-iso", (str(lab), "from", da, db))
    hs = hom_space(A, B)
    T = find_invertible(hs, seed=seed, bound=search_bound)
    if T is None:
        return IsoCertificate("undetermined")
    return IsoCertificate("iso", T)


def find_invertible(hs: HomSpace, seed: int = 0, bound: int = 64):
    n = hs.target.dim
    if hs.source.dim != n:
        return None
    k = hs.dim
    if k == 0:
        return None
    tried = 0
    small = (1, -1, 2, -2)
    # single basis elements, then all-ones, then short small-coefficient vectors
    candidates = [[1 if j == i else 0 for j in range(k)] for i in range(k)]
    candidates.append([1] * k)
    if k <= 3:
        candidates += [list(v) for v in product((-2, -1, 0, 1, 2), repeat=k) if any(v)]
    for vec in candidates:
        T = hs.combine(vec)
        if T.rank() == n:
            return T
        tried += 1
        if tried >= bound:
            break
    rng = random.Random(seed)
    for _ in range(bound):
        vec = [rng.randint(-50, 50) for _ in range(k)]
        T = hs.combine(vec)
        if T.rank() == n:
            return T
    return None


# -- splitting projective summands ---------------------------------------------------------


def block_projectives(p: int, block: int) -> list[Label]:
    if block in (0, p):
        return [X(p, 1 if block == p else -1)]
    return [Label("P", 1, block), Label("P", -1, p - block)]


def _apply_cols(cols, v):
    out = {}
    for i, c in v.items():
        vec_axpy_inplace(out, c, cols[i])
    return out


def split_projective_summands(Z: Rep, types=None):
    """Split off every projective summand; return (labels, complement or None)."""
    ctx = Z.ctx
    p = Z.p
    if types is None:
        types = [Label("P", sg, s) for sg in (1, -1) for s in range(1, p)] + [X(p, 1), X(p, -1)]
    found = []
    cur = Z
    for lab in types:
        if cur is None or cur.dim == 0:
            break
        Prep = projective_rep(p, lab.s, lab.sign)
        if cur.weights is not None and not set(Prep.weights) <= set(cur.weights):
            continue
        homs = hom_space(Prep, cur).basis
        if not homs:
            continue
        soc = _soc_index(p, lab.s)
        ech = Echelon(ctx)
        chosen = []
        for f in homs:
            img = f.columns()[soc]
            if img and ech.add(img):
                chosen.append(f)
        r = len(chosen)
        if r == 0:
            continue
        back = hom_space(cur, Prep).basis
        gen = _gen_index(p, lab.s)
        # scalar part of g o f on the top generator
        scal = []
        for g in back:
            gcols = g.columns()
            row = {}
            for i, f in enumerate(chosen):
                v = _apply_cols(gcols, f.columns()[gen])
                c = v.get(gen)
                if c:
                    row[i] = c
            scal.append(row)
        ech2 = Echelon(ctx)
        picked = [j for j, row in enumerate(scal) if row and ech2.add(row)]
        if len(picked) < r:
            raise HomError(f"retraction search failed for {lab}")
        picked = picked[:r]
        rho_rows = []
        for j in picked:
            rho_rows.extend(back[j].rows)
        kern = nullspace(ctx, [r_ for r_ in rho_rows if r_], cur.dim)
        if len(kern) != cur.dim - r * Prep.dim:
            raise HomError("retraction is not surjective")
        found.extend([canonical(lab, p)] * r)
        cur = restrict(cur, kern) if kern else None
    return found, cur


# -- length-two analysis ------------------------------------------------------------------


def _mat_from_map(ctx, images: list[dict], tgt_idx: list[int]) -> Mat:
    pos = {i: k for k, i in enumerate(tgt_idx)}
    m = Mat.zeros(ctx, len(tgt_idx), len(images))
    for j, v in enumerate(images):
        for i, c in v.items():
            if i not in pos:
                raise HomError("gluing map leaves the expected weight space")
            m.rows[pos[i]][j] = c
    return m


def _power_images(cols, vecs, k):
    out = []
    for v in vecs:
        for _ in range(k):
            v = _apply_cols(cols, v)
        out.append(v)
    return out


def gluing_pencils(R: Rep, s: int):
    """Gluing pencils of a block-s module with rad^2 = 0.

    Returns ((phiF, phiE), (psiF, psiE)): phi maps the highest weight space
    U of the X_s^+ factors to the highest weight space V of the X_{p-s}^-
    factors, psi goes back.
    """
    ctx = R.ctx
    p = R.p
    m = 2 * p
    idx = {}
    for i, w in enumerate(R.weights):
        idx.setdefault(w, []).append(i)
    U = idx.get((s - 1) % m, [])
    V = idx.get((-s - 1) % m, [])
    Y = idx.get((s + 1) % m, [])
    Yp = idx.get((1 - s) % m, [])
    Ecols, Fcols = R.E.columns(), R.F.columns()
    Uv = [{i: ctx.one} for i in U]
    Vv = [{i: ctx.one} for i in V]
    phiF = _mat_from_map(ctx, _power_images(Fcols, Uv, s), V)
    psiF = _mat_from_map(ctx, _power_images(Fcols, Vv, p - s), U)
    # pull E-images back along F^(p-s-1): V -> Y and F^(s-1): U -> Y'
    from .linalg import inverse

    GV = _mat_from_map(ctx, _power_images(Fcols, Vv, p - s - 1), Y)
    GU = _mat_from_map(ctx, _power_images(Fcols, Uv, s - 1), Yp)
    EU = _mat_from_map(ctx, [_apply_cols(Ecols, v) for v in Uv], Y)
    EV = _mat_from_map(ctx, [_apply_cols(Ecols, v) for v in Vv], Yp)
    phiE = inverse(GV) @ EU if V else Mat.zeros(ctx, 0, len(U))
    psiE = inverse(GU) @ EV if U else Mat.zeros(ctx, 0, len(V))
    return (phiF, phiE), (psiF, psiE)


def _image_rank(ctx, A: Mat, B: Mat) -> int:
    from .linalg import rank_of

    return rank_of([c for c in A.columns() + B.columns() if c], ctx)


def _length_two_labels(R: Rep, s: int) -> FormalDecomp:
    ctx = R.ctx
    p = R.p
    (phiF, phiE), (psiF, psiE) = gluing_pencils(R, s)
    out = FormalDecomp(p, Counter())
    kp = kronecker(ctx, phiF, phiE)
    km = kronecker(ctx, psiF, psiE)
    n_simple_plus = kp.col.get(0, 0) - _image_rank(ctx, psiF, psiE)
    n_simple_minus = km.col.get(0, 0) - _image_rank(ctx, phiF, phiE)
    if n_simple_plus < 0 or n_simple_minus < 0:
        raise HomError("negative simple count: residual is not of Loewy length two")
    out.add(X(s, 1), n_simple_plus)
    out.add(X(p - s, -1), n_simple_minus)
    for sign, k, t in ((1, kp, s), (-1, km, p - s)):
        for eps, cnt in k.col.items():
            if eps >= 1:
                out.add(Label("W", sign, t, eps + 1), cnt)
        for eta, cnt in k.row.items():
            if eta >= 1:
                out.add(Label("M", sign, t, eta + 1), cnt)
        for beta, sizes in k.finite.items():
            lam = ProjPoint(ctx.one, beta)
            for n in sizes:
                out.add(Label("E", sign, t, n, lam))
        for n in k.infinite:
            out.add(Label("E", sign, t, n, ProjPoint(ctx.zero, ctx.one)))
    return out


# -- decomposition ---------------------------------------------------------------------------


def decompose(Z: Rep, certify: bool = False, seed: int = 0) -> FormalDecomp:
    """Decompose a U-module into labelled indecomposables."""
    if Z.tag != "U":
        raise HomError("decompose expects a U-module")
    p = Z.p
    out = FormalDecomp(p, Counter(), certificate="fingerprint")
    for block, comp in block_decompose(Z):
        if block in (0, p):
            if comp.dim % p:
                raise HomError(f"block {block}: dimension {comp.dim} is not a multiple of p")
            out.add(X(p, 1 if block == p else -1), comp.dim // p)
            continue
        try:
            projs, rest = split_projective_summands(comp, block_projectives(p, block))
        except HomError as exc:
            raise HomError(f"projective splitting in block {block}: {exc}") from exc
        for lab in projs:
            out.add(lab)
        if rest is not None and rest.dim:
            try:
                out.extend(_length_two_labels(rest, block))
            except Exception as exc:
                raise HomError(f"length-two analysis in block {block}: {exc}") from exc
    if out.dim() != Z.dim:
        raise HomError(f"decomposition accounts for {out.dim()} of {Z.dim} dimensions")
    if certify:
        rebuilt = direct_sum([build(p, lab) for lab in out.labels()])
        rebuilt.meta["labels"] = out.labels()
        cert = is_iso(Z, rebuilt, seed=seed)
        if cert.verdict != "iso":
            raise HomError(f"isomorphism certification failed: {cert.verdict} {cert.witness}")
        out.certificate = "isomorphism"
    return out


def identify(Z: Rep) -> Label:
    """Label of an indecomposable module."""
    fd = decompose(Z)
    if len(fd) != 1:
        raise HomError(f"module is not indecomposable: {fd}")
    return fd.labels()[0]
