"""Sparse exact linear algebra over a cyclotomic field.

Vectors are ``dict[int, FieldElem]`` holding only nonzero entries.  Matrices
are row lists of such dicts.  Everything here is exact; there is no pivot
tolerance to tune.
"""

from __future__ import annotations

from typing import Iterable

from .cyclo import FieldCtx, FieldElem

Vec = dict  # int -> FieldElem


def vec_add(u: Vec, v: Vec, scale=None) -> Vec:
    """u + scale*v as a new dict."""
    out = dict(u)
    for k, b in v.items():
        if scale is not None:
            b = b * scale
        a = out.get(k)
        if a is None:
            out[k] = b
        else:
            s = a + b
            if s:
                out[k] = s
            else:
                del out[k]
    return out


def vec_axpy_inplace(u: Vec, scale, v: Vec) -> None:
    """u += scale*v, in place."""
    for k, b in v.items():
        b = b * scale
        a = u.get(k)
        if a is None:
            u[k] = b
        else:
            s = a + b
            if s:
                u[k] = s
            else:
                del u[k]


def vec_scale(v: Vec, c) -> Vec:
    if not c:
        return {}
    return {k: a * c for k, a in v.items()}


class Mat:
    """Sparse matrix with rows stored as dicts of nonzero entries."""

    __slots__ = ("ctx", "nrows", "ncols", "rows")

    def __init__(self, ctx: FieldCtx, nrows: int, ncols: int, rows: list | None = None):
        self.ctx = ctx
        self.nrows = nrows
        self.ncols = ncols
        self.rows = rows if rows is not None else [{} for _ in range(nrows)]

    # -- constructors ------------------------------------------------------

    @classmethod
    def zeros(cls, ctx, nrows, ncols):
        return cls(ctx, nrows, ncols)

    @classmethod
    def identity(cls, ctx, n):
        return cls(ctx, n, n, [{i: ctx.one} for i in range(n)])

    @classmethod
    def diag(cls, ctx, entries):
        entries = list(entries)
        return cls(ctx, len(entries), len(entries), [{i: e} if e else {} for i, e in enumerate(entries)])

    @classmethod
    def from_entries(cls, ctx, nrows, ncols, entries):
        m = cls(ctx, nrows, ncols)
        for (i, j), v in entries.items():
            v = ctx.coerce(v)
            if v:
                m.rows[i][j] = v
        return m

    @classmethod
    def from_dense(cls, ctx, dense, ncols=None):
        dense = [list(r) for r in dense]
        nrows = len(dense)
        if ncols is None:
            ncols = len(dense[0]) if dense else 0
        rows = []
        for r in dense:
            row = {}
            for j, v in enumerate(r):
                v = ctx.coerce(v)
                if v:
                    row[j] = v
            rows.append(row)
        return cls(ctx, nrows, ncols, rows)

    @classmethod
    def from_columns(cls, ctx, nrows, cols: list[Vec]):
        m = cls(ctx, nrows, len(cols))
        for j, col in enumerate(cols):
            for i, v in col.items():
                m.rows[i][j] = v
        return m

    # -- basic access ------------------------------------------------------

    @property
    def shape(self):
        return (self.nrows, self.ncols)

    def get(self, i, j):
        return self.rows[i].get(j, self.ctx.zero)

    def to_dense(self):
        z = self.ctx.zero
        return [[row.get(j, z) for j in range(self.ncols)] for row in self.rows]

    def columns(self) -> list[Vec]:
        cols = [{} for _ in range(self.ncols)]
        for i, row in enumerate(self.rows):
            for j, v in row.items():
                cols[j][i] = v
        return cols

    def nnz(self):
        return sum(len(r) for r in self.rows)

    def is_zero(self):
        return not any(self.rows)

    def is_diagonal(self):
        return all(all(j == i for j in row) for i, row in enumerate(self.rows))

    def diagonal(self):
        z = self.ctx.zero
        return [row.get(i, z) for i, row in enumerate(self.rows)]

    def __eq__(self, other):
        if not isinstance(other, Mat):
            return NotImplemented
        return self.shape == other.shape and self.rows == other.rows

    def __hash__(self):
        raise TypeError("Mat is not hashable")

    def __repr__(self):
        return f"Mat({self.nrows}x{self.ncols}, nnz={self.nnz()})"

    # -- algebra -----------------------------------------------------------

    def __add__(self, other):
        _check_shape(self, other)
        return Mat(self.ctx, self.nrows, self.ncols, [vec_add(a, b) for a, b in zip(self.rows, other.rows)])

    def __sub__(self, other):
        _check_shape(self, other)
        m1 = -self.ctx.one
        return Mat(self.ctx, self.nrows, self.ncols, [vec_add(a, b, m1) for a, b in zip(self.rows, other.rows)])

    def __neg__(self):
        m1 = -self.ctx.one
        return Mat(self.ctx, self.nrows, self.ncols, [vec_scale(r, m1) for r in self.rows])

    def scale(self, c):
        c = self.ctx.coerce(c)
        return Mat(self.ctx, self.nrows, self.ncols, [vec_scale(r, c) for r in self.rows])

    def __matmul__(self, other):
        if self.ncols != other.nrows:
            raise ValueError(f"shape mismatch {self.shape} @ {other.shape}")
        orows = other.rows
        out = []
        for row in self.rows:
            acc = {}
            for k, a in row.items():
                ork = orows[k]
                if ork:
                    vec_axpy_inplace(acc, a, ork)
            out.append(acc)
        return Mat(self.ctx, self.nrows, other.ncols, out)

    def apply(self, v: Vec) -> Vec:
        """Matrix times column vector."""
        out = {}
        for i, row in enumerate(self.rows):
            if not row:
                continue
            s = None
            for j, a in row.items():
                b = v.get(j)
                if b is not None:
                    t = a * b
                    s = t if s is None else s + t
            if s:
                out[i] = s
        return out

    def apply_cols(self, v: Vec, cols=None) -> Vec:
        """Same as ``apply`` but iterates over v via a column table."""
        if cols is None:
            cols = self.columns()
        out = {}
        for j, b in v.items():
            vec_axpy_inplace(out, b, cols[j])
        return out

    @property
    def T(self):
        rows = [{} for _ in range(self.ncols)]
        for i, row in enumerate(self.rows):
            for j, v in row.items():
                rows[j][i] = v
        return Mat(self.ctx, self.ncols, self.nrows, rows)

    def __pow__(self, n):
        if self.nrows != self.ncols:
            raise ValueError("power of non-square matrix")
        result = Mat.identity(self.ctx, self.nrows)
        base = self
        while n:
            if n & 1:
                result = result @ base
            n >>= 1
            if n:
                base = base @ base
        return result

    def kron(self, other):
        r2, c2 = other.nrows, other.ncols
        rows = []
        for row in self.rows:
            for orow in other.rows:
                new = {}
                if row and orow:
                    for j, a in row.items():
                        base = j * c2
                        for l, b in orow.items():
                            new[base + l] = a * b
                rows.append(new)
        return Mat(self.ctx, self.nrows * r2, self.ncols * c2, rows)

    def submatrix(self, row_idx, col_idx):
        cmap = {c: k for k, c in enumerate(col_idx)}
        rows = []
        for i in row_idx:
            rows.append({cmap[j]: v for j, v in self.rows[i].items() if j in cmap})
        return Mat(self.ctx, len(row_idx), len(col_idx), rows)

    def permuted(self, perm):
        """Reindex basis: new index k corresponds to old index perm[k]."""
        inv = {old: new for new, old in enumerate(perm)}
        rows = [{inv[j]: v for j, v in self.rows[old].items()} for old in perm]
        return Mat(self.ctx, self.nrows, self.ncols, rows)

    def rank(self):
        return rank_of(self.rows)


def _check_shape(a, b):
    if a.shape != b.shape:
        raise ValueError(f"shape mismatch {a.shape} vs {b.shape}")


def block_diag(ctx, mats: Iterable[Mat]) -> Mat:
    mats = list(mats)
    nr = sum(m.nrows for m in mats)
    nc = sum(m.ncols for m in mats)
    rows = []
    off = 0
    for m in mats:
        for r in m.rows:
            rows.append({off + j: v for j, v in r.items()})
        off += m.ncols
    return Mat(ctx, nr, nc, rows)


def hstack(ctx, mats: list[Mat]) -> Mat:
    nr = mats[0].nrows
    rows = [{} for _ in range(nr)]
    off = 0
    for m in mats:
        if m.nrows != nr:
            raise ValueError("hstack row mismatch")
        for i, r in enumerate(m.rows):
            for j, v in r.items():
                rows[i][off + j] = v
        off += m.ncols
    return Mat(ctx, nr, off, rows)


def vstack(ctx, mats: list[Mat]) -> Mat:
    nc = mats[0].ncols
    rows = []
    for m in mats:
        if m.ncols != nc:
            raise ValueError("vstack column mismatch")
        rows.extend(dict(r) for r in m.rows)
    return Mat(ctx, len(rows), nc, rows)


class Echelon:
    """Incrementally maintained echelon basis of a subspace.

    Each stored row has its smallest key as pivot with pivot entry one, so
    reducing a vector is a single pass over the pivots in increasing order.
    With ``track=True`` every stored row also remembers how it was built from
    the vectors passed to :meth:`add`, which lets :meth:`express` write span
    members in terms of those original vectors.
    """

    def __init__(self, ctx: FieldCtx, track: bool = False):
        self.ctx = ctx
        self.track = track
        self.pivots: dict[int, Vec] = {}
        self.combo: dict[int, Vec] = {}
        self.n_added = 0
        self._sorted = None

    def __len__(self):
        return len(self.pivots)

    @property
    def rank(self):
        return len(self.pivots)

    def _pivot_order(self):
        if self._sorted is None:
            self._sorted = sorted(self.pivots)
        return self._sorted

    def reduce(self, v: Vec, with_combo: bool = False):
        v = dict(v)
        combo = {} if with_combo else None
        if not v:
            return (v, combo) if with_combo else v
        lo = min(v)
        for k in self._pivot_order():
            if k < lo:
                continue
            c = v.get(k)
            if c is None:
                continue
            neg = -c
            vec_axpy_inplace(v, neg, self.pivots[k])
            if with_combo:
                vec_axpy_inplace(combo, neg, self.combo[k])
        return (v, combo) if with_combo else v

    def add(self, v: Vec) -> bool:
        """Add v; return True if it enlarged the span."""
        idx = self.n_added
        self.n_added += 1
        if self.track:
            r, combo = self.reduce(v, with_combo=True)
            combo = vec_add(combo, {idx: self.ctx.one})
        else:
            r = self.reduce(v)
            combo = None
        if not r:
            return False
        piv = min(r)
        inv = r[piv].inverse()
        r = vec_scale(r, inv)
        self.pivots[piv] = r
        if self.track:
            self.combo[piv] = vec_scale(combo, inv)
        self._sorted = None
        return True

    def contains(self, v: Vec) -> bool:
        return not self.reduce(v)

    def express(self, v: Vec) -> Vec:
        """Coefficients c with v = sum c_i * (i-th added vector)."""
        if not self.track:
            raise ValueError("Echelon built without tracking")
        r, combo = self.reduce(v, with_combo=True)
        if r:
            raise ValueError("vector not in span")
        return {k: -c for k, c in combo.items()}

    def basis(self) -> list[Vec]:
        return [self.pivots[k] for k in self._pivot_order()]


def rank_of(vectors: Iterable[Vec], ctx=None) -> int:
    vectors = [v for v in vectors if v]
    if not vectors:
        return 0
    ctx = ctx or next(iter(vectors[0].values())).ctx
    ech = Echelon(ctx)
    for v in vectors:
        ech.add(v)
    return ech.rank


def independent_subset(ctx, vectors: list[Vec], base: list[Vec] = ()) -> list[int]:
    """Indices of a greedy maximal subset of vectors independent modulo span(base)."""
    ech = Echelon(ctx)
    for b in base:
        ech.add(b)
    return [i for i, v in enumerate(vectors) if ech.add(v)]


def nullspace(ctx: FieldCtx, rows: Iterable[Vec], ncols: int) -> list[Vec]:
    """Basis of {x : r.x = 0 for every r in rows}.

    Forward elimination chooses, for each new row, its sparsest-looking
    pivot (the smallest key); back substitution then makes the system fully
    reduced so free variables can be read off directly.
    """
    ech = Echelon(ctx)
    for r in rows:
        if r:
            ech.add(r)
    pivots = ech.pivots
    order = sorted(pivots, reverse=True)
    # back substitution: clear pivot columns from earlier rows
    reduced: dict[int, Vec] = {}
    for k in order:
        row = dict(pivots[k])
        for j in [j for j in row if j != k and j in reduced]:
            c = row.get(j)
            if c is not None:
                vec_axpy_inplace(row, -c, reduced[j])
        reduced[k] = row
    free = [j for j in range(ncols) if j not in reduced]
    fset = set(free)
    basis = {f: {f: ctx.one} for f in free}
    for k, row in reduced.items():
        for j, v in row.items():
            if j != k:
                if j not in fset:
                    raise AssertionError("elimination left a pivot column uncleared")
                basis[j][k] = -v
    return [basis[f] for f in free]


def solve_left_inverse_square(m: Mat) -> Mat:
    """Inverse of a square matrix (raises if singular)."""
    n = m.nrows
    if n != m.ncols:
        raise ValueError("inverse of non-square matrix")
    ctx = m.ctx
    ech = Echelon(ctx, track=True)
    for row in m.rows:
        if not ech.add(row):
            raise ValueError("matrix is singular")
    # row_i(I) expressed in rows of m gives the inverse: e_j = sum c_i m_i
    rows = []
    for j in range(n):
        rows.append(ech.express({j: ctx.one}))
    # rows[j] holds c with e_j^T = c^T M, so C M = I and C = M^{-1}
    return Mat(ctx, n, n, rows)


inverse = solve_left_inverse_square


def kernel(m: Mat) -> list[Vec]:
    return nullspace(m.ctx, m.rows, m.ncols)


def image_basis(m: Mat) -> list[Vec]:
    ech = Echelon(m.ctx)
    for col in m.columns():
        ech.add(col)
    return ech.basis()
