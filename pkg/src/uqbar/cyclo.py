"""Exact arithmetic in the cyclotomic field Q(zeta_N), N = 4p.

Elements are stored as coordinate tuples in the power basis
1, z, ..., z^(d-1) with d = phi(N), reduced modulo the N-th cyclotomic
polynomial.  Coefficients are gmpy2 rationals.  ``q = z^2`` is a primitive
2p-th root of unity and ``z`` itself plays the role of q^(1/2).
"""

from __future__ import annotations

import json
import re
from functools import lru_cache
from fractions import Fraction

import gmpy2
from gmpy2 import mpq

__all__ = [
    "FieldCtx",
    "FieldElem",
    "FieldError",
    "field",
    "cyclotomic_poly",
    "qint",
    "qfact",
    "qbinom",
]


class FieldError(ArithmeticError):
    """Raised for division by zero and malformed field input."""


# -- integer polynomials (lists of ints, lowest degree first) --------------


def _poly_divmod(num, den):
    num = list(num)
    out = [0] * max(len(num) - len(den) + 1, 1)
    lead = den[-1]
    for k in range(len(num) - len(den), -1, -1):
        c = num[k + len(den) - 1]
        if c == 0:
            continue
        if c % lead:
            raise FieldError("non-exact integer polynomial division")
        c //= lead
        out[k] = c
        for i, di in enumerate(den):
            num[k + i] -= c * di
    rem = num[: len(den) - 1]
    while rem and rem[-1] == 0:
        rem.pop()
    return out, rem


@lru_cache(maxsize=None)
def cyclotomic_poly(N: int) -> tuple[int, ...]:
    """Return the coefficients of Phi_N, lowest degree first.

    Computed by dividing x^N - 1 by Phi_d for every proper divisor d of N.
    """
    if N < 1:
        raise ValueError("N must be positive")
    poly = [-1] + [0] * (N - 1) + [1]
    for d in range(1, N):
        if N % d == 0:
            poly, rem = _poly_divmod(poly, list(cyclotomic_poly(d)))
            if rem:
                raise FieldError(f"Phi_{d} does not divide x^{N}-1 remainder")
    while len(poly) > 1 and poly[-1] == 0:
        poly.pop()
    return tuple(poly)


def _to_mpq(x):
    if isinstance(x, Fraction):
        return mpq(x.numerator, x.denominator)
    return mpq(x)


class FieldCtx:
    """Immutable description of Q(zeta_{4p}).

    Use :func:`field` to obtain the shared instance for a given ``p``.
    """

    def __init__(self, p: int):
        if p < 2:
            raise ValueError("p must be at least 2")
        self.p = p
        self.N = 4 * p
        self.phi = cyclotomic_poly(self.N)
        self.d = len(self.phi) - 1
        if self.phi[-1] != 1:
            raise FieldError("cyclotomic polynomial is not monic")
        d = self.d
        # red[k] = coordinates of x^k for k in [d, 2d-2]
        red = {}
        cur = [0] * d
        cur_full = [-c for c in self.phi[:-1]]  # x^d
        red[d] = cur_full
        cur = cur_full
        for k in range(d + 1, 2 * d - 1):
            top = cur[-1]
            nxt = [0] + cur[:-1]
            if top:
                nxt = [a + top * b for a, b in zip(nxt, red[d])]
            red[k] = nxt
            cur = nxt
        self._red = [(k, tuple(mpq(c) for c in red[k])) for k in sorted(red)]
        self._zero_c = tuple(mpq(0) for _ in range(d))
        self.zero = FieldElem(self, self._zero_c)
        self.one = self.rational(1)
        self._zpow = [self._zeta_power_raw(k) for k in range(self.N)]
        self.z = self._zpow[1]
        self.q = self._zpow[2]
        self.qinv = self._zpow[self.N - 2]
        self.i = self._zpow[self.p]
        self._inv_cache: dict = {}

    def __repr__(self):
        return f"FieldCtx(p={self.p})"

    def __reduce__(self):
        return (field, (self.p,))

    def _zeta_power_raw(self, k):
        k %= self.N
        d = self.d
        if k < d:
            c = [mpq(0)] * d
            c[k] = mpq(1)
            return FieldElem(self, tuple(c))
        # repeated multiplication by z
        e = FieldElem(self, tuple(mpq(1) if i == d - 1 else mpq(0) for i in range(d)))
        zz = FieldElem(self, tuple(mpq(1) if i == 1 else mpq(0) for i in range(d)))
        for _ in range(k - (d - 1)):
            e = e * zz
        return e

    def zeta_power(self, k: int) -> "FieldElem":
        return self._zpow[k % self.N]

    def qpow(self, k: int) -> "FieldElem":
        """q^k where q = z^2."""
        return self._zpow[(2 * k) % self.N]

    def rational(self, r) -> "FieldElem":
        c = [mpq(0)] * self.d
        c[0] = _to_mpq(r)
        return FieldElem(self, tuple(c))

    embed_rational = rational

    def coerce(self, x) -> "FieldElem":
        if isinstance(x, FieldElem):
            if x.ctx is not self:
                raise FieldError("elements from different fields")
            return x
        if isinstance(x, (int, Fraction)) or type(x) is type(mpq(0)):
            return self.rational(x)
        raise TypeError(f"cannot coerce {type(x).__name__} into {self!r}")

    def __call__(self, x) -> "FieldElem":
        return self.coerce(x)

    # -- serialization -----------------------------------------------------

    def parse(self, text: str) -> "FieldElem":
        """Parse the string form produced by ``str(FieldElem)``."""
        s = text.replace(" ", "").replace("+-", "-").replace("-+", "-").replace("--", "+")
        if not s:
            raise FieldError("empty field element")
        if s[0] not in "+-":
            s = "+" + s
        pos = 0
        acc = [mpq(0)] * self.d
        total = self.zero
        pat = re.compile(r"([+-])(\d+(?:/\d+)?)?(\*?z(?:\^(\d+))?)?")
        while pos < len(s):
            m = pat.match(s, pos)
            if not m or m.end() == pos or (m.group(2) is None and m.group(3) is None):
                raise FieldError(f"cannot parse field element {text!r}")
            sign = -1 if m.group(1) == "-" else 1
            coeff = mpq(m.group(2)) if m.group(2) else mpq(1)
            if m.group(3):
                if m.group(3).startswith("*") and m.group(2) is None:
                    raise FieldError(f"cannot parse field element {text!r}")
                k = int(m.group(4)) if m.group(4) else 1
            else:
                k = 0
            if k < self.d:
                acc[k] += sign * coeff
            else:
                total = total + self.zeta_power(k) * (sign * coeff)
            pos = m.end()
        return FieldElem(self, tuple(acc)) + total

    def from_json(self, data) -> "FieldElem":
        if isinstance(data, str):
            data = json.loads(data)
        if len(data) != self.d:
            raise FieldError(f"expected {self.d} coefficients, got {len(data)}")
        return FieldElem(self, tuple(mpq(x) for x in data))


@lru_cache(maxsize=None)
def field(p: int) -> FieldCtx:
    """Shared field context for Q(zeta_{4p})."""
    return FieldCtx(p)


class FieldElem:
    __slots__ = ("ctx", "c")

    def __init__(self, ctx: FieldCtx, coeffs: tuple):
        self.ctx = ctx
        self.c = coeffs

    # -- arithmetic ------------------------------------------------------

    def _other(self, other):
        if isinstance(other, FieldElem):
            if other.ctx is not self.ctx:
                raise FieldError("elements from different fields")
            return other
        return self.ctx.coerce(other)

    def __add__(self, other):
        o = self._other(other)
        return FieldElem(self.ctx, tuple(a + b for a, b in zip(self.c, o.c)))

    __radd__ = __add__

    def __sub__(self, other):
        o = self._other(other)
        return FieldElem(self.ctx, tuple(a - b for a, b in zip(self.c, o.c)))

    def __rsub__(self, other):
        return self._other(other) - self

    def __neg__(self):
        return FieldElem(self.ctx, tuple(-a for a in self.c))

    def __pos__(self):
        return self

    def __mul__(self, other):
        if not isinstance(other, FieldElem):
            if isinstance(other, (int, Fraction)) or type(other) is type(mpq(0)):
                r = _to_mpq(other)
                return FieldElem(self.ctx, tuple(a * r for a in self.c))
            return NotImplemented
        if other.ctx is not self.ctx:
            raise FieldError("elements from different fields")
        a = self.c
        b = other.c
        d = len(a)
        bnz = [(j, bj) for j, bj in enumerate(b) if bj]
        if not bnz:
            return self.ctx.zero
        if len(bnz) == 1 and bnz[0][0] == 0:
            r = bnz[0][1]
            return FieldElem(self.ctx, tuple(x * r for x in a))
        prod = [0] * (2 * d - 1)
        for i, ai in enumerate(a):
            if ai:
                for j, bj in bnz:
                    prod[i + j] += ai * bj
        res = prod[:d]
        for k, row in self.ctx._red:
            pk = prod[k]
            if pk:
                for i in range(d):
                    if row[i]:
                        res[i] += pk * row[i]
        return FieldElem(self.ctx, tuple(mpq(x) for x in res))

    __rmul__ = __mul__

    def is_rational(self) -> bool:
        return not any(self.c[1:])

    def inverse(self) -> "FieldElem":
        ctx = self.ctx
        cache = ctx._inv_cache
        hit = cache.get(self.c)
        if hit is not None:
            return hit
        if not any(self.c):
            raise FieldError("division by zero in cyclotomic field")
        if self.is_rational():
            inv = FieldElem(ctx, (1 / self.c[0],) + self.c[1:])
        else:
            inv = self._solve_inverse()
        if len(cache) > 200000:
            cache.clear()
        cache[self.c] = inv
        return inv

    def _solve_inverse(self):
        ctx = self.ctx
        d = ctx.d
        # columns of the multiplication-by-self matrix in the power basis
        cols = []
        basis = [ctx.zeta_power(k) for k in range(d)]
        for k in range(d):
            cols.append((self * basis[k]).c)
        # solve sum_k x_k cols[k] = e_0  (augmented d x (d+1))
        rows = [[cols[k][i] for k in range(d)] + [mpq(1 if i == 0 else 0)] for i in range(d)]
        for col in range(d):
            piv = next(r for r in range(col, d) if rows[r][col])
            rows[col], rows[piv] = rows[piv], rows[col]
            pv = rows[col][col]
            rows[col] = [x / pv for x in rows[col]]
            for r in range(d):
                if r != col and rows[r][col]:
                    f = rows[r][col]
                    rows[r] = [x - f * y for x, y in zip(rows[r], rows[col])]
        return FieldElem(ctx, tuple(rows[i][d] for i in range(d)))

    def __truediv__(self, other):
        o = self._other(other)
        return self * o.inverse()

    def __rtruediv__(self, other):
        return self._other(other) * self.inverse()

    def __pow__(self, n: int):
        if n < 0:
            return self.inverse() ** (-n)
        result = self.ctx.one
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    # -- comparison --------------------------------------------------------

    def __eq__(self, other):
        if isinstance(other, FieldElem):
            return self.ctx is other.ctx and self.c == other.c
        if isinstance(other, (int, Fraction)) or type(other) is type(mpq(0)):
            return self.is_rational() and self.c[0] == other
        return NotImplemented

    def __ne__(self, other):
        r = self.__eq__(other)
        return r if r is NotImplemented else not r

    def __hash__(self):
        if self.is_rational():
            return hash(self.c[0])
        return hash(self.c)

    def __bool__(self):
        return any(self.c)

    def sort_key(self):
        return tuple(self.c)

    # -- presentation ------------------------------------------------------

    def __str__(self):
        terms = []
        for k, c in enumerate(self.c):
            if not c:
                continue
            cs = _fmt_q(c)
            if k == 0:
                terms.append(cs)
            elif k == 1:
                terms.append(f"{cs}*z")
            else:
                terms.append(f"{cs}*z^{k}")
        return " + ".join(terms) if terms else "0"

    def __repr__(self):
        return f"FieldElem({self})"

    def to_json(self) -> list[str]:
        return [_fmt_q(c) for c in self.c]


def _fmt_q(c) -> str:
    if c.denominator == 1:
        return str(c.numerator)
    return f"{c.numerator}/{c.denominator}"


# -- quantum integers ------------------------------------------------------


def qint(ctx: FieldCtx, n: int) -> FieldElem:
    """[n] = (q^n - q^-n) / (q - q^-1)."""
    return (ctx.qpow(n) - ctx.qpow(-n)) / (ctx.q - ctx.qinv)


def qfact(ctx: FieldCtx, n: int) -> FieldElem:
    if n < 0:
        raise ValueError("negative factorial")
    out = ctx.one
    for k in range(1, n + 1):
        out = out * qint(ctx, k)
    return out


def qbinom(ctx: FieldCtx, n: int, k: int) -> FieldElem:
    """Quantum binomial [n]! / ([k]! [n-k]!), defined for 0 <= k <= n < p."""
    if not 0 <= k <= n:
        raise ValueError(f"qbinom needs 0 <= k <= n, got n={n}, k={k}")
    if n >= ctx.p:
        raise FieldError(f"qbinom({n},{k}) has a vanishing [k]! denominator at p={ctx.p}")
    return qfact(ctx, n) / (qfact(ctx, k) * qfact(ctx, n - k))
