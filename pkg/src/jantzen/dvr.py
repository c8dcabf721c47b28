"""Exact linear algebra over the local ring of rational functions regular at s = 0.

``Poly`` is a univariate polynomial with ``Fraction`` coefficients,
``DVRScalar`` a reduced quotient ``p/q`` with ``q(0) != 0``.  The key routine is
:func:`smith_reduce`, which returns the s-adic valuations of the elementary
divisors together with the specialisation at ``s = 0`` of the column
transformation, so filtration pieces can be read off as subspaces.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

INF = None  # valuation of zero


class DVRError(ArithmeticError):
    pass


class Poly:
    __slots__ = ("c",)

    def __init__(self, coeffs: Iterable = ()):
        c = [x if isinstance(x, Fraction) else Fraction(x) for x in coeffs]
        while c and c[-1] == 0:
            c.pop()
        self.c = tuple(c)

    @classmethod
    def const(cls, a) -> "Poly":
        return cls([a])

    @classmethod
    def s(cls) -> "Poly":
        return cls([0, 1])

    @classmethod
    def coerce(cls, x) -> "Poly":
        return x if isinstance(x, Poly) else cls([x])

    @property
    def deg(self) -> int:
        return len(self.c) - 1

    def is_zero(self) -> bool:
        return not self.c

    def __bool__(self):
        return bool(self.c)

    def valuation(self):
        """Order of vanishing at 0 (``None`` for the zero polynomial)."""
        for k, x in enumerate(self.c):
            if x:
                return k
        return INF

    def __add__(self, o):
        o = Poly.coerce(o)
        a, b = self.c, o.c
        if len(a) < len(b):
            a, b = b, a
        return Poly([x + (b[k] if k < len(b) else 0) for k, x in enumerate(a)])

    __radd__ = __add__

    def __neg__(self):
        return Poly([-x for x in self.c])

    def __sub__(self, o):
        return self + (-Poly.coerce(o))

    def __rsub__(self, o):
        return Poly.coerce(o) - self

    def __mul__(self, o):
        if not isinstance(o, Poly):
            o = Fraction(o)
            return Poly([o * x for x in self.c])
        if not self.c or not o.c:
            return Poly()
        out = [Fraction(0)] * (len(self.c) + len(o.c) - 1)
        for i, x in enumerate(self.c):
            if x:
                for j, y in enumerate(o.c):
                    out[i + j] += x * y
        return Poly(out)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        out = Poly([1])
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def divmod(self, o: "Poly"):
        if o.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        r = list(self.c)
        q = [Fraction(0)] * max(len(r) - len(o.c) + 1, 0)
        lead = o.c[-1]
        for k in range(len(q) - 1, -1, -1):
            f = r[k + len(o.c) - 1] / lead
            q[k] = f
            if f:
                for j, y in enumerate(o.c):
                    r[k + j] -= f * y
        return Poly(q), Poly(r)

    def exact_div(self, o: "Poly") -> "Poly":
        q, r = self.divmod(o)
        if r:
            raise DVRError("inexact polynomial division")
        return q

    def monic(self) -> "Poly":
        return self * (1 / self.c[-1]) if self.c else self

    def __call__(self, x):
        acc = Fraction(0)
        for a in reversed(self.c):
            acc = acc * x + a
        return acc

    def __eq__(self, o):
        if not isinstance(o, Poly):
            try:
                o = Poly.coerce(o)
            except (TypeError, ValueError):
                return NotImplemented
        return self.c == o.c

    def __hash__(self):
        return hash(self.c)

    def __repr__(self):
        return f"Poly({[str(x) for x in self.c]})"

    def __str__(self):
        if not self.c:
            return "0"
        parts = []
        for k, a in enumerate(self.c):
            if a == 0:
                continue
            mono = "" if k == 0 else ("s" if k == 1 else f"s^{k}")
            if mono and a == 1:
                parts.append(mono)
            elif mono and a == -1:
                parts.append("-" + mono)
            else:
                parts.append(f"{a}{'*' + mono if mono else ''}")
        return " + ".join(parts).replace("+ -", "- ")


def poly_gcd(a: Poly, b: Poly) -> Poly:
    while b:
        a, b = b, a.divmod(b)[1]
    return a.monic() if a else Poly([1])


class DVRScalar:
    """Element ``num/den`` of the localisation of Q[s] at (s)."""

    __slots__ = ("num", "den")

    def __init__(self, num, den=1):
        num, den = Poly.coerce(num), Poly.coerce(den)
        if den.is_zero() or den.c[0] == 0:
            raise DVRError("denominator vanishes at s = 0; not an element of the local ring")
        if num.is_zero():
            self.num, self.den = Poly(), Poly([1])
            return
        g = poly_gcd(num, den)
        if g.deg > 0:
            num, den = num.exact_div(g), den.exact_div(g)
        k = den.c[0]
        self.num, self.den = num * (1 / k), den * (1 / k)

    @classmethod
    def coerce(cls, x) -> "DVRScalar":
        return x if isinstance(x, DVRScalar) else cls(x)

    def valuation(self):
        return self.num.valuation()

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def is_unit(self) -> bool:
        return bool(self.num.c) and self.num.c[0] != 0

    def at_zero(self) -> Fraction:
        return self.num(0) / self.den(0)

    def __add__(self, o):
        o = DVRScalar.coerce(o)
        return DVRScalar(self.num * o.den + o.num * self.den, self.den * o.den)

    __radd__ = __add__

    def __neg__(self):
        return DVRScalar(-self.num, self.den)

    def __sub__(self, o):
        return self + (-DVRScalar.coerce(o))

    def __rsub__(self, o):
        return DVRScalar.coerce(o) - self

    def __mul__(self, o):
        o = DVRScalar.coerce(o)
        return DVRScalar(self.num * o.num, self.den * o.den)

    __rmul__ = __mul__

    def __truediv__(self, o):
        """Division inside the ring; fails if the quotient has a pole at 0."""
        o = DVRScalar.coerce(o)
        if o.is_zero():
            raise ZeroDivisionError("division by zero in the local ring")
        return DVRScalar(self.num * o.den, self.den * o.num)

    def series(self, n: int) -> list[Fraction]:
        """First ``n`` Taylor coefficients at ``s = 0``."""
        return series_mul(list(self.num.c[:n]), series_inv(list(self.den.c[:n]), n), n)

    def __eq__(self, o):
        if not isinstance(o, DVRScalar):
            try:
                o = DVRScalar.coerce(o)
            except (TypeError, ValueError, DVRError):
                return NotImplemented
        return self.num == o.num and self.den == o.den

    def __hash__(self):
        return hash((self.num, self.den))

    def __repr__(self):
        if self.den == Poly([1]):
            return f"DVRScalar({self.num})"
        return f"DVRScalar(({self.num})/({self.den}))"

    __str__ = __repr__


# -- truncated power series ------------------------------------------------------------

def series_mul(a: Sequence[Fraction], b: Sequence[Fraction], n: int) -> list[Fraction]:
    out = [Fraction(0)] * n
    for i, x in enumerate(a[:n]):
        if x:
            for j in range(min(len(b), n - i)):
                out[i + j] += x * b[j]
    return out


def series_inv(a: Sequence[Fraction], n: int) -> list[Fraction]:
    a = list(a) + [Fraction(0)] * max(0, n - len(a))
    if a[0] == 0:
        raise DVRError("not a unit")
    inv = [Fraction(0)] * n
    inv[0] = 1 / a[0]
    for k in range(1, n):
        acc = sum((a[j] * inv[k - j] for j in range(1, k + 1)), Fraction(0))
        inv[k] = -acc * inv[0]
    return inv


def _series_val(a: Sequence[Fraction]):
    for k, x in enumerate(a):
        if x:
            return k
    return INF


def _to_series(x, n: int) -> list[Fraction]:
    if isinstance(x, DVRScalar):
        return x.series(n)
    p = Poly.coerce(x)
    return list(p.c[:n]) + [Fraction(0)] * max(0, n - len(p.c))


# -- rank and determinants -----------------------------------------------------------------

def _rank_fraction(rows: list[list[Fraction]]) -> int:
    m = [list(r) for r in rows]
    rank = 0
    ncols = len(m[0]) if m else 0
    for c in range(ncols):
        p = next((r for r in range(rank, len(m)) if m[r][c] != 0), None)
        if p is None:
            continue
        m[rank], m[p] = m[p], m[rank]
        pv = m[rank][c]
        for r in range(rank + 1, len(m)):
            if m[r][c] != 0:
                f = m[r][c] / pv
                m[r] = [x - f * y for x, y in zip(m[r], m[rank])]
        rank += 1
    return rank


def _as_polys(matrix) -> list[list[Poly]]:
    """Clear denominators row by row (they are units, so valuations are unchanged)."""
    out = []
    for row in matrix:
        if row and any(isinstance(x, DVRScalar) for x in row):
            den = Poly([1])
            for x in row:
                if isinstance(x, DVRScalar):
                    den = den * x.den.exact_div(poly_gcd(den, x.den)) if x.den.deg > 0 else den
            out.append([(x.num * den.exact_div(x.den)) if isinstance(x, DVRScalar) else Poly.coerce(x) * den
                        for x in row])
        else:
            out.append([Poly.coerce(x) for x in row])
    return out


def generic_rank(matrix) -> int:
    """Rank over the fraction field Q(s), by evaluation at enough integer points."""
    m = _as_polys(matrix)
    if not m or not m[0]:
        return 0
    n = min(len(m), len(m[0]))
    d = max((x.deg for r in m for x in r if x), default=0)
    best = 0
    for pt in range(n * d + 1):
        r = _rank_fraction([[x(pt) for x in row] for row in m])
        best = max(best, r)
        if best == n:
            break
    return best


def bareiss_det(matrix) -> Poly:
    """Determinant of a square polynomial matrix by fraction-free elimination."""
    m = [list(r) for r in _as_polys(matrix)]
    n = len(m)
    if n == 0:
        return Poly([1])
    sign = 1
    prev = Poly([1])
    for k in range(n - 1):
        if m[k][k].is_zero():
            p = next((r for r in range(k + 1, n) if not m[r][k].is_zero()), None)
            if p is None:
                return Poly()
            m[k], m[p] = m[p], m[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]).exact_div(prev)
        prev = m[k][k]
    return m[n - 1][n - 1] * sign


# -- Smith reduction --------------------------------------------------------------------------

@dataclass(frozen=True)
class SmithResult:
    """Elementary divisor valuations and the matching columns of ``Q^-1(0)``.

    ``valuations[j]`` is ``None`` for an infinite valuation.  ``basis0[j]`` is
    the specialised column attached to divisor ``j``; the Jantzen piece of
    index ``i`` at ``s = 0`` is spanned by the ``basis0[j]`` with
    ``valuations[j] >= i``.
    """

    valuations: tuple
    basis0: tuple
    precision: int

    def count_at_least(self, i: int) -> int:
        return sum(1 for v in self.valuations if v is None or v >= i)

    def piece(self, i: int) -> list[tuple[Fraction, ...]]:
        return [b for v, b in zip(self.valuations, self.basis0) if v is None or v >= i]

    def profile(self, top: int | None = None) -> list[int]:
        """``[nu_1, nu_2, ...]`` up to the largest finite valuation (or ``top``)."""
        finite = [v for v in self.valuations if v is not None]
        hi = top if top is not None else max(finite, default=0)
        return [self.count_at_least(i) for i in range(1, hi + 1)]


def _smith_mod(mat: list[list[list[Fraction]]], ncols: int, prec: int):
    """Smith reduction over Q[s]/(s^prec); returns pivots found and C(0)."""
    n_rows = len(mat)
    a = [[list(x) for x in row] for row in mat]
    c0 = [[Fraction(int(i == j)) for j in range(ncols)] for i in range(ncols)]  # columns: c0[.][j]
    col_order = list(range(ncols))
    vals = []
    k = 0
    while k < min(n_rows, ncols):
        best = None
        for i in range(k, n_rows):
            for j in range(k, ncols):
                v = _series_val(a[i][j])
                if v is not None and (best is None or v < best[0]):
                    best = (v, i, j)
                    if v == 0:
                        break
            if best is not None and best[0] == 0:
                break
        if best is None:
            break
        v, pi, pj = best
        a[k], a[pi] = a[pi], a[k]
        if pj != k:
            for row in a:
                row[k], row[pj] = row[pj], row[k]
            for row in c0:
                row[k], row[pj] = row[pj], row[k]
            col_order[k], col_order[pj] = col_order[pj], col_order[k]
        piv = a[k][k]
        unit = piv[v:] + [Fraction(0)] * v
        uinv = series_inv(unit[:prec - v], prec - v)
        for i in range(k + 1, n_rows):
            x = a[i][k]
            if _series_val(x) is None:
                continue
            qt = series_mul(x[v:], uinv, prec - v)
            for j in range(k, ncols):
                y = a[k][j]
                if _series_val(y) is None:
                    continue
                prod = series_mul(qt, y, prec)
                a[i][j] = [p - r for p, r in zip(a[i][j], prod)]
        for j in range(k + 1, ncols):
            x = a[k][j]
            if _series_val(x) is None:
                continue
            qt0 = (x[v] if v < prec else 0) * uinv[0]
            if qt0:
                for row in c0:
                    row[j] -= qt0 * row[k]
            a[k][j] = [Fraction(0)] * prec
        vals.append(v)
        k += 1
    return vals, c0


def smith_reduce(matrix, rank: int | None = None, start_precision: int = 4) -> SmithResult:
    """Valuations of the elementary divisors and the flag data at ``s = 0``.

    Works modulo ``s^N`` and doubles ``N`` until the number of pivots of
    valuation below ``N`` equals the generic rank; the remaining divisors are
    then exactly zero.
    """
    rows = len(matrix)
    ncols = len(matrix[0]) if rows else 0
    if rows == 0 or ncols == 0:
        return SmithResult((), (), 0)
    if rank is None:
        rank = generic_rank(matrix)
    prec = start_precision
    while True:
        ser = [[_to_series(x, prec) for x in row] for row in matrix]
        vals, c0 = _smith_mod(ser, ncols, prec)
        if len(vals) >= rank:
            break
        prec *= 2
        if prec > 4096:
            raise DVRError("precision limit reached in Smith reduction")
    valuations = list(vals[:rank]) + [INF] * (ncols - rank)
    basis0 = [tuple(row[j] for row in c0) for j in range(ncols)]
    return SmithResult(tuple(valuations), tuple(basis0), prec)


def dvr_valuations(matrix) -> list:
    """Elementary divisor valuations (``None`` for infinity), sorted ascending, infinities last."""
    res = smith_reduce(matrix)
    finite = sorted(v for v in res.valuations if v is not None)
    return finite + [INF] * (len(res.valuations) - len(finite))


def det_valuation(matrix):
    d = bareiss_det(matrix)
    return d.valuation()
