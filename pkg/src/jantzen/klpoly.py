"""Kazhdan-Lusztig polynomials, parabolic variants and a JSON table cache.

Two independent routes to ``P_{x,w}`` are provided: the usual descent
recursion with mu-corrections (:class:`KLTable`) and inversion of the
R-polynomial identity (:func:`kl_via_r_polynomials`).  They are compared in
the tests.
"""

from __future__ import annotations

import json
import os
from dataclasses import dataclass
from functools import lru_cache
from pathlib import Path
from typing import Iterable, Sequence

from .rootdata import CartanType, build_root_system
from .weyl import WeylGroup, coset_decomposition, weyl_group

CACHE_FORMAT = "klcache/1"
PARABOLIC_CONVENTIONS = ("-1", "q")
DEFAULT_PARABOLIC = "-1"


class KLError(ValueError):
    pass


class IntPolynomial:
    """Integer polynomial in ``q``; coefficients stored low degree first."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable[int] = ()):
        c = [int(x) for x in coeffs]
        while c and c[-1] == 0:
            c.pop()
        self.coeffs = tuple(c)

    @classmethod
    def monomial(cls, k: int, c: int = 1) -> "IntPolynomial":
        return cls([0] * k + [c])

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def __add__(self, other):
        n = max(len(self.coeffs), len(other.coeffs))
        a = self.coeffs + (0,) * (n - len(self.coeffs))
        b = other.coeffs + (0,) * (n - len(other.coeffs))
        return IntPolynomial(x + y for x, y in zip(a, b))

    def __neg__(self):
        return IntPolynomial(-x for x in self.coeffs)

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, int):
            return IntPolynomial(other * x for x in self.coeffs)
        if not self.coeffs or not other.coeffs:
            return IntPolynomial()
        out = [0] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, x in enumerate(self.coeffs):
            if x:
                for j, y in enumerate(other.coeffs):
                    out[i + j] += x * y
        return IntPolynomial(out)

    __rmul__ = __mul__

    def shift(self, k: int) -> "IntPolynomial":
        return IntPolynomial((0,) * k + self.coeffs) if self.coeffs else self

    def truncate(self, below: int) -> "IntPolynomial":
        """Drop all terms of degree ``>= below``."""
        return IntPolynomial(self.coeffs[:max(below, 0)])

    def coeff(self, k: int) -> int:
        return self.coeffs[k] if 0 <= k < len(self.coeffs) else 0

    def __call__(self, q):
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * q + c
        return acc

    def __eq__(self, other):
        if isinstance(other, int):
            return self.coeffs == IntPolynomial([other]).coeffs
        return isinstance(other, IntPolynomial) and self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def __repr__(self):
        return f"IntPolynomial({list(self.coeffs)})"

    def __str__(self):
        if not self.coeffs:
            return "0"
        parts = []
        for k, c in enumerate(self.coeffs):
            if c == 0:
                continue
            mono = "" if k == 0 else ("q" if k == 1 else f"q^{k}")
            if mono and c == 1:
                parts.append(mono)
            elif mono and c == -1:
                parts.append("-" + mono)
            else:
                parts.append(f"{c}{'*' + mono if mono else ''}")
        return " + ".join(parts).replace("+ -", "- ")


ZERO = IntPolynomial()
ONE = IntPolynomial([1])


class KLTable:
    """Ordinary KL polynomials for a finite Weyl group, built column by column."""

    def __init__(self, W: WeylGroup):
        self.W = W
        self.flavor = "ordinary"
        n = len(W)
        self._cols: list[dict[int, IntPolynomial] | None] = [None] * n
        self._mu_cols: list[list[tuple[int, int]] | None] = [None] * n
        self.frozen = False

    def column(self, w: int) -> dict[int, IntPolynomial]:
        col = self._cols[w]
        if col is None:
            col = self._compute_column(w)
            self._cols[w] = col
        return col

    def _mu_list(self, v: int) -> list[tuple[int, int]]:
        """``(z, mu(z, v))`` for ``z < v`` with nonzero top coefficient."""
        hit = self._mu_cols[v]
        if hit is not None:
            return hit
        W = self.W
        lv = W.length(v)
        out = []
        for z, p in self.column(v).items():
            d = lv - W.length(z)
            if d > 0 and d % 2 == 1:
                m = p.coeff((d - 1) // 2)
                if m:
                    out.append((z, m))
        self._mu_cols[v] = out
        return out

    def _compute_column(self, w: int) -> dict[int, IntPolynomial]:
        W = self.W
        if w == 0:
            return {0: ONE}
        s = W.elements[w].reduced_word[-1]
        v = W.right[w][s]
        lw = W.length(w)
        colv = self.column(v)
        corrections = [(z, m) for z, m in self._mu_list(v) if W.right_descent(z, s)]
        col: dict[int, IntPolynomial] = {}
        for x in range(len(W)):
            if not W.bruhat_leq(x, w):
                continue
            xs = W.right[x][s]
            c = 1 if W.length(xs) < W.length(x) else 0
            p = colv.get(xs, ZERO).shift(1 - c) + colv.get(x, ZERO).shift(c)
            for z, m in corrections:
                pz = self.column(z).get(x)
                if pz is not None:
                    p = p - (pz * m).shift((lw - W.length(z)) // 2)
            col[x] = p
        return col

    def __call__(self, x: int, w: int) -> IntPolynomial:
        return self.column(w).get(x, ZERO)

    def mu(self, x: int, w: int) -> int:
        d = self.W.length(w) - self.W.length(x)
        if d <= 0 or d % 2 == 0:
            return 0
        return self(x, w).coeff((d - 1) // 2)

    def fill(self) -> "KLTable":
        for w in range(len(self.W)):
            self.column(w)
        self.frozen = True
        return self

    def entries(self) -> dict[tuple[int, int], IntPolynomial]:
        self.fill()
        return {(x, w): p for w, col in enumerate(self._cols) for x, p in col.items()}

    def load_entries(self, entries: dict[tuple[int, int], IntPolynomial]):
        cols: list[dict] = [dict() for _ in range(len(self.W))]
        for (x, w), p in entries.items():
            cols[w][x] = p
        self._cols = cols
        self.frozen = True


# -- R-polynomial route -------------------------------------------------------------

def _r_table(W: WeylGroup) -> dict[tuple[int, int], IntPolynomial]:
    memo: dict[tuple[int, int], IntPolynomial] = {}
    q_minus_1 = IntPolynomial([-1, 1])

    def r(x: int, w: int) -> IntPolynomial:
        key = (x, w)
        if key in memo:
            return memo[key]
        if x == w:
            res = ONE
        elif W.length(x) >= W.length(w):
            res = ZERO
        else:
            s = W.elements[w].reduced_word[-1]
            ws = W.right[w][s]
            xs = W.right[x][s]
            if W.length(xs) < W.length(x):
                res = r(xs, ws)
            else:
                res = q_minus_1 * r(x, ws) + r(xs, ws).shift(1)
        memo[key] = res
        return res

    for w in range(len(W)):
        for x in range(len(W)):
            r(x, w)
    return memo


def kl_via_r_polynomials(W: WeylGroup) -> dict[tuple[int, int], IntPolynomial]:
    """All ``P_{x,w}`` from ``q^{l(w)-l(x)} P(q^-1) - P(q) = sum_{x<y<=w} R_{x,y} P_{y,w}``."""
    R = _r_table(W)
    P: dict[tuple[int, int], IntPolynomial] = {}
    order = sorted(range(len(W)), key=W.length, reverse=True)
    for w in range(len(W)):
        lw = W.length(w)
        for x in order:
            if not W.bruhat_leq(x, w):
                continue
            if x == w:
                P[x, w] = ONE
                continue
            acc = ZERO
            for y in range(len(W)):
                if y != x and (y, w) in P:
                    rxy = R[x, y]
                    if not rxy.is_zero():
                        acc = acc + rxy * P[y, w]
            d = lw - W.length(x)
            # degrees < d/2 come from -P, the rest from the bar-twisted side
            P[x, w] = (-acc).truncate((d + 1) // 2)
    return P


# -- public API -----------------------------------------------------------------

def kl_table(ct: CartanType | str) -> KLTable:
    """Shared lazily filled table for a type."""
    if isinstance(ct, str):
        ct = CartanType.parse(ct)
    return _kl_table(ct)


@lru_cache(maxsize=None)
def _kl_table(ct: CartanType) -> KLTable:
    return KLTable(weyl_group(build_root_system(ct)))


def kl_polynomial(W: WeylGroup, x, w) -> IntPolynomial:
    """``P_{x,w}`` for elements or indices of ``W``."""
    xi = getattr(x, "index", x)
    wi = getattr(w, "index", w)
    return kl_table(W.rs.cartan_type)(xi, wi)


def _coset_data(W: WeylGroup, eta_simples: Sequence[int]):
    return coset_decomposition(W, eta_simples, side="right")


def parabolic_kl(W: WeylGroup, eta_simples: Iterable[int], x, w,
                 convention: str = DEFAULT_PARABOLIC) -> IntPolynomial:
    """Parabolic KL polynomial indexed by longest right coset representatives.

    Conventions are named by the eigenvalue ``u`` of ``T_s`` (``s`` parabolic)
    on the induced Hecke module, see :func:`parabolic_kl_deodhar`:

    ``"-1"``: ordinary ``P_{x,w}`` between longest representatives.
    ``"q"``: alternating sum ``sum_z (-1)^{l(z)} P_{z x', w'}`` over the
    parabolic subgroup, with ``x'``, ``w'`` the shortest representatives.
    """
    if convention not in PARABOLIC_CONVENTIONS:
        raise KLError(f"unknown parabolic convention {convention!r}")
    xi = getattr(x, "index", x)
    wi = getattr(w, "index", w)
    table = _coset_data(W, tuple(eta_simples))
    for e in (xi, wi):
        if not table.is_rep(e):
            raise KLError(f"{W.elements[e].word_str()} is not a longest coset representative")
    kl = kl_table(W.rs.cartan_type)
    if convention == "-1":
        return kl(xi, wi)
    xmin = table.coset_of(xi).shortest
    wmin = table.coset_of(wi).shortest
    acc = ZERO
    for z in table.subgroup:
        acc = acc + kl(W.mul(z, xmin), wmin) * (-1) ** W.length(z)
    return acc


def parabolic_kl_deodhar(W: WeylGroup, eta_simples: Iterable[int], u: str) -> dict[tuple[int, int], IntPolynomial]:
    """Parabolic KL polynomials from the parabolic Hecke module, indexed by shortest reps.

    ``u`` is the eigenvalue of ``T_s`` on the induced module for ``s`` in the
    parabolic subgroup (``"-1"`` or ``"q"``).  Independent of :func:`parabolic_kl`.
    """
    table = _coset_data(W, tuple(eta_simples))
    reps = {c.shortest for c in table.cosets}
    q_minus_1 = IntPolynomial([-1, 1])
    uu = IntPolynomial([-1]) if u == "-1" else IntPolynomial([0, 1])
    memo: dict[tuple[int, int], IntPolynomial] = {}

    def r(x: int, y: int) -> IntPolynomial:
        key = (x, y)
        if key in memo:
            return memo[key]
        if x == y:
            res = ONE
        elif W.length(x) >= W.length(y) or not W.bruhat_leq(x, y):
            res = ZERO
        else:
            s = W.elements[y].reduced_word[-1]
            ys = W.right[y][s]
            xs = W.right[x][s]
            if W.length(xs) < W.length(x):
                res = r(xs, ys)
            elif xs in reps:
                res = q_minus_1 * r(x, ys) + r(xs, ys).shift(1)
            else:
                res = (q_minus_1 - uu) * r(x, ys)
        memo[key] = res
        return res

    P: dict[tuple[int, int], IntPolynomial] = {}
    ordered = sorted(reps, key=W.length, reverse=True)
    for w in reps:
        for x in ordered:
            if not W.bruhat_leq(x, w):
                continue
            if x == w:
                P[x, w] = ONE
                continue
            acc = ZERO
            for y in reps:
                if y != x and (y, w) in P:
                    acc = acc + r(x, y) * P[y, w]
            d = W.length(w) - W.length(x)
            P[x, w] = (-acc).truncate((d + 1) // 2)
    return P


# -- cache ------------------------------------------------------------------------

def default_cache_dir() -> Path | None:
    env = os.environ.get("JANTZEN_CACHE")
    return Path(env) if env else None


@dataclass
class CacheInfo:
    path: str
    files: list[dict]
    ignored: list[dict]

    def as_dict(self):
        return {"path": self.path, "files": self.files, "ignored": self.ignored}


class KLCache:
    """One JSON file per (type, flavor); entries keyed by canonical reduced words."""

    def __init__(self, directory: str | os.PathLike | None = None):
        d = Path(directory) if directory is not None else default_cache_dir()
        if d is None:
            d = Path.home() / ".cache" / "jantzen"
        self.dir = d

    def _file(self, ct: str, flavor: str) -> Path:
        safe = flavor.replace(":", "_").replace(",", "-")
        return self.dir / f"kl-{ct}-{safe}.json"

    @staticmethod
    def _word(W: WeylGroup, x: int) -> str:
        return W.elements[x].word_str()

    def serialize(self, table: KLTable) -> str:
        W = table.W
        entries = table.entries()
        rows = sorted(([self._word(W, x), self._word(W, w), list(p.coeffs)] for (x, w), p in entries.items()),
                      key=lambda r: (len(r[1]), r[1], len(r[0]), r[0]))
        doc = {"format": CACHE_FORMAT, "type": str(W.rs.cartan_type), "flavor": table.flavor,
               "order": len(W), "entries": rows}
        return json.dumps(doc, sort_keys=True, separators=(",", ":"))

    def deserialize(self, text: str, W: WeylGroup) -> KLTable:
        doc = json.loads(text)
        if doc.get("format") != CACHE_FORMAT:
            raise KLError(f"cache format {doc.get('format')!r} != {CACHE_FORMAT!r}")
        if doc.get("type") != str(W.rs.cartan_type) or doc.get("order") != len(W):
            raise KLError("cache belongs to a different group")
        t = KLTable(W)
        t.load_entries({(W.parse(a).index, W.parse(b).index): IntPolynomial(c) for a, b, c in doc["entries"]})
        return t

    def save(self, table: KLTable) -> Path:
        self.dir.mkdir(parents=True, exist_ok=True)
        path = self._file(str(table.W.rs.cartan_type), table.flavor)
        tmp = path.with_suffix(".tmp")
        tmp.write_text(self.serialize(table))
        tmp.replace(path)
        return path

    def load(self, W: WeylGroup, flavor: str = "ordinary") -> KLTable | None:
        path = self._file(str(W.rs.cartan_type), flavor)
        if not path.exists():
            return None
        try:
            return self.deserialize(path.read_text(), W)
        except (KLError, ValueError, KeyError):
            return None

    def warm(self, ct: str) -> Path:
        W = weyl_group(build_root_system(ct))
        table = KLTable(W).fill()
        return self.save(table)

    def info(self) -> CacheInfo:
        files, ignored = [], []
        if self.dir.is_dir():
            for p in sorted(self.dir.glob("kl-*.json")):
                try:
                    doc = json.loads(p.read_text())
                except ValueError:
                    ignored.append({"file": p.name, "reason": "unreadable"})
                    continue
                if doc.get("format") != CACHE_FORMAT:
                    ignored.append({"file": p.name, "reason": f"version {doc.get('format')!r}"})
                    continue
                files.append({"file": p.name, "type": doc.get("type"), "flavor": doc.get("flavor"),
                              "entries": len(doc.get("entries", []))})
        return CacheInfo(str(self.dir), files, ignored)

    def clear(self) -> int:
        n = 0
        if self.dir.is_dir():
            for p in self.dir.glob("kl-*.json"):
                p.unlink()
                n += 1
        return n
