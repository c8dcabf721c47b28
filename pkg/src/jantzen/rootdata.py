"""Cartan data and root systems for the classical types and G2 at small rank.

Weights are stored in fundamental-weight coordinates, roots in simple-root
coordinates.  ``cartan[i][j]`` is ``<alpha_j, alpha_i^vee>``, so column ``j``
of the Cartan matrix is ``alpha_j`` written in fundamental-weight coordinates.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Sequence

MAX_RANK = 4

_TYPE_RE = re.compile(r"^\s*([ABCDGabcdg])\s*(\d+)\s*$")


class RootDataError(ValueError):
    """Invalid Cartan type or weight input."""


@dataclass(frozen=True, order=True)
class CartanType:
    family: str
    rank: int

    def __post_init__(self):
        f, n = self.family, self.rank
        if f not in "ABCDG" or len(f) != 1:
            raise RootDataError(f"unknown family {f!r}; expected one of A, B, C, D, G")
        if not isinstance(n, int) or n < 1:
            raise RootDataError(f"rank must be a positive integer, got {n!r}")
        if n > MAX_RANK:
            raise RootDataError(f"rank {n} exceeds the supported bound {MAX_RANK}")
        if f == "G" and n != 2:
            raise RootDataError("type G requires rank 2")
        if f in "BC" and n < 2:
            raise RootDataError(f"type {f}{n} is degenerate; use A1")
        if f == "D" and n < 3:
            raise RootDataError(f"type D{n} is not simple; D requires rank >= 3")

    @classmethod
    def parse(cls, text: str) -> "CartanType":
        m = _TYPE_RE.match(text)
        if not m:
            raise RootDataError(f"cannot parse Cartan type {text!r} (expected e.g. 'A2', 'B3', 'G2')")
        return cls(m.group(1).upper(), int(m.group(2)))

    def __str__(self):
        return f"{self.family}{self.rank}"


def cartan_matrix(ct: CartanType) -> tuple[tuple[int, ...], ...]:
    """Bourbaki-ordered Cartan matrix, ``a[i][j] = <alpha_j, alpha_i^vee>``."""
    n = ct.rank
    a = [[0] * n for _ in range(n)]
    for i in range(n):
        a[i][i] = 2
    if ct.family == "G":
        # alpha_1 short
        a[0][1] = -3
        a[1][0] = -1
        return tuple(map(tuple, a))
    for i in range(n - 1):
        a[i][i + 1] = a[i + 1][i] = -1
    if ct.family == "B":
        # alpha_n short: <alpha_{n-1}, alpha_n^vee> = -2
        a[n - 1][n - 2] = -2
    elif ct.family == "C":
        # alpha_n long: <alpha_n, alpha_{n-1}^vee> = -2
        a[n - 2][n - 1] = -2
    elif ct.family == "D":
        a[n - 2][n - 1] = a[n - 1][n - 2] = 0
        a[n - 3][n - 1] = a[n - 1][n - 3] = -1
    return tuple(map(tuple, a))


def _symmetrizer(a) -> tuple[Fraction, ...]:
    """Half squared lengths ``d_i = (alpha_i, alpha_i)/2`` normalised so the shortest is 1."""
    n = len(a)
    d: list[Fraction | None] = [None] * n
    d[0] = Fraction(1)
    stack = [0]
    while stack:
        i = stack.pop()
        for j in range(n):
            if j != i and a[i][j] != 0 and d[j] is None:
                # d_i a_ij = d_j a_ji
                d[j] = d[i] * a[i][j] / a[j][i]
                stack.append(j)
    m = min(d)
    return tuple(x / m for x in d)


@dataclass(frozen=True)
class WeightClass:
    regular: bool
    integral: bool
    antidominant: bool


@dataclass(frozen=True, eq=False)
class RootSystem:
    cartan_type: CartanType
    cartan: tuple[tuple[int, ...], ...]
    positive_roots: tuple[tuple[int, ...], ...]
    sym: tuple[Fraction, ...]
    _root_index: dict = field(repr=False)
    _coroots: tuple = field(repr=False)

    @property
    def rank(self) -> int:
        return self.cartan_type.rank

    @property
    def rho(self) -> tuple[int, ...]:
        return (1,) * self.rank

    @property
    def simple_roots(self) -> tuple[tuple[int, ...], ...]:
        return self.positive_roots[: self.rank]

    @property
    def roots(self) -> list[tuple[int, ...]]:
        return list(self.positive_roots) + [tuple(-c for c in r) for r in self.positive_roots]

    def is_root(self, beta: Sequence[int]) -> bool:
        beta = tuple(beta)
        return beta in self._root_index or tuple(-c for c in beta) in self._root_index

    def root_index(self, beta: Sequence[int]) -> int:
        """Position of a positive root in the fixed total order."""
        return self._root_index[tuple(beta)]

    def height(self, beta: Sequence[int]) -> int:
        return sum(beta)

    def norm2(self, beta: Sequence[int]) -> Fraction:
        """Squared length ``(beta, beta)`` with short simple roots of length 2."""
        n = self.rank
        d, a = self.sym, self.cartan
        # (alpha_i, alpha_j) = d_i a_ij
        return sum(beta[i] * beta[j] * d[i] * a[i][j] for i in range(n) for j in range(n))

    def coroot(self, beta: Sequence[int]) -> tuple[Fraction, ...]:
        """``beta^vee`` in the simple-coroot basis."""
        beta = tuple(beta)
        if beta in self._root_index:
            return self._coroots[self._root_index[beta]]
        pos = tuple(-c for c in beta)
        return tuple(-c for c in self._coroots[self._root_index[pos]])

    def root_to_weight(self, beta: Sequence[int]) -> tuple[int, ...]:
        """Simple-root coordinates to fundamental-weight coordinates."""
        a = self.cartan
        n = self.rank
        return tuple(sum(a[i][j] * beta[j] for j in range(n)) for i in range(n))

    def weight_to_root(self, lam: Sequence) -> tuple[Fraction, ...]:
        """Fundamental-weight coordinates to (rational) simple-root coordinates."""
        inv = _inverse_cartan(self.cartan)
        n = self.rank
        return tuple(sum(inv[j][i] * Fraction(lam[i]) for i in range(n)) for j in range(n))

    def pair(self, lam: Sequence, beta: Sequence[int]) -> Fraction:
        """``beta^vee(lam)`` for a weight in fundamental coordinates."""
        cv = self.coroot(beta)
        return sum((c * Fraction(x) for c, x in zip(cv, lam)), Fraction(0))

    def classify_weight(self, lam: Sequence) -> WeightClass:
        vals = [self.pair(lam, b) for b in self.positive_roots]
        regular = all(v != 0 for v in vals)
        integral = all(v.denominator == 1 for v in vals)
        antidominant = not any(v.denominator == 1 and v > 0 for v in vals)
        return WeightClass(regular, integral, antidominant)

    def reflect_weight(self, i: int, lam: Sequence) -> tuple:
        """Simple reflection ``s_i`` on a weight in fundamental coordinates."""
        li = lam[i]
        return tuple(lam[k] - li * self.cartan[k][i] for k in range(self.rank))

    def reflect_root(self, i: int, beta: Sequence[int]) -> tuple[int, ...]:
        c = sum(self.cartan[i][j] * beta[j] for j in range(self.rank))
        return tuple(beta[k] - (c if k == i else 0) for k in range(self.rank))

    def highest_root(self) -> tuple[int, ...]:
        return max(self.positive_roots, key=sum)

    def weight_height(self, diff: Sequence) -> Fraction:
        """Height of a root-lattice element given in fundamental coordinates."""
        return sum(self.weight_to_root(diff), Fraction(0))


@lru_cache(maxsize=None)
def _inverse_cartan(a) -> tuple[tuple[Fraction, ...], ...]:
    n = len(a)
    m = [[Fraction(a[i][j]) for j in range(n)] + [Fraction(int(i == j)) for j in range(n)] for i in range(n)]
    for c in range(n):
        p = next(r for r in range(c, n) if m[r][c] != 0)
        m[c], m[p] = m[p], m[c]
        piv = m[c][c]
        m[c] = [x / piv for x in m[c]]
        for r in range(n):
            if r != c and m[r][c] != 0:
                f = m[r][c]
                m[r] = [x - f * y for x, y in zip(m[r], m[c])]
    return tuple(tuple(row[n:]) for row in m)


def _order_key(beta):
    # height first; ties put alpha_1-heavy roots first so simple roots keep index order
    return (sum(beta), tuple(-c for c in beta))


def build_root_system(ct: CartanType | str) -> RootSystem:
    """Closure of the simple roots under simple reflections.

    Positive roots are ordered by height, ties broken by reverse lexicographic
    order on simple-root coordinates; this order fixes every PBW basis.
    One shared instance per type.
    """
    if isinstance(ct, str):
        ct = CartanType.parse(ct)
    return _build_root_system(ct)


@lru_cache(maxsize=None)
def _build_root_system(ct: CartanType) -> RootSystem:
    a = cartan_matrix(ct)
    n = ct.rank
    simple = [tuple(int(i == j) for j in range(n)) for i in range(n)]
    found = set(simple)
    frontier = list(simple)
    while frontier:
        nxt = []
        for beta in frontier:
            for i in range(n):
                c = sum(a[i][j] * beta[j] for j in range(n))
                gamma = tuple(beta[k] - (c if k == i else 0) for k in range(n))
                if all(x >= 0 for x in gamma) and any(gamma) and gamma not in found:
                    found.add(gamma)
                    nxt.append(gamma)
        frontier = nxt
    pos = sorted(found, key=_order_key)
    sym = _symmetrizer(a)
    index = {b: k for k, b in enumerate(pos)}

    def norm2(beta):
        return sum(beta[i] * beta[j] * sym[i] * a[i][j] for i in range(n) for j in range(n))

    # beta^vee = sum_i b_i (alpha_i, alpha_i)/(beta, beta) alpha_i^vee
    coroots = tuple(
        tuple(Fraction(b[i]) * 2 * sym[i] / norm2(b) for i in range(n)) for b in pos
    )
    return RootSystem(ct, a, tuple(pos), sym, index, coroots)


CLASSICAL_POSITIVE_COUNT = {
    "A": lambda n: n * (n + 1) // 2,
    "B": lambda n: n * n,
    "C": lambda n: n * n,
    "D": lambda n: n * (n - 1),
    "G": lambda n: 6,
}


def parse_weight(text: str, rank: int) -> tuple[Fraction, ...]:
    """Parse ``"1,0,-2"`` or ``"1/2,1"`` into a weight of the given rank."""
    parts = [p for p in re.split(r"[,\s]+", text.strip()) if p]
    if len(parts) != rank:
        raise RootDataError(f"expected {rank} coordinates, got {len(parts)} in {text!r}")
    try:
        return tuple(Fraction(p) for p in parts)
    except (ValueError, ZeroDivisionError) as exc:
        raise RootDataError(f"bad weight coordinate in {text!r}: {exc}") from None
