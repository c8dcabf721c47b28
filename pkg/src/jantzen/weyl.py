"""Weyl group enumeration, Bruhat order and parabolic coset tables.

Elements are identified by their image of ``rho`` (W acts simply transitively
on the regular orbit), which makes deduplication independent of words.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from typing import Iterable, Sequence

from .rootdata import RootSystem, build_root_system

MAX_ORDER = 1152


class WeylError(ValueError):
    pass


@dataclass(frozen=True)
class WeylElement:
    index: int
    reduced_word: tuple[int, ...]
    matrix: tuple[tuple[int, ...], ...]

    @property
    def length(self) -> int:
        return len(self.reduced_word)

    def word_str(self) -> str:
        """``"s1 s2 s1"``; the identity is ``"e"``."""
        if not self.reduced_word:
            return "e"
        return " ".join(f"s{i + 1}" for i in self.reduced_word)

    def act(self, lam: Sequence) -> tuple:
        return tuple(sum(r[j] * lam[j] for j in range(len(lam))) for r in self.matrix)


def _matmul(a, b):
    n = len(a)
    return tuple(tuple(sum(a[i][k] * b[k][j] for k in range(n)) for j in range(n)) for i in range(n))


def _simple_matrix(rs: RootSystem, i: int):
    n = rs.rank
    # (s_i lam)_k = lam_k - lam_i a[k][i]
    return tuple(
        tuple(int(k == j) - (rs.cartan[k][i] if j == i else 0) for j in range(n)) for k in range(n)
    )


class WeylGroup:
    """Finite Weyl group with multiplication tables by simple reflections."""

    def __init__(self, rs: RootSystem):
        self.rs = rs
        n = rs.rank
        self.simple_matrices = [_simple_matrix(rs, i) for i in range(n)]
        rho = rs.rho
        ident = tuple(tuple(int(i == j) for j in range(n)) for i in range(n))
        key0 = rho
        words = {key0: ()}
        mats = {key0: ident}
        level = [key0]
        while level:
            cand: dict = {}
            for key in level:
                m, w = mats[key], words[key]
                for i in range(n):
                    m2 = _matmul(m, self.simple_matrices[i])
                    k2 = tuple(sum(r[j] * rho[j] for j in range(n)) for r in m2)
                    if k2 in words:
                        continue
                    w2 = w + (i,)
                    if k2 not in cand or w2 < cand[k2][0]:
                        cand[k2] = (w2, m2)
            level = []
            for k2, (w2, m2) in cand.items():
                words[k2] = w2
                mats[k2] = m2
                level.append(k2)
            if len(words) > MAX_ORDER:
                raise WeylError(f"Weyl group of {rs.cartan_type} exceeds size guard {MAX_ORDER}")
        keys = sorted(words, key=lambda k: (len(words[k]), words[k]))
        self.elements = [WeylElement(idx, words[k], mats[k]) for idx, k in enumerate(keys)]
        self._by_key = {k: idx for idx, k in enumerate(keys)}
        self._by_word = {e.reduced_word: e.index for e in self.elements}
        self.right = [[self._by_key[self._key(_matmul(e.matrix, self.simple_matrices[i]))] for i in range(n)]
                      for e in self.elements]
        self.left = [[self._by_key[self._key(_matmul(self.simple_matrices[i], e.matrix))] for i in range(n)]
                     for e in self.elements]
        self._bruhat: dict = {}

    def _key(self, m):
        rho = self.rs.rho
        return tuple(sum(r[j] * rho[j] for j in range(len(rho))) for r in m)

    def __len__(self):
        return len(self.elements)

    def __iter__(self):
        return iter(self.elements)

    def __getitem__(self, idx: int) -> WeylElement:
        return self.elements[idx]

    @property
    def identity(self) -> WeylElement:
        return self.elements[0]

    @property
    def longest(self) -> WeylElement:
        return self.elements[-1]

    def length(self, x: int) -> int:
        return len(self.elements[x].reduced_word)

    def from_word(self, word: Iterable[int]) -> WeylElement:
        idx = 0
        for i in word:
            if not 0 <= i < self.rs.rank:
                raise WeylError(f"simple reflection index {i + 1} out of range")
            idx = self.right[idx][i]
        return self.elements[idx]

    def parse(self, text: str) -> WeylElement:
        """Parse ``"w0"``, ``"e"``, ``"s1 s2"``, ``"1 2"`` or ``"1,2"``."""
        t = text.strip()
        if t in ("w0", "W0"):
            return self.longest
        if t in ("e", "1", "id", ""):
            return self.identity
        tokens = t.replace(",", " ").replace("*", " ").split()
        word = []
        for tok in tokens:
            tok = tok.lstrip("sS")
            if not tok.isdigit():
                raise WeylError(f"cannot parse Weyl group element {text!r}")
            word.append(int(tok) - 1)
        return self.from_word(word)

    def by_weight(self, target: Sequence, base: Sequence) -> WeylElement | None:
        """The element ``w`` with ``w(base) == target`` when ``base`` is regular."""
        for e in self.elements:
            if tuple(e.act(base)) == tuple(target):
                return e
        return None

    def mul(self, x: int, y: int) -> int:
        idx = x
        for i in self.elements[y].reduced_word:
            idx = self.right[idx][i]
        return idx

    def inverse(self, x: int) -> int:
        return self.from_word(reversed(self.elements[x].reduced_word)).index

    def right_descent(self, x: int, i: int) -> bool:
        return self.length(self.right[x][i]) < self.length(x)

    def left_descent(self, x: int, i: int) -> bool:
        return self.length(self.left[x][i]) < self.length(x)

    def bruhat_leq(self, x: int, w: int) -> bool:
        """Bruhat order via the lifting property.

        If ``ws < w`` then ``x <= w`` iff ``min(x, xs) <= ws``.
        """
        key = (x, w)
        hit = self._bruhat.get(key)
        if hit is not None:
            return hit
        lx, lw = self.length(x), self.length(w)
        if lx > lw:
            res = False
        elif lw == 0:
            res = x == 0
        elif lx == lw:
            res = x == w
        else:
            s = self.elements[w].reduced_word[-1]
            ws = self.right[w][s]
            xs = self.right[x][s]
            res = self.bruhat_leq(xs if self.length(xs) < lx else x, ws)
        self._bruhat[key] = res
        return res

    def bruhat_leq_subword(self, x: int, w: int) -> bool:
        """Subword criterion against the stored reduced word of ``w``."""
        target = self.elements[x]
        word = self.elements[w].reduced_word
        reachable = {0}
        for i in word:
            reachable |= {self.right[r][i] for r in reachable}
        return target.index in reachable

    def poincare_counts(self) -> list[int]:
        counts = [0] * (self.length(len(self) - 1) + 1)
        for e in self.elements:
            counts[e.length] += 1
        return counts

    def parabolic_subgroup(self, simples: Iterable[int]) -> list[int]:
        simples = sorted(set(simples))
        seen = {0}
        frontier = [0]
        while frontier:
            nxt = []
            for x in frontier:
                for i in simples:
                    y = self.right[x][i]
                    if y not in seen:
                        seen.add(y)
                        nxt.append(y)
            frontier = nxt
        return sorted(seen, key=lambda k: (self.length(k), self.elements[k].reduced_word))


@dataclass(frozen=True)
class Coset:
    members: tuple[int, ...]
    longest: int
    shortest: int


@dataclass(frozen=True)
class CosetTable:
    eta_simples: tuple[int, ...]
    side: str
    cosets: tuple[Coset, ...]
    subgroup: tuple[int, ...] = field(repr=False)

    def representatives(self) -> list[int]:
        return [c.longest for c in self.cosets]

    def coset_of(self, x: int) -> Coset:
        for c in self.cosets:
            if x in c.members:
                return c
        raise KeyError(x)

    def longest_rep(self, x: int) -> int:
        return self.coset_of(x).longest

    def is_rep(self, x: int) -> bool:
        return self.coset_of(x).longest == x


def coset_decomposition(W: WeylGroup, eta_simples: Iterable[int], side: str = "right") -> CosetTable:
    """Cosets ``W_eta w`` (``side="right"``) or ``w W_eta`` (``side="left"``)."""
    js = tuple(sorted(set(eta_simples)))
    for j in js:
        if not 0 <= j < W.rs.rank:
            raise WeylError(f"simple root index {j + 1} out of range")
    if side not in ("right", "left"):
        raise WeylError(f"unknown coset side {side!r}")
    sub = W.parabolic_subgroup(js)
    seen: set[int] = set()
    cosets = []
    for e in W.elements:
        if e.index in seen:
            continue
        if side == "right":
            members = {W.mul(u, e.index) for u in sub}
        else:
            members = {W.mul(e.index, u) for u in sub}
        seen |= members
        ordered = tuple(sorted(members, key=lambda k: (W.length(k), W.elements[k].reduced_word)))
        lmax = max(W.length(k) for k in ordered)
        tops = [k for k in ordered if W.length(k) == lmax]
        if len(tops) != 1:
            raise WeylError("coset without a unique longest element")
        cosets.append(Coset(ordered, tops[0], ordered[0]))
    cosets.sort(key=lambda c: (W.length(c.longest), W.elements[c.longest].reduced_word))
    return CosetTable(js, side, tuple(cosets), tuple(sub))


def weyl_group(rs_or_type) -> WeylGroup:
    rs = rs_or_type if isinstance(rs_or_type, RootSystem) else build_root_system(rs_or_type)
    return _weyl_group(rs.cartan_type)


@lru_cache(maxsize=None)
def _weyl_group(ct) -> WeylGroup:
    return WeylGroup(build_root_system(ct))


def enumerate_weyl(rs: RootSystem) -> list[WeylElement]:
    return list(weyl_group(rs).elements)
