"""Chevalley basis, PBW normal form in U(g), Kostant partitions, transpose and eta.

Generators are encoded as integer *letters* whose numeric order is the PBW
order::

    F_beta  -> k            (k = index of beta in the positive-root order)
    H_i     -> N + i
    E_beta  -> N + rank + k

so a word is in normal form exactly when its letters are non-decreasing
(F-part, then Cartan part, then E-part).
"""

from __future__ import annotations

from collections import defaultdict
from fractions import Fraction
from functools import lru_cache
from itertools import product
from typing import Iterable, Mapping, Sequence

from .rootdata import RootSystem, build_root_system

SIGN_CONVENTIONS = ("min+", "min-", "max+")


class ChevalleyError(RuntimeError):
    pass


# -- small exact matrix helpers -------------------------------------------------

def _zeros(n):
    return [[0] * n for _ in range(n)]


def _unit(n, i, j, c=1):
    m = _zeros(n)
    m[i][j] = c
    return m


def _add(a, b, cb=1):
    return [[x + cb * y for x, y in zip(ra, rb)] for ra, rb in zip(a, b)]


def _scale(a, c):
    return [[c * x for x in r] for r in a]


def _mm(a, b):
    n = len(a)
    return [[sum(a[i][k] * b[k][j] for k in range(n) if a[i][k]) for j in range(n)] for i in range(n)]


def _br(a, b):
    return _add(_mm(a, b), _mm(b, a), -1)


def _transpose(a):
    return [list(r) for r in zip(*a)]


def _is_zero(a):
    return all(x == 0 for r in a for x in r)


def _ratio(a, b):
    """``c`` with ``a == c * b`` (``b`` nonzero), or ``None``."""
    c = None
    for ra, rb in zip(a, b):
        for x, y in zip(ra, rb):
            if y == 0:
                if x != 0:
                    return None
            else:
                r = Fraction(x, 1) / y
                if c is None:
                    c = r
                elif c != r:
                    return None
    return c


def _simple_matrices(rs: RootSystem):
    """Simple root vectors ``E_i`` in a faithful matrix representation."""
    fam, n = rs.cartan_type.family, rs.rank
    if fam == "A":
        size = n + 1
        return [_unit(size, i, i + 1) for i in range(n)]
    if fam == "B":
        size = 2 * n + 1
        p = lambda i: size - 1 - i  # noqa: E731
        es = [_add(_unit(size, i, i + 1), _unit(size, p(i + 1), p(i)), -1) for i in range(n - 1)]
        m = n
        es.append(_add(_unit(size, n - 1, m), _unit(size, m, p(n - 1)), -1))
        return es
    if fam == "C":
        size = 2 * n
        es = [_add(_unit(size, i, i + 1), _unit(size, n + i + 1, n + i), -1) for i in range(n - 1)]
        es.append(_unit(size, n - 1, 2 * n - 1))
        return es
    if fam == "D":
        size = 2 * n
        p = lambda i: size - 1 - i  # noqa: E731
        es = [_add(_unit(size, i, i + 1), _unit(size, p(i + 1), p(i)), -1) for i in range(n - 1)]
        es.append(_add(_unit(size, n - 2, p(n - 1)), _unit(size, n - 1, p(n - 2)), -1))
        return es
    if fam == "G":
        # fixed points of triality in so(8): short = sum over the outer D4 nodes
        d4 = _simple_matrices(build_root_system("D4"))
        short = _add(_add(d4[0], d4[2]), d4[3])
        return [short, d4[1]]
    raise ChevalleyError(f"no matrix realisation for {rs.cartan_type}")


class ChevalleyBasis:
    """Integral Chevalley basis with a fixed, Jacobi-verified bracket table."""

    def __init__(self, rs: RootSystem, sign: str = "min+"):
        if sign not in SIGN_CONVENTIONS:
            raise ChevalleyError(f"unknown sign convention {sign!r}; choose from {SIGN_CONVENTIONS}")
        self.rs = rs
        self.sign = sign
        self.npos = len(rs.positive_roots)
        self.rank = rs.rank
        self.dim = 2 * self.npos + self.rank
        self._build()
        self.verify()

    # letters
    def F(self, k: int) -> int:
        return k

    def H(self, i: int) -> int:
        return self.npos + i

    def E(self, k: int) -> int:
        return self.npos + self.rank + k

    def kind(self, letter: int) -> str:
        if letter < self.npos:
            return "F"
        if letter < self.npos + self.rank:
            return "H"
        return "E"

    def root_of(self, letter: int) -> int:
        """Positive-root index underlying an E or F letter."""
        if letter < self.npos:
            return letter
        return letter - self.npos - self.rank

    def weight(self, letter: int) -> tuple[int, ...]:
        """Root-lattice weight of a generator in simple-root coordinates."""
        kind = self.kind(letter)
        if kind == "H":
            return (0,) * self.rank
        beta = self.rs.positive_roots[self.root_of(letter)]
        return beta if kind == "E" else tuple(-c for c in beta)

    def name(self, letter: int) -> str:
        kind = self.kind(letter)
        if kind == "H":
            return f"H{letter - self.npos + 1}"
        beta = self.rs.positive_roots[self.root_of(letter)]
        return f"{kind}{''.join(map(str, beta))}"

    def _build(self):
        rs = self.rs
        n, npos = self.rank, self.npos
        simple_e = _simple_matrices(rs)
        e_mats: list = [None] * npos
        f_mats: list = [None] * npos
        h_mats = []
        for i, e in enumerate(simple_e):
            et = _transpose(e)
            c = _ratio(_br(_br(e, et), e), e)
            f = _scale(et, Fraction(2) / c)
            e_mats[i] = e
            f_mats[i] = f
            h_mats.append(_br(e, f))
        self.decomposition: dict[int, tuple[int, int, int]] = {}
        for k in range(n, npos):
            beta = rs.positive_roots[k]
            choices = [i for i in range(n) if beta[i] > 0 and _minus(beta, i) in rs._root_index]
            i = min(choices) if self.sign in ("min+", "min-") else max(choices)
            gamma = _minus(beta, i)
            p = 0
            g = gamma
            while True:
                g = _minus(g, i)
                if not rs.is_root(g):
                    break
                p += 1
            eps = -1 if self.sign == "min-" else 1
            j = rs.root_index(gamma)
            e_mats[k] = _scale(_br(e_mats[i], e_mats[j]), Fraction(eps, p + 1))
            f_mats[k] = _scale(_br(f_mats[j], f_mats[i]), Fraction(eps, p + 1))
            self.decomposition[k] = (i, j, p)
        self.matrices = f_mats + h_mats + e_mats
        self._h_mats = h_mats
        self._bracket_table()

    def _cartan_coords(self, m) -> dict[int, Fraction]:
        # diagonal matrices; solve m = sum c_i H_i on the diagonal
        n = self.rank
        rows = [[Fraction(h[t][t]) for h in self._h_mats] + [Fraction(m[t][t])] for t in range(len(m))]
        piv_cols = []
        r = 0
        for c in range(n):
            p = next((q for q in range(r, len(rows)) if rows[q][c] != 0), None)
            if p is None:
                continue
            rows[r], rows[p] = rows[p], rows[r]
            pv = rows[r][c]
            rows[r] = [x / pv for x in rows[r]]
            for q in range(len(rows)):
                if q != r and rows[q][c] != 0:
                    fq = rows[q][c]
                    rows[q] = [x - fq * y for x, y in zip(rows[q], rows[r])]
            piv_cols.append(c)
            r += 1
        if any(row[n] != 0 for row in rows[r:]):
            raise ChevalleyError("Cartan decomposition failed")
        coords = {c: rows[idx][n] for idx, c in enumerate(piv_cols)}
        return {c: v for c, v in coords.items() if v != 0}

    def _bracket_table(self):
        rs = self.rs
        weight_letter = {}
        for k, beta in enumerate(rs.positive_roots):
            weight_letter[beta] = self.E(k)
            weight_letter[tuple(-c for c in beta)] = self.F(k)
        table: dict[tuple[int, int], tuple[tuple[int, int], ...]] = {}
        for a in range(self.dim):
            for b in range(self.dim):
                if a == b:
                    table[a, b] = ()
                    continue
                m = _br(self.matrices[a], self.matrices[b])
                wt = tuple(x + y for x, y in zip(self.weight(a), self.weight(b)))
                if _is_zero(m):
                    table[a, b] = ()
                elif not any(wt):
                    coords = self._cartan_coords(m)
                    terms = []
                    for i, c in sorted(coords.items()):
                        if c.denominator != 1:
                            raise ChevalleyError("non-integral Cartan bracket")
                        terms.append((self.H(i), int(c)))
                    table[a, b] = tuple(terms)
                elif wt in weight_letter:
                    t = weight_letter[wt]
                    c = _ratio(m, self.matrices[t])
                    if c is None or c.denominator != 1:
                        raise ChevalleyError(f"bracket [{self.name(a)}, {self.name(b)}] not integral")
                    table[a, b] = ((t, int(c)),)
                else:
                    raise ChevalleyError("bracket leaves the algebra")
        self.table = table

    def bracket(self, a: int, b: int) -> tuple[tuple[int, int], ...]:
        """``[a, b]`` as ``((letter, coeff), ...)``."""
        return self.table[a, b]

    def h_coroot(self, k: int) -> dict[int, int]:
        """``H_beta = [E_beta, F_beta]`` as Cartan letters."""
        return dict(self.table[self.E(k), self.F(k)])

    def structure_constant(self, k: int, j: int) -> int:
        """``N`` with ``[E_k, E_j] = N E_{k+j}`` (0 when the sum is not a root)."""
        t = self.table[self.E(k), self.E(j)]
        return t[0][1] if t else 0

    def verify(self):
        """Chevalley axioms plus the Jacobi identity on every triple of generators."""
        rs = self.rs
        for k, beta in enumerate(rs.positive_roots):
            cv = rs.coroot(beta)
            want = {self.H(i): int(c) for i, c in enumerate(cv) if c != 0}
            if self.h_coroot(k) != want:
                raise ChevalleyError(f"[E,F] != H_beta for root {beta}")
            for i in range(self.rank):
                # [H_i, E_beta] = <beta, alpha_i^vee> E_beta
                c = sum(rs.cartan[i][j] * beta[j] for j in range(self.rank))
                got = self.table[self.H(i), self.E(k)]
                if (got and got != ((self.E(k), c),)) or (not got and c != 0):
                    raise ChevalleyError("Cartan action mismatch")
        for k, j in product(range(self.npos), repeat=2):
            s = tuple(x + y for x, y in zip(rs.positive_roots[k], rs.positive_roots[j]))
            if rs.is_root(s):
                beta = rs.positive_roots[j]
                p = 0
                g = beta
                while True:
                    g = tuple(x - y for x, y in zip(g, rs.positive_roots[k]))
                    if not rs.is_root(g):
                        break
                    p += 1
                if abs(self.structure_constant(k, j)) != p + 1:
                    raise ChevalleyError("structure constant violates |N| = p + 1")
        d = self.dim
        for a in range(d):
            for b in range(a + 1, d):
                for c in range(b + 1, d):
                    acc: dict[int, int] = defaultdict(int)
                    for x, y, z in ((a, b, c), (b, c, a), (c, a, b)):
                        for t, co in self.table[x, y]:
                            for u, co2 in self.table[t, z]:
                                acc[u] += co * co2
                    if any(acc.values()):
                        raise ChevalleyError(
                            f"Jacobi fails on ({self.name(a)}, {self.name(b)}, {self.name(c)})")


def _minus(beta, i):
    return tuple(c - (1 if k == i else 0) for k, c in enumerate(beta))


def build_chevalley(rs: RootSystem | str, sign: str = "min+") -> ChevalleyBasis:
    """Shared, Jacobi-verified Chevalley basis for a type and sign convention."""
    if isinstance(rs, str):
        rs = build_root_system(rs)
    return _build_chevalley(rs.cartan_type, sign)


@lru_cache(maxsize=None)
def _build_chevalley(ct, sign: str) -> ChevalleyBasis:
    return ChevalleyBasis(build_root_system(ct), sign)


# -- universal enveloping algebra -------------------------------------------------

Word = tuple


class UEElement:
    """Finite combination of words in the generators with rational coefficients."""

    __slots__ = ("cb", "terms")

    def __init__(self, cb: ChevalleyBasis, terms: Mapping[Word, object] | None = None):
        self.cb = cb
        self.terms = {w: c for w, c in (terms or {}).items() if c != 0}

    @classmethod
    def one(cls, cb):
        return cls(cb, {(): 1})

    @classmethod
    def gen(cls, cb, letter: int, coeff=1):
        return cls(cb, {(letter,): coeff})

    @classmethod
    def word(cls, cb, letters: Iterable[int], coeff=1):
        return cls(cb, {tuple(letters): coeff})

    def __add__(self, other):
        acc = dict(self.terms)
        for w, c in other.terms.items():
            acc[w] = acc.get(w, 0) + c
        return UEElement(self.cb, acc)

    def __sub__(self, other):
        return self + other.scale(-1)

    def __neg__(self):
        return self.scale(-1)

    def scale(self, c):
        return UEElement(self.cb, {w: c * x for w, x in self.terms.items()})

    def __mul__(self, other):
        if not isinstance(other, UEElement):
            return self.scale(other)
        acc: dict = defaultdict(int)
        for w1, c1 in self.terms.items():
            for w2, c2 in other.terms.items():
                acc[w1 + w2] += c1 * c2
        return UEElement(self.cb, acc)

    __rmul__ = scale

    def __eq__(self, other):
        if not isinstance(other, UEElement):
            return NotImplemented
        return normal_form(self).terms == normal_form(other).terms

    def __hash__(self):
        return hash(frozenset(normal_form(self).terms.items()))

    def is_normal(self) -> bool:
        return all(_is_sorted(w) for w in self.terms)

    def __repr__(self):
        if not self.terms:
            return "0"
        parts = []
        for w, c in sorted(self.terms.items()):
            body = "*".join(self.cb.name(x) for x in w) or "1"
            parts.append(f"{c}*{body}")
        return " + ".join(parts)


def _is_sorted(w) -> bool:
    return all(w[i] <= w[i + 1] for i in range(len(w) - 1))


def _nf_word(cb: ChevalleyBasis, word: Word, memo: dict) -> dict:
    hit = memo.get(word)
    if hit is not None:
        return hit
    for i in range(len(word) - 1):
        a, b = word[i], word[i + 1]
        if a > b:
            break
    else:
        res = {word: 1}
        memo[word] = res
        return res
    pre, post = word[:i], word[i + 2:]
    acc: dict = defaultdict(int)
    for w, c in _nf_word(cb, pre + (b, a) + post, memo).items():
        acc[w] += c
    for t, co in cb.table[a, b]:
        for w, c in _nf_word(cb, pre + (t,) + post, memo).items():
            acc[w] += co * c
    res = {w: c for w, c in acc.items() if c != 0}
    memo[word] = res
    return res


_NF_MEMO: dict = {}


def normal_form(x: UEElement) -> UEElement:
    """Rewrite into the PBW order F-part, Cartan part, E-part."""
    memo = _NF_MEMO.setdefault(id(x.cb), {})
    acc: dict = defaultdict(int)
    for w, c in x.terms.items():
        for w2, c2 in _nf_word(x.cb, w, memo).items():
            acc[w2] += c * c2
    return UEElement(x.cb, acc)


def multiply(x: UEElement, y: UEElement) -> UEElement:
    return normal_form(x * y)


def _tau_letter(cb: ChevalleyBasis, a: int) -> int:
    kind = cb.kind(a)
    if kind == "H":
        return a
    k = cb.root_of(a)
    return cb.E(k) if kind == "F" else cb.F(k)


def transpose(x: UEElement) -> UEElement:
    """Transpose antiautomorphism: ``E_beta <-> F_beta``, ``H`` fixed, order reversed."""
    cb = x.cb
    return normal_form(UEElement(cb, {tuple(_tau_letter(cb, a) for a in reversed(w)): c
                                      for w, c in x.terms.items()}))


def element_weight(cb: ChevalleyBasis, word: Word) -> tuple[int, ...]:
    wt = [0] * cb.rank
    for a in word:
        for i, c in enumerate(cb.weight(a)):
            wt[i] += c
    return tuple(wt)


# -- PBW monomials and U(n-bar) weight spaces ---------------------------------------

class PBWMonomial(tuple):
    """View of a normal-ordered word as (F exponents, Cartan exponents, E exponents)."""

    def __new__(cls, cb: ChevalleyBasis, word: Word):
        obj = super().__new__(cls, word)
        obj.cb = cb
        return obj

    @property
    def f_exponents(self) -> tuple[int, ...]:
        return tuple(self.count(self.cb.F(k)) for k in range(self.cb.npos))

    @property
    def h_exponents(self) -> tuple[int, ...]:
        return tuple(self.count(self.cb.H(i)) for i in range(self.cb.rank))

    @property
    def e_exponents(self) -> tuple[int, ...]:
        return tuple(self.count(self.cb.E(k)) for k in range(self.cb.npos))


def f_word(exps: Sequence[int]) -> Word:
    """Normal-ordered F-word for an exponent vector over positive roots."""
    w: list[int] = []
    for k, e in enumerate(exps):
        w.extend([k] * e)
    return tuple(w)


def e_word(cb: ChevalleyBasis, exps: Sequence[int]) -> Word:
    w: list[int] = []
    for k, e in enumerate(exps):
        w.extend([cb.E(k)] * e)
    return tuple(w)


@lru_cache(maxsize=None)
def _partitions(roots: tuple, nu: tuple, start: int) -> tuple:
    if not any(nu):
        return ((0,) * len(roots),)
    out = []
    for k in range(start, len(roots)):
        beta = roots[k]
        rest = tuple(a - b for a, b in zip(nu, beta))
        if min(rest) < 0:
            continue
        for tail in _partitions(roots, rest, k):
            t = list(tail)
            t[k] += 1
            out.append(tuple(t))
    return tuple(out)


def weight_space_basis(rs: RootSystem, nu: Sequence[int]) -> list[tuple[int, ...]]:
    """Exponent vectors of the PBW F-monomials of weight ``-nu``, in a fixed order."""
    nu = tuple(int(x) for x in nu)
    if any(x < 0 for x in nu):
        return []
    parts = set(_partitions(tuple(rs.positive_roots), nu, 0))
    return sorted(parts, key=lambda e: tuple(-x for x in e))


def kostant_partition(rs: RootSystem, nu: Sequence[int]) -> int:
    nu = tuple(int(x) for x in nu)
    if any(x < 0 for x in nu):
        return 0
    return len(set(_partitions(tuple(rs.positive_roots), nu, 0)))


def depths_up_to(rank: int, depth: int) -> list[tuple[int, ...]]:
    """All nonnegative root-lattice vectors of height at most ``depth``."""
    out = [nu for nu in product(range(depth + 1), repeat=rank) if sum(nu) <= depth]
    return sorted(out, key=lambda v: (sum(v), tuple(-x for x in v)))


# -- eta --------------------------------------------------------------------------

def eta_eval(cb: ChevalleyBasis, values: Sequence, u: UEElement):
    """Extend a character of n (values on simple root vectors) to U(n)."""
    acc = Fraction(0)
    for w, c in normal_form(u).terms.items():
        term = Fraction(c)
        for a in w:
            if cb.kind(a) != "E":
                raise ValueError("eta_eval expects an element of U(n)")
            k = cb.root_of(a)
            term *= Fraction(values[k]) if k < cb.rank else 0
        acc += term
    return acc
