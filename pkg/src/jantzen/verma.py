"""Deformed Verma modules, contravariant Gram matrices and singular vectors.

The module action is computed once per Chevalley basis with the highest
weight kept symbolic: coefficients are polynomials in variables ``h_i``
standing for the value of ``H_i`` on the generator.  A deformed module at
``lambda`` with direction ``gamma`` is the specialisation
``h_i = (lambda - rho)_i + gamma_i s``.
"""

from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Mapping, Sequence

from .dvr import Poly
from .pbw import ChevalleyBasis, UEElement, build_chevalley, kostant_partition, weight_space_basis
from .rootdata import RootSystem, build_root_system

Mono = tuple  # exponent vector over positive roots
MPoly = dict  # {exponent tuple in h: int coefficient}


class VermaError(ValueError):
    pass


# -- multivariate polynomials in h ---------------------------------------------------

def _mp_const(c, r):
    return {(0,) * r: c} if c else {}


def _mp_addto(acc: dict, p: Mapping, c=1):
    for e, x in p.items():
        v = acc.get(e, 0) + c * x
        if v:
            acc[e] = v
        else:
            acc.pop(e, None)


def _mp_mul(p: Mapping, q: Mapping) -> dict:
    out: dict = {}
    for e1, x in p.items():
        for e2, y in q.items():
            e = tuple(a + b for a, b in zip(e1, e2))
            v = out.get(e, 0) + x * y
            if v:
                out[e] = v
            else:
                out.pop(e, None)
    return out


def mp_eval(p: Mapping, point: Sequence, cache: dict | None = None):
    """Substitute ``h_i -> point[i]`` (numbers or ``Poly``)."""
    if cache is None:
        cache = {}
    r = len(point)
    acc = None
    for e, c in p.items():
        term = None
        for i in range(r):
            if e[i]:
                key = (i, e[i])
                pw = cache.get(key)
                if pw is None:
                    pw = point[i] ** e[i]
                    cache[key] = pw
                term = pw if term is None else term * pw
        term = c if term is None else term * c
        acc = term if acc is None else acc + term
    if acc is None:
        return Poly() if point and isinstance(point[0], Poly) else Fraction(0)
    return acc


# -- symbolic action ------------------------------------------------------------------

class VermaAction:
    """Action of generators on PBW monomials ``F^a v`` with symbolic highest weight."""

    def __init__(self, cb: ChevalleyBasis):
        self.cb = cb
        self.rs = cb.rs
        self.r = cb.rank
        self.npos = cb.npos
        self._lmul: dict = {}
        self._act: dict = {}
        self._gram: dict = {}

    def depth(self, mono: Mono) -> tuple[int, ...]:
        roots = self.rs.positive_roots
        return tuple(sum(e * roots[k][i] for k, e in enumerate(mono)) for i in range(self.r))

    def lmul(self, k: int, mono: Mono) -> dict:
        """``F_k * F^mono`` rewritten in the PBW basis of U(n-bar)."""
        key = (k, mono)
        hit = self._lmul.get(key)
        if hit is not None:
            return hit
        j = next((i for i, e in enumerate(mono) if e), None)
        if j is None or k <= j:
            m = list(mono) if mono else [0] * self.npos
            m[k] += 1
            res = {tuple(m): 1}
        else:
            rest = list(mono)
            rest[j] -= 1
            rest = tuple(rest)
            acc: dict = defaultdict(int)
            for m, c in self.lmul(k, rest).items():
                for m2, c2 in self.lmul(j, m).items():
                    acc[m2] += c * c2
            for t, co in self.cb.table[self.cb.F(k), self.cb.F(j)]:
                for m2, c2 in self.lmul(self.cb.root_of(t), rest).items():
                    acc[m2] += co * c2
            res = {m: c for m, c in acc.items() if c}
        self._lmul[key] = res
        return res

    def act(self, letter: int, mono: Mono) -> dict:
        """``letter * F^mono v`` as ``{mono: MPoly}``."""
        key = (letter, mono)
        hit = self._act.get(key)
        if hit is not None:
            return hit
        cb, r = self.cb, self.r
        kind = cb.kind(letter)
        if kind == "F":
            res = {m: _mp_const(c, r) for m, c in self.lmul(letter, mono).items()}
        elif kind == "H":
            i = letter - self.npos
            nu = self.depth(mono)
            shift = sum(self.rs.cartan[i][j] * nu[j] for j in range(r))
            p = {tuple(int(t == i) for t in range(r)): 1}
            if shift:
                p[(0,) * r] = -shift
            res = {mono: p}
        else:
            j = next((i for i, e in enumerate(mono) if e), None)
            if j is None:
                res = {}
            else:
                rest = list(mono)
                rest[j] -= 1
                rest = tuple(rest)
                acc: dict = {}
                for m, p in self.act(letter, rest).items():
                    for m2, c2 in self.lmul(j, m).items():
                        _mp_addto(acc.setdefault(m2, {}), p, c2)
                for t, co in cb.table[letter, cb.F(j)]:
                    for m, p in self.act(t, rest).items():
                        _mp_addto(acc.setdefault(m, {}), p, co)
                res = {m: p for m, p in acc.items() if p}
        self._act[key] = res
        return res

    def act_vector(self, letter: int, vec: Mapping[Mono, Mapping]) -> dict:
        """Symbolic vector ``{mono: MPoly}``."""
        acc: dict = {}
        for mono, coeff in vec.items():
            for m, p in self.act(letter, mono).items():
                _mp_addto(acc.setdefault(m, {}), _mp_mul(p, coeff))
        return {m: p for m, p in acc.items() if p}

    def gram(self, nu: tuple[int, ...]) -> list[list[dict]]:
        """Symbolic Gram matrix on depth ``nu`` in the ``weight_space_basis`` order."""
        nu = tuple(nu)
        hit = self._gram.get(nu)
        if hit is not None:
            return hit
        basis = weight_space_basis(self.rs, nu)
        if not any(nu):
            res = [[_mp_const(1, self.r)]]
            self._gram[nu] = res
            return res
        n = len(basis)
        res = [[None] * n for _ in range(n)]
        for b, mb in enumerate(basis):
            k = next(i for i, e in enumerate(mb) if e)
            rest = list(mb)
            rest[k] -= 1
            rest = tuple(rest)
            beta = self.rs.positive_roots[k]
            sub_nu = tuple(x - y for x, y in zip(nu, beta))
            sub = self.gram(sub_nu)
            sub_idx = {m: i for i, m in enumerate(weight_space_basis(self.rs, sub_nu))}
            cb_ = sub_idx[rest]
            for a, ma in enumerate(basis):
                acc: dict = {}
                for m, p in self.act(self.cb.E(k), ma).items():
                    _mp_addto(acc, _mp_mul(p, sub[sub_idx[m]][cb_]))
                res[a][b] = acc
        self._gram[nu] = res
        return res


@lru_cache(maxsize=None)
def verma_action(ct: str, sign: str = "min+") -> VermaAction:
    return VermaAction(build_chevalley(build_root_system(ct), sign))


# -- deformed modules -------------------------------------------------------------------

@dataclass
class VermaVector:
    """Vector at depth ``nu`` as ``{F-exponent tuple: coefficient}``."""

    nu: tuple[int, ...]
    coeffs: dict

    def as_list(self, rs: RootSystem, zero=Fraction(0)) -> list:
        return [self.coeffs.get(m, zero) for m in weight_space_basis(rs, self.nu)]


@dataclass
class DeformedVerma:
    """``M_A(lambda)`` with Cartan character ``h -> (lambda - rho)(h) + gamma(h) s``."""

    rs: RootSystem
    lam: tuple
    gamma: tuple | None = None
    sign: str = "min+"
    _gram_cache: dict = field(default_factory=dict, repr=False)

    def __post_init__(self):
        self.lam = tuple(Fraction(x) for x in self.lam)
        if len(self.lam) != self.rs.rank:
            raise VermaError("weight has the wrong length")
        self.gamma = tuple(Fraction(x) for x in (self.gamma if self.gamma is not None else self.rs.rho))
        if len(self.gamma) != self.rs.rank:
            raise VermaError("deformation direction has the wrong length")
        self.action = verma_action(str(self.rs.cartan_type), self.sign)
        self.cb = self.action.cb
        self.point = [Poly([l - 1, g]) for l, g in zip(self.lam, self.gamma)]
        self.point0 = [l - 1 for l in self.lam]
        self._pow_cache: dict = {}
        self._pow_cache0: dict = {}

    @property
    def highest_weight(self) -> tuple:
        """Highest weight ``lambda - rho`` of the fibre at ``s = 0``."""
        return tuple(self.point0)

    def basis(self, nu) -> list[Mono]:
        return weight_space_basis(self.rs, nu)

    def evaluate(self, p: Mapping, at_zero: bool = False):
        if at_zero:
            return mp_eval(p, self.point0, self._pow_cache0)
        return mp_eval(p, self.point, self._pow_cache)

    def generator(self) -> VermaVector:
        return VermaVector((0,) * self.rs.rank, {(0,) * len(self.rs.positive_roots): Poly([1])})

    def apply_letter(self, letter: int, x: VermaVector, at_zero: bool = False) -> VermaVector:
        acc: dict = {}
        for mono, c in x.coeffs.items():
            for m, p in self.action.act(letter, mono).items():
                val = self.evaluate(p, at_zero) * c
                acc[m] = acc[m] + val if m in acc else val
        wt = self.cb.weight(letter)
        nu = tuple(a - b for a, b in zip(x.nu, wt))
        return VermaVector(nu, {m: c for m, c in acc.items() if c})

    def apply_element(self, u: UEElement, x: VermaVector, at_zero: bool = False) -> VermaVector:
        """``u . x`` for an arbitrary element of U(g); words act right to left."""
        total: dict = {}
        nu = None
        for word, c in u.terms.items():
            y = x
            for letter in reversed(word):
                y = self.apply_letter(letter, y, at_zero)
                if not y.coeffs:
                    break
            if not y.coeffs:
                continue
            nu = y.nu
            for m, v in y.coeffs.items():
                val = v * c
                total[m] = total[m] + val if m in total else val
        if nu is None:
            nu = x.nu
        return VermaVector(nu, {m: v for m, v in total.items() if v})

    def gram_matrix(self, nu) -> list[list[Poly]]:
        nu = tuple(int(x) for x in nu)
        hit = self._gram_cache.get(nu)
        if hit is None:
            sym = self.action.gram(nu)
            hit = [[self.evaluate(p) for p in row] for row in sym]
            self._gram_cache[nu] = hit
        return hit

    def gram_matrix_at_zero(self, nu) -> list[list[Fraction]]:
        sym = self.action.gram(tuple(nu))
        return [[self.evaluate(p, True) for p in row] for row in sym]

    def raising_matrix(self, i: int, nu, at_zero: bool = True) -> list[list]:
        """Matrix of the simple ``E_i`` from depth ``nu`` to ``nu - alpha_i``."""
        src = self.basis(nu)
        tgt_nu = tuple(x - int(k == i) for k, x in enumerate(nu))
        tgt = self.basis(tgt_nu)
        tidx = {m: r for r, m in enumerate(tgt)}
        zero = Fraction(0) if at_zero else Poly()
        mat = [[zero] * len(src) for _ in tgt]
        for c, m in enumerate(src):
            for m2, p in self.action.act(self.cb.E(i), m).items():
                mat[tidx[m2]][c] = self.evaluate(p, at_zero)
        return mat

    def singular_vectors(self, nu, max_depth: int | None = None) -> list[VermaVector]:
        """Basis of the joint kernel of the simple raising operators at ``s = 0``."""
        nu = tuple(int(x) for x in nu)
        if any(x < 0 for x in nu):
            return []
        if max_depth is not None and sum(nu) > max_depth:
            raise VermaError(f"depth {sum(nu)} exceeds bound {max_depth}")
        basis = self.basis(nu)
        rows: list[list[Fraction]] = []
        for i in range(self.rs.rank):
            rows.extend(self.raising_matrix(i, nu))
        kern = nullspace(rows, len(basis))
        return [VermaVector(nu, {m: c for m, c in zip(basis, v) if c}) for v in kern]


def nullspace(rows: list[list[Fraction]], ncols: int) -> list[list[Fraction]]:
    """Basis of ``{x : A x = 0}`` over Q, reduced so each vector has a pivot-free 1."""
    m = [list(map(Fraction, r)) for r in rows if any(r)]
    pivots = []
    r = 0
    for c in range(ncols):
        p = next((i for i in range(r, len(m)) if m[i][c] != 0), None)
        if p is None:
            continue
        m[r], m[p] = m[p], m[r]
        pv = m[r][c]
        m[r] = [x / pv for x in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c] != 0:
                f = m[i][c]
                m[i] = [x - f * y for x, y in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
    free = [c for c in range(ncols) if c not in pivots]
    out = []
    for f in free:
        v = [Fraction(0)] * ncols
        v[f] = Fraction(1)
        for i, pc in enumerate(pivots):
            v[pc] = -m[i][f]
        out.append(v)
    return out


def sl2_gram_closed_form(n: int, k: int) -> Poly:
    """``k! prod_{j=1..k} (n + s - j)``: the sl2 Gram entry at depth ``k`` with ``gamma = rho``."""
    out = Poly([1])
    for j in range(1, k + 1):
        out = out * Poly([n - j, 1]) * j
    return out


def shapovalov_factors(rs: RootSystem, lam, gamma, nu) -> list[tuple[Poly, int]]:
    """Factors ``(alpha^vee(lambda + s gamma) - r, P(nu - r alpha))`` of the Shapovalov determinant."""
    out = []
    for beta in rs.positive_roots:
        a = rs.pair(lam, beta)
        g = rs.pair(gamma, beta)
        r = 1
        while True:
            rest = tuple(x - r * y for x, y in zip(nu, beta))
            if any(x < 0 for x in rest):
                break
            mult = kostant_partition(rs, rest)
            if mult:
                out.append((Poly([a - r, g]), mult))
            r += 1
    return out
