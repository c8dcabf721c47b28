"""Whittaker characters, functionals and pairings, and transport of Jantzen data.

``M(lambda, eta)`` is generated by a vector ``w`` with ``x w = eta(x) w`` for
``x`` in n.  Elements ``u w`` are represented by ``u`` in the span of
F-words times Cartan words in the coroots of the Levi factor.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Sequence

from .dvr import DVRScalar, Poly
from .filtration import (
    FiltrationError,
    StrictnessReport,
    VermaFiltrationTable,
    make_block,
    strictness_check,
    verma_jantzen,
)
from .klpoly import DEFAULT_PARABOLIC, IntPolynomial, kl_table, parabolic_kl
from .pbw import ChevalleyBasis, UEElement, depths_up_to, normal_form, weight_space_basis
from .rootdata import RootSystem, build_root_system
from .verma import DeformedVerma, VermaVector, nullspace
from .weyl import CosetTable, coset_decomposition, weyl_group


class WhittakerError(ValueError):
    pass


@dataclass(frozen=True)
class EtaCharacter:
    rs: RootSystem
    values: tuple[Fraction, ...]
    pi_eta: tuple[int, ...]
    cosets: CosetTable = field(repr=False)

    @property
    def is_zero(self) -> bool:
        return not self.pi_eta

    @property
    def is_nondegenerate(self) -> bool:
        return len(self.pi_eta) == self.rs.rank

    @property
    def subgroup_order(self) -> int:
        return len(self.cosets.subgroup)

    def levi_roots(self) -> list[tuple[int, ...]]:
        """Positive roots supported on the nonvanishing simple roots."""
        return [b for b in self.rs.positive_roots
                if all(c == 0 or i in self.pi_eta for i, c in enumerate(b))]

    @property
    def rho_eta(self) -> tuple[Fraction, ...]:
        """Half sum of positive Levi roots, fundamental-weight coordinates."""
        tot = [Fraction(0)] * self.rs.rank
        for b in self.levi_roots():
            for i, c in enumerate(self.rs.root_to_weight(b)):
                tot[i] += Fraction(c, 2)
        return tuple(tot)

    def value(self, k: int) -> Fraction:
        """``eta(E_beta)`` for the positive root with index ``k``."""
        return self.values[k] if k < self.rs.rank else Fraction(0)

    def pattern(self) -> tuple[bool, ...]:
        return tuple(v != 0 for v in self.values)


def make_eta(rs: RootSystem | str, values: Sequence) -> EtaCharacter:
    if isinstance(rs, str):
        rs = build_root_system(rs)
    vals = tuple(Fraction(v) for v in values)
    if len(vals) != rs.rank:
        raise WhittakerError(f"eta needs {rs.rank} values, got {len(vals)}")
    pi = tuple(i for i, v in enumerate(vals) if v != 0)
    return EtaCharacter(rs, vals, pi, coset_decomposition(weyl_group(rs), pi))


# -- functional and pairing ---------------------------------------------------------------

class WhittakerFunctional:
    """``f(F^a v) = prod c_alpha^{a_alpha}`` over simple roots, 0 if a non-simple exponent is positive."""

    def __init__(self, eta: EtaCharacter):
        self.eta = eta
        self.r = eta.rs.rank

    def on_monomial(self, mono: Sequence[int]) -> Fraction:
        if any(e for e in mono[self.r:]):
            return Fraction(0)
        out = Fraction(1)
        for i in range(self.r):
            if mono[i]:
                out *= self.eta.values[i] ** mono[i]
        return out

    def __call__(self, x: VermaVector):
        acc = None
        for m, c in x.coeffs.items():
            f = self.on_monomial(m)
            if f:
                t = c * f
                acc = t if acc is None else acc + t
        return acc if acc is not None else Fraction(0)


def whittaker_functional(M: DeformedVerma | None, eta: EtaCharacter) -> WhittakerFunctional:
    return WhittakerFunctional(eta)


def _check_spanning_form(eta: EtaCharacter, cb: ChevalleyBasis, u: UEElement) -> UEElement:
    u = normal_form(u)
    for word in u.terms:
        for a in word:
            kind = cb.kind(a)
            if kind == "E":
                raise WhittakerError("u must lie in U(n-bar) U(h ∩ [l, l]); found a raising generator")
            if kind == "H" and (a - cb.npos) not in eta.pi_eta:
                raise WhittakerError("Cartan part of u must lie in the span of the Levi coroots")
    return u


def _tau_word(cb: ChevalleyBasis, word):
    out = []
    for a in reversed(word):
        kind = cb.kind(a)
        if kind == "H":
            out.append(a)
        elif kind == "F":
            out.append(cb.E(cb.root_of(a)))
        else:
            out.append(cb.F(cb.root_of(a)))
    return tuple(out)


def whittaker_pairing(eta: EtaCharacter, lam: Sequence, gamma: Sequence | None, u: UEElement,
                      u_prime, sign: str = "min+") -> DVRScalar:
    """``<u w, u' v>_A = f(tau(u) u' v)`` computed in the deformed Verma module."""
    rs = eta.rs
    M = DeformedVerma(rs, lam, gamma, sign)
    cb = M.cb
    if u.cb is not cb:
        raise WhittakerError("u was built over a different Chevalley basis")
    u = _check_spanning_form(eta, cb, u)
    start = _vector_of(M, u_prime)
    f = WhittakerFunctional(eta)
    acc = Poly()
    for word, c in u.terms.items():
        y = M.apply_element(UEElement(cb, {_tau_word(cb, word): 1}), start)
        acc = acc + Poly.coerce(f(y)) * c
    return DVRScalar(acc)


def _vector_of(M: DeformedVerma, u_prime) -> VermaVector:
    rs = M.rs
    if isinstance(u_prime, VermaVector):
        return u_prime
    if isinstance(u_prime, UEElement):
        for word in u_prime.terms:
            if any(M.cb.kind(a) == "E" for a in word):
                raise WhittakerError("u' must lie in U(n-bar)")
        return M.apply_element(u_prime, M.generator())
    mono = tuple(u_prime)
    nu = M.action.depth(mono)
    if len(mono) != len(rs.positive_roots):
        raise WhittakerError("PBW exponent vector has the wrong length")
    return VermaVector(nu, {mono: Poly([1])})


class WhittakerModel:
    """Action of U(g) on spanning-form representatives of ``M_A(lambda, eta)``."""

    def __init__(self, eta: EtaCharacter, lam: Sequence, gamma: Sequence | None = None, sign: str = "min+"):
        self.eta = eta
        self.M = DeformedVerma(eta.rs, lam, gamma, sign)
        self.cb = self.M.cb
        rs = eta.rs
        pi = list(eta.pi_eta)
        # H_i = sum_{j in pi} a_ij H_j + Z_i with alpha_k(Z_i) = 0 for k in pi
        self._proj = []
        sub = [[Fraction(rs.cartan[j][k]) for j in pi] for k in pi]  # rows: alpha_k, cols: H_j
        for i in range(rs.rank):
            rhs = [Fraction(rs.cartan[i][k]) for k in pi]
            coeffs = _solve(sub, rhs) if pi else []
            # scalar of Z_i on w: chi(H_i) - sum a_ij chi(H_j)
            z = self.M.point[i] - sum((self.M.point[j] * c for j, c in zip(pi, coeffs)), Poly())
            self._proj.append((dict(zip(pi, coeffs)), z))

    def reduce(self, x: UEElement) -> UEElement:
        """Rewrite ``x w`` as (F-word)(Levi Cartan word) w with coefficients in Q[s]."""
        cb = self.cb
        acc: dict = {}
        for word, c in normal_form(x).terms.items():
            fpart = tuple(a for a in word if cb.kind(a) == "F")
            hpart = [a for a in word if cb.kind(a) == "H"]
            epart = [a for a in word if cb.kind(a) == "E"]
            scal = Fraction(1)
            for a in epart:
                scal *= self.eta.value(cb.root_of(a))
                if not scal:
                    break
            if not scal:
                continue
            # expand product of (projection + scalar) over the Cartan letters
            terms: dict = {(): Poly([c * scal]) if not isinstance(c, Poly) else c * scal}
            for a in hpart:
                lev, z = self._proj[a - cb.npos]
                new: dict = {}
                for hw, coeff in terms.items():
                    if z:
                        new[hw] = new.get(hw, Poly()) + coeff * z
                    for j, aj in lev.items():
                        if aj:
                            key = tuple(sorted(hw + (cb.H(j),)))
                            new[key] = new.get(key, Poly()) + coeff * aj
                terms = {k: v for k, v in new.items() if v}
            for hw, coeff in terms.items():
                key = fpart + hw
                acc[key] = acc.get(key, Poly()) + coeff
        return UEElement(cb, {k: v for k, v in acc.items() if v})

    def act(self, g: UEElement, u: UEElement) -> UEElement:
        return self.reduce(g * u)

    def pairing(self, u: UEElement, u_prime) -> Poly:
        cb = self.cb
        u = _check_spanning_form(self.eta, cb, u)
        start = _vector_of(self.M, u_prime)
        f = WhittakerFunctional(self.eta)
        acc = Poly()
        for word, c in u.terms.items():
            y = self.M.apply_element(UEElement(cb, {_tau_word(cb, word): 1}), start)
            acc = acc + Poly.coerce(f(y)) * c
        return acc

    def pairing_after(self, g: UEElement, u: UEElement, u_prime) -> tuple[Poly, Poly]:
        """``(<g u w, u' v>, <u w, tau(g) u' v>)`` for a contravariance check."""
        lhs = self.pairing(self.act(g, u), u_prime)
        tg = UEElement(self.cb, {_tau_word(self.cb, w): c for w, c in g.terms.items()})
        moved = self.M.apply_element(tg, _vector_of(self.M, u_prime))
        rhs = self.pairing(u, moved)
        return lhs, rhs


def _solve(a: list[list[Fraction]], b: list[Fraction]) -> list[Fraction]:
    n = len(b)
    m = [row[:] + [b[i]] for i, row in enumerate(a)]
    for c in range(n):
        p = next(r for r in range(c, n) if m[r][c] != 0)
        m[c], m[p] = m[p], m[c]
        pv = m[c][c]
        m[c] = [x / pv for x in m[c]]
        for r in range(n):
            if r != c and m[r][c] != 0:
                f = m[r][c]
                m[r] = [x - f * y for x, y in zip(m[r], m[c])]
    return [m[i][n] for i in range(n)]


# -- uniqueness of pairings ----------------------------------------------------------------

def coxeter_number_bound(eta: EtaCharacter) -> int:
    """Largest Coxeter number among the simple components of the Levi factor."""
    rs = eta.rs
    pi = set(eta.pi_eta)
    comps, seen = [], set()
    for i in pi:
        if i in seen:
            continue
        comp, stack = set(), [i]
        while stack:
            k = stack.pop()
            if k in comp:
                continue
            comp.add(k)
            stack.extend(j for j in pi if j not in comp and rs.cartan[k][j] != 0)
        seen |= comp
        comps.append(comp)
    best = 0
    levi = eta.levi_roots()
    for comp in comps:
        npos = sum(1 for b in levi if all(c == 0 or i in comp for i, c in enumerate(b)))
        best = max(best, 2 * npos // len(comp))
    return best


@lru_cache(maxsize=None)
def levi_center(ct: str, pi_eta: tuple[int, ...], max_degree: int, sign: str = "min+") -> tuple:
    """Weight-zero central elements of U([l, l]) up to PBW degree ``max_degree``."""
    rs = build_root_system(ct)
    from .pbw import build_chevalley

    cb = build_chevalley(rs, sign)
    pi = set(pi_eta)
    levi = [k for k, b in enumerate(rs.positive_roots) if all(c == 0 or i in pi for i, c in enumerate(b))]
    letters = [cb.F(k) for k in levi] + [cb.H(i) for i in sorted(pi)] + [cb.E(k) for k in levi]
    letters.sort()
    monos = []

    def rec(start, cur, wt, deg):
        if not any(wt) and cur:
            monos.append(tuple(cur))
        if deg == max_degree:
            return
        for idx in range(start, len(letters)):
            a = letters[idx]
            nwt = tuple(x + y for x, y in zip(wt, cb.weight(a)))
            rec(idx, cur + [a], nwt, deg + 1)

    rec(0, [], (0,) * rs.rank, 0)
    if not monos:
        return ()
    # columns: monomials; rows: coefficients of [X, m] for X in simple Levi E and F
    eqs: dict = {}
    for col, m in enumerate(monos):
        for i in sorted(pi):
            for gen in (cb.E(i), cb.F(i)):
                x = UEElement(cb, {(gen,) + m: 1}) - UEElement(cb, {m + (gen,): 1})
                for word, c in normal_form(x).terms.items():
                    eqs.setdefault((gen, word), {})[col] = c
    rows = [[Fraction(r.get(c, 0)) for c in range(len(monos))] for r in eqs.values()]
    kern = nullspace(rows, len(monos)) if rows else [[Fraction(int(i == j)) for j in range(len(monos))]
                                                     for i in range(len(monos))]
    return tuple(UEElement(cb, {m: c for m, c in zip(monos, v) if c}) for v in kern)


@dataclass
class UniquenessReport:
    dimension: int
    depth: int
    unknowns: int
    central_elements: int
    expected: int


def pairing_uniqueness_check(eta: EtaCharacter, lam: Sequence, mu: Sequence, depth: int = 4,
                             sign: str = "min+") -> UniquenessReport:
    """Dimension of the space of Whittaker functionals on ``M(mu)`` (truncated at ``depth``)
    compatible with the central character of the Levi datum of ``lambda``."""
    rs = eta.rs
    lam = tuple(Fraction(x) for x in lam)
    mu = tuple(Fraction(x) for x in mu)
    M = DeformedVerma(rs, mu, None, sign)
    cb = M.cb
    basis: list = []
    for nu in depths_up_to(rs.rank, depth):
        basis.extend(weight_space_basis(rs, nu))
    index = {m: i for i, m in enumerate(basis)}
    n = len(basis)
    rows: list[list[Fraction]] = []
    # (1) f(F_beta m) = eta(E_beta) f(m)
    for m in basis:
        h = sum(M.action.depth(m))
        for k, beta in enumerate(rs.positive_roots):
            if h + sum(beta) > depth:
                continue
            row = [Fraction(0)] * n
            for m2, c in M.action.lmul(k, m).items():
                row[index[m2]] += c
            row[index[m]] -= eta.value(k)
            rows.append(row)
    # (2) central elements of the Levi: f(tau(z) m) = (lambda - rho)(p(z)) f(m)
    dmax = coxeter_number_bound(eta)
    zs = list(levi_center(str(rs.cartan_type), eta.pi_eta, dmax, sign)) if dmax else []
    point = [l - 1 for l in lam]
    for z in zs:
        chi = Fraction(0)
        for word, c in normal_form(z).terms.items():
            if all(cb.kind(a) == "H" for a in word):
                t = Fraction(c)
                for a in word:
                    t *= point[a - cb.npos]
                chi += t
        tz = UEElement(cb, {_tau_word(cb, w): c for w, c in z.terms.items()})
        for m in basis:
            y = M.apply_element(tz, VermaVector(M.action.depth(m), {m: Fraction(1)}), at_zero=True)
            row = [Fraction(0)] * n
            for m2, c in y.coeffs.items():
                row[index[m2]] += c
            row[index[m]] -= chi
            rows.append(row)
    # Cartan part of the Levi centre: H with alpha(H) = 0 on the Levi simple roots
    pi = list(eta.pi_eta)
    for hvec in _levi_center_cartan(rs, pi):
        for m in basis:
            nu = M.action.depth(m)
            wt = [mu[i] - 1 - sum(rs.cartan[i][j] * nu[j] for j in range(rs.rank)) for i in range(rs.rank)]
            val = sum((h * (wt[i] - point[i]) for i, h in enumerate(hvec)), Fraction(0))
            if val:
                row = [Fraction(0)] * n
                row[index[m]] = val
                rows.append(row)
    dim = len(nullspace(rows, n))
    W = weyl_group(rs)
    orbit = {tuple(W.elements[u].act(lam)) for u in eta.cosets.subgroup}
    return UniquenessReport(dim, depth, n, len(zs), int(mu in orbit))


def _levi_center_cartan(rs: RootSystem, pi: list[int]) -> list[list[Fraction]]:
    """Basis of ``{H = sum h_i H_i : alpha_k(H) = 0 for k in pi}``."""
    rows = [[Fraction(rs.cartan[i][k]) for i in range(rs.rank)] for k in pi]
    if not rows:
        return [[Fraction(int(i == j)) for j in range(rs.rank)] for i in range(rs.rank)]
    return nullspace(rows, rs.rank)


# -- transport ------------------------------------------------------------------------------

@dataclass
class WhittakerFiltrationTable:
    rs: RootSystem
    lam: tuple
    eta: EtaCharacter
    gamma: tuple
    depth: int
    w: int
    rows: dict           # x -> IntPolynomial, x a longest coset representative
    verma: VermaFiltrationTable
    notes: list[str] = field(default_factory=list)
    strictness: list[StrictnessReport] = field(default_factory=list)

    def row_words(self) -> dict[str, list[int]]:
        W = self.verma.block.W
        return {W.elements[x].word_str(): list(p.coeffs) for x, p in sorted(self.rows.items())}

    def column_sums(self) -> dict[int, int]:
        return {x: p(1) for x, p in self.rows.items()}

    def expected_sums(self) -> dict[int, int]:
        """Transported multiplicities ``[M(w lam_-) : L(x lam_-)] = P_{w0 w, w0 x}(1)`` on representatives."""
        W = self.verma.block.W
        kl = kl_table(str(self.rs.cartan_type))
        w0 = len(W) - 1
        out = {}
        for x in self.eta.cosets.representatives():
            v = kl(W.mul(w0, self.w), W.mul(w0, x))(1)
            if v:
                out[x] = v
        return out

    def parabolic_sums(self, convention: str = DEFAULT_PARABOLIC) -> dict[int, int]:
        W = self.verma.block.W
        out = {}
        for x in self.eta.cosets.representatives():
            if W.bruhat_leq(x, self.w):
                v = parabolic_kl(W, self.eta.pi_eta, x, self.w, convention)(1)
                if v:
                    out[x] = v
        return out


def backelin_transport(table: VermaFiltrationTable, eta: EtaCharacter) -> WhittakerFiltrationTable:
    """Keep the rows of a Verma layer table indexed by longest coset representatives."""
    notes = []
    if table.block is None or table.multiplicities is None:
        raise FiltrationError("transport needs a Verma table with multiplicities (integral regular weight, enough depth)")
    block = table.block
    w = block.w
    if not eta.cosets.is_rep(w):
        wc = eta.cosets.longest_rep(w)
        W = block.W
        notes.append(f"w = {W.elements[w].word_str()} normalised to its coset representative "
                     f"{W.elements[wc].word_str()}")
        lam = tuple(W.elements[wc].act(block.base))
        table = verma_jantzen(table.rs, lam, table.gamma, max(table.depth, make_block(table.rs, lam).required_depth()),
                              table.sign, multiplicities="require")
        block = table.block
        w = wc
    reps = set(eta.cosets.representatives())
    rows = {x: p for x, p in table.multiplicities.items() if x in reps}
    return WhittakerFiltrationTable(table.rs, table.lam, eta, table.gamma, table.depth, w, rows, table, notes)


def whittaker_jantzen(rs: RootSystem | str, lam: Sequence, eta: EtaCharacter | Sequence, w=None,
                      gamma: Sequence | None = None, depth: int | None = None, sign: str = "min+",
                      strictness: bool = False) -> WhittakerFiltrationTable:
    """Jantzen layers of ``M(w^C lam_-, eta)`` where ``lam_-`` is antidominant in ``W lam``.

    ``w`` defaults to the element with ``w lam_- = lam``; it is replaced by its
    longest coset representative.  ``depth`` defaults to the smallest value that
    separates the block.
    """
    if isinstance(rs, str):
        rs = build_root_system(rs)
    if not isinstance(eta, EtaCharacter):
        eta = make_eta(rs, eta)
    block = make_block(rs, lam)
    W = block.W
    notes = []
    if w is None:
        wi = block.w
    elif isinstance(w, str):
        wi = W.parse(w).index
    else:
        wi = getattr(w, "index", w)
    wc = eta.cosets.longest_rep(wi)
    if wc != wi:
        notes.append(f"w = {W.elements[wi].word_str()} normalised to its coset representative "
                     f"{W.elements[wc].word_str()}")
    target = tuple(W.elements[wc].act(block.base))
    need = make_block(rs, target).required_depth()
    if depth is None:
        depth = need
    if depth < need:
        raise FiltrationError(f"increase depth: need depth >= {need} (got {depth})")
    vt = verma_jantzen(rs, target, gamma, depth, sign, multiplicities="require")
    out = backelin_transport(vt, eta)
    out.notes = notes + out.notes
    if strictness:
        reps = eta.cosets.representatives()
        for v in reps:
            if W.bruhat_leq(v, wc):
                out.strictness.append(strictness_check(rs, target, v, wc, gamma, depth, sign))
    return out


def table_invariant_under_rescaling(rs, lam, values, scale: Sequence, depth=None) -> bool:
    a = whittaker_jantzen(rs, lam, values, depth=depth)
    b = whittaker_jantzen(rs, lam, [Fraction(v) * Fraction(c) for v, c in zip(values, scale)], depth=depth)
    return a.row_words() == b.row_words()


__all__ = [
    "EtaCharacter", "make_eta", "WhittakerFunctional", "whittaker_functional", "whittaker_pairing",
    "WhittakerModel", "pairing_uniqueness_check", "backelin_transport", "whittaker_jantzen",
    "WhittakerFiltrationTable", "UniquenessReport", "IntPolynomial", "levi_center",
]
