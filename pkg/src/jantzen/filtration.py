"""Jantzen filtrations of Verma modules from Gram valuations.

Layer ``-i`` of ``M(lambda)`` at depth ``nu`` has dimension
``nu_i - nu_{i+1}`` where ``nu_i`` counts elementary divisors of the Gram
matrix with s-adic valuation at least ``i``.  Multiplicities of simple
modules in each layer come from the character of the layer, expanded first in
Verma characters and then in simple characters via KL values at ``q = 1``.

Block conventions: for integral regular ``lambda`` let ``lam_-`` be the
antidominant weight in ``W lambda``; block members are indexed by ``x`` in
``W`` through ``x lam_-``, and ``lambda = w lam_-``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .dvr import SmithResult, bareiss_det, dvr_valuations, smith_reduce  # noqa: F401
from .klpoly import IntPolynomial, kl_table
from .pbw import depths_up_to, kostant_partition, weight_space_basis
from .rootdata import RootSystem, build_root_system
from .verma import DeformedVerma, VermaVector
from .weyl import WeylGroup, weyl_group


class FiltrationError(RuntimeError):
    """Computation guard: insufficient depth, missing embedding, etc."""


# -- block bookkeeping ------------------------------------------------------------

@dataclass(frozen=True)
class Block:
    rs: RootSystem
    W: WeylGroup
    lam: tuple
    base: tuple  # antidominant lam_-
    w: int       # lambda = w lam_-

    def weight(self, x: int) -> tuple:
        return tuple(self.W.elements[x].act(self.base))

    def depth_of(self, x: int) -> tuple[int, ...]:
        """``lambda - x lam_-`` in simple-root coordinates."""
        diff = tuple(a - b for a, b in zip(self.lam, self.weight(x)))
        r = self.rs.weight_to_root(diff)
        if any(c.denominator != 1 for c in r):
            raise FiltrationError("block weight outside the root lattice coset")
        return tuple(int(c) for c in r)

    def required_depth(self) -> int:
        """Height of ``lambda - lam_-``: all block members below ``lambda`` fit."""
        return sum(self.depth_of(0))


def antidominant_base(rs: RootSystem, lam: Sequence) -> tuple[tuple, tuple[int, ...]]:
    """``(lam_-, word)`` with ``lam = s_word lam_-``; requires integral ``lam``."""
    cur = tuple(Fraction(x) for x in lam)
    word: list[int] = []
    while True:
        i = next((k for k in range(rs.rank) if cur[k].denominator == 1 and cur[k] > 0), None)
        if i is None:
            return cur, tuple(word)
        cur = rs.reflect_weight(i, cur)
        word.append(i)
        if len(word) > 200:
            raise FiltrationError("reflection loop did not terminate")


def make_block(rs: RootSystem, lam: Sequence) -> Block:
    lam = tuple(Fraction(x) for x in lam)
    cls = rs.classify_weight(lam)
    if not (cls.integral and cls.regular):
        raise FiltrationError("block data needs an integral regular weight")
    base, word = antidominant_base(rs, lam)
    W = weyl_group(rs)
    w = W.from_word(word)
    if tuple(w.act(base)) != lam:
        raise FiltrationError("internal: antidominant reduction inconsistent")
    return Block(rs, W, lam, base, w.index)


def block_element_weight(rs: RootSystem, lam: Sequence, x) -> tuple:
    """``x lam_-`` for a Weyl element ``x`` (element or index)."""
    b = make_block(rs, lam)
    return b.weight(getattr(x, "index", x))


# -- tables -----------------------------------------------------------------------

@dataclass
class WeightRow:
    depth: tuple[int, ...]
    weight: tuple                 # lambda - rho - nu, fundamental coordinates
    dim: int
    valuations: tuple             # elementary divisor valuations, None = infinity
    profile: list[int]            # [nu_1, nu_2, ...]

    def nu(self, i: int) -> int:
        if i <= 0:
            return self.dim
        return self.profile[i - 1] if i - 1 < len(self.profile) else 0

    def layer_dims(self) -> list[int]:
        top = len(self.profile)
        return [self.nu(i) - self.nu(i + 1) for i in range(top + 1)]


@dataclass
class VermaFiltrationTable:
    rs: RootSystem
    lam: tuple
    gamma: tuple
    depth: int
    sign: str
    rows: list[WeightRow]
    smith: dict = field(repr=False, default_factory=dict)
    block: Block | None = None
    multiplicities: dict | None = None     # x -> IntPolynomial in q, q^i <-> layer -i
    predicted: dict | None = None
    notes: list[str] = field(default_factory=list)
    degenerate_gamma: list = field(default_factory=list)

    def row(self, depth: Sequence[int]) -> WeightRow:
        key = tuple(depth)
        for r in self.rows:
            if r.depth == key:
                return r
        raise KeyError(key)

    def max_layer(self) -> int:
        return max((len(r.profile) for r in self.rows), default=0)


def _degenerate_directions(rs, lam, gamma):
    out = []
    for beta in rs.positive_roots:
        m = rs.pair(lam, beta)
        if m.denominator == 1 and m > 0 and rs.pair(gamma, beta) == 0:
            out.append(beta)
    return out


def _profile(res: SmithResult) -> list[int]:
    finite = [v for v in res.valuations if v is not None]
    top = max(finite, default=0)
    if any(v is None for v in res.valuations):
        # zero determinant: infinite divisors sit in every piece; report up to top + 1
        top += 1
    return [res.count_at_least(i) for i in range(1, top + 1)]


def valuation_rows(M: DeformedVerma, depth: int) -> tuple[list[WeightRow], dict]:
    rs = M.rs
    rows, smith = [], {}
    for nu in depths_up_to(rs.rank, depth):
        G = M.gram_matrix(nu)
        res = smith_reduce(G)
        smith[nu] = res
        finite = sorted(v for v in res.valuations if v is not None)
        vals = tuple(finite + [None] * (len(res.valuations) - len(finite)))
        shift = rs.root_to_weight(nu)
        weight = tuple(l - 1 - c for l, c in zip(M.lam, shift))
        rows.append(WeightRow(nu, weight, len(G), vals, _profile(res)))
    return rows, smith


def verma_jantzen(rs: RootSystem | str, lam: Sequence, gamma: Sequence | None = None, depth: int = 6,
                  sign: str = "min+", multiplicities: str = "auto") -> VermaFiltrationTable:
    """Valuation profiles on every weight space down to ``depth`` and, for
    integral regular ``lambda``, layer multiplicities of simple modules.

    ``multiplicities``: ``"auto"`` (compute when possible), ``"require"``
    (raise :class:`FiltrationError` when impossible) or ``"off"``.
    """
    if isinstance(rs, str):
        rs = build_root_system(rs)
    if depth < 0:
        raise FiltrationError("depth must be nonnegative")
    M = DeformedVerma(rs, lam, gamma, sign)
    rows, smith = valuation_rows(M, depth)
    table = VermaFiltrationTable(rs, M.lam, M.gamma, depth, sign, rows, smith)
    table.degenerate_gamma = _degenerate_directions(rs, M.lam, M.gamma)
    if table.degenerate_gamma:
        table.notes.append("deformation direction vanishes on a contributing coroot")
    if multiplicities == "off":
        return table
    cls = rs.classify_weight(M.lam)
    if not (cls.integral and cls.regular):
        msg = "multiplicities omitted: weight is not integral regular"
        if multiplicities == "require":
            raise FiltrationError(msg)
        table.notes.append(msg)
        return table
    block = make_block(rs, M.lam)
    table.block = block
    need = block.required_depth()
    if depth < need:
        msg = f"increase depth: multiplicities need depth >= {need} (got {depth})"
        if multiplicities == "require":
            raise FiltrationError(msg)
        table.notes.append(msg)
        return table
    table.multiplicities = layer_multiplicities(table)
    table.predicted = predicted_multiplicities(block)
    return table


def verma_coefficients(table: VermaFiltrationTable, layer: int) -> dict[tuple, int]:
    """Coefficients of ``ch gr_{-layer}`` in the Verma-character basis, by depth."""
    rs = table.rs
    g = {r.depth: r.nu(layer) - r.nu(layer + 1) for r in table.rows}
    for beta in rs.positive_roots:
        new = {}
        for nu, val in g.items():
            prev = tuple(a - b for a, b in zip(nu, beta))
            new[nu] = val - g.get(prev, 0)
        g = new
    return {nu: c for nu, c in g.items() if c}


def layer_multiplicities(table: VermaFiltrationTable) -> dict[int, IntPolynomial]:
    block = table.block
    assert block is not None
    W = block.W
    kl = kl_table(str(table.rs.cartan_type))
    w0 = len(W) - 1
    depth_to_x = {}
    for x in range(len(W)):
        d = block.depth_of(x)
        if all(c >= 0 for c in d) and sum(d) <= table.depth:
            depth_to_x[d] = x
    mult: dict[int, list[int]] = {x: [] for x in range(len(W))}
    for layer in range(table.max_layer() + 1):
        coeffs = verma_coefficients(table, layer)
        stray = [nu for nu in coeffs if nu not in depth_to_x]
        if stray:
            raise FiltrationError(f"layer {layer} has Verma coefficients off the block at depths {stray}")
        c = {depth_to_x[nu]: v for nu, v in coeffs.items()}
        for x in range(len(W)):
            wx0 = W.mul(w0, x)
            tot = 0
            for y, cy in c.items():
                # [M(y lam_-) : L(x lam_-)] = P_{w0 y, w0 x}(1)
                p = kl(W.mul(w0, y), wx0)
                if not p.is_zero():
                    tot += cy * p(1)
            mult[x].append(tot)
    out = {}
    for x, coeffs in mult.items():
        if any(v < 0 for v in coeffs):
            raise FiltrationError(f"negative multiplicity for {W.elements[x].word_str()}: {coeffs}")
        p = IntPolynomial(coeffs)
        if not p.is_zero():
            out[x] = p
    return out


def predicted_multiplicities(block: Block) -> dict[int, IntPolynomial]:
    """``q^{l(w)-l(x)} P_{w0 w, w0 x}(q^{-2})``: the layer polynomial of ``L(x lam_-)`` in ``M(lambda)``."""
    W = block.W
    kl = kl_table(str(block.rs.cartan_type))
    w0 = len(W) - 1
    w = block.w
    out = {}
    for x in range(len(W)):
        if not W.bruhat_leq(x, w):
            continue
        p = kl(W.mul(w0, w), W.mul(w0, x))
        d = W.length(w) - W.length(x)
        coeffs = [0] * (d + 1)
        for k, c in enumerate(p.coeffs):
            coeffs[d - 2 * k] += c
        out[x] = IntPolynomial(coeffs)
    return out


# -- sum formula ----------------------------------------------------------------------

@dataclass
class SumFormulaReport:
    lam: tuple
    depth: int
    passed: bool
    mismatches: list
    det_mismatches: list

    @property
    def ok(self) -> bool:
        return self.passed and not self.det_mismatches


def sum_formula_check(rs: RootSystem | str, lam: Sequence, gamma: Sequence | None = None, depth: int = 6,
                      sign: str = "min+", check_det_depth: int = 0) -> SumFormulaReport:
    """Compare ``sum_i nu_i(mu)`` with ``sum_{alpha, m = alpha^vee(lam) > 0} P(nu - m alpha)``.

    With ``check_det_depth > 0`` the valuation of the Bareiss determinant is
    also compared with ``sum_i nu_i`` on depths of height at most that bound.
    """
    if isinstance(rs, str):
        rs = build_root_system(rs)
    table = verma_jantzen(rs, lam, gamma, depth, sign, multiplicities="off")
    contributing = []
    for beta in rs.positive_roots:
        m = rs.pair(table.lam, beta)
        if m.denominator == 1 and m > 0:
            contributing.append((beta, int(m)))
    mismatches, det_bad = [], []
    M = DeformedVerma(rs, table.lam, table.gamma, sign) if check_det_depth else None
    for row in table.rows:
        lhs = sum(row.profile) if all(v is not None for v in row.valuations) else None
        rhs = sum(kostant_partition(rs, tuple(a - m * b for a, b in zip(row.depth, beta)))
                  for beta, m in contributing)
        if lhs != rhs:
            mismatches.append((row.depth, lhs, rhs))
        if check_det_depth and sum(row.depth) <= check_det_depth:
            dv = bareiss_det(M.gram_matrix(row.depth)).valuation()
            if dv != lhs:
                det_bad.append((row.depth, dv, lhs))
    return SumFormulaReport(table.lam, depth, not mismatches, mismatches, det_bad)


# -- strictness -------------------------------------------------------------------------

@dataclass
class StrictnessReport:
    v: str
    w: str
    shift: int | None
    expected_shift: int
    holds: bool
    checked_depths: int
    failures: list


def _rank(vectors: list[Sequence[Fraction]]) -> int:
    from .dvr import _rank_fraction
    return _rank_fraction([list(map(Fraction, v)) for v in vectors]) if vectors else 0


def _in_span(vec, span) -> bool:
    return _rank(list(span) + [vec]) == _rank(list(span))


def strictness_check(rs: RootSystem | str, lam: Sequence, v, w, gamma: Sequence | None = None, depth: int = 6,
                     sign: str = "min+", shift: int | None = None) -> StrictnessReport:
    """Check that the Jantzen filtration of ``M(v lam_-)`` is the one induced
    from ``M(w lam_-)`` along the embedding, shifted by a constant.

    ``v`` and ``w`` are Weyl elements (or indices) of the block of ``lam``.
    The shift is the deepest ambient piece containing the singular vector;
    passing ``shift`` overrides it (useful as a negative control).
    """
    if isinstance(rs, str):
        rs = build_root_system(rs)
    block = make_block(rs, lam)
    W = block.W
    vi, wi = getattr(v, "index", v), getattr(w, "index", w)
    vname, wname = W.elements[vi].word_str(), W.elements[wi].word_str()
    expected = W.length(wi) - W.length(vi)
    if not W.bruhat_leq(vi, wi):
        raise FiltrationError(f"no embedding: {vname} is not below {wname} in the Bruhat order")
    lam_w, lam_v = block.weight(wi), block.weight(vi)
    delta = tuple(a - b for a, b in zip(block.depth_of(vi), block.depth_of(wi)))
    if sum(delta) > depth:
        raise FiltrationError(f"increase depth: embedding sits at height {sum(delta)} > {depth}")
    Mw = DeformedVerma(rs, lam_w, gamma, sign)
    Mv = DeformedVerma(rs, lam_v, gamma, sign)
    sing = Mw.singular_vectors(delta)
    if len(sing) != 1:
        raise FiltrationError(f"expected a unique singular vector at depth {delta}, found {len(sing)}")
    sv = sing[0]
    # shift: deepest Jantzen piece of M(w lam_-) containing the singular vector
    res_w: dict = {}

    def smith_w(nu):
        if nu not in res_w:
            res_w[nu] = smith_reduce(Mw.gram_matrix(nu))
        return res_w[nu]

    def piece_w(nu, i):
        return smith_w(nu).piece(i) if i > 0 else [tuple(int(a == b) for b in range(len(weight_space_basis(rs, nu))))
                                                   for a in range(len(weight_space_basis(rs, nu)))]

    svec = sv.as_list(rs)
    top = max((x for x in smith_w(delta).valuations if x is not None), default=0) + 1
    c = 0
    for i in range(1, top + 1):
        if _in_span(svec, piece_w(delta, i)):
            c = i
        else:
            break
    if shift is not None:
        c = shift
    failures = []
    checked = 0
    for nu in depths_up_to(rs.rank, depth - sum(delta)):
        amb = tuple(a + b for a, b in zip(delta, nu))
        basis_v = weight_space_basis(rs, nu)
        # image of depth-nu basis of M(v lam_-) inside M(w lam_-) at s = 0
        image = []
        for mono in basis_v:
            y = sv
            for k in reversed(_word_of(mono)):
                y = Mw.apply_letter(Mw.cb.F(k), y, at_zero=True)
            image.append(y.as_list(rs))
        if _rank(image) != len(basis_v):
            failures.append((nu, "embedding not injective"))
            continue
        res_v = smith_reduce(Mv.gram_matrix(nu))
        top_i = max([x for x in res_v.valuations if x is not None] +
                    [x for x in smith_w(amb).valuations if x is not None] + [0]) + 2
        for i in range(0, top_i + 1):
            piece = piece_w(amb, i + c)
            inter = len(image) + len(piece) - _rank(image + list(piece))
            intrinsic = res_v.count_at_least(i) if i > 0 else len(basis_v)
            if inter != intrinsic:
                failures.append((nu, i, inter, intrinsic))
        checked += 1
    holds = not failures
    return StrictnessReport(vname, wname, c, expected, holds and c == expected, checked, failures)


def _word_of(mono) -> list[int]:
    out = []
    for k, e in enumerate(mono):
        out.extend([k] * e)
    return out


def bruhat_pairs(W: WeylGroup) -> list[tuple[int, int]]:
    return [(v, w) for w in range(len(W)) for v in range(len(W)) if W.bruhat_leq(v, w)]


def layer_table(table: VermaFiltrationTable) -> dict[str, list[int]]:
    """Multiplicities keyed by reduced word, coefficient lists indexed by layer."""
    if table.multiplicities is None or table.block is None:
        return {}
    W = table.block.W
    return {W.elements[x].word_str(): list(p.coeffs) for x, p in sorted(table.multiplicities.items())}


def character_identity(table: VermaFiltrationTable) -> bool:
    """Sum over layers of layer dimensions equals the Kostant partition value."""
    return all(sum(r.layer_dims()) == kostant_partition(table.rs, r.depth) for r in table.rows)

