"""Acceptance suites shared by ``jantzen check`` and the test-suite.

Every suite returns a list of :class:`CheckResult`; details are short,
deterministic strings (no timings, no memory addresses).
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from itertools import product

from .dvr import Poly
from .filtration import (
    bruhat_pairs,
    layer_table,
    make_block,
    strictness_check,
    sum_formula_check,
    verma_jantzen,
)
from .klpoly import parabolic_kl
from .pbw import SIGN_CONVENTIONS, UEElement, depths_up_to, weight_space_basis
from .report import num, verma_payload
from .rootdata import build_root_system
from .verma import DeformedVerma, VermaVector, sl2_gram_closed_form
from .weyl import weyl_group
from .whittaker import (
    WhittakerModel,
    make_eta,
    pairing_uniqueness_check,
    whittaker_jantzen,
)


@dataclass(frozen=True)
class CheckResult:
    criterion: int
    name: str
    passed: bool
    detail: str

    def as_dict(self) -> dict:
        return {"criterion": self.criterion, "name": self.name, "passed": self.passed, "detail": self.detail}


# -- 1: sl2 closed form --------------------------------------------------------------------------

def suite_sl2() -> list[CheckResult]:
    out = []
    for n in (1, 2, 3):
        depth = 2 * n + 4
        table = verma_jantzen("A1", (n,), depth=depth)
        M = DeformedVerma(build_root_system("A1"), (n,))
        ok_profile = all(r.nu(1) == int(r.depth[0] >= n) and r.nu(2) == 0 for r in table.rows)
        ok_gram = all(M.gram_matrix((k,))[0][0] == sl2_gram_closed_form(n, k) for k in range(depth + 1))
        layers = layer_table(table)
        ok_layers = layers == {"e": [0, 1], "s1": [1]}
        passed = ok_profile and ok_gram and ok_layers
        out.append(CheckResult(1, f"sl2 n={n} depth={depth}", passed,
                               f"profile={ok_profile} gram={ok_gram} layers={layers}"))
    return out


# -- 2: sum formula ---------------------------------------------------------------------------------

def bounded_weights(ct: str, bound: int = 3) -> list[tuple[int, ...]]:
    """Integral weights with ``|alpha^vee(lambda)| <= bound`` for every root."""
    rs = build_root_system(ct)
    out = []
    for lam in product(range(-bound, bound + 1), repeat=rs.rank):
        if all(abs(rs.pair(lam, b)) <= bound for b in rs.positive_roots):
            out.append(lam)
    return out


def suite_sum(depth: int = 6, det_depth: int = 6) -> list[CheckResult]:
    out = []
    for ct in ("A1", "A2", "B2"):
        bad, det_bad, count = [], [], 0
        for lam in bounded_weights(ct):
            rep = sum_formula_check(ct, lam, depth=depth, check_det_depth=det_depth)
            count += 1
            if not rep.passed:
                bad.append(lam)
            if rep.det_mismatches:
                det_bad.append(lam)
        out.append(CheckResult(2, f"sum formula {ct} depth={depth}", not bad and not det_bad,
                               f"weights={count} sum_failures={bad} det_failures={det_bad}"))
    return out


# -- 3: strictness ----------------------------------------------------------------------------------

def suite_strictness(depth: int = 6) -> list[CheckResult]:
    rs = build_root_system("A2")
    W = weyl_group(rs)
    bad = []
    pairs = bruhat_pairs(W)
    for v, w in pairs:
        rep = strictness_check(rs, rs.rho, v, w, depth=depth)
        if not rep.holds:
            bad.append((rep.v, rep.w, rep.shift, rep.expected_shift))
    return [CheckResult(3, f"strictness A2 lambda=rho depth={depth}", not bad,
                        f"pairs={len(pairs)} failures={bad}")]


# -- 4: KL layer multiplicities -----------------------------------------------------------------------

def suite_kl() -> list[CheckResult]:
    out = []
    for ct in ("A2", "B2"):
        rs = build_root_system(ct)
        depth = make_block(rs, rs.rho).required_depth()
        table = verma_jantzen(rs, rs.rho, depth=depth, multiplicities="require")
        ok = table.multiplicities == table.predicted
        out.append(CheckResult(4, f"KL layer multiplicities {ct} lambda=rho depth={depth}", ok,
                               f"layers={layer_table(table)}"))
    return out


# -- 5: Whittaker degenerations ------------------------------------------------------------------------

def suite_whittaker() -> list[CheckResult]:
    out = []
    for ct in ("A1", "A2", "B2"):
        rs = build_root_system(ct)
        wt = whittaker_jantzen(rs, rs.rho, [0] * rs.rank)
        vt = verma_jantzen(rs, rs.rho, depth=wt.depth)
        same = wt.row_words() == layer_table(vt) and verma_payload(wt.verma) == verma_payload(vt)
        out.append(CheckResult(5, f"eta=0 reproduces Verma table {ct}", same, f"rows={wt.row_words()}"))
    for ct in ("A1", "A2"):
        rs = build_root_system(ct)
        wt = whittaker_jantzen(rs, rs.rho, [1] * rs.rank, w="w0")
        w0 = weyl_group(rs).longest.word_str()
        ok = wt.row_words() == {w0: [1]}
        out.append(CheckResult(5, f"nondegenerate eta {ct} w=w0 is one layer", ok, f"rows={wt.row_words()}"))
    rs = build_root_system("A2")
    W = weyl_group(rs)
    wt = whittaker_jantzen(rs, rs.rho, [1, 0], w="w0")
    rows = wt.row_words()
    sums = wt.column_sums()
    par = {x: parabolic_kl(W, wt.eta.pi_eta, x, wt.w)(1) for x in wt.eta.cosets.representatives()}
    ok = (sorted(rows) == sorted(["s1", "s1 s2", "s1 s2 s1"]) and sums == par
          and sums == wt.expected_sums())
    out.append(CheckResult(5, "A2 Pi_eta={a1} lambda=rho three rows", ok,
                           f"rows={rows} sums={ {W.elements[x].word_str(): v for x, v in sorted(sums.items())} }"))
    return out


# -- 6: pairings ---------------------------------------------------------------------------------------

def verma_contravariance(ct: str, trials: int = 200, max_depth: int = 4, seed: int = 0) -> tuple[int, int]:
    """Random instances of ``<g x, y> = <x, tau(g) y>`` for the deformed Shapovalov form."""
    rs = build_root_system(ct)
    M = DeformedVerma(rs, tuple(range(1, rs.rank + 1)))
    cb = M.cb
    rng = random.Random(seed)
    depths = list(depths_up_to(rs.rank, max_depth))
    done = bad = 0
    while done < trials:
        g = rng.randrange(cb.dim)
        nu = rng.choice(depths)
        wt = cb.weight(g)
        nu2 = tuple(a - b for a, b in zip(nu, wt))
        if any(x < 0 for x in nu2) or sum(nu2) > max_depth:
            continue
        bx = weight_space_basis(rs, nu)
        by = weight_space_basis(rs, nu2)
        mx, my = rng.choice(bx), rng.choice(by)
        gx = M.apply_letter(g, VermaVector(nu, {mx: Poly([1])}))
        tg = cb.E(cb.root_of(g)) if cb.kind(g) == "F" else (cb.F(cb.root_of(g)) if cb.kind(g) == "E" else g)
        ty = M.apply_letter(tg, VermaVector(nu2, {my: Poly([1])}))
        G2, G1 = M.gram_matrix(nu2), M.gram_matrix(nu)
        jy = by.index(my)
        jx = bx.index(mx)
        lhs = sum((c * G2[by.index(m)][jy] for m, c in gx.coeffs.items()), Poly())
        rhs = sum((c * G1[jx][bx.index(m)] for m, c in ty.coeffs.items()), Poly())
        done += 1
        bad += lhs != rhs
    return done, bad


def whittaker_contravariance(ct: str, values, trials: int = 200, max_depth: int = 4, seed: int = 0) -> tuple[int, int]:
    eta = make_eta(ct, values)
    rs = eta.rs
    wm = WhittakerModel(eta, tuple(range(1, rs.rank + 1)))
    cb = wm.cb
    rng = random.Random(seed)
    done = bad = 0
    while done < trials:
        g = rng.randrange(cb.dim)
        fw = tuple(sorted(rng.randrange(cb.npos) for _ in range(rng.randrange(3))))
        hw = tuple(sorted(cb.H(i) for i in eta.pi_eta if rng.random() < 0.5))
        up = tuple(rng.randrange(2) for _ in range(cb.npos))
        if sum(wm.M.action.depth(up)) + sum(sum(rs.positive_roots[k]) for k in fw) > max_depth:
            continue
        lhs, rhs = wm.pairing_after(UEElement.gen(cb, g), UEElement(cb, {fw + hw: 1}), up)
        done += 1
        bad += lhs != rhs
    return done, bad


def suite_pairing(trials: int = 200) -> list[CheckResult]:
    out = []
    for ct, vals in (("A1", [1]), ("A2", [1, 0]), ("B2", [0, 1])):
        n1, b1 = verma_contravariance(ct, trials)
        n2, b2 = whittaker_contravariance(ct, vals, trials)
        out.append(CheckResult(6, f"contravariance {ct}", b1 == 0 and b2 == 0,
                               f"verma {n1} instances, {b1} failures; whittaker eta={vals} {n2} instances, {b2} failures"))
    rs = build_root_system("A2")
    eta = make_eta(rs, [1, 0])
    lam = rs.rho
    cases = [(lam, 1), ((-1, 2), 1), ((2, -1), 0), ((-1, -1), 0), ((1, -2), 0)]
    got = []
    ok = True
    for mu, want in cases:
        r = pairing_uniqueness_check(eta, lam, mu, depth=4)
        got.append((mu, r.dimension))
        ok &= r.dimension == want == r.expected
    out.append(CheckResult(6, "pairing uniqueness A2 Pi_eta={a1} depth=4", ok, f"dims={got}"))
    return out


# -- 7: convention independence ------------------------------------------------------------------------

def suite_convention() -> list[CheckResult]:
    out = []
    for ct in ("A2", "B2"):
        rs = build_root_system(ct)
        depth = make_block(rs, rs.rho).required_depth()
        payloads = {}
        for sign in SIGN_CONVENTIONS:
            t = verma_jantzen(rs, rs.rho, depth=depth, sign=sign)
            payloads[sign] = verma_payload(t)
        ok = all(p == payloads[SIGN_CONVENTIONS[0]] for p in payloads.values())
        out.append(CheckResult(7, f"Chevalley sign flip {ct}", ok, f"conventions={list(SIGN_CONVENTIONS)}"))
        t1 = verma_jantzen(rs, rs.rho, depth=depth)
        t2 = verma_jantzen(rs, rs.rho, gamma=[Fraction(3, 2) * g for g in rs.rho], depth=depth)
        ok = [r.profile for r in t1.rows] == [r.profile for r in t2.rows] and t1.multiplicities == t2.multiplicities
        out.append(CheckResult(7, f"gamma rescaling {ct}", ok, "gamma -> 3/2 gamma"))
    for ct, a, b in (("A2", [1, 0], [Fraction(5, 2), 0]), ("A2", [1, 1], [-3, Fraction(2, 7)]),
                     ("B2", [0, 1], [0, -4]), ("A1", [1], [Fraction(-7, 3)])):
        rs = build_root_system(ct)
        ta = whittaker_jantzen(rs, rs.rho, a, w="w0")
        tb = whittaker_jantzen(rs, rs.rho, b, w="w0")
        tc = whittaker_jantzen(rs, rs.rho, a, w="w0", sign="min-")
        ok = ta.row_words() == tb.row_words() == tc.row_words()
        out.append(CheckResult(7, f"eta rescaling {ct} {[num(x) for x in a]}->{[num(x) for x in b]}", ok, f"rows={ta.row_words()}"))
    return out


SUITES = {
    "sl2": suite_sl2,
    "sum": suite_sum,
    "strictness": suite_strictness,
    "kl": suite_kl,
    "whittaker": suite_whittaker,
    "pairing": suite_pairing,
    "convention": suite_convention,
}


def run_suites(names: list[str]) -> list[CheckResult]:
    results = []
    for name in names:
        results.extend(SUITES[name]())
    return results
