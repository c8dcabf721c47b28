from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from jantzen.filtration import (
    FiltrationError,
    antidominant_base,
    bruhat_pairs,
    character_identity,
    layer_table,
    make_block,
    strictness_check,
    sum_formula_check,
    verma_jantzen,
)
from jantzen.klpoly import IntPolynomial
from jantzen.pbw import kostant_partition
from jantzen.rootdata import build_root_system
from jantzen.weyl import weyl_group


def test_sl2_example():
    t = verma_jantzen("A1", (2,), depth=6)
    assert [r.profile for r in t.rows] == [[], [], [1], [1], [1], [1], [1]]
    assert layer_table(t) == {"e": [0, 1], "s1": [1]}
    assert t.multiplicities == t.predicted
    assert [r.weight for r in t.rows][:3] == [(1,), (-1,), (-3,)]


@pytest.mark.parametrize("ct,lam", [("A2", (-1, -1)), ("A2", (-2, -3)), ("B2", (-1, -2)),
                                    ("A2", (Fraction(1, 2), Fraction(1, 3)))])
def test_simple_vermas_have_trivial_filtration(ct, lam):
    t = verma_jantzen(ct, lam, depth=5)
    assert all(r.profile == [] for r in t.rows)
    assert character_identity(t)


def test_a2_rho_first_layer_is_maximal_submodule():
    rs = build_root_system("A2")
    t = verma_jantzen(rs, rs.rho, depth=6)
    for r in t.rows:
        assert r.nu(1) == (kostant_partition(rs, r.depth) if any(r.depth) else 0)


def test_dominant_weight_quotient_is_finite_dimensional():
    # lambda - rho = omega_1: L is the 3-dimensional representation
    t = verma_jantzen("A2", (2, 1), depth=5)
    rs = t.rs
    in_l = {(0, 0), (1, 0), (1, 1)}
    for r in t.rows:
        assert r.nu(1) == kostant_partition(rs, r.depth) - (r.depth in in_l)
    assert t.multiplicities == t.predicted


@pytest.mark.parametrize("ct,lam", [("A2", (-2, 1)), ("A2", (1, -2)), ("A2", (3, -1)), ("B2", (1, 1)),
                                    ("B2", (-1, 3)), ("B2", (3, -1)), ("A1", (4,))])
def test_multiplicities_match_kl_prediction(ct, lam):
    rs = build_root_system(ct)
    need = make_block(rs, lam).required_depth()
    t = verma_jantzen(rs, lam, depth=need, multiplicities="require")
    assert t.multiplicities == t.predicted
    assert character_identity(t)


def test_a3_rho_has_nontrivial_kl_layer():
    rs = build_root_system("A3")
    t = verma_jantzen(rs, rs.rho, depth=make_block(rs, rs.rho).required_depth(), multiplicities="require")
    assert t.multiplicities == t.predicted
    W = t.block.W
    # P_{w0 w0, w0 x}(q) = 1 + q splits L(x lam_-) over two layers
    split = [x for x, p in t.multiplicities.items() if sum(1 for c in p.coeffs if c) > 1]
    assert split and all(t.multiplicities[x](1) == 2 for x in split)
    assert {W.elements[x].word_str() for x in split} == {"s1 s3", "s2"}


def test_singular_weight_guards():
    t = verma_jantzen("A2", (0, 1), depth=4)
    assert t.multiplicities is None and any("not integral regular" in n for n in t.notes)
    with pytest.raises(FiltrationError):
        verma_jantzen("A2", (0, 1), depth=4, multiplicities="require")


def test_depth_guard():
    t = verma_jantzen("A2", (1, 1), depth=3)
    assert t.multiplicities is None and any("increase depth" in n for n in t.notes)
    with pytest.raises(FiltrationError, match="depth >= 4"):
        verma_jantzen("A2", (1, 1), depth=3, multiplicities="require")
    with pytest.raises(FiltrationError):
        verma_jantzen("A2", (1, 1), depth=-1)


def test_degenerate_gamma_flagged():
    t = verma_jantzen("A2", (1, 1), gamma=(1, -1), depth=2, multiplicities="off")
    assert t.degenerate_gamma == [(1, 1)]


@settings(max_examples=8, deadline=None)
@given(st.fractions(min_value=Fraction(1, 5), max_value=5, max_denominator=5))
def test_gamma_rescaling_invariance(c):
    rs = build_root_system("A2")
    a = verma_jantzen(rs, rs.rho, depth=4)
    b = verma_jantzen(rs, rs.rho, gamma=(c, c), depth=4)
    assert [r.profile for r in a.rows] == [r.profile for r in b.rows]
    assert a.multiplicities == b.multiplicities


@pytest.mark.parametrize("ct,lam", [("A2", (1, 1)), ("A2", (Fraction(1, 2), 1)), ("B2", (2, -1)),
                                    ("A2", (3, 0)), ("G2", (1, 1))])
def test_sum_formula(ct, lam):
    rep = sum_formula_check(ct, lam, depth=4, check_det_depth=4)
    assert rep.ok, (rep.mismatches, rep.det_mismatches)


def test_antidominant_base():
    rs = build_root_system("B2")
    base, word = antidominant_base(rs, (2, 1))
    assert rs.classify_weight(base).antidominant
    W = weyl_group(rs)
    assert W.from_word(word).act(base) == (2, 1)
    with pytest.raises(FiltrationError):
        make_block(rs, (0, 1))


def test_strictness_all_pairs_b2():
    rs = build_root_system("B2")
    W = weyl_group(rs)
    for v, w in bruhat_pairs(W):
        rep = strictness_check(rs, rs.rho, v, w, depth=7)
        assert rep.holds and rep.shift == W.length(w) - W.length(v)


def test_strictness_negative_control():
    rs = build_root_system("A2")
    W = weyl_group(rs)
    rep = strictness_check(rs, rs.rho, W.parse("s1"), W.parse("w0"), depth=6, shift=1)
    assert not rep.holds and rep.failures
    with pytest.raises(FiltrationError, match="Bruhat"):
        strictness_check(rs, rs.rho, W.parse("s1"), W.parse("s2"), depth=6)
    with pytest.raises(FiltrationError, match="increase depth"):
        strictness_check(rs, rs.rho, W.parse("e"), W.parse("w0"), depth=2)


def test_predicted_grading_example():
    rs = build_root_system("A2")
    t = verma_jantzen(rs, rs.rho, depth=4)
    W = t.block.W
    assert t.predicted[W.parse("e").index] == IntPolynomial([0, 0, 0, 1])
    assert t.predicted[W.parse("w0").index] == IntPolynomial([1])
