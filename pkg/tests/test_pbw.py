from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from jantzen.pbw import (
    SIGN_CONVENTIONS,
    ChevalleyError,
    PBWMonomial,
    UEElement,
    build_chevalley,
    depths_up_to,
    eta_eval,
    kostant_partition,
    multiply,
    normal_form,
    transpose,
    weight_space_basis,
)
from jantzen.rootdata import build_root_system

TYPES = ["A1", "A2", "A3", "B2", "B3", "C2", "C3", "D4", "G2"]


@pytest.mark.parametrize("ct", TYPES)
@pytest.mark.parametrize("sign", SIGN_CONVENTIONS)
def test_chevalley_basis_verifies(ct, sign):
    cb = build_chevalley(ct, sign)
    cb.verify()  # raises on failure
    assert cb.dim == 2 * len(cb.rs.positive_roots) + cb.rs.rank


def test_unknown_sign_rejected():
    with pytest.raises(ChevalleyError):
        build_chevalley("A2", "bogus")


def test_sign_conventions_differ_but_magnitudes_agree():
    rs = build_root_system("B2")
    tables = [build_chevalley(rs, s) for s in SIGN_CONVENTIONS]
    n = len(rs.positive_roots)
    consts = [[cb.structure_constant(k, j) for k in range(n) for j in range(n)] for cb in tables]
    assert len({tuple(c) for c in consts}) > 1
    assert len({tuple(abs(x) for x in c) for c in consts}) == 1


def test_b2_structure_constants():
    cb = build_chevalley("B2")
    assert cb.structure_constant(0, 1) == 1
    assert cb.structure_constant(1, 2) == 2


@pytest.mark.parametrize("ct", ["A2", "B2", "G2"])
def test_e_f_commutator_is_coroot(ct):
    cb = build_chevalley(ct)
    for i in range(cb.rank):
        e, f = UEElement.gen(cb, cb.E(i)), UEElement.gen(cb, cb.F(i))
        assert multiply(e, f) - multiply(f, e) == UEElement.gen(cb, cb.H(i))


def _words(cb, max_len=3):
    letters = st.integers(0, cb.dim - 1)
    word = st.lists(letters, max_size=max_len).map(tuple)
    coeff = st.integers(-3, 3)
    return st.dictionaries(word, coeff, max_size=3).map(lambda t: UEElement(cb, t))


CB = build_chevalley("B2")


@settings(max_examples=40, deadline=None)
@given(_words(CB), _words(CB), _words(CB))
def test_normal_form_associative_and_idempotent(x, y, z):
    lhs = multiply(multiply(x, y), z)
    rhs = multiply(x, multiply(y, z))
    assert lhs.terms == rhs.terms
    assert lhs.is_normal()
    assert normal_form(lhs).terms == lhs.terms


@settings(max_examples=40, deadline=None)
@given(_words(CB), _words(CB))
def test_transpose_is_antiautomorphism(x, y):
    assert transpose(multiply(x, y)).terms == multiply(transpose(y), transpose(x)).terms
    assert transpose(transpose(x)).terms == normal_form(x).terms


def test_pbw_monomial_view():
    cb = build_chevalley("A2")
    m = PBWMonomial(cb, (0, 0, 2, cb.H(1), cb.E(0)))
    assert m.f_exponents == (2, 0, 1)
    assert m.h_exponents == (0, 1)
    assert m.e_exponents == (1, 0, 0)


@pytest.mark.parametrize("ct,nu,count", [
    ("A2", (1, 1), 2), ("A2", (2, 2), 3), ("B2", (1, 2), 3), ("G2", (1, 1), 2),
    ("A3", (1, 1, 1), 4), ("A1", (5,), 1), ("A2", (2, 0), 1), ("A2", (-1, 0), 0)])
def test_kostant_partition(ct, nu, count):
    rs = build_root_system(ct)
    assert kostant_partition(rs, nu) == count
    basis = weight_space_basis(rs, nu)
    assert len(basis) == count
    for e in basis:
        assert tuple(sum(c * b[i] for c, b in zip(e, rs.positive_roots)) for i in range(rs.rank)) == nu


def test_depths_up_to_sorted_by_height():
    ds = depths_up_to(2, 3)
    assert len(ds) == 10 and ds[0] == (0, 0)
    assert [sum(d) for d in ds] == sorted(sum(d) for d in ds)


def test_eta_eval_is_a_character():
    cb = build_chevalley("A2")
    vals = [Fraction(2), Fraction(3)]
    e1, e2 = UEElement.gen(cb, cb.E(0)), UEElement.gen(cb, cb.E(1))
    assert eta_eval(cb, vals, multiply(e1, e2)) == 6
    # eta kills [n, n]
    assert eta_eval(cb, vals, multiply(e1, e2) - multiply(e2, e1)) == 0
    with pytest.raises(ValueError):
        eta_eval(cb, vals, UEElement.gen(cb, cb.F(0)))
