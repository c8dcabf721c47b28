from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from jantzen.rootdata import (
    CLASSICAL_POSITIVE_COUNT,
    CartanType,
    RootDataError,
    build_root_system,
    cartan_matrix,
    parse_weight,
)

TYPES = ["A1", "A2", "A3", "A4", "B2", "B3", "B4", "C2", "C3", "C4", "D3", "D4", "G2"]


@pytest.mark.parametrize("ct", TYPES)
def test_positive_root_count(ct):
    rs = build_root_system(ct)
    fam, n = ct[0], int(ct[1:])
    assert len(rs.positive_roots) == CLASSICAL_POSITIVE_COUNT[fam](n)


@pytest.mark.parametrize("ct", TYPES)
def test_simple_roots_first_and_height_order(ct):
    rs = build_root_system(ct)
    n = rs.rank
    assert rs.simple_roots == tuple(tuple(int(i == j) for j in range(n)) for i in range(n))
    heights = [rs.height(b) for b in rs.positive_roots]
    assert heights == sorted(heights)
    assert rs.highest_root() == rs.positive_roots[-1]


@pytest.mark.parametrize("ct", TYPES)
def test_rho_pairs_to_one_with_simple_coroots(ct):
    rs = build_root_system(ct)
    for a in rs.simple_roots:
        assert rs.pair(rs.rho, a) == 1
    # rho pairs with beta^vee to the height of beta^vee
    for b in rs.positive_roots:
        assert rs.pair(rs.rho, b) == sum(rs.coroot(b))


@pytest.mark.parametrize("ct", TYPES)
def test_root_weight_conversion_round_trip(ct):
    rs = build_root_system(ct)
    for b in rs.positive_roots:
        assert rs.weight_to_root(rs.root_to_weight(b)) == tuple(Fraction(x) for x in b)
        assert rs.pair(rs.root_to_weight(b), b) == 2


def test_cartan_conventions():
    # a[i][j] = <alpha_j, alpha_i^vee>
    assert cartan_matrix(CartanType("B", 2)) == ((2, -1), (-2, 2))
    assert cartan_matrix(CartanType("C", 2)) == ((2, -2), (-1, 2))
    assert cartan_matrix(CartanType("G", 2)) == ((2, -3), (-1, 2))
    rs = build_root_system("B2")
    assert rs.norm2((1, 0)) > rs.norm2((0, 1))  # alpha_1 long in B2


@pytest.mark.parametrize("bad", ["E6", "A0", "B1", "D2", "G3", "A9", "X", ""])
def test_invalid_types_rejected(bad):
    with pytest.raises(RootDataError):
        build_root_system(bad)


def test_parse_weight():
    assert parse_weight("1,0,-2", 3) == (1, 0, -2)
    assert parse_weight("1/2 1", 2) == (Fraction(1, 2), 1)
    with pytest.raises(RootDataError):
        parse_weight("1,2", 3)
    with pytest.raises(RootDataError):
        parse_weight("a,b", 2)


def test_classify_weight():
    rs = build_root_system("A2")
    c = rs.classify_weight(rs.rho)
    assert c.integral and c.regular and not c.antidominant
    c = rs.classify_weight((-1, -1))
    assert c.antidominant and c.regular
    c = rs.classify_weight((0, 1))
    assert not c.regular
    c = rs.classify_weight((Fraction(1, 2), 0))
    assert not c.integral


weights = st.lists(st.fractions(min_value=-5, max_value=5, max_denominator=4), min_size=2, max_size=2)


@given(weights, st.sampled_from(["A2", "B2", "C2", "G2"]))
def test_reflection_is_involution_and_preserves_pairings(lam, ct):
    rs = build_root_system(ct)
    for i in range(2):
        mu = rs.reflect_weight(i, lam)
        assert rs.reflect_weight(i, mu) == tuple(lam)
        assert rs.pair(mu, rs.simple_roots[i]) == -rs.pair(lam, rs.simple_roots[i])
    mus = sorted(abs(rs.pair(rs.reflect_weight(0, lam), b)) for b in rs.positive_roots)
    assert mus == sorted(abs(rs.pair(lam, b)) for b in rs.positive_roots)
