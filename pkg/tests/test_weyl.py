import pytest
from hypothesis import given, settings, strategies as st

from jantzen.rootdata import build_root_system
from jantzen.weyl import WeylError, coset_decomposition, weyl_group

ORDERS = {"A1": 2, "A2": 6, "A3": 24, "B2": 8, "B3": 48, "C3": 48, "D4": 192, "G2": 12}


@pytest.mark.parametrize("ct,order", sorted(ORDERS.items()))
def test_order_and_longest_length(ct, order):
    W = weyl_group(ct)
    assert len(W) == order
    assert W.longest.length == len(W.rs.positive_roots)
    counts = W.poincare_counts()
    assert counts == counts[::-1] and sum(counts) == order


@pytest.mark.parametrize("ct", ["A2", "B2", "G2", "A3"])
def test_longest_element_acts_by_minus_on_rho(ct):
    W = weyl_group(ct)
    assert W.longest.act(W.rs.rho) == tuple(-x for x in W.rs.rho)


@pytest.mark.parametrize("ct", ["A3", "B3", "G2"])
def test_bruhat_lifting_agrees_with_subword(ct):
    W = weyl_group(ct)
    for x in range(len(W)):
        for w in range(len(W)):
            assert W.bruhat_leq(x, w) == W.bruhat_leq_subword(x, w)


def test_elements_sorted_and_tables_consistent():
    W = weyl_group("B3")
    keys = [(e.length, e.reduced_word) for e in W]
    assert keys == sorted(keys)
    for e in W:
        for i in range(W.rs.rank):
            assert W.right[W.right[e.index][i]][i] == e.index
            assert W.left[W.left[e.index][i]][i] == e.index


@settings(max_examples=60)
@given(st.data())
def test_multiplication_matches_matrices(data):
    W = weyl_group("B3")
    x = data.draw(st.integers(0, len(W) - 1))
    y = data.draw(st.integers(0, len(W) - 1))
    xy = W.mul(x, y)
    lam = (3, 5, 7)
    assert W[xy].act(lam) == W[x].act(W[y].act(lam))
    assert W.mul(xy, W.inverse(y)) == x


def test_parse():
    W = weyl_group("A2")
    assert W.parse("w0").index == len(W) - 1
    assert W.parse("e").index == 0
    assert W.parse("s1 s2 s1").index == W.parse("2,1,2").index == len(W) - 1
    with pytest.raises(WeylError):
        W.parse("s4")
    with pytest.raises(WeylError):
        W.parse("foo")


@pytest.mark.parametrize("ct,J", [("A2", [0]), ("A3", [0, 2]), ("B3", [1]), ("G2", [1]), ("A2", [0, 1])])
def test_cosets(ct, J):
    W = weyl_group(ct)
    table = coset_decomposition(W, J)
    sub = W.parabolic_subgroup(J)
    assert len(table.cosets) * len(sub) == len(W)
    for c in table.cosets:
        # longest representatives have every j in J as a left descent
        assert all(W.left_descent(c.longest, j) for j in J)
        assert not any(W.left_descent(c.shortest, j) for j in J)
        assert W.length(c.longest) == W.length(c.shortest) + W.length(sub[-1])


def test_cosets_of_trivial_subgroup():
    W = weyl_group("A2")
    assert coset_decomposition(W, []).representatives() == list(range(len(W)))


def test_by_weight():
    rs = build_root_system("A2")
    W = weyl_group(rs)
    lam = (-1, -1)
    for e in W:
        assert W.by_weight(e.act(lam), lam).index == e.index
