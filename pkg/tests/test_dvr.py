from fractions import Fraction

import pytest
from hypothesis import assume, given, settings, strategies as st

from jantzen.dvr import (
    DVRError,
    DVRScalar,
    Poly,
    bareiss_det,
    det_valuation,
    dvr_valuations,
    generic_rank,
    poly_gcd,
    series_inv,
    series_mul,
    smith_reduce,
)

s = Poly.s()


def test_poly_basics():
    p = Poly([1, 2]) * Poly([3, 0, 1])
    assert p == Poly([3, 6, 1, 2])
    q, r = p.divmod(Poly([1, 2]))
    assert q == Poly([3, 0, 1]) and r.is_zero()
    assert (s ** 3).valuation() == 3 and Poly().valuation() is None
    assert p(Fraction(1, 2)) == Fraction(3 + 3 + Fraction(1, 4) + Fraction(1, 4))
    assert str(Poly([1, -1, 2])) == "1 - s + 2*s^2"
    assert poly_gcd(Poly([-1, 0, 1]), Poly([1, 1])).monic() == Poly([1, 1])
    with pytest.raises(DVRError):
        Poly([1, 0, 1]).exact_div(Poly([1, 1]))


def test_dvr_scalar():
    x = DVRScalar(s * Poly([2, 1]), Poly([1, 1]))
    assert x.valuation() == 1 and not x.is_unit()
    y = DVRScalar(Poly([3]), Poly([2, 5]))
    assert y.is_unit() and y.at_zero() == Fraction(3, 2)
    assert (x * y) / y == x
    assert (x + y - x) == y
    assert DVRScalar(Poly([1, 1]), Poly([1, 1])) == DVRScalar(1)
    with pytest.raises(DVRError):
        DVRScalar(1, s)
    with pytest.raises(ZeroDivisionError):
        y / DVRScalar(0)


def test_series():
    a = [Fraction(1), Fraction(1)]
    inv = series_inv(a, 5)
    assert inv == [1, -1, 1, -1, 1]
    assert series_mul(a, inv, 5) == [1, 0, 0, 0, 0]
    assert DVRScalar(1, Poly([1, -1])).series(4) == [1, 1, 1, 1]


@pytest.mark.parametrize("matrix,vals", [
    ([[1, 0], [0, s]], [0, 1]),
    ([[s ** 2, 0], [0, Poly([3, 1])]], [0, 2]),
    ([[s, s], [s, s]], [1, None]),
    ([[0, 0], [0, 0]], [None, None]),
    ([[s, s ** 2], [s ** 2, s]], [1, 1]),
    ([[1, s], [s, s ** 2 + s ** 3]], [0, 3]),
])
def test_known_valuations(matrix, vals):
    assert dvr_valuations(matrix) == vals


def test_det_and_rank():
    m = [[Poly([1, 1]), s], [Poly([2]), Poly([0, 0, 1])]]
    assert bareiss_det(m) == Poly([0, -2, 1, 1])
    assert det_valuation(m) == 1
    assert generic_rank([[s, s], [s, s]]) == 1
    assert generic_rank([[1, 0], [0, s]]) == 2


def test_piece_tracks_basis_at_zero():
    res = smith_reduce([[1, 0], [0, s]])
    assert res.profile() == [1]
    (v,) = res.piece(1)
    assert v == (0, 1)


def _unimodular(rng_entries, n):
    """Lower-unitriangular times upper-unitriangular times a shift in s: unit det at 0."""
    L = [[Poly([int(i == j)]) if i <= j else Poly(rng_entries[i * n + j]) for j in range(n)] for i in range(n)]
    U = [[Poly([int(i == j)]) if i >= j else Poly(rng_entries[n * n + i * n + j]) for j in range(n)]
         for i in range(n)]
    return [[sum((L[i][k] * U[k][j] for k in range(n)), Poly()) for j in range(n)] for i in range(n)]


def _matmul(a, b):
    n, m, p = len(a), len(b), len(b[0])
    return [[sum((a[i][k] * b[k][j] for k in range(m)), Poly()) for j in range(p)] for i in range(n)]


coeffs = st.lists(st.integers(-2, 2), min_size=0, max_size=2)


@settings(max_examples=60, deadline=None)
@given(st.integers(1, 4), st.data())
def test_valuations_invariant_under_unit_transforms(n, data):
    diag = data.draw(st.lists(st.one_of(st.none(), st.integers(0, 3)), min_size=n, max_size=n))
    assume(any(d is not None for d in diag))
    D = [[(s ** diag[i] if diag[i] is not None else Poly()) if i == j else Poly() for j in range(n)]
         for i in range(n)]
    P = _unimodular(data.draw(st.lists(coeffs, min_size=2 * n * n, max_size=2 * n * n)), n)
    Q = _unimodular(data.draw(st.lists(coeffs, min_size=2 * n * n, max_size=2 * n * n)), n)
    M = _matmul(_matmul(P, D), Q)
    expect = sorted(d for d in diag if d is not None) + [None] * diag.count(None)
    assert dvr_valuations(M) == expect
    if None not in diag:
        assert det_valuation(M) == sum(diag)
