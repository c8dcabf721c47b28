from fractions import Fraction

import pytest
import sympy

from jantzen.checks import verma_contravariance
from jantzen.dvr import Poly, bareiss_det
from jantzen.pbw import UEElement, depths_up_to, f_word, multiply, transpose
from jantzen.rootdata import build_root_system
from jantzen.verma import (
    DeformedVerma,
    VermaError,
    VermaVector,
    nullspace,
    shapovalov_factors,
    sl2_gram_closed_form,
)


def _gram_via_normal_form(M: DeformedVerma, nu):
    """Independent Gram matrix: <F^a v, F^b v> = HC(tau(F^a) F^b) evaluated at the weight."""
    cb = M.cb
    basis = M.basis(nu)
    out = []
    for a in basis:
        row = []
        ta = transpose(UEElement.word(cb, f_word(a)))
        for b in basis:
            prod = multiply(ta, UEElement.word(cb, f_word(b)))
            acc = Poly()
            for word, c in prod.terms.items():
                if all(cb.kind(x) == "H" for x in word):
                    term = Poly([c])
                    for x in word:
                        term = term * M.point[x - cb.npos]
                    acc = acc + term
            row.append(acc)
        out.append(row)
    return out


@pytest.mark.parametrize("ct,lam,nu", [
    ("A2", (1, 1), (1, 1)), ("A2", (2, -1), (2, 1)), ("B2", (1, 1), (1, 2)), ("B2", (0, 3), (2, 1)),
    ("G2", (1, 1), (2, 1)), ("A3", (1, 1, 1), (1, 1, 1))])
def test_gram_matches_normal_form_oracle(ct, lam, nu):
    M = DeformedVerma(build_root_system(ct), lam)
    assert M.gram_matrix(nu) == _gram_via_normal_form(M, nu)


@pytest.mark.parametrize("ct", ["A2", "B2", "G2"])
def test_gram_symmetric(ct):
    rs = build_root_system(ct)
    M = DeformedVerma(rs, (2, 1))
    for nu in depths_up_to(rs.rank, 4):
        G = M.gram_matrix(nu)
        assert all(G[i][j] == G[j][i] for i in range(len(G)) for j in range(len(G)))


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_sl2_closed_form(n):
    M = DeformedVerma(build_root_system("A1"), (n,))
    for k in range(2 * n + 4):
        assert M.gram_matrix((k,)) == [[sl2_gram_closed_form(n, k)]]
        assert M.gram_matrix_at_zero((k,))[0][0] == sl2_gram_closed_form(n, k)(0)


def _to_sympy(G):
    s = sympy.Symbol("s")
    return sympy.Matrix([[sum(sympy.Rational(c.numerator, c.denominator) * s ** k for k, c in enumerate(p.c))
                          for p in row] for row in G]), s


@pytest.mark.parametrize("ct,lam,gamma,nu", [
    ("A2", (1, 1), None, (2, 2)), ("A2", (3, -2), (1, 2), (2, 1)), ("B2", (1, 1), None, (2, 2)),
    ("B2", (Fraction(1, 2), 2), None, (1, 2)), ("G2", (1, 1), None, (2, 1)), ("A3", (1, 1, 1), None, (1, 2, 1))])
def test_determinant_is_shapovalov_product(ct, lam, gamma, nu):
    rs = build_root_system(ct)
    M = DeformedVerma(rs, lam, gamma)
    G = M.gram_matrix(nu)
    det = bareiss_det(G)
    m, s = _to_sympy(G)
    assert sympy.expand(m.det() - sum(sympy.Rational(c.numerator, c.denominator) * s ** k
                                      for k, c in enumerate(det.c))) == 0
    prod = Poly([1])
    for factor, mult in shapovalov_factors(rs, M.lam, M.gamma, nu):
        prod = prod * factor ** mult
    ratio, rem = det.divmod(prod)
    assert rem.is_zero() and ratio.deg == 0 and not ratio.is_zero()


@pytest.mark.parametrize("ct", ["A1", "A2", "B2"])
def test_contravariance(ct):
    done, bad = verma_contravariance(ct, trials=60, seed=7)
    assert done == 60 and bad == 0


def test_singular_vectors_sl2():
    M = DeformedVerma(build_root_system("A1"), (3,))
    assert M.singular_vectors((0,)) and M.singular_vectors((3,))
    assert not M.singular_vectors((1,)) and not M.singular_vectors((2,))


def test_singular_vectors_a2_rho():
    rs = build_root_system("A2")
    M = DeformedVerma(rs, rs.rho)
    found = sorted(nu for nu in depths_up_to(2, 4) if M.singular_vectors(nu))
    # w(rho) - rho over W, in simple-root coordinates; the 0 is the generator
    assert found == [(0, 0), (0, 1), (1, 0), (1, 2), (2, 1), (2, 2)]
    for nu in found:
        (v,) = M.singular_vectors(nu)
        for i in range(2):
            e = M.apply_letter(M.cb.E(i), VermaVector(nu, {m: Poly([c]) for m, c in v.coeffs.items()}), True)
            assert not any(e.coeffs.values())


def test_apply_element_matches_letters():
    rs = build_root_system("B2")
    M = DeformedVerma(rs, (2, 3))
    cb = M.cb
    u = UEElement.word(cb, (cb.E(0), cb.F(2), cb.F(1)))
    x = M.generator()
    y = M.apply_letter(cb.E(0), M.apply_letter(cb.F(2), M.apply_letter(cb.F(1), x)))
    assert M.apply_element(u, x).coeffs == y.coeffs


def test_nullspace_and_errors():
    ker = nullspace([[1, 2, 3], [2, 4, 6]], 3)
    assert len(ker) == 2
    for v in ker:
        assert v[0] + 2 * v[1] + 3 * v[2] == 0
    with pytest.raises(VermaError):
        DeformedVerma(build_root_system("A2"), (1,))
    with pytest.raises(VermaError):
        DeformedVerma(build_root_system("A1"), (1,)).singular_vectors((5,), max_depth=3)
