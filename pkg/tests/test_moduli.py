from fractions import Fraction
from math import factorial

import pytest

from stablemaps.coeffring import INFINITY, GSeries, L, LCoeff, projective_class
from stablemaps.moduli import (betti_vector, conf_class, configuration_product,
                               expected_dimension, legendre_r0, m_open, m_star, map_class, mbar,
                               mbar_infinity, mbar_star)
from stablemaps.symfunc import (SymSeries, Truncation, complete_h, derive, plethysm, schur,
                                to_schur_basis)
import oracles

P = projective_class


def labeled(cls, n, d):
    return cls.coefficient((1,) * n, d) * factorial(n)


def falling(x: LCoeff, n: int) -> LCoeff:
    out = LCoeff.const(1)
    for i in range(n):
        out = out * (x - i)
    return out


# map and configuration classes --------------------------------------------

def test_map_class_examples():
    for r in range(4):
        assert map_class(r, 3)[0] == P(r)
    assert map_class(1, 1)[1] == L * L * L - L
    assert map_class(0, 3)[1].is_zero() and map_class(0, 3)[3].is_zero()


@pytest.mark.parametrize("r", range(4))
def test_map_class_generating_form(r):
    # (1 - qL) / (1 - q L^(r+1)) [P^r], expanded by hand
    dmax = 4
    geometric = GSeries({j: LCoeff.monomial(j * (r + 1)) for j in range(dmax + 1)}, dmax)
    numer = GSeries([1, -L], dmax)
    assert map_class(r, dmax) == geometric * numer * P(r)


def test_conf_class_small_parts():
    t = Truncation(6, 0)
    f = conf_class(1 + L, t)
    s = lambda *mu: schur(mu, t)
    assert f.weight_part(1) == s(1) * (L + 1)
    assert f.weight_part(2) == s(2) * (L * L - L) + s(1) * s(1) * L
    assert f.weight_part(3) == s(3) * (L * L * L - L)


@pytest.mark.parametrize("x", [1 + L, L, L * L + 2, LCoeff([3])])
def test_conf_class_labeled_counts(x):
    t = Truncation(6, 0)
    f = conf_class(x, t)
    for n in range(7):
        assert f[((1,) * n, 0)] * factorial(n) == falling(x, n)


def test_conf_class_derivative_identity():
    t = Truncation(6, 0)
    big = Truncation(7, 0)
    lhs = derive(conf_class(1 + L, big)).retruncate(t)
    assert lhs == conf_class(L, t) * (1 + L)


def test_conf_class_product_form():
    t = Truncation(6, 0)
    assert configuration_product(t) == conf_class(1 + L, t)


# open classes --------------------------------------------------------------

@pytest.mark.parametrize("r", range(4))
def test_open_unpointed_closed_form(r):
    t = Truncation(4, 4)
    mo = m_open(r, t)
    grass = (P(r) * P(r - 1)).exact_div(1 + L)
    for d in range(1, 5):
        assert mo.coefficient((), d) == LCoeff.monomial((d - 1) * (r + 1)) * grass


def test_open_examples():
    t = Truncation(4, 1)
    assert m_open(2, t).series.weight_part(3).degree_part(0) == complete_h(3, t) * P(2)
    assert m_open(1, t).coefficient((), 1) == 1
    assert m_open(0, t).coefficient((), 1).is_zero()


@pytest.mark.parametrize("n", range(3, 8))
def test_open_pointed_curves(n):
    # M_{0,n} is P^1 minus n-3 further points, iterated: prod_{i=2}^{n-2} (L - i)
    t = Truncation(n, 0)
    expected = LCoeff.const(1)
    for i in range(2, n - 1):
        expected = expected * (L - i)
    assert labeled(m_open(0, t), n, 0) == expected


def test_star_examples():
    for r in range(1, 4):
        t = Truncation(3, 1)
        ms = m_star(r, t)
        assert ms.coefficient((), 1) == P(r - 1)
        assert ms.series.weight_part(2).degree_part(0) == complete_h(2, t)
        assert ms.coefficient((1,), 0).is_zero()


def test_closed_star_examples():
    for r in range(3):
        t = Truncation(4, 2)
        a = mbar_star(r, t)
        assert a.coefficient((), 1) == P(r - 1)
        ms = m_star(r, t).series
        assert plethysm(ms, SymSeries.p(1, trunc=t) + a.series) == a.series
    t = Truncation(3, 0)
    assert mbar_star(0, t).series.weight_part(2) == complete_h(2, t)


def test_closed_examples():
    assert mbar(1, Truncation(3, 3)).coefficient((), 3) == LCoeff([1, 1, 2, 1, 1])
    t = Truncation(3, 0)
    assert mbar(0, t).series.weight_part(3) == complete_h(3, t)
    assert mbar(1, Truncation(2, 2)).coefficient((), 2) == LCoeff([1, 1, 1])


@pytest.mark.parametrize("r", range(3))
def test_derivative_of_closed_class(r):
    t = Truncation(4, 2)
    big = Truncation(5, 2)
    lhs = derive(mbar(r, big).series).retruncate(t).exact_div(P(r))
    assert lhs == mbar_star(r, t).series


# Betti numbers ---------------------------------------------------------------

def test_betti_examples():
    assert betti_vector(2, 3, 0).betti == (1, 2, 5, 7, 9, 7, 5, 2, 1)
    assert betti_vector(0, 0, 4).betti == (1, 1)
    assert betti_vector(1, 0, 1).betti == ()
    assert betti_vector(1, 0, 1).dimension is None
    assert betti_vector(0, 2, 3).betti == ()


def test_quotient_flavor():
    assert betti_vector(0, 0, 4, "quotient").betti == (1, 1)
    assert betti_vector(0, 0, 5, "quotient").betti == (1, 1, 1)
    t = Truncation(5, 0)
    parts = to_schur_basis(mbar(0, t).series.weight_part(5), 5)
    h2 = {lam: c[0][1] for lam, c in parts.items() if c[0][1]}
    assert h2 == {(5,): 1, (4, 1): 1}


@pytest.mark.parametrize("r", range(1, 6))
def test_grassmannian(r):
    got = betti_vector(r, 1, 0).betti
    assert got == oracles.grassmannian_g2(r)
    assert list(got) == oracles.gaussian_binomial_poly(r + 1, 2)


def test_infinity_prefix():
    assert mbar_infinity(12, 3, 0).betti == (1, 2, 6, 11, 21, 32, 51, 71, 101, 133, 177, 223, 284)
    t = Truncation(2, 2, cutoff=12)
    assert m_open(INFINITY, t).coefficient((), 2).is_zero()
    finite = betti_vector(3, 3, 0).betti
    limit = mbar_infinity(12, 3, 0).betti
    assert all(a <= b for a, b in zip(finite, limit))


@pytest.mark.parametrize("K,d,n", [(6, 2, 1), (5, 1, 2), (8, 3, 0), (4, 2, 2)])
def test_infinity_agrees_with_large_finite_r(K, d, n):
    # for r > K every ingredient agrees with its limit modulo L^(K+1)
    finite = betti_vector(K + 1, d, n).betti
    assert finite[:K + 1] == mbar_infinity(K, d, n).betti


def test_infinity_limit_formula():
    # the limit open class against its closed expansion at n = 0
    K = 10
    t = Truncation(1, 1, cutoff=K)
    got = m_open(INFINITY, t).coefficient((), 1)
    expected = LCoeff([1], cutoff=K).exact_div(LCoeff([1, -1], cutoff=K) * LCoeff([1, 0, -1], cutoff=K))
    assert got == expected


def test_infinity_requires_cutoff():
    with pytest.raises(ValueError):
        betti_vector(INFINITY, 1, 0)


@pytest.mark.parametrize("r", range(3))
def test_palindromes_small_grid(r):
    for n in range(4):
        for d in range(3):
            for flavor in ("labeled", "quotient"):
                b = betti_vector(r, d, n, flavor)
                if b.betti:
                    assert b.betti == b.betti[::-1]
                    assert len(b.betti) == expected_dimension(r, d, n) + 1


# r = 0 Legendre transform ----------------------------------------------------

def test_legendre_r0():
    rep = legendre_r0(8)
    assert rep.coefficient("nu", 3) == Fraction(1, 6)
    assert rep.coefficient("nu", 4) == (L - 2) * Fraction(1, 24)
    assert rep.coefficient("nubar", 5) == LCoeff([1, 5, 1]) * Fraction(1, 120)
