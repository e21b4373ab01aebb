import random
from fractions import Fraction

import pytest
import sympy
from hypothesis import given, settings, strategies as st

from ltlab.series import (QQ, BiSeries, MultiSeries, SeriesError, UniSeries, bi_substitute,
                          compose, derivative, derivative_cocycle, random_invertible, revert,
                          revert_lagrange, series_exp)


def S(coeffs, D):
    return UniSeries(QQ, coeffs, D)


def test_compose_small_example():
    g = S([0, 1, 1], 4)
    h = S([0, 1, 1], 4)
    # (t + t^2) + (t + t^2)^2 = t + 2t^2 + 2t^3 + t^4
    assert compose(g, h).coeffs == (0, 1, 2, 2, 1)


def test_revert_catalan():
    r = revert(S([0, 1, -1], 10))
    assert list(r.coeffs[1:]) == [sympy.catalan(k) for k in range(10)]


def test_revert_geometric():
    # t/(1 - t) has inverse t/(1 + t)
    r = revert(S([0] + [1] * 8, 8))
    assert r.coeffs == tuple([0] + [(-1) ** (k + 1) for k in range(1, 9)])


def test_compose_against_sympy():
    t = sympy.symbols("t")
    rng = random.Random(7)
    D = 7
    g, h = random_invertible(rng, QQ, D), random_invertible(rng, QQ, D)
    gs = sum(sympy.Rational(c.numerator, c.denominator) * t ** k for k, c in enumerate(g.coeffs))
    hs = sum(sympy.Rational(c.numerator, c.denominator) * t ** k for k, c in enumerate(h.coeffs))
    ref = sympy.Poly(sympy.expand(gs.subs(t, hs)), t)
    got = compose(g, h)
    for k in range(D + 1):
        c = ref.coeff_monomial(t ** k)
        assert got[k] == Fraction(int(c.p), int(c.q))


def test_reversion_errors():
    with pytest.raises(SeriesError):
        revert(S([1, 1], 4))
    with pytest.raises(SeriesError):
        revert(S([0, 0, 1], 4))
    with pytest.raises(SeriesError):
        compose(S([0, 1], 4), S([1, 1], 4))


def test_exp_of_t():
    e = series_exp(S([0, 1], 6))
    assert list(e.coeffs) == [Fraction(1, sympy.factorial(k)) for k in range(7)]


def test_inverse():
    f = S([1, -1], 6)
    assert f.inverse().coeffs == (1,) * 7


def test_bi_substitute_swap():
    X, Y = BiSeries.x(QQ, 5), BiSeries.y(QQ, 5)
    F = X + Y + X * Y
    a, b = S([0, 1, 2], 5), S([0, 3], 5)
    got = bi_substitute(F, a, b)
    assert got == a + b + a * b


def test_multiseries_coefficient_and_truncation():
    x = MultiSeries.variable(QQ, 0, 3, 4)
    y = MultiSeries.variable(QQ, 1, 3, 4)
    z = MultiSeries.variable(QQ, 2, 3, 4)
    f = (1 + x + y + z) ** 3
    assert f.coefficient(1, 1, 1) == 6
    assert f.coefficient(2, 1, 0) == 3
    g = (x + y) ** 5
    assert g.is_zero()


@settings(max_examples=25, deadline=None)
@given(st.integers(0, 10 ** 6), st.integers(3, 9))
def test_revert_methods_agree(seed, D):
    h = random_invertible(random.Random(seed), QQ, D)
    r = revert(h)
    assert r == revert_lagrange(h)
    assert compose(h, r) == UniSeries.identity(QQ, D)
    assert compose(r, h) == UniSeries.identity(QQ, D)


@settings(max_examples=25, deadline=None)
@given(st.integers(0, 10 ** 6))
def test_composition_associative_and_chain_rule(seed):
    rng = random.Random(seed)
    f, g, h = (random_invertible(rng, QQ, 7, height=3) for _ in range(3))
    assert compose(f, compose(g, h)) == compose(compose(f, g), h)
    assert derivative(compose(g, h)) == derivative_cocycle(g, h) * derivative(h)


def test_cocycle_identity_fixed_triple():
    rng = random.Random(11)
    g, h, k = (random_invertible(rng, QQ, 10, height=4) for _ in range(3))
    lhs = derivative_cocycle(g, h) * compose(derivative(k), compose(g, h))
    assert lhs == derivative_cocycle(compose(k, g), h)
