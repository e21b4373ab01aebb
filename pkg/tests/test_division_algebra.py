import random
from fractions import Fraction

import pytest

from ltlab.division_algebra import (ODElem, WeilElem, center_check, conj_by_F, d_inverse,
                                    od_inverse, od_valuation, random_od, weil_embed)
from ltlab.padic import hensel_lift_modulus

CASES = [(2, 2), (3, 2), (2, 3), (5, 1)]


@pytest.fixture(params=CASES, ids=lambda c: f"p{c[0]}n{c[1]}")
def M(request):
    p, n = request.param
    return hensel_lift_modulus(p, n, 10)


def test_defining_relations(M):
    F = ODElem.F(M)
    w = ODElem(M, [M.gen()])
    assert F ** M.n == ODElem(M, [M.p])
    assert F * w == ODElem(M, [M.gen() ** M.p]) * F
    assert od_valuation(F) == Fraction(1, M.n)


def test_ring_axioms(M):
    rng = random.Random(1)
    for _ in range(10):
        x, y, z = (random_od(M, rng) for _ in range(3))
        assert (x * y) * z == x * (y * z)
        assert x * (y + z) == x * y + x * z
        assert (x + y) * z == x * z + y * z


def test_valuation_additive(M):
    rng = random.Random(2)
    for k in range(2 * M.n):
        x = random_od(M, rng, unit=True) * ODElem.F_power(M, k)
        y = random_od(M, rng, unit=True)
        assert od_valuation(x) == Fraction(k, M.n)
        assert od_valuation(x * y) == od_valuation(x) + od_valuation(y)


def test_inverses(M):
    rng = random.Random(3)
    u = random_od(M, rng, unit=True)
    assert u * od_inverse(u) == 1 and od_inverse(u) * u == 1
    x = u * ODElem.F_power(M, 3)
    assert x * d_inverse(x) == 1
    with pytest.raises(ValueError):
        od_inverse(ODElem.F(M))
    with pytest.raises(ZeroDivisionError):
        d_inverse(ODElem(M, [0]))


def test_conjugation_is_frobenius(M):
    rng = random.Random(4)
    for _ in range(5):
        a = M.random_element(rng, unit=True)
        assert conj_by_F(a) == ODElem(M, [a.frobenius()])


def test_center(M):
    assert center_check(ODElem(M, [M.p + 1]))
    if M.n > 1:
        assert not center_check(ODElem(M, [M.gen()]))
        assert not center_check(ODElem.F(M) + ODElem(M, [M.gen()]))


def test_weil_group(M):
    rng = random.Random(5)
    for _ in range(5):
        x = WeilElem(M.random_element(rng, unit=True), rng.randrange(-3, 4))
        y = WeilElem(M.random_element(rng, unit=True), rng.randrange(-3, 4))
        assert weil_embed(x) * weil_embed(y) == weil_embed(x * y)
        assert x * x.inverse() == WeilElem.identity(M)
    with pytest.raises(ValueError):
        WeilElem(M.one() * M.p, 0)


def test_frozen_product_small():
    M = hensel_lift_modulus(2, 2, 4)
    F, w = ODElem.F(M), ODElem(M, [M.gen()])
    # F w F = w^2 F^2 = 2 w^2 = 2(-1 - w)
    assert F * w * F == ODElem(M, [M.from_coeffs([-2, -2])])
