import random
from fractions import Fraction

import pytest
import sympy
from hypothesis import given, settings, strategies as st

from ltlab.padic import (PadicDomainError, PadicFloat, UnramifiedElem, hensel_lift_modulus,
                         is_prime, padic_exp, padic_log, teichmueller, unit_log, valuation)

CASES = [(2, 1, 8), (2, 2, 6), (3, 2, 6), (2, 3, 6), (5, 2, 5), (2, 4, 5), (3, 3, 4)]


def test_is_prime_matches_sympy():
    assert [k for k in range(60) if is_prime(k)] == list(sympy.primerange(0, 60))


def test_valuation():
    assert valuation(Fraction(12, 5), 2) == 2
    assert valuation(Fraction(3, 8), 2) == -3
    assert valuation(7, 7) == 1


@pytest.mark.parametrize("p,n,N", CASES)
def test_modulus_divides_cyclotomic(p, n, N):
    M = hensel_lift_modulus(p, n, N)
    x = sympy.symbols("x")
    m = sympy.Poly(list(reversed(M.m)), x)
    target = sympy.Poly(x ** (p ** n - 1) - 1, x)
    assert target.rem(m).trunc(p ** N).is_zero
    assert sympy.Poly(list(reversed(M.m)), x, modulus=p).is_irreducible


@pytest.mark.parametrize("p,n,N,expected", [
    (2, 2, 4, (1, 1, 1)),
    (3, 2, 6, (1, 0, 1)),
    (2, 3, 6, (63, 37, 38, 1)),
    (5, 2, 5, (2057, 0, 1)),
    (5, 1, 8, (390624, 1)),
])
def test_frozen_moduli(p, n, N, expected):
    assert tuple(hensel_lift_modulus(p, n, N).m) == expected


def test_least_irreducible_choice():
    # the residue polynomial is the least irreducible one in (c_{n-1}, ..., c_0) order
    x = sympy.symbols("x")
    for p, n in [(2, 2), (2, 3), (3, 2), (5, 2), (3, 3)]:
        M = hensel_lift_modulus(p, n, 4)
        mbar = tuple(c % p for c in M.m)
        best = None
        for code in range(p ** n):
            digits = [(code // p ** i) % p for i in range(n)]
            cand = tuple(digits) + (1,)
            if sympy.Poly(list(reversed(cand)), x, modulus=p).is_irreducible:
                key = tuple(reversed(cand[:-1]))
                if best is None or key < best[0]:
                    best = (key, cand)
        assert mbar == best[1]


def test_teichmueller_frozen_and_root_of_unity():
    M = hensel_lift_modulus(5, 1, 8)
    t = teichmueller(2, M)
    assert t.lift_exact() == 280182
    assert pow(280182, 4, 5 ** 8) == 1
    M = hensel_lift_modulus(3, 2, 6)
    for c in M.residue_field().elements():
        if c.is_zero():
            continue
        t = teichmueller(c, M)
        assert t ** (M.q - 1) == 1
        assert t.residue() == c


@pytest.mark.parametrize("p,n,N", CASES)
def test_frobenius_ring_map(p, n, N):
    M = hensel_lift_modulus(p, n, N)
    rng = random.Random(1)
    for _ in range(10):
        a, b = M.random_element(rng), M.random_element(rng)
        assert (a * b).frobenius() == a.frobenius() * b.frobenius()
        assert (a + b).frobenius() == a.frobenius() + b.frobenius()
        assert a.frobenius(n) == a
        assert a.frobenius().residue() == a.residue() ** p


def test_generator_frobenius_is_pth_power():
    M = hensel_lift_modulus(2, 3, 6)
    w = M.gen()
    assert w.frobenius() == w ** 2


def test_inverse_and_division():
    M = hensel_lift_modulus(3, 2, 6)
    rng = random.Random(2)
    for _ in range(10):
        u = M.random_element(rng, unit=True)
        assert u * u.inverse() == 1
    x = PadicFloat.of(Fraction(9, 2), 3, 10)
    assert x.val == 2
    assert (x / 9) * 2 == 1


def test_precision_tracking():
    assert PadicFloat.of(1, 5, 6).prec == 6
    a = PadicFloat.of(3 ** 4, 3, 5)
    b = PadicFloat.of(1, 3, 5)
    s = a + b
    assert s.val == 0
    y = PadicFloat.of(1 + 3 ** 5, 3, 5) - 1
    assert y.is_zero()


def test_json_round_trip():
    M = hensel_lift_modulus(2, 3, 6)
    a = M.random_element(random.Random(3)) * 4
    b = UnramifiedElem.from_json(a.to_json())
    assert a == b and b.val == a.val


def test_log_exp_round_trip():
    for p, n in [(2, 1), (3, 1), (3, 2), (2, 2), (5, 2)]:
        M = hensel_lift_modulus(p, n, 10)
        rng = random.Random(p * 10 + n)
        shift = 2 if p == 2 else 1
        for _ in range(5):
            a = M.random_element(rng) * p ** shift
            u = padic_exp(a)
            assert padic_log(u) == a
            assert padic_exp(padic_log(u)) == u


def test_log_is_homomorphism_and_domain():
    M = hensel_lift_modulus(3, 2, 10)
    rng = random.Random(5)
    a = padic_exp(M.random_element(rng) * 3)
    b = padic_exp(M.random_element(rng) * 3)
    assert padic_log(a * b) == padic_log(a) + padic_log(b)
    with pytest.raises(PadicDomainError):
        padic_log(M.gen())
    with pytest.raises(PadicDomainError):
        padic_log(PadicFloat.of(3, 2, 8))


def test_unit_log_kills_teichmueller():
    M = hensel_lift_modulus(3, 2, 8)
    for c in M.residue_field().elements():
        if not c.is_zero():
            assert unit_log(teichmueller(c, M)).is_zero()


@settings(max_examples=60, deadline=None)
@given(st.integers(-10 ** 6, 10 ** 6), st.integers(-10 ** 6, 10 ** 6),
       st.integers(1, 50), st.sampled_from([2, 3, 5, 7]))
def test_ultrametric(a, b, d, p):
    x = PadicFloat.of(Fraction(a, d), p, 12)
    y = PadicFloat.of(Fraction(b, d), p, 12)
    s = x + y
    if not s.is_zero() and not x.is_zero() and not y.is_zero():
        assert s.val >= min(x.val, y.val)
        if x.val != y.val:
            assert s.val == min(x.val, y.val)
    if not x.is_zero() and not y.is_zero():
        assert (x * y).val == x.val + y.val
