from fractions import Fraction

import mpmath
import pytest

from ltlab import multizeta as Z
from ltlab import qsym as Q


def ref(expr, digits=40):
    with mpmath.workdps(digits + 20):
        return expr()


@pytest.mark.parametrize("n", [2, 3, 4, 5, 7, 10])
def test_zeta_matches_mpmath(n):
    z = Z.zeta(n, 30)
    assert z.contains(ref(lambda: mpmath.zeta(n)), 1e-28)


def test_zeta_rejects_pole():
    with pytest.raises(ValueError):
        Z.zeta(1)


def test_euler_gamma_two_algorithms():
    g1, g2 = Z.euler_gamma(40), Z.euler_gamma_from_zeta(40)
    assert g1.contains(ref(lambda: mpmath.euler), 1e-38)
    assert g1.agrees(g2, 1e-35)
    assert abs(float(Z.harmonic_gamma_estimate(10 ** 4).value) - 0.5772156649) < 1e-4


def test_bernoulli_matches_sympy():
    import sympy
    for k in [0] + list(range(2, 25)):
        b = sympy.bernoulli(k)
        assert Z.bernoulli(k) == Fraction(int(b.p), int(b.q))
    assert abs(Z.bernoulli(1)) == Fraction(1, 2)


@pytest.mark.parametrize("s,expr", [
    ((2, 1), lambda: mpmath.zeta(3)),
    ((2, 2), lambda: mpmath.pi ** 4 / 120),
    ((3, 1), lambda: mpmath.pi ** 4 / 360),
    ((2, 1, 1), lambda: mpmath.zeta(4)),
    ((4, 2), lambda: mpmath.zeta(3) ** 2 - mpmath.pi ** 6 * mpmath.mpf(4) / 2835),
])
def test_known_mzvs(s, expr):
    assert Z.mzv(s, 30).contains(ref(expr), 1e-26)


def test_frozen_depth_three():
    assert Z.mzv((3, 1, 2), 22).to_str(20).startswith("0.07922139756520716599")


def test_duality_zeta_3_1_equals_zeta_4_over_4():
    assert Z.mzv((3, 1), 30).agrees(Z.zeta(4, 30) * Z.RealApprox.exact(Fraction(1, 4), 200),
                                    1e-25)


def test_direct_summation_agrees():
    for s in [(2, 1), (3, 1), (2, 2), (3, 2, 1)]:
        fast = Z.mzv(s, 25)
        slow = Z.mzv_direct(s, 400, 20)
        assert fast.agrees(slow)


def test_non_admissible_rejected():
    with pytest.raises(ValueError):
        Z.mzv((1, 2))
    with pytest.raises(ValueError):
        Z.eval_qsym(Q.M((1, 2)))
    assert not Z.is_admissible((1,)) and Z.is_admissible((2,))


def test_regularized_sym_value():
    # m(2,1) = p(2)p(1) - p(3) evaluates to gamma*zeta(2) - zeta(3)
    v = Z.eval_qsym(Q.M((2, 1)) + Q.M((1, 2)), regularize="sym")
    expected = ref(lambda: mpmath.euler * mpmath.zeta(2) - mpmath.zeta(3))
    assert v.contains(expected, 1e-25)


def test_stuffle_fixed_pairs():
    pairs = [((2,), (2,)), ((2,), (3, 1)), ((2, 1), (2,)), ((3,), (2, 1, 1))]
    for I, J in pairs:
        lhs = Z.eval_qsym(Q.M(I)) * Z.eval_qsym(Q.M(J))
        rhs = Z.eval_qsym(Q.M(I) * Q.M(J))
        assert lhs.agrees(rhs, 1e-25)


@pytest.mark.parametrize("n", [1, 2, 3, 4, 5])
def test_even_zeta_formula(n):
    rep = Z.zeta_even_check(n)
    assert rep["pass"]
    assert Z.zeta_even_formula(n).contains(ref(lambda: mpmath.zeta(2 * n)), 1e-26)


def test_reciprocal_gamma_series():
    f = Z.gamma_reciprocal_series(8, 30)
    with mpmath.workdps(50):
        taylor = mpmath.taylor(mpmath.rgamma, 0, 8)
    for k in range(9):
        assert f[k].contains(taylor[k], 1e-25)
    rep = Z.gamma_series_check(8, ("0.1", "0.2"))
    assert rep["pass"]
    for pt in rep["points"]:
        assert float(pt["diff"]) <= float(pt["bound"])


def test_real_approx_interval_arithmetic():
    a = Z.RealApprox.exact(Fraction(1, 3), 200)
    b = Z.RealApprox.exact(Fraction(2, 3), 200)
    assert (a + b).contains(1, 1e-50)
    assert (a * b - Z.RealApprox.exact(Fraction(2, 9), 200)).contains(0, 1e-50)
    assert (-a).contains(mpmath.mpf(-1) / 3, 1e-15)
    assert not a.agrees(b, 1e-3)
