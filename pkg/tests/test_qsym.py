from fractions import Fraction
from itertools import combinations

import pytest
import sympy
from hypothesis import given, settings, strategies as st

from ltlab import qsym as Q
from ltlab.lyndon import compositions

NVARS = 5
XS = sympy.symbols(f"x0:{NVARS}")


def poly_of(x):
    """Evaluate a QSym element on NVARS commuting variables."""
    total = 0
    for I, c in x.terms.items():
        for idx in combinations(range(NVARS), len(I)):
            term = sympy.Rational(c.numerator, c.denominator) if isinstance(c, Fraction) else c
            for i, part in zip(idx, I):
                term *= XS[i] ** part
            total += term
    return sympy.expand(total)


def comps_upto(d):
    return [I for k in range(1, d + 1) for I in compositions(k)]


def test_frozen_products():
    assert (Q.M((1,)) * Q.M((1,))).to_text() == "2*M(1,1) + M(2)"
    assert (Q.M((1,)) * Q.M((2,))).to_text() == "M(1,2) + M(2,1) + M(3)"
    assert (Q.NSymElem.basis((1,)) * Q.Z(2)).to_text() == "Z(1,2)"


def test_product_against_polynomial_oracle():
    for I in comps_upto(3):
        for J in comps_upto(3):
            if sum(I) + sum(J) <= 5:
                assert poly_of(Q.M(I) * Q.M(J)) == sympy.expand(poly_of(Q.M(I)) * poly_of(Q.M(J)))


def test_comul_examples():
    assert Q.qsym_comul(Q.M((1, 2))).to_text() == "M()#M(1,2) + M(1)#M(2) + M(1,2)#M()"
    assert Q.nsym_comul(Q.Z(2)).to_text() == "Z()#Z(2) + Z(1)#Z(1) + Z(2)#Z()"


def test_antipode_examples():
    assert Q.antipode(Q.M((1, 1))).to_text() == "M(1,1) + M(2)"
    assert Q.antipode(Q.M((1, 2))).to_text() == "M(2,1) + M(3)"
    assert Q.nsym_antipode(Q.Z(2)).to_text() == "Z(1,1) - Z(2)"


def test_antipode_closed_form():
    # S(M_I) = (-1)^len(I) sum over coarsenings J of reverse(I) of M_J
    def coarsenings(I):
        if len(I) <= 1:
            return [I]
        out = []
        for rest in coarsenings(I[1:]):
            out.append((I[0],) + rest)
            out.append((I[0] + rest[0],) + rest[1:])
        return out

    for I in comps_upto(5):
        expected = Q.QSymElem()
        for J in coarsenings(tuple(reversed(I))):
            expected = expected + Q.M(J) * (-1) ** len(I)
        assert Q.antipode(Q.M(I)) == expected


@pytest.mark.parametrize("cls", [Q.QSymElem, Q.NSymElem])
def test_antipode_axioms(cls):
    for I in comps_upto(4):
        left, right, unit = Q.antipode_axioms(cls.basis(I))
        assert left == unit and right == unit


def test_antipode_is_involution_on_qsym():
    for I in comps_upto(4):
        assert Q.antipode(Q.antipode(Q.M(I))) == Q.M(I)


def test_duality_pairing_adjoint():
    # <Z_I Z_J, M_K> = <Z_I (x) Z_J, Delta M_K>
    for I in comps_upto(2):
        for J in comps_upto(2):
            w = Q.NSymElem.basis(I) * Q.NSymElem.basis(J)
            for K in compositions(sum(I) + sum(J)):
                lhs = Q.duality_pairing(w, Q.M(K))
                rhs = Q.tensor_pairing(Q.Tensor.pure(Q.NSymElem.basis(I), Q.NSymElem.basis(J)),
                                       Q.qsym_comul(Q.M(K)))
                assert lhs == rhs


def test_graded_dimensions():
    assert [Q.graded_dimension(k) for k in range(7)] == [1, 1, 2, 4, 8, 16, 32]


def test_sym_bases():
    assert Q.SymElem.p(2).to_basis("m").to_text() == "m(2)"
    assert Q.SymElem.m(1, 1).to_basis("p").to_text() == "1/2*p(1,1) - 1/2*p(2)"
    prod = Q.SymElem.m(2, 1) * Q.SymElem.m(1)
    assert prod.to_basis("m").to_text() == "2*m(2,1,1) + 2*m(2,2) + m(3,1)"
    for k in range(1, 6):
        for lam in Q.partitions(k):
            f = Q.SymElem.m(*lam)
            assert f.to_basis("p").to_basis("m") == f


def test_embed_sym():
    assert Q.embed_sym(Q.SymElem.m(2, 1)).to_text() == "M(1,2) + M(2,1)"
    assert Q.embed_sym(Q.SymElem.m(2, 2)).to_text() == "M(2,2)"
    assert Q.embed_sym(Q.SymElem.p(2, 1)).to_text() == "M(1,2) + M(2,1) + M(3)"
    assert Q.qsym_to_sym(Q.M((1, 2)) + Q.M((2, 1))).to_text() == "m(2,1)"
    assert Q.qsym_to_sym(Q.M((1, 2))) is None


def test_embed_sym_against_oracle():
    for lam in Q.partitions(4):
        f = Q.SymElem.m(*lam)
        ref = sympy.expand(sum(
            sympy.Mul(*[XS[i] ** e for i, e in enumerate(exps)])
            for exps in map(tuple, sympy.utilities.iterables.multiset_permutations(
                list(lam) + [0] * (NVARS - len(lam))))))
        assert poly_of(Q.embed_sym(f)) == ref


def test_parsers():
    x = Q.parse_element("2*M(1,1) + M(2) - 1/2*M(3)")
    assert x.to_text() == "2*M(1,1) + M(2) - 1/2*M(3)"
    assert Q.parse_element("(2,1)") == Q.M((2, 1))
    assert Q.parse_composition("(3, 1)") == (3, 1)
    assert Q.parse_sym("2*p(3)-p(1,1)").to_text() == "-p(1,1) + 2*p(3)"
    with pytest.raises(ValueError):
        Q.parse_composition("(0,1)")


def test_lie_generator_counts():
    assert [Q.lie_generator_count(k) for k in range(1, 9)] == [1, 1, 2, 3, 6, 9, 18, 30]
    assert Q.lyndon_basis(4) == [(1, 1, 2), (1, 3), (4,)]
    assert Q.lie_generator_count(2, odd=True, include_one=False) == 0
    assert Q.lie_generator_count(3, odd=True, include_one=False) == 1


comp_strategy = st.integers(1, 4).flatmap(lambda k: st.sampled_from(compositions(k)))


@settings(max_examples=40, deadline=None)
@given(comp_strategy, comp_strategy, comp_strategy)
def test_quasi_shuffle_associative_commutative(I, J, K):
    a, b, c = Q.M(I), Q.M(J), Q.M(K)
    assert a * b == b * a
    assert (a * b) * c == a * (b * c)
    assert Q.qsym_comul(a * b) == Q.qsym_comul(a) * Q.qsym_comul(b)
