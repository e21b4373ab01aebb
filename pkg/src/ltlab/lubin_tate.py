"""Honda's formal group law, its endomorphisms, and their reductions mod p."""
import math
from fractions import Fraction
from functools import cached_property

from .padic import (UnramifiedElem, hensel_lift_modulus, is_prime, valuation)
from .series import (QQ, BiSeries, MultiSeries, SeriesError, UniSeries,
                     bi_substitute, compose, is_zero, revert, substitute)


def default_prec(p, trunc):
    """Working precision that leaves room for the digits lost in reversion."""
    return 12 + math.ceil(math.log(max(trunc, 2), p))


def honda_log(p, n, trunc):
    """sum_{q^i <= trunc} p^(-i) T^(q^i) over the rationals."""
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    if n < 1 or trunc < 1:
        raise ValueError("need n >= 1 and trunc >= 1")
    q = p ** n
    coeffs = [Fraction(0)] * (trunc + 1)
    i, e = 0, 1
    while e <= trunc:
        coeffs[e] = Fraction(1, p ** i)
        i += 1
        e *= q
    return UniSeries(QQ, coeffs, trunc)


def additive_log(trunc):
    return UniSeries.identity(QQ, trunc)


def multiplicative_log(trunc):
    """-log(1 - T) = sum T^k / k, the logarithm of X + Y - XY."""
    return UniSeries(QQ, [0] + [Fraction(1, k) for k in range(1, trunc + 1)], trunc)


def group_law(log, trunc=None):
    """F(X, Y) = log^{-1}(log X + log Y) to total degree ``trunc``."""
    trunc = log.trunc if trunc is None else trunc
    log = log.truncate(trunc)
    if is_zero(log[1]):
        raise SeriesError("logarithm needs an invertible linear coefficient")
    exp = revert(log)
    lx = MultiSeries.from_uni(log, 0, 2)
    ly = MultiSeries.from_uni(log, 1, 2)
    F = substitute(exp, lx + ly)
    return BiSeries._raw(F.ring, 2, F.trunc, F.terms)


def mult_by(a, log, trunc=None):
    """[a](T) = log^{-1}(a log T).

    Rational ``a`` stays exact; an :class:`UnramifiedElem` moves the
    computation into W(F_q) after reverting the logarithm exactly.
    """
    trunc = log.trunc if trunc is None else trunc
    log = log.truncate(trunc)
    exp = revert(log)
    if isinstance(a, UnramifiedElem):
        ring = a.modulus
        exp = exp.change_ring(ring)
        log = log.change_ring(ring)
    else:
        a = Fraction(a)
    return compose(exp, log * a)


def coefficient_integral(c, p):
    if isinstance(c, UnramifiedElem):
        return c.is_integral()
    return valuation(c, p) >= 0


def series_integral(f, p):
    """True when every stored coefficient of f is p-integral."""
    coeffs = f.coeffs if isinstance(f, UniSeries) else f.terms.values()
    return all(coefficient_integral(c, p) for c in coeffs)


def min_valuation(f, p):
    coeffs = f.coeffs if isinstance(f, UniSeries) else list(f.terms.values())
    vals = []
    for c in coeffs:
        if isinstance(c, UnramifiedElem):
            vals.append(c.val if not c.is_zero() else math.inf)
        else:
            vals.append(valuation(c, p))
    return min(vals) if vals else math.inf


def reduce_mod_p(f, field):
    """Reduce an integral series coefficientwise into ``field`` (F_p or F_q)."""
    def red(c):
        if isinstance(c, UnramifiedElem):
            return c.residue()
        return field.coerce(Fraction(c))
    return UniSeries(field, [red(c) for c in f.coeffs], f.trunc)


def prime_field(p):
    return hensel_lift_modulus(p, 1, 1).residue_field()


def fgl_axioms(F):
    """Unit, commutativity and associativity of F at its truncation."""
    R, D = F.ring, F.trunc
    X = BiSeries.x(R, D)
    # F(X,0) = X and F(0,Y) = Y
    fx0 = MultiSeries._raw(R, 2, D, {e: c for e, c in F.terms.items() if e[1] == 0})
    f0y = MultiSeries._raw(R, 2, D, {e: c for e, c in F.terms.items() if e[0] == 0})
    unit = fx0 == X and f0y == BiSeries.y(R, D)
    comm = F == F.swap()
    Fxy = MultiSeries(R, 3, D, {(i, j, 0): c for (i, j), c in F.terms.items()})
    Fyz = MultiSeries(R, 3, D, {(0, i, j): c for (i, j), c in F.terms.items()})
    x3 = MultiSeries.variable(R, 0, 3, D)
    z3 = MultiSeries.variable(R, 2, 3, D)
    assoc = bi_substitute(F, Fxy, z3) == bi_substitute(F, x3, Fyz)
    return {"unit": unit, "commutative": comm, "associative": assoc}


def log_homomorphism(log, F):
    """log(F(X, Y)) == log X + log Y to the common truncation."""
    lhs = substitute(log, F)
    rhs = MultiSeries.from_uni(log, 0, 2) + MultiSeries.from_uni(log, 1, 2)
    return lhs == rhs


class HondaFormalGroup:
    """Honda's formal group of height n over Z_p, truncated at degree ``trunc``."""

    def __init__(self, p, n, trunc, prec=None):
        if not is_prime(p):
            raise ValueError(f"{p} is not prime")
        self.p, self.n, self.trunc = p, n, trunc
        self.q = p ** n
        self.prec = default_prec(p, trunc) if prec is None else prec
        self.log = honda_log(p, n, trunc)

    @cached_property
    def exp(self):
        return revert(self.log)

    @cached_property
    def fgl(self):
        return group_law(self.log)

    @cached_property
    def modulus(self):
        return hensel_lift_modulus(self.p, self.n, self.prec)

    def mult_by(self, a):
        if isinstance(a, UnramifiedElem):
            return compose(self.exp.change_ring(a.modulus), self.log.change_ring(a.modulus) * a)
        return compose(self.exp, self.log * Fraction(a))

    def teichmueller_endo(self):
        """[omega](T) over W(F_q); equals omega*T."""
        return self.mult_by(self.modulus.gen())

    def add(self, f, g):
        """Formal-group sum F(f(T), g(T))."""
        if f.ring != g.ring:
            raise SeriesError("ring mismatch")
        F = self.fgl
        if f.ring is not QQ:
            F = BiSeries(f.ring, F.trunc, F.terms)
        return bi_substitute(F, f, g)

    def __repr__(self):
        return f"HondaFormalGroup(p={self.p}, n={self.n}, trunc={self.trunc})"


def verify_p_typical(p, n, trunc=None):
    """Check [p](T) = T^q mod p and integrality of [p](T)."""
    q = p ** n
    trunc = q + 2 if trunc is None else trunc
    if trunc < q:
        raise ValueError(f"truncation {trunc} is below q = {q}")
    G = HondaFormalGroup(p, n, trunc)
    pseries = G.mult_by(p)
    integral = series_integral(pseries, p)
    residual = {}
    if integral:
        red = reduce_mod_p(pseries, prime_field(p))
        target = UniSeries.monomial(red.ring, q, trunc)
        diff = red - target
        residual = {k: str(c) for k, c in enumerate(diff.coeffs) if not c.is_zero()}
    return {
        "p": p, "n": n, "q": q, "degree": trunc,
        "integral": integral,
        "residual": residual,
        "pass": integral and not residual,
    }


def endo_frobenius_relation(a, p, n, trunc):
    """Check [sigma(a)](T^p) = ([a](T))^p over F_q.

    This is the power-series form of a^sigma F = F a in the endomorphism
    ring of the reduced group law, with F(T) = T^p.
    """
    if trunc < p:
        raise ValueError("truncation must be at least p")
    G = HondaFormalGroup(p, n, trunc, prec=a.modulus.prec)
    if a.modulus.n != n or a.modulus.p != p:
        raise ValueError("a lives in the wrong unramified ring")
    if not a.is_integral():
        raise ValueError("a must be integral")
    field = a.modulus.residue_field()
    lhs_endo = reduce_mod_p(G.mult_by(a), field)
    sa = reduce_mod_p(G.mult_by(a.frobenius()), field)
    frob_T = UniSeries.monomial(field, p, trunc)
    lhs = lhs_endo ** p
    rhs = compose(sa, frob_T)
    diff = lhs - rhs
    residual = {k: str(c) for k, c in enumerate(diff.coeffs) if not c.is_zero()}
    return {
        "p": p, "n": n, "degree": trunc,
        "lhs": lhs.to_json(), "rhs": rhs.to_json(),
        "residual": residual, "pass": not residual,
    }
