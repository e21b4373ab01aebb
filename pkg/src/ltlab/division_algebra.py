"""Arithmetic in o_D = W(F_q)<F>/(F^n - p) and D = Q_q<F>/(F^n - p).

Elements are kept in the right normal form sum_i a_i F^i with 0 <= i < n,
and the commutation rule F a = sigma(a) F moves F to the right.
"""
import math
import random
from fractions import Fraction

from .padic import INF, PadicError, UnramifiedElem

__all__ = [
    "ODElem", "WeilElem", "od_mul", "od_valuation", "od_inverse", "d_inverse",
    "conj_by_F", "weil_mul", "weil_embed", "center_check", "random_od",
]


class ODElem:
    """sum_i a_i F^i in normal form over a fixed unramified modulus."""

    __slots__ = ("modulus", "coeffs")

    def __init__(self, modulus, coeffs):
        coeffs = [modulus.coerce(c) for c in coeffs]
        n = modulus.n
        if len(coeffs) > n:
            # fold F^(k) = p^(k // n) F^(k % n)
            folded = [modulus.zero() for _ in range(n)]
            for k, c in enumerate(coeffs):
                folded[k % n] = folded[k % n] + c * modulus.p ** (k // n)
            coeffs = folded
        coeffs += [modulus.zero() for _ in range(n - len(coeffs))]
        self.modulus = modulus
        self.coeffs = tuple(coeffs)

    @classmethod
    def scalar(cls, modulus, a):
        return cls(modulus, [a])

    @classmethod
    def F(cls, modulus):
        if modulus.n == 1:
            return cls(modulus, [modulus.p])
        return cls(modulus, [0, 1])

    @classmethod
    def F_power(cls, modulus, m):
        """F^m for any integer m, using F^(-1) = p^(-1) F^(n-1)."""
        n, p = modulus.n, modulus.p
        k, r = divmod(m, n)
        coeffs = [0] * n
        coeffs[r] = Fraction(p) ** k
        return cls(modulus, coeffs)

    @property
    def n(self):
        return self.modulus.n

    def is_zero(self):
        return all(c.is_zero() for c in self.coeffs)

    def __add__(self, other):
        other = _as_od(self.modulus, other)
        return ODElem(self.modulus, [a + b for a, b in zip(self.coeffs, other.coeffs)])

    __radd__ = __add__

    def __neg__(self):
        return ODElem(self.modulus, [-a for a in self.coeffs])

    def __sub__(self, other):
        return self + (-_as_od(self.modulus, other))

    def __rsub__(self, other):
        return _as_od(self.modulus, other) - self

    def __mul__(self, other):
        return od_mul(self, _as_od(self.modulus, other))

    def __rmul__(self, other):
        return od_mul(_as_od(self.modulus, other), self)

    def __pow__(self, e):
        if e < 0:
            return d_inverse(self) ** (-e)
        result = ODElem(self.modulus, [1])
        for _ in range(e):
            result = result * self
        return result

    def __eq__(self, other):
        try:
            other = _as_od(self.modulus, other)
        except TypeError:
            return NotImplemented
        return all(a == b for a, b in zip(self.coeffs, other.coeffs))

    __hash__ = None

    def valuation(self):
        return od_valuation(self)

    def to_json(self):
        return {"p": self.modulus.p, "n": self.n, "prec": self.modulus.prec,
                "coeffs": [c.to_json() for c in self.coeffs]}

    def __repr__(self):
        terms = []
        for i, c in enumerate(self.coeffs):
            if c.is_zero():
                continue
            f = "" if i == 0 else ("*F" if i == 1 else f"*F^{i}")
            terms.append(f"[{c!r}]{f}")
        return " + ".join(terms) or "0"


def _as_od(modulus, x):
    if isinstance(x, ODElem):
        if x.modulus != modulus:
            raise PadicError("modulus mismatch")
        return x
    if isinstance(x, (int, Fraction, UnramifiedElem)):
        return ODElem(modulus, [x])
    raise TypeError(f"cannot use {type(x).__name__} as an element of D")


def od_mul(x, y):
    """sum_{i,j} a_i sigma^i(b_j) F^(i+j), folded with F^n = p."""
    if x.modulus != y.modulus:
        raise PadicError("modulus mismatch")
    M = x.modulus
    n, p = M.n, M.p
    out = [M.zero() for _ in range(n)]
    for i, a in enumerate(x.coeffs):
        if a.is_exact_zero():
            continue
        for j, b in enumerate(y.coeffs):
            if b.is_exact_zero():
                continue
            term = a * b.frobenius(i)
            k, r = divmod(i + j, n)
            if k:
                term = term * p ** k
            out[r] = out[r] + term
    return ODElem(M, out)


def od_valuation(x):
    """min_i (i/n + v(a_i)) as a Fraction; INF for zero."""
    n = x.n
    best = INF
    for i, a in enumerate(x.coeffs):
        if not a.is_zero():
            v = Fraction(i, n) + a.val
            if v < best:
                best = v
    return best


def od_inverse(x, max_iter=None):
    """Two-sided inverse of a unit of o_D by Newton iteration y <- y(2 - xy)."""
    if od_valuation(x) != 0:
        raise ValueError("od_inverse needs a unit (valuation 0)")
    M = x.modulus
    one = ODElem(M, [1])
    y = ODElem(M, [x.coeffs[0].inverse()])
    if max_iter is None:
        max_iter = 2 * math.ceil(math.log2(M.n * M.prec + 1)) + 4
    for _ in range(max_iter):
        err = one - x * y
        if err.is_zero():
            return y
        y = y + y * err
    if (one - x * y).is_zero():
        return y
    raise ArithmeticError("Newton inversion did not converge")


def d_inverse(x):
    """Inverse of any nonzero element of D, via x = u F^k with u a unit."""
    v = od_valuation(x)
    if v == INF:
        raise ZeroDivisionError("inverse of zero")
    k = int(v * x.n)
    M = x.modulus
    u = x * ODElem.F_power(M, -k)
    return ODElem.F_power(M, -k) * od_inverse(u)


def conj_by_F(a):
    """F a F^(-1), computed inside D."""
    M = a.modulus if isinstance(a, ODElem) else a.modulus
    a = _as_od(M, a)
    return ODElem.F(M) * a * ODElem.F_power(M, -1)


def center_check(x):
    """True when x commutes with F and with omega."""
    M = x.modulus
    F = ODElem.F(M)
    w = ODElem(M, [M.gen()])
    return x * F == F * x and x * w == w * x


class WeilElem:
    """(a, m) in W(F_q)^x semidirect Z, with (a, m)(b, k) = (a sigma^m(b), m + k)."""

    __slots__ = ("a", "m")

    def __init__(self, a, m):
        if not a.is_unit():
            raise ValueError("Weil element needs a unit of W(F_q)")
        self.a, self.m = a, int(m)

    @classmethod
    def identity(cls, modulus):
        return cls(modulus.one(), 0)

    def __mul__(self, other):
        return weil_mul(self, other)

    def inverse(self):
        # (a, m)^(-1) = (sigma^(-m)(a^(-1)), -m)
        return WeilElem(self.a.inverse().frobenius(-self.m), -self.m)

    def __eq__(self, other):
        return isinstance(other, WeilElem) and self.m == other.m and self.a == other.a

    __hash__ = None

    def __repr__(self):
        return f"WeilElem({self.a!r}, {self.m})"


def weil_mul(x, y):
    return WeilElem(x.a * y.a.frobenius(x.m), x.m + y.m)


def weil_embed(x):
    """(a, m) -> a F^m in D (in o_D when m >= 0)."""
    M = x.a.modulus
    return ODElem(M, [x.a]) * ODElem.F_power(M, x.m)


def random_od(modulus, rng=None, unit=False, min_val=0):
    """Random element of o_D (a unit when ``unit`` is set)."""
    rng = rng or random
    coeffs = []
    for i in range(modulus.n):
        if i == 0 and unit:
            coeffs.append(modulus.random_element(rng, unit=True))
        else:
            c = modulus.random_element(rng)
            coeffs.append(c * modulus.p ** max(0, min_val))
    return ODElem(modulus, coeffs)
