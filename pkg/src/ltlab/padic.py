"""Finite-precision arithmetic in Z_p, Q_p and the unramified ring W(F_q).

W(F_q) is modelled concretely as (Z/p^N)[x]/(m) where m is a Hensel lift of
an irreducible factor of x^(q-1) - 1.  The generator x is then the
Teichmueller root of unity, and Frobenius is the substitution x -> x^p.

Elements use a floating valuation: a value is p^val * unit with the unit
known modulo p^prec (relative precision).  ``absprec = val + prec`` is the
power of p to which the value is known.  Zero carries only an ``absprec``,
which is infinite for an exact zero.
"""
import json
import math
import random
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property, lru_cache

from . import _poly

INF = math.inf

DEFAULT_PREC = 12


class PadicError(ArithmeticError):
    pass


class PadicDomainError(PadicError, ValueError):
    """Input outside the domain where a series converges."""


class PrecisionError(PadicError):
    """Not enough known digits to answer the question asked."""


def is_prime(p):
    if not isinstance(p, int) or p < 2:
        return False
    if p < 4:
        return True
    if p % 2 == 0:
        return False
    r = 3
    while r * r <= p:
        if p % r == 0:
            return False
        r += 2
    return True


def valuation(x, p):
    """p-adic valuation of an int or Fraction; INF for zero."""
    x = Fraction(x)
    if x == 0:
        return INF
    v = 0
    num, den = x.numerator, x.denominator
    while num % p == 0:
        num //= p
        v += 1
    while den % p == 0:
        den //= p
        v -= 1
    return v


def _vp_int(c, p):
    v = 0
    while c % p == 0:
        c //= p
        v += 1
    return v


# ---------------------------------------------------------------------------
# The modulus


@dataclass(frozen=True)
class UnramifiedModulus:
    """Concrete model of W(F_q) at absolute precision ``prec``.

    Also serves as the coefficient ring object for :mod:`ltlab.series`.
    """
    p: int
    n: int
    prec: int
    m: tuple

    exact = False

    @property
    def q(self):
        return self.p ** self.n

    @property
    def name(self):
        return f"W(F_{self.q})/p^{self.prec}"

    @cached_property
    def _frob_powers(self):
        # images of x under sigma^i, i = 0..n-1
        mod = self.p ** self.prec
        x = [0, 1] if self.n > 1 else _poly.rem_monic([0, 1], list(self.m), mod)
        out = [tuple(x)]
        img = x
        for _ in range(1, self.n):
            img = _poly.powmod(img, self.p, list(self.m), mod)
            out.append(tuple(img))
        return out

    def frobenius_image(self, i=1):
        """sigma^i(x) as a coefficient list."""
        return list(self._frob_powers[i % self.n])

    # ring protocol -------------------------------------------------------
    def zero(self):
        return UnramifiedElem._exact_zero(self)

    def one(self):
        return self.coerce(1)

    def coerce(self, x):
        if isinstance(x, UnramifiedElem):
            if x.modulus != self:
                raise PadicError("modulus mismatch")
            return x
        if isinstance(x, (int, Fraction)):
            return UnramifiedElem.from_rational(self, x)
        raise TypeError(f"cannot coerce {type(x).__name__} into {self.name}")

    def gen(self):
        """The Teichmueller generator omega (the class of x)."""
        return UnramifiedElem._make(self, 0, [0, 1], INF)

    def from_coeffs(self, coeffs, val=0, absprec=INF):
        return UnramifiedElem._make(self, val, list(coeffs), absprec)

    def random_element(self, rng=None, unit=False, val=0):
        """Random element p^val * (random integral) at full precision."""
        rng = rng or random
        mod = self.p ** self.prec
        while True:
            coeffs = [rng.randrange(mod) for _ in range(self.n)]
            if unit and all(c % self.p == 0 for c in coeffs):
                continue
            if not any(coeffs):
                continue
            return UnramifiedElem._make(self, val, coeffs, INF)

    def residue_field(self):
        return ResidueField(self.p, self.n, tuple(c % self.p for c in self.m))


@lru_cache(maxsize=None)
def hensel_lift_modulus(p, n, prec=DEFAULT_PREC):
    """Deterministic modulus for W(F_{p^n}) known mod p^prec.

    For n = 1 the modulus is x - 1.  For n >= 2 it is the Hensel lift of
    the least monic irreducible polynomial of degree n over F_p, ordering
    candidates by their coefficient tuple (c_{n-1}, ..., c_0).
    """
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    if not isinstance(n, int) or n < 1:
        raise ValueError("extension degree must be >= 1")
    if not isinstance(prec, int) or prec < 1:
        raise ValueError("precision must be >= 1")
    mod = p ** prec
    if n == 1:
        return UnramifiedModulus(p, 1, prec, ((-1) % mod, 1))
    q = p ** n
    mbar = None
    for code in range(p ** n):
        digits = []
        c = code
        for _ in range(n):
            digits.append(c % p)
            c //= p
        # c_0 varies fastest, so codes run through (c_{n-1}, ..., c_0) in order
        cand = digits + [1]
        if _poly.is_irreducible(cand, p):
            mbar = cand
            break
    f = [-1] + [0] * (q - 2) + [1]
    g = mbar
    h, r = _poly.divmod_field(f, g, p)
    assert not r, "irreducible factor must divide x^(q-1) - 1"
    d, s, t = _poly.xgcd_field(g, h, p)
    assert d == [1]
    pk = p
    for _ in range(1, prec):
        pk1 = pk * p
        err = _poly.sub(f, _poly.mul(g, h, pk1), pk1)
        e = [c // pk for c in err]
        et = _poly.mul(t, e, p)
        quo, rem = _poly.divmod_field(et, g, p)
        dh = _poly.add(_poly.mul(e, s, p), _poly.mul(quo, h, p), p)
        g = _poly.add(g, [pk * c for c in rem], pk1)
        h = _poly.add(h, [pk * c for c in dh], pk1)
        pk = pk1
    g = [c % mod for c in g] + [0] * (n + 1 - len(g))
    g[n] = 1
    assert not _poly.rem_monic(f, g, mod)
    return UnramifiedModulus(p, n, prec, tuple(g))


# ---------------------------------------------------------------------------
# Elements


class UnramifiedElem:
    """Element p^val * unit of Q_q with the unit known mod p^prec."""

    __slots__ = ("modulus", "val", "coeffs", "absprec")

    def __init__(self, modulus, val, coeffs, absprec):
        # use _make for normalization; this stores fields verbatim
        self.modulus = modulus
        self.val = val
        self.coeffs = coeffs
        self.absprec = absprec

    # construction ---------------------------------------------------------
    @classmethod
    def _exact_zero(cls, modulus):
        return cls(modulus, INF, (0,) * modulus.n, INF)

    @classmethod
    def _zero_at(cls, modulus, absprec):
        return cls(modulus, INF, (0,) * modulus.n, absprec)

    @classmethod
    def _make(cls, modulus, val, coeffs, absprec):
        """Normalize p^val * poly(coeffs) known mod p^absprec."""
        p, N, n = modulus.p, modulus.prec, modulus.n
        if val == INF:
            return cls._zero_at(modulus, absprec)
        if len(coeffs) > n:
            # m is only known mod p^N, so high-degree input must be exact mod p^N
            coeffs = _poly.rem_monic(coeffs, list(modulus.m), p ** N)
        if absprec != INF:
            rel = absprec - val
            if rel <= 0:
                return cls._zero_at(modulus, absprec)
            m = p ** rel
            coeffs = [c % m for c in coeffs]
        nz = [c for c in coeffs if c]
        if not nz:
            return cls._zero_at(modulus, absprec)
        shift = min(_vp_int(c, p) for c in nz)
        if shift:
            pw = p ** shift
            coeffs = [c // pw for c in coeffs]
            val += shift
        rel = N if absprec == INF else min(absprec - val, N)
        m = p ** rel
        coeffs = tuple(c % m for c in coeffs) + (0,) * (n - len(coeffs))
        return cls(modulus, val, coeffs, val + rel)

    @classmethod
    def from_rational(cls, modulus, x):
        x = Fraction(x)
        if x == 0:
            return cls._exact_zero(modulus)
        p = modulus.p
        v = valuation(x, p)
        num, den = x.numerator, x.denominator
        if v >= 0:
            num //= p ** v
        else:
            den //= p ** (-v)
        mod = p ** modulus.prec
        return cls._make(modulus, v, [num * pow(den, -1, mod) % mod], INF)

    # basic properties -----------------------------------------------------
    @property
    def p(self):
        return self.modulus.p

    @property
    def prec(self):
        """Relative precision (0 for zero)."""
        return 0 if self.val == INF else self.absprec - self.val

    @property
    def unit(self):
        return self.coeffs

    def is_zero(self):
        return self.val == INF

    def is_exact_zero(self):
        return self.val == INF and self.absprec == INF

    def is_integral(self):
        """True when the value is certified to lie in W(F_q)."""
        if self.val == INF:
            return self.absprec >= 0
        return self.val >= 0

    def is_unit(self):
        return self.val == 0

    def _like(self, val, coeffs, absprec):
        return type(self)._make(self.modulus, val, coeffs, absprec)

    def _coerce(self, other):
        if isinstance(other, UnramifiedElem):
            if other.modulus != self.modulus:
                raise PadicError("modulus mismatch")
            return other
        if isinstance(other, (int, Fraction)):
            return type(self).from_rational(self.modulus, other)
        return NotImplemented

    # arithmetic -----------------------------------------------------------
    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        a, b = self, other
        absprec = min(a.absprec, b.absprec)
        if a.val == INF:
            return b._like(b.val, list(b.coeffs), absprec)
        if b.val == INF:
            return a._like(a.val, list(a.coeffs), absprec)
        v = min(a.val, b.val)
        pa = a.p ** (a.val - v)
        pb = b.p ** (b.val - v)
        coeffs = [pa * x + pb * y for x, y in zip(a.coeffs, b.coeffs)]
        return a._like(v, coeffs, absprec)

    __radd__ = __add__

    def __neg__(self):
        if self.val == INF:
            return self
        return self._like(self.val, [-c for c in self.coeffs], self.absprec)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return other + (-self)

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        a, b = self, other
        if a.val == INF or b.val == INF:
            if a.val == INF and b.val == INF:
                ap = a.absprec + b.absprec
            elif a.val == INF:
                ap = a.absprec + b.val
            else:
                ap = b.absprec + a.val
            return type(self)._zero_at(self.modulus, ap)
        rel = min(a.prec, b.prec)
        mod = a.p ** rel
        coeffs = _poly.mulmod(list(a.coeffs), list(b.coeffs), list(a.modulus.m), mod)
        v = a.val + b.val
        return a._like(v, coeffs, v + rel)

    __rmul__ = __mul__

    def _unit_inverse(self):
        p, rel, mod_m = self.p, self.prec, list(self.modulus.m)
        u = list(self.coeffs)
        # residue inverse: u^(q-2) in F_q
        y = _poly.powmod(u, self.modulus.q - 2, mod_m, p)
        k = 1
        while k < rel:
            k = min(2 * k, rel)
            mod = p ** k
            uy = _poly.mulmod(u, y, mod_m, mod)
            two_minus = _poly.sub([2], uy, mod)
            y = _poly.mulmod(y, two_minus, mod_m, mod)
        return y

    def inverse(self):
        if self.val == INF:
            raise ZeroDivisionError("inverse of zero")
        y = self._unit_inverse()
        return self._like(-self.val, y, -self.val + self.prec)

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self * other.inverse()

    def __rtruediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return other * self.inverse()

    def __pow__(self, e):
        if not isinstance(e, int):
            return NotImplemented
        if e < 0:
            return self.inverse() ** (-e)
        result = self.modulus.one()
        base = self
        while e:
            if e & 1:
                result = result * base
            e >>= 1
            if e:
                base = base * base
        return result

    def __eq__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return (self - other).is_zero()

    __hash__ = None

    # structure ------------------------------------------------------------
    def frobenius(self, times=1):
        """Image under sigma^times (sigma: x -> x^p)."""
        times %= self.modulus.n
        if self.val == INF or times == 0:
            return self
        mod = self.p ** self.prec
        img = [c % mod for c in self.modulus.frobenius_image(times)]
        coeffs = _poly.compose_mod(list(self.coeffs), img, list(self.modulus.m), mod)
        return self._like(self.val, coeffs, self.absprec)

    def residue(self):
        """Reduction mod p as an element of F_q."""
        F = self.modulus.residue_field()
        if self.val == INF:
            if self.absprec < 1:
                raise PrecisionError("zero not known mod p")
            return F.zero()
        if self.val < 0:
            raise PadicDomainError("element is not integral")
        if self.val > 0:
            return F.zero()
        return F(tuple(c % self.p for c in self.coeffs))

    def lift_exact(self):
        """Exact rational representative when n = 1 (unit lifted to [0, p^prec))."""
        if self.modulus.n != 1:
            raise PadicError("rational representative only for n = 1")
        if self.val == INF:
            return Fraction(0)
        u = _poly.rem_monic(list(self.coeffs), list(self.modulus.m), self.p ** self.prec)
        u = u[0] if u else 0
        return Fraction(u) * Fraction(self.p) ** self.val

    # serialization --------------------------------------------------------
    def to_json(self):
        return {
            "p": self.p,
            "n": self.modulus.n,
            "prec": self.modulus.prec,
            "val": None if self.val == INF else self.val,
            "absprec": None if self.absprec == INF else self.absprec,
            "unit_coeffs": list(self.coeffs),
        }

    @classmethod
    def from_json(cls, data):
        if isinstance(data, str):
            data = json.loads(data)
        modulus = hensel_lift_modulus(data["p"], data["n"], data["prec"])
        absprec = INF if data.get("absprec") is None else data["absprec"]
        if data["val"] is None:
            return cls._zero_at(modulus, absprec)
        return cls._make(modulus, data["val"], list(data["unit_coeffs"]), absprec)

    def __repr__(self):
        if self.val == INF:
            ap = "" if self.absprec == INF else f" + O({self.p}^{self.absprec})"
            return f"0{ap}"
        terms = []
        for i, c in enumerate(self.coeffs):
            if c:
                terms.append(str(c) if i == 0 else (f"{c}*w" if i == 1 else f"{c}*w^{i}"))
        unit = " + ".join(terms) or "0"
        head = f"({unit})" if len(terms) > 1 else unit
        scale = "" if self.val == 0 else f"*{self.p}^{self.val}"
        return f"{head}{scale} + O({self.p}^{self.absprec})"


class PadicFloat(UnramifiedElem):
    """Element of Q_p: the n = 1 case of :class:`UnramifiedElem`."""

    __slots__ = ()

    @classmethod
    def of(cls, x, p, prec=DEFAULT_PREC):
        return cls.from_rational(hensel_lift_modulus(p, 1, prec), x)

    @property
    def unit(self):
        return self.coeffs[0]


class PadicRing:
    """Coefficient-ring object for Q_p at relative precision ``prec``."""

    exact = False

    def __init__(self, p, prec=DEFAULT_PREC):
        self.modulus = hensel_lift_modulus(p, 1, prec)
        self.p, self.prec = p, prec
        self.name = f"Q_{p}/p^{prec}"

    def zero(self):
        return PadicFloat._exact_zero(self.modulus)

    def one(self):
        return self.coerce(1)

    def coerce(self, x):
        if isinstance(x, PadicFloat):
            return x
        return PadicFloat.from_rational(self.modulus, x)

    def __eq__(self, other):
        return isinstance(other, PadicRing) and other.modulus == self.modulus

    def __hash__(self):
        return hash(self.modulus)


# ---------------------------------------------------------------------------
# Residue field F_q = F_p[x]/(m mod p)


class ResidueField:
    exact = True

    def __init__(self, p, n, mbar):
        self.p, self.n, self.mbar = p, n, tuple(mbar)
        self.name = f"F_{p ** n}"

    @property
    def q(self):
        return self.p ** self.n

    def __eq__(self, other):
        return isinstance(other, ResidueField) and (self.p, self.mbar) == (other.p, other.mbar)

    def __hash__(self):
        return hash((self.p, self.mbar))

    def __call__(self, coeffs):
        if isinstance(coeffs, int):
            coeffs = (coeffs,)
        c = _poly.rem_monic(list(coeffs), list(self.mbar), self.p)
        return FqElem(self, tuple(c) + (0,) * (self.n - len(c)))

    def zero(self):
        return self(())

    def one(self):
        return self(1)

    def gen(self):
        return self((0, 1))

    def coerce(self, x):
        if isinstance(x, FqElem):
            return x
        if isinstance(x, Fraction):
            if x.denominator % self.p == 0:
                raise PadicDomainError("denominator divisible by p")
            return self(x.numerator * pow(x.denominator, -1, self.p))
        return self(x)

    def elements(self):
        for code in range(self.q):
            coeffs = []
            for _ in range(self.n):
                coeffs.append(code % self.p)
                code //= self.p
            yield self(tuple(coeffs))


class FqElem:
    __slots__ = ("field", "coeffs")

    def __init__(self, field, coeffs):
        self.field = field
        self.coeffs = coeffs

    def _coerce(self, other):
        if isinstance(other, FqElem):
            return other
        if isinstance(other, (int, Fraction)):
            return self.field.coerce(other)
        return NotImplemented

    def is_zero(self):
        return not any(self.coeffs)

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self.field(tuple(a + b for a, b in zip(self.coeffs, other.coeffs)))

    __radd__ = __add__

    def __neg__(self):
        return self.field(tuple(-a for a in self.coeffs))

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        F = self.field
        return F(tuple(_poly.mulmod(list(self.coeffs), list(other.coeffs), list(F.mbar), F.p)))

    __rmul__ = __mul__

    def __pow__(self, e):
        if e < 0:
            return self.inverse() ** (-e)
        F = self.field
        return F(tuple(_poly.powmod(list(self.coeffs), e, list(F.mbar), F.p)))

    def inverse(self):
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero in F_q")
        return self ** (self.field.q - 2)

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self * other.inverse()

    def frobenius(self, times=1):
        return self ** (self.field.p ** (times % self.field.n))

    def __eq__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def __repr__(self):
        terms = [str(c) if i == 0 else (f"{c}*w" if i == 1 else f"{c}*w^{i}")
                 for i, c in enumerate(self.coeffs) if c]
        return " + ".join(terms) or "0"


# ---------------------------------------------------------------------------
# Frobenius, Teichmueller, log, exp


def frobenius(a, times=1):
    return a.frobenius(times)


def teichmueller(c, modulus):
    """Teichmueller lift of a nonzero residue c (FqElem, int or tuple)."""
    F = modulus.residue_field()
    c = F.coerce(c) if not isinstance(c, tuple) else F(c)
    if c.is_zero():
        raise PadicDomainError("Teichmueller lift of zero")
    y = modulus.from_coeffs(c.coeffs)
    q = modulus.q
    for _ in range(modulus.prec + 1):
        nxt = y ** q
        if nxt == y:
            return nxt
        y = nxt
    return y


def _known_absprec(z):
    if z.absprec != INF:
        return z.absprec
    return z.val + z.modulus.prec


def padic_log(u):
    """p-adic logarithm on 1 + pW (1 + 4W when p = 2).

    The result's ``absprec`` accounts for the valuation lost when dividing
    z^k by k; it never exceeds the precision of u - 1.
    """
    p = u.p
    z = u - 1
    need = 2 if p == 2 else 1
    if not z.is_integral() or (not z.is_zero() and z.val < need):
        raise PadicDomainError(f"log needs u = 1 mod {p ** need}")
    if z.is_zero():
        return z
    v, A = z.val, _known_absprec(z)
    result = u.modulus.zero()
    power = z
    k = 1
    while True:
        term = power / k
        result = result + term if k % 2 else result - term
        k += 1
        if k * v - int(math.log(k, p) + 1e-9) >= A:
            break
        power = power * z
    if result.absprec > A:
        result = result._like(result.val, list(result.coeffs), A) if not result.is_zero() \
            else type(result)._zero_at(result.modulus, A)
    return result


def padic_exp(a):
    """p-adic exponential on pW (4W when p = 2)."""
    p = a.p
    need = 2 if p == 2 else 1
    if not a.is_integral() or (not a.is_zero() and a.val < need):
        raise PadicDomainError(f"exp needs valuation >= {need}")
    one = a.modulus.one()
    if a.is_zero():
        return one + a
    v, A = a.val, _known_absprec(a)
    result = one
    term = one
    k = 1
    while True:
        term = term * a / k
        result = result + term
        k += 1
        if k * v - (k - 1) / (p - 1) >= A:
            break
    if result.absprec > A:
        result = result._like(result.val, list(result.coeffs), A)
    return result


def unit_log(u):
    """Logarithm on all of W(F_q)^x: log(u^e)/e with e = q - 1 (2(q - 1) at p = 2).

    Its kernel is the group of Teichmueller roots of unity (times +-1 at
    p = 2) and its image lies in pW, which realizes the exact sequence
    1 -> k^x -> W(k)^x -> W(k) -> k -> 0 at finite precision.
    """
    if not u.is_unit():
        raise PadicDomainError("unit_log needs a unit")
    e = u.modulus.q - 1
    if u.p == 2:
        e *= 2
    return padic_log(u ** e) / e
