"""Truncated formal power series in one and several variables.

Coefficients come from a *ring object* with ``zero()``, ``one()``,
``coerce(x)`` and an ``exact`` flag; the elements themselves only need the
usual arithmetic operators (plus ``*`` and ``/`` by Python ints).  The same
engine runs over :data:`QQ`, p-adic rings, residue fields and the interval
reals of :mod:`ltlab.multizeta`.
"""
from fractions import Fraction

DEFAULT_TRUNC = 16


class SeriesError(ValueError):
    pass


class RationalField:
    exact = True
    name = "QQ"

    def zero(self):
        return Fraction(0)

    def one(self):
        return Fraction(1)

    def coerce(self, x):
        return Fraction(x)

    def __repr__(self):
        return "QQ"


QQ = RationalField()


def is_zero(c):
    f = getattr(c, "is_zero", None)
    if f is not None:
        return f()
    return c == 0


def _fmt(c):
    s = str(c)
    if isinstance(c, (int, Fraction)):
        return s
    return f"({s})"


def _monomial_text(c, mono):
    if not mono:
        return _fmt(c)
    if isinstance(c, (int, Fraction)):
        if c == 1:
            return mono
        if c == -1:
            return "-" + mono
    return f"{_fmt(c)}*{mono}"


def _join_terms(terms):
    if not terms:
        return "0"
    out = terms[0]
    for t in terms[1:]:
        out += " - " + t[1:] if t.startswith("-") else " + " + t
    return out


class UniSeries:
    """c_0 + c_1 t + ... + c_D t^D + O(t^(D+1))."""

    __slots__ = ("ring", "coeffs")

    def __init__(self, ring, coeffs, trunc=None):
        coeffs = [ring.coerce(c) for c in coeffs]
        if trunc is None:
            trunc = len(coeffs) - 1
        if trunc < 0:
            raise SeriesError("truncation must be >= 0")
        coeffs = coeffs[:trunc + 1]
        coeffs += [ring.zero()] * (trunc + 1 - len(coeffs))
        self.ring = ring
        self.coeffs = tuple(coeffs)

    @classmethod
    def _raw(cls, ring, coeffs):
        obj = cls.__new__(cls)
        obj.ring = ring
        obj.coeffs = tuple(coeffs)
        return obj

    @classmethod
    def identity(cls, ring, trunc=DEFAULT_TRUNC):
        return cls(ring, [0, 1], trunc)

    @classmethod
    def monomial(cls, ring, k, trunc=DEFAULT_TRUNC, coeff=1):
        c = [0] * (trunc + 1)
        if k <= trunc:
            c[k] = coeff
        return cls(ring, c, trunc)

    @property
    def trunc(self):
        return len(self.coeffs) - 1

    def __getitem__(self, k):
        return self.coeffs[k]

    def __len__(self):
        return len(self.coeffs)

    def truncate(self, trunc):
        if trunc > self.trunc:
            raise SeriesError("cannot raise truncation")
        return UniSeries._raw(self.ring, self.coeffs[:trunc + 1])

    def map_coeffs(self, fn, ring):
        return UniSeries(ring, [fn(c) for c in self.coeffs], self.trunc)

    def change_ring(self, ring):
        return UniSeries(ring, [ring.coerce(c) for c in self.coeffs], self.trunc)

    def is_zero(self):
        return all(is_zero(c) for c in self.coeffs)

    def order(self):
        """Index of the first nonzero coefficient (None for zero)."""
        for k, c in enumerate(self.coeffs):
            if not is_zero(c):
                return k
        return None

    # arithmetic -----------------------------------------------------------
    def _other(self, other):
        if isinstance(other, UniSeries):
            return other
        return UniSeries(self.ring, [other], self.trunc)

    def __add__(self, other):
        other = self._other(other)
        D = min(self.trunc, other.trunc)
        return UniSeries._raw(self.ring, [a + b for a, b in zip(self.coeffs[:D + 1], other.coeffs)])

    __radd__ = __add__

    def __neg__(self):
        return UniSeries._raw(self.ring, [-a for a in self.coeffs])

    def __sub__(self, other):
        return self + (-self._other(other))

    def __rsub__(self, other):
        return self._other(other) - self

    def __mul__(self, other):
        if not isinstance(other, UniSeries):
            return UniSeries._raw(self.ring, [a * other for a in self.coeffs])
        D = min(self.trunc, other.trunc)
        a, b = self.coeffs, other.coeffs
        out = [self.ring.zero()] * (D + 1)
        for i in range(D + 1):
            ai = a[i]
            if is_zero(ai):
                continue
            for j in range(D + 1 - i):
                out[i + j] = out[i + j] + ai * b[j]
        return UniSeries._raw(self.ring, out)

    def __rmul__(self, other):
        return UniSeries._raw(self.ring, [other * a for a in self.coeffs])

    def __truediv__(self, other):
        if isinstance(other, UniSeries):
            return self * other.inverse()
        return UniSeries._raw(self.ring, [a / other for a in self.coeffs])

    def __pow__(self, e):
        if not isinstance(e, int) or e < 0:
            return NotImplemented
        result = UniSeries(self.ring, [1], self.trunc)
        base = self
        while e:
            if e & 1:
                result = result * base
            e >>= 1
            if e:
                base = base * base
        return result

    def inverse(self):
        """Multiplicative inverse; needs an invertible constant term."""
        c0 = self.coeffs[0]
        if is_zero(c0):
            raise SeriesError("constant term not invertible")
        inv0 = self.ring.one() / c0
        g = [inv0]
        for k in range(1, self.trunc + 1):
            acc = self.ring.zero()
            for j in range(1, k + 1):
                acc = acc + self.coeffs[j] * g[k - j]
            g.append(-(acc * inv0))
        return UniSeries._raw(self.ring, g)

    def __eq__(self, other):
        if not isinstance(other, UniSeries):
            other = self._other(other)
        D = min(self.trunc, other.trunc)
        return all(a == b for a, b in zip(self.coeffs[:D + 1], other.coeffs[:D + 1]))

    __hash__ = None

    def __call__(self, h):
        return compose(self, h)

    # output ---------------------------------------------------------------
    def to_text(self, var="t"):
        terms = []
        for k, c in enumerate(self.coeffs):
            if is_zero(c):
                continue
            mono = "" if k == 0 else (var if k == 1 else f"{var}^{k}")
            terms.append(_monomial_text(c, mono))
        return f"{_join_terms(terms)} + O({var}^{self.trunc + 1})"

    def to_json(self):
        return [str(c) for c in self.coeffs]

    def __repr__(self):
        return self.to_text()


class MultiSeries:
    """Truncated series in ``nvars`` variables, truncated by total degree."""

    __slots__ = ("ring", "nvars", "trunc", "terms")

    def __init__(self, ring, nvars, trunc, terms=None):
        self.ring = ring
        self.nvars = nvars
        self.trunc = trunc
        clean = {}
        for e, c in (terms or {}).items():
            e = tuple(e)
            if len(e) != nvars:
                raise SeriesError("exponent length mismatch")
            if sum(e) > trunc:
                continue
            c = ring.coerce(c)
            if not is_zero(c):
                clean[e] = c
        self.terms = clean

    @classmethod
    def _raw(cls, ring, nvars, trunc, terms):
        obj = cls.__new__(cls)
        obj.ring, obj.nvars, obj.trunc, obj.terms = ring, nvars, trunc, terms
        return obj

    @classmethod
    def variable(cls, ring, i, nvars, trunc=DEFAULT_TRUNC):
        e = [0] * nvars
        e[i] = 1
        return cls._raw(ring, nvars, trunc, MultiSeries(ring, nvars, trunc, {tuple(e): 1}).terms)

    @classmethod
    def constant(cls, ring, c, nvars, trunc=DEFAULT_TRUNC):
        return cls._raw(ring, nvars, trunc, MultiSeries(ring, nvars, trunc, {(0,) * nvars: c}).terms)

    @classmethod
    def from_uni(cls, f, i, nvars):
        terms = {}
        for k, c in enumerate(f.coeffs):
            e = [0] * nvars
            e[i] = k
            terms[tuple(e)] = c
        return cls._raw(f.ring, nvars, f.trunc, MultiSeries(f.ring, nvars, f.trunc, terms).terms)

    def coefficient(self, *e):
        return self.terms.get(tuple(e), self.ring.zero())

    def constant_term(self):
        return self.coefficient(*((0,) * self.nvars))

    def is_zero(self):
        return all(is_zero(c) for c in self.terms.values())

    def truncate(self, trunc):
        return self._clean({e: c for e, c in self.terms.items() if sum(e) <= trunc}, trunc)

    def permute(self, perm):
        """Relabel variables: new exponent[i] = old exponent[perm[i]]."""
        return type(self)._raw(self.ring, self.nvars, self.trunc,
                               {tuple(e[j] for j in perm): c for e, c in self.terms.items()})

    def _other(self, other):
        if isinstance(other, MultiSeries):
            if other.nvars != self.nvars:
                raise SeriesError("variable count mismatch")
            return other
        return MultiSeries.constant(self.ring, other, self.nvars, self.trunc)

    def _clean(self, terms, trunc):
        return type(self)._raw(self.ring, self.nvars, trunc,
                               {e: c for e, c in terms.items() if not is_zero(c)})

    def __add__(self, other):
        other = self._other(other)
        D = min(self.trunc, other.trunc)
        out = {e: c for e, c in self.terms.items() if sum(e) <= D}
        for e, c in other.terms.items():
            if sum(e) <= D:
                out[e] = out[e] + c if e in out else c
        return self._clean(out, D)

    __radd__ = __add__

    def __neg__(self):
        return type(self)._raw(self.ring, self.nvars, self.trunc,
                               {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-self._other(other))

    def __rsub__(self, other):
        return self._other(other) - self

    def __mul__(self, other):
        if not isinstance(other, MultiSeries):
            return self._clean({e: c * other for e, c in self.terms.items()}, self.trunc)
        other = self._other(other)
        D = min(self.trunc, other.trunc)
        a = [(e, sum(e), c) for e, c in self.terms.items() if sum(e) <= D]
        b = [(e, sum(e), c) for e, c in other.terms.items() if sum(e) <= D]
        out = {}
        for ea, da, ca in a:
            for eb, db, cb in b:
                if da + db > D:
                    continue
                e = tuple(x + y for x, y in zip(ea, eb))
                v = ca * cb
                out[e] = out[e] + v if e in out else v
        return self._clean(out, D)

    def __rmul__(self, other):
        return self._clean({e: other * c for e, c in self.terms.items()}, self.trunc)

    def __pow__(self, k):
        result = MultiSeries.constant(self.ring, 1, self.nvars, self.trunc)
        for _ in range(k):
            result = result * self
        return result

    def __eq__(self, other):
        other = self._other(other)
        return (self - other).is_zero()

    __hash__ = None

    def to_text(self, names=None):
        names = names or ("X", "Y", "Z", "W")[:self.nvars]
        terms = []
        for e in sorted(self.terms, key=lambda e: (sum(e), tuple(-x for x in e))):
            mono = "*".join(n if k == 1 else f"{n}^{k}" for n, k in zip(names, e) if k)
            terms.append(_monomial_text(self.terms[e], mono))
        return _join_terms(terms)

    def to_json(self):
        return [[*e, str(self.terms[e])]
                for e in sorted(self.terms, key=lambda e: (sum(e), tuple(-x for x in e)))]

    def __repr__(self):
        return self.to_text()


class BiSeries(MultiSeries):
    """Two-variable series F(X, Y) truncated at total degree D."""

    __slots__ = ()

    def __init__(self, ring, trunc, terms=None):
        super().__init__(ring, 2, trunc, terms)

    @classmethod
    def _raw(cls, ring, nvars, trunc, terms):
        obj = MultiSeries.__new__(MultiSeries if nvars != 2 else cls)
        obj.ring, obj.nvars, obj.trunc, obj.terms = ring, nvars, trunc, terms
        return obj

    @classmethod
    def x(cls, ring, trunc=DEFAULT_TRUNC):
        return cls(ring, trunc, {(1, 0): 1})

    @classmethod
    def y(cls, ring, trunc=DEFAULT_TRUNC):
        return cls(ring, trunc, {(0, 1): 1})

    def swap(self):
        return self.permute((1, 0))


def _constant_term(h):
    return h[0] if isinstance(h, UniSeries) else h.constant_term()


def substitute(g, h):
    """g(h) for a univariate g and any series h (Horner, truncated)."""
    D = min(g.trunc, h.trunc)
    if h.trunc > D:
        h = h.truncate(D)
    result = h * 0 + g[D]
    for k in range(D - 1, -1, -1):
        result = result * h + g[k]
    return result


def compose(g, h):
    """(g o h)(t) = g(h(t)) truncated to the smaller truncation."""
    if not is_zero(_constant_term(h)):
        raise SeriesError("inner series must have zero constant term")
    return substitute(g, h)


def derivative(g):
    if isinstance(g, UniSeries):
        c = [g.coeffs[k] * k for k in range(1, g.trunc + 1)]
        return UniSeries._raw(g.ring, c or [g.ring.zero()])
    raise TypeError("derivative is defined for univariate series")


def derivative_cocycle(g, h):
    """The translated derivative g'(h(t))."""
    return compose(derivative(g), h)


def revert(h):
    """Compositional inverse by degreewise triangular solve."""
    if not is_zero(h[0]):
        raise SeriesError("series to revert must have zero constant term")
    if is_zero(h[1]):
        raise SeriesError("linear coefficient is not invertible")
    R, D = h.ring, h.trunc
    inv1 = R.one() / h[1]
    b = [R.zero(), inv1] + [R.zero()] * (D - 1)
    for k in range(2, D + 1):
        bs = UniSeries._raw(R, b[:k + 1])
        pw = bs
        acc = R.zero()
        for j in range(2, k + 1):
            pw = pw * bs
            if not is_zero(h[j]):
                acc = acc + h[j] * pw[k]
        b[k] = -(acc * inv1)
    return UniSeries._raw(R, b[:D + 1])


def revert_lagrange(h):
    """Compositional inverse via Lagrange inversion (characteristic 0 only).

    [t^k] h^{-1} = (1/k) [t^(k-1)] (t / h(t))^k.
    """
    if not is_zero(h[0]):
        raise SeriesError("series to revert must have zero constant term")
    R, D = h.ring, h.trunc
    shifted = UniSeries._raw(R, list(h.coeffs[1:]) + [R.zero()])
    phi = shifted.inverse()
    out = [R.zero()]
    pw = UniSeries(R, [1], D)
    for k in range(1, D + 1):
        pw = pw * phi
        out.append(pw[k - 1] / k)
    return UniSeries._raw(R, out)


def series_exp(f):
    """exp(f) for f with zero constant term (needs division by integers)."""
    if not is_zero(f[0]):
        raise SeriesError("exp needs zero constant term")
    R = f.ring
    g = [R.one()]
    for k in range(1, f.trunc + 1):
        acc = R.zero()
        for j in range(1, k + 1):
            if not is_zero(f[j]):
                acc = acc + f[j] * j * g[k - j]
        g.append(acc / k)
    return UniSeries._raw(R, g)


def bi_substitute(F, a, b):
    """F(a, b) for a two-variable F and series a, b without constant terms."""
    if not (is_zero(_constant_term(a)) and is_zero(_constant_term(b))):
        raise SeriesError("substituted series must have zero constant term")
    D = F.trunc
    bpow = [b * 0 + 1]
    for _ in range(D):
        bpow.append(bpow[-1] * b)
    rows = []
    zero = b * 0
    for i in range(D + 1):
        row = zero
        for j in range(D + 1 - i):
            c = F.terms.get((i, j))
            if c is not None:
                row = row + bpow[j] * c
        rows.append(row)
    result = rows[D]
    for i in range(D - 1, -1, -1):
        result = result * a + rows[i]
    return result


def random_invertible(rng, ring=QQ, trunc=DEFAULT_TRUNC, height=5, degree=None):
    """Random series with zero constant term and nonzero linear term."""
    degree = trunc if degree is None else degree
    c = [0, Fraction(rng.choice([i for i in range(-height, height + 1) if i]),
                     rng.randint(1, height))]
    for _ in range(2, degree + 1):
        c.append(Fraction(rng.randint(-height, height), rng.randint(1, height)))
    return UniSeries(ring, c, trunc)


__all__ = [
    "QQ", "RationalField", "UniSeries", "MultiSeries", "BiSeries", "SeriesError",
    "compose", "substitute", "revert", "revert_lagrange", "derivative",
    "derivative_cocycle", "bi_substitute", "series_exp", "random_invertible",
    "is_zero",
]
