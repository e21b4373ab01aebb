"""Quasisymmetric functions, their graded dual, and symmetric functions.

Grading: a composition I has degree sum(I).  (Topologically Z_k sits in
degree 2k; everything here uses the algebraic degree k.)

QSym has the monomial basis M_I with the quasi-shuffle product and the
deconcatenation coproduct.  NSym is the free associative algebra on
Z_1, Z_2, ... with Delta Z_k = sum_{i+j=k} Z_i (x) Z_j, Z_0 = 1; the
pairing <Z_I, M_J> = delta_{IJ} makes the two Hopf algebras dual.
Sym is represented in the monomial (m) and power-sum (p) bases.
"""
import re
from fractions import Fraction
from functools import lru_cache
from itertools import combinations, permutations

from .lyndon import compositions, lyndon_words


def parse_composition(text):
    """"(2,1)" -> (2, 1); "()" -> ()."""
    s = text.strip()
    if s.startswith("(") and s.endswith(")"):
        s = s[1:-1]
    s = s.strip()
    if not s:
        return ()
    parts = tuple(int(x) for x in s.split(","))
    if any(x <= 0 for x in parts):
        raise ValueError(f"composition parts must be positive: {text!r}")
    return parts


def format_composition(I):
    return "(" + ",".join(str(i) for i in I) + ")"


def _sort_key(I):
    return (sum(I), I)


# sparse linear combinations -------------------------------------------------


class _Sparse:
    __slots__ = ("terms",)
    letter = "?"

    def __init__(self, terms=None):
        clean = {}
        for k, c in (terms or {}).items():
            c = Fraction(c)
            if c:
                clean[tuple(k)] = c
        self.terms = clean

    @classmethod
    def basis(cls, I):
        return cls({tuple(I): 1})

    @classmethod
    def one(cls):
        return cls({(): 1})

    def _new(self, terms):
        return type(self)(terms)

    def __add__(self, other):
        other = self._coerce(other)
        out = dict(self.terms)
        for k, c in other.terms.items():
            out[k] = out.get(k, 0) + c
        return self._new(out)

    __radd__ = __add__

    def __neg__(self):
        return self._new({k: -c for k, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def _coerce(self, other):
        if isinstance(other, type(self)):
            return other
        if isinstance(other, (int, Fraction)):
            return type(self)({(): other})
        raise TypeError(f"cannot combine {type(self).__name__} with {type(other).__name__}")

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self._new({k: c * other for k, c in self.terms.items()})
        other = self._coerce(other)
        out = {}
        for I, a in self.terms.items():
            for J, b in other.terms.items():
                for K, c in self._basis_mul(I, J).items():
                    out[K] = out.get(K, 0) + a * b * c
        return self._new(out)

    def __rmul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self * other
        return self._coerce(other) * self

    def __pow__(self, e):
        result = type(self).one()
        for _ in range(e):
            result = result * self
        return result

    def __eq__(self, other):
        try:
            other = self._coerce(other)
        except TypeError:
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def is_zero(self):
        return not self.terms

    def degree_part(self, k):
        return self._new({I: c for I, c in self.terms.items() if sum(I) == k})

    def counit(self):
        return self.terms.get((), Fraction(0))

    def to_text(self):
        items = sorted(self.terms.items(), key=lambda kv: _sort_key(kv[0]))
        if not items:
            return "0"
        out = []
        for I, c in items:
            mono = f"{self.letter}{format_composition(I)}"
            if c == 1:
                t = mono
            elif c == -1:
                t = "-" + mono
            else:
                t = f"{c}*{mono}"
            out.append(t)
        text = out[0]
        for t in out[1:]:
            text += " - " + t[1:] if t.startswith("-") else " + " + t
        return text

    def to_json(self):
        return [[list(I), str(c)] for I, c in sorted(self.terms.items(),
                                                      key=lambda kv: _sort_key(kv[0]))]

    def __repr__(self):
        return self.to_text()


@lru_cache(maxsize=None)
def quasi_shuffle(I, J):
    """Quasi-shuffle (stuffle) of two compositions as a tuple of (K, mult)."""
    if not I:
        return ((J, 1),)
    if not J:
        return ((I, 1),)
    out = {}
    a, u = I[0], I[1:]
    b, v = J[0], J[1:]
    for K, c in quasi_shuffle(u, J):
        out[(a,) + K] = out.get((a,) + K, 0) + c
    for K, c in quasi_shuffle(I, v):
        out[(b,) + K] = out.get((b,) + K, 0) + c
    for K, c in quasi_shuffle(u, v):
        out[(a + b,) + K] = out.get((a + b,) + K, 0) + c
    return tuple(sorted(out.items()))


class QSymElem(_Sparse):
    """Linear combination of monomial quasisymmetric functions M_I."""
    __slots__ = ()
    letter = "M"

    @staticmethod
    def _basis_mul(I, J):
        return dict(quasi_shuffle(I, J))


class NSymElem(_Sparse):
    """Linear combination of words Z_I = Z_{i1} Z_{i2} ... (noncommutative)."""
    __slots__ = ()
    letter = "Z"

    @staticmethod
    def _basis_mul(I, J):
        return {I + J: 1}

    @classmethod
    def Z(cls, k):
        return cls.one() if k == 0 else cls({(k,): 1})


M = QSymElem.basis
Z = NSymElem.Z


class Tensor:
    """Element of A (x) A for one of the sparse algebras above."""

    __slots__ = ("cls", "terms")

    def __init__(self, cls, terms=None):
        self.cls = cls
        self.terms = {k: Fraction(c) for k, c in (terms or {}).items() if c}

    @classmethod
    def pure(cls, x, y):
        out = {}
        for I, a in x.terms.items():
            for J, b in y.terms.items():
                out[(I, J)] = out.get((I, J), 0) + a * b
        return cls(type(x), out)

    def __add__(self, other):
        out = dict(self.terms)
        for k, c in other.terms.items():
            out[k] = out.get(k, 0) + c
        return Tensor(self.cls, out)

    def __sub__(self, other):
        return self + other * -1

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return Tensor(self.cls, {k: c * other for k, c in self.terms.items()})
        bm = self.cls._basis_mul
        out = {}
        for (I1, I2), a in self.terms.items():
            for (J1, J2), b in other.terms.items():
                left = bm(I1, J1)
                right = bm(I2, J2)
                for K1, c1 in left.items():
                    for K2, c2 in right.items():
                        key = (K1, K2)
                        out[key] = out.get(key, 0) + a * b * c1 * c2
        return Tensor(self.cls, out)

    def __eq__(self, other):
        return isinstance(other, Tensor) and self.terms == other.terms

    __hash__ = None

    def map(self, f, g, cls=None):
        """(f (x) g) applied termwise; f, g map basis keys to elements."""
        out = Tensor(cls or self.cls)
        for (I, J), c in self.terms.items():
            out = out + Tensor.pure(f(I), g(J)) * c
        return out

    def multiply(self, f=None, g=None):
        """m o (f (x) g): collapse the tensor with the algebra product."""
        cls = self.cls
        f = f or cls.basis
        g = g or cls.basis
        out = cls()
        for (I, J), c in self.terms.items():
            out = out + f(I) * g(J) * c
        return out

    def to_json(self):
        return [[list(I), list(J), str(c)] for (I, J), c in
                sorted(self.terms.items(), key=lambda kv: (_sort_key(kv[0][0]), _sort_key(kv[0][1])))]

    def to_text(self):
        L = self.cls.letter
        items = sorted(self.terms.items(), key=lambda kv: (sum(kv[0][0]) + sum(kv[0][1]),
                                                           _sort_key(kv[0][0]), kv[0][1]))
        parts = []
        for (I, J), c in items:
            coef = "" if c == 1 else ("-" if c == -1 else f"{c}*")
            parts.append(f"{coef}{L}{format_composition(I)}#{L}{format_composition(J)}")
        if not parts:
            return "0"
        text = parts[0]
        for t in parts[1:]:
            text += " - " + t[1:] if t.startswith("-") else " + " + t
        return text

    def __repr__(self):
        return self.to_text()


# Hopf structure ----------------------------------------------------------------


def qsym_mul(x, y):
    return x * y


def qsym_comul(x):
    """Deconcatenation: M_I -> sum over I = I1 I2 of M_I1 (x) M_I2."""
    out = {}
    for I, c in x.terms.items():
        for k in range(len(I) + 1):
            key = (I[:k], I[k:])
            out[key] = out.get(key, 0) + c
    return Tensor(QSymElem, out)


@lru_cache(maxsize=None)
def _nsym_comul_word(I):
    result = Tensor(NSymElem, {((), ()): 1})
    for k in I:
        gen = Tensor(NSymElem, {((i,) if i else (), (k - i,) if k - i else ()): 1
                                for i in range(k + 1)})
        result = result * gen
    return tuple(result.terms.items())


def nsym_comul(w):
    """Algebra-map extension of Delta Z_k = sum_{i+j=k} Z_i (x) Z_j."""
    out = {}
    for I, c in w.terms.items():
        for key, d in _nsym_comul_word(I):
            out[key] = out.get(key, 0) + c * d
    return Tensor(NSymElem, out)


def comul(x):
    return qsym_comul(x) if isinstance(x, QSymElem) else nsym_comul(x)


def duality_pairing(w, x):
    """<Z_I, M_J> = delta_{IJ}, extended bilinearly."""
    return sum((c * x.terms.get(I, 0) for I, c in w.terms.items()), Fraction(0))


def tensor_pairing(s, t):
    """<w1 (x) w2, x1 (x) x2> = <w1, x1><w2, x2> for NSym (x) NSym vs QSym (x) QSym."""
    return sum((c * t.terms.get(k, 0) for k, c in s.terms.items()), Fraction(0))


@lru_cache(maxsize=None)
def _antipode_basis(I):
    # m(S (x) id)Delta M_I = 0 for I nonempty; solve for S(M_I)
    if not I:
        return ((), Fraction(1)),
    acc = QSymElem()
    for k in range(len(I)):
        prefix, suffix = I[:k], I[k:]
        acc = acc + QSymElem(dict(_antipode_basis(prefix))) * QSymElem.basis(suffix)
    return tuple((-acc).terms.items())


def antipode(x):
    """Antipode of QSym, computed from the axiom m(S (x) id)Delta = u eps."""
    out = QSymElem()
    for I, c in x.terms.items():
        out = out + QSymElem(dict(_antipode_basis(I))) * c
    return out


@lru_cache(maxsize=None)
def _nsym_antipode_gen(k):
    if k == 0:
        return ((), Fraction(1)),
    acc = NSymElem()
    for i in range(k):
        acc = acc + NSymElem(dict(_nsym_antipode_gen(i))) * NSymElem.Z(k - i)
    return tuple((-acc).terms.items())


def nsym_antipode(w):
    """Antipode of NSym: anti-multiplicative, S(Z_k) from the axiom."""
    out = NSymElem()
    for I, c in w.terms.items():
        term = NSymElem.one()
        for k in I:
            term = NSymElem(dict(_nsym_antipode_gen(k))) * term
        out = out + term * c
    return out


def antipode_axioms(x):
    """Both m(S (x) id)Delta x and m(id (x) S)Delta x, plus u eps(x)."""
    if isinstance(x, QSymElem):
        S, cls = antipode, QSymElem
    else:
        S, cls = nsym_antipode, NSymElem
    D = comul(x)
    left = D.multiply(f=lambda I: S(cls.basis(I)))
    right = D.multiply(g=lambda J: S(cls.basis(J)))
    return left, right, cls.one() * x.counit()


def basis_of_degree(k):
    """Compositions of k, the basis of the degree-k part (dimension 2^(k-1))."""
    return compositions(k)


def graded_dimension(k):
    return len(compositions(k))


# symmetric functions ---------------------------------------------------------


def partitions(k, largest=None):
    largest = k if largest is None else largest
    if k == 0:
        return [()]
    out = []
    for first in range(min(k, largest), 0, -1):
        out.extend((first,) + rest for rest in partitions(k - first, first))
    return out


def as_partition(parts):
    parts = tuple(sorted((int(x) for x in parts), reverse=True))
    if any(x <= 0 for x in parts):
        raise ValueError("partition parts must be positive")
    return parts


class SymElem:
    """Symmetric function as a combination of m_lambda or p_lambda."""

    __slots__ = ("basis", "terms")

    def __init__(self, basis, terms=None):
        if basis not in ("m", "p"):
            raise ValueError("basis must be 'm' or 'p'")
        self.basis = basis
        clean = {}
        for lam, c in (terms or {}).items():
            lam = as_partition(lam)
            clean[lam] = clean.get(lam, 0) + Fraction(c)
        self.terms = {k: c for k, c in clean.items() if c}

    @classmethod
    def m(cls, *lam):
        return cls("m", {as_partition(lam): 1})

    @classmethod
    def p(cls, *lam):
        return cls("p", {as_partition(lam): 1})

    def to_basis(self, basis):
        if basis == self.basis:
            return self
        table = _p_to_m if self.basis == "p" else _m_to_p
        out = {}
        for lam, c in self.terms.items():
            for mu, d in table(lam).items():
                out[mu] = out.get(mu, 0) + c * d
        return SymElem(basis, out)

    def __add__(self, other):
        other = other.to_basis(self.basis)
        out = dict(self.terms)
        for k, c in other.terms.items():
            out[k] = out.get(k, 0) + c
        return SymElem(self.basis, out)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return SymElem(self.basis, {k: c * other for k, c in self.terms.items()})
        a = self.to_basis("p")
        b = other.to_basis("p")
        out = {}
        for lam, c in a.terms.items():
            for mu, d in b.terms.items():
                nu = as_partition(lam + mu)
                out[nu] = out.get(nu, 0) + c * d
        return SymElem("p", out).to_basis(self.basis)

    __rmul__ = __mul__

    def __eq__(self, other):
        return isinstance(other, SymElem) and self.to_basis("m").terms == other.to_basis("m").terms

    __hash__ = None

    def comul(self):
        """Tensor over partitions; p_n is primitive, m splits multisets."""
        out = {}
        for lam, c in self.terms.items():
            if self.basis == "p":
                idx = range(len(lam))
                for r in range(len(lam) + 1):
                    for S in combinations(idx, r):
                        left = tuple(lam[i] for i in S)
                        right = tuple(lam[i] for i in idx if i not in S)
                        key = (as_partition(left), as_partition(right))
                        out[key] = out.get(key, 0) + c
            else:
                for left, right in _multiset_splits(lam):
                    out[(left, right)] = out.get((left, right), 0) + c
        return self.basis, {k: v for k, v in out.items() if v}

    def to_text(self):
        items = sorted(self.terms.items(), key=lambda kv: (sum(kv[0]), kv[0]))
        if not items:
            return "0"
        out = []
        for lam, c in items:
            mono = f"{self.basis}{format_composition(lam)}"
            out.append(mono if c == 1 else ("-" + mono if c == -1 else f"{c}*{mono}"))
        text = out[0]
        for t in out[1:]:
            text += " - " + t[1:] if t.startswith("-") else " + " + t
        return text

    def __repr__(self):
        return self.to_text()


def _multiset_splits(lam):
    from collections import Counter
    counts = sorted(Counter(lam).items(), reverse=True)
    splits = [((), ())]
    for part, mult in counts:
        new = []
        for left, right in splits:
            for k in range(mult + 1):
                new.append((left + (part,) * k, right + (part,) * (mult - k)))
        splits = new
    return [(as_partition(l), as_partition(r)) for l, r in splits]


@lru_cache(maxsize=None)
def _p_to_m_cached(lam):
    out = {}
    for mu in partitions(sum(lam)):
        c = _assignments(lam, mu)
        if c:
            out[mu] = Fraction(c)
    return tuple(out.items())


def _assignments(lam, mu):
    """Ways to send each part of lam to a variable so variable j collects mu_j."""
    @lru_cache(maxsize=None)
    def count(i, remaining):
        if i == len(lam):
            return 1 if not any(remaining) else 0
        total = 0
        for j, r in enumerate(remaining):
            if r >= lam[i]:
                rem = list(remaining)
                rem[j] -= lam[i]
                total += count(i + 1, tuple(rem))
        return total
    return count(0, tuple(mu))


def _p_to_m(lam):
    return dict(_p_to_m_cached(lam))


@lru_cache(maxsize=None)
def _m_to_p_table(k):
    parts = partitions(k)
    n = len(parts)
    idx = {lam: i for i, lam in enumerate(parts)}
    # rows: p_lambda in the m basis; invert to get m in the p basis
    A = [[Fraction(0)] * n for _ in range(n)]
    for lam in parts:
        for mu, c in _p_to_m(lam).items():
            A[idx[lam]][idx[mu]] = c
    inv = _invert(A)
    # m_mu = sum_lam inv[mu][lam] p_lam  (since p = A m  =>  m = A^{-1} p)
    table = {}
    for mu in parts:
        table[mu] = tuple((lam, inv[idx[mu]][idx[lam]]) for lam in parts
                          if inv[idx[mu]][idx[lam]])
    return table


def _m_to_p(mu):
    return dict(_m_to_p_table(sum(mu))[mu]) if mu else {(): Fraction(1)}


def _invert(A):
    n = len(A)
    aug = [row[:] + [Fraction(int(i == j)) for j in range(n)] for i, row in enumerate(A)]
    for col in range(n):
        piv = next(r for r in range(col, n) if aug[r][col] != 0)
        aug[col], aug[piv] = aug[piv], aug[col]
        pv = aug[col][col]
        aug[col] = [x / pv for x in aug[col]]
        for r in range(n):
            if r != col and aug[r][col] != 0:
                f = aug[r][col]
                aug[r] = [x - f * y for x, y in zip(aug[r], aug[col])]
    return [row[n:] for row in aug]


def rearrangements(lam):
    return sorted(set(permutations(lam)))


def embed_sym(f):
    """Symm -> QSymm: m_lambda -> sum of M_I over distinct rearrangements I,
    p_lambda -> prod M_(lambda_i)."""
    out = QSymElem()
    for lam, c in f.terms.items():
        if f.basis == "m":
            term = QSymElem({I: 1 for I in rearrangements(lam)})
        else:
            term = QSymElem.one()
            for part in lam:
                term = term * QSymElem.basis((part,))
        out = out + term * c
    return out


def embed_sym_tensor(basis, terms):
    """(embed (x) embed) applied to a Sym tensor as returned by SymElem.comul."""
    out = Tensor(QSymElem)
    for (a, b), c in terms.items():
        out = out + Tensor.pure(embed_sym(SymElem(basis, {a: 1})),
                                embed_sym(SymElem(basis, {b: 1}))) * c
    return out


def qsym_to_sym(x):
    """Return the symmetric function whose embedding is x, or None."""
    terms = {}
    for I, c in x.terms.items():
        lam = as_partition(I)
        if lam in terms:
            if terms[lam] != c:
                return None
            continue
        if any(x.terms.get(J, 0) != c for J in rearrangements(lam)):
            return None
        terms[lam] = c
    return SymElem("m", terms)


# free Lie algebra bookkeeping -------------------------------------------------


def lyndon_basis(degree, odd=False, include_one=True):
    """Lyndon words of weight ``degree`` on generators Z_1, Z_2, ...

    With ``odd`` the alphabet is restricted to odd weights (the f_odd
    generators); ``include_one`` decides whether the weight-1 generator
    (topological degree 2) is admitted there.
    """
    if degree < 1:
        raise ValueError("degree must be >= 1")
    letters = None
    if odd:
        letters = [k for k in range(1, degree + 1, 2) if include_one or k > 1]
    return lyndon_words(degree, letters)


def lie_generator_count(k, odd=False, include_one=True):
    return len(lyndon_basis(k, odd=odd, include_one=include_one))


_TERM = re.compile(r"\s*([+-]?)\s*(?:(\d+(?:/\d+)?)\s*\*?\s*)?([A-Za-z]?)\s*(\([\d,\s]*\))\s*")


def parse_element(text, cls=QSymElem):
    """Parse "2*M(1,1) + M(2)", "(2,1)" or "-1/2*M(3)" into an element."""
    pos = 0
    terms = {}
    text = text.strip()
    if not text:
        raise ValueError("empty expression")
    while pos < len(text):
        m = _TERM.match(text, pos)
        if not m or m.end() == pos:
            raise ValueError(f"cannot parse {text[pos:]!r}")
        sign, coef, letter, comp = m.groups()
        if letter and letter.upper() != cls.letter:
            raise ValueError(f"unexpected basis letter {letter!r}")
        c = Fraction(coef) if coef else Fraction(1)
        if sign == "-":
            c = -c
        I = parse_composition(comp)
        terms[I] = terms.get(I, 0) + c
        pos = m.end()
    return cls(terms)


def parse_sym(text):
    """Parse "m(2,1)", "2*p(3) - p(1,1)" and the like; one basis per expression."""
    pos = 0
    terms = {}
    basis = None
    text = text.strip()
    if not text:
        raise ValueError("empty expression")
    while pos < len(text):
        m = _TERM.match(text, pos)
        if not m or m.end() == pos:
            raise ValueError(f"cannot parse {text[pos:]!r}")
        sign, coef, letter, comp = m.groups()
        letter = letter.lower()
        if letter not in ("m", "p"):
            raise ValueError("symmetric functions use the m or p basis, e.g. m(2,1)")
        if basis is not None and letter != basis:
            raise ValueError("mixing the m and p bases in one expression is not supported")
        basis = letter
        c = Fraction(coef) if coef else Fraction(1)
        if sign == "-":
            c = -c
        lam = as_partition(parse_composition(comp))
        terms[lam] = terms.get(lam, 0) + c
        pos = m.end()
    return SymElem(basis, terms)
