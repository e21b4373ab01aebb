"""Flat equisingular connections in the free graded Lie algebra.

The Lie algebra is free on generators e_1, e_2, ... with e_k in degree k,
truncated above degree D and written in the Lyndon basis.  A connection
form lambda = lambda_0 dz + lambda_1 u^-1 du is stored as two
:class:`LaurentLie` parts, each a map (z-exponent, u-exponent) -> Lie
element.  Flatness reads  d/dz lambda_1 = H lambda_0 - [lambda_0, lambda_1].
"""
import re
from fractions import Fraction
from functools import lru_cache

from .lyndon import (bracket_text, from_lyndon, is_lyndon, lyndon_words, t_bracket,
                     to_lyndon)


@lru_cache(maxsize=None)
def _basis_bracket(u, v, D):
    if sum(u) + sum(v) > D:
        return ()
    poly = t_bracket(from_lyndon({u: 1}), from_lyndon({v: 1}), D)
    return tuple(to_lyndon(poly).items())


class GradedLieElem:
    """Element of the free graded Lie algebra truncated above degree D."""

    __slots__ = ("D", "terms")

    def __init__(self, D, terms=None):
        self.D = D
        clean = {}
        for w, c in (terms or {}).items():
            w = tuple(w)
            if not is_lyndon(w):
                raise ValueError(f"{w} is not a Lyndon word")
            if sum(w) <= D and c:
                clean[w] = clean.get(w, 0) + Fraction(c)
        self.terms = {w: c for w, c in clean.items() if c}

    @classmethod
    def generator(cls, k, D):
        return cls(D, {(k,): 1})

    @classmethod
    def from_poly(cls, poly, D):
        """From a Lie polynomial in the tensor algebra (dict word -> coeff)."""
        return cls(D, to_lyndon({w: c for w, c in poly.items() if sum(w) <= D}))

    def _new(self, terms):
        obj = GradedLieElem.__new__(GradedLieElem)
        obj.D = self.D
        obj.terms = {w: c for w, c in terms.items() if c}
        return obj

    def is_zero(self):
        return not self.terms

    def __add__(self, other):
        out = dict(self.terms)
        for w, c in other.terms.items():
            out[w] = out.get(w, 0) + c
        return self._new(out)

    def __neg__(self):
        return self._new({w: -c for w, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, c):
        c = Fraction(c)
        return self._new({w: c * v for w, v in self.terms.items()})

    __rmul__ = __mul__

    def __eq__(self, other):
        return isinstance(other, GradedLieElem) and self.terms == other.terms

    __hash__ = None

    def bracket(self, other):
        D = min(self.D, other.D)
        out = {}
        for u, a in self.terms.items():
            for v, b in other.terms.items():
                for w, c in _basis_bracket(u, v, D):
                    out[w] = out.get(w, 0) + a * b * c
        result = self._new(out)
        result.D = D
        return result

    def degrees(self):
        return sorted({sum(w) for w in self.terms})

    def degree_part(self, k):
        return self._new({w: c for w, c in self.terms.items() if sum(w) == k})

    def to_tensor(self):
        return from_lyndon(self.terms)

    def to_text(self):
        if not self.terms:
            return "0"
        parts = []
        for w in sorted(self.terms, key=lambda w: (sum(w), w)):
            c = self.terms[w]
            parts.append(f"{c}*{bracket_text(w)}")
        return " + ".join(parts).replace("+ -", "- ")

    def to_json(self):
        return [[bracket_text(w), str(c)]
                for w, c in sorted(self.terms.items(), key=lambda kv: (sum(kv[0]), kv[0]))]

    def __repr__(self):
        return self.to_text()


def bracket(x, y):
    return x.bracket(y)


def grading_H(x):
    """Multiply each degree-k component by k."""
    if isinstance(x, LaurentLie):
        return x.map(grading_H)
    return x._new({w: c * sum(w) for w, c in x.terms.items()})


def grading_H_inverse(x):
    """Divide each degree-k component by k (k = 0 is rejected)."""
    if isinstance(x, LaurentLie):
        return x.map(grading_H_inverse)
    if any(sum(w) == 0 for w in x.terms):
        raise ValueError("H is not invertible on degree 0")
    return x._new({w: c / sum(w) for w, c in x.terms.items()})


def lie_basis(D):
    """Lyndon basis of the free Lie algebra in degrees 1..D."""
    return [w for k in range(1, D + 1) for w in lyndon_words(k)]


# Laurent polynomials in z, polynomials in u, with Lie coefficients ---------------


class LaurentLie:
    """Finite sum of z^a u^b X_(a,b) with X_(a,b) Lie elements."""

    __slots__ = ("D", "terms")

    def __init__(self, D, terms=None):
        self.D = D
        self.terms = {}
        for (a, b), x in (terms or {}).items():
            if b < 0:
                raise ValueError("u-exponents must be >= 0")
            if not x.is_zero():
                self.terms[(int(a), int(b))] = x

    def is_zero(self):
        return not self.terms

    def map(self, f):
        return LaurentLie(self.D, {k: f(x) for k, x in self.terms.items()})

    def __add__(self, other):
        out = dict(self.terms)
        for k, x in other.terms.items():
            out[k] = out[k] + x if k in out else x
        return LaurentLie(self.D, out)

    def __neg__(self):
        return self.map(lambda x: -x)

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, c):
        return self.map(lambda x: x * c)

    def __eq__(self, other):
        return isinstance(other, LaurentLie) and self.terms == other.terms

    __hash__ = None

    def bracket(self, other):
        out = {}
        for (a1, b1), x in self.terms.items():
            for (a2, b2), y in other.terms.items():
                z = x.bracket(y)
                if z.is_zero():
                    continue
                k = (a1 + a2, b1 + b2)
                out[k] = out[k] + z if k in out else z
        return LaurentLie(self.D, out)

    def d_dz(self):
        return LaurentLie(self.D, {(a - 1, b): x * a for (a, b), x in self.terms.items() if a})

    def u_exponents(self):
        return sorted({b for _, b in self.terms})

    def to_json(self):
        return [{"z": a, "u": b, "lie": x.to_json()}
                for (a, b), x in sorted(self.terms.items(), key=lambda kv: (kv[0][1], kv[0][0]))]

    def to_text(self):
        if not self.terms:
            return "0"
        rows = []
        for (a, b), x in sorted(self.terms.items(), key=lambda kv: (kv[0][1], kv[0][0])):
            rows.append(f"z^{a} u^{b} ({x.to_text()})")
        return " + ".join(rows)

    def __repr__(self):
        return self.to_text()


class ConnectionForm:
    """lambda = lambda_0 dz + lambda_1 u^-1 du."""

    __slots__ = ("dz_part", "du_part")

    def __init__(self, dz_part, du_part):
        self.dz_part = dz_part
        self.du_part = du_part

    @classmethod
    def from_beta(cls, beta, bracket_depth=None):
        lam1 = lambda1_from_beta(beta)
        return cls(solve_lambda0(lam1, bracket_depth), lam1)

    def residual(self):
        return flatness_residual(self.dz_part, self.du_part)

    def to_json(self):
        return {"lambda0": self.dz_part.to_json(), "lambda1": self.du_part.to_json()}


def lambda1_from_beta(beta):
    """lambda_1(z, u) = -z^-1 sum_k u^k beta_k."""
    out = {}
    for k in beta.degrees():
        if k <= 0:
            raise ValueError("beta must have positive degree")
        out[(-1, k)] = -beta.degree_part(k)
    return LaurentLie(beta.D, out)


class ConvergenceError(ArithmeticError):
    pass


def solve_lambda0(lam1, bracket_depth=None):
    """Fixed point of lambda_0 <- H^-1(d/dz lambda_1 + [lambda_0, lambda_1]).

    Every bracket with lambda_1 raises the Lie degree, so the iteration
    settles after at most D rounds; ``bracket_depth`` caps it anyway.
    """
    depth = lam1.D + 1 if bracket_depth is None else bracket_depth
    dz1 = lam1.d_dz()
    lam0 = LaurentLie(lam1.D)
    for _ in range(depth + 1):
        new = grading_H_inverse(dz1 + lam0.bracket(lam1))
        if new == lam0:
            return lam0
        lam0 = new
    raise ConvergenceError(f"lambda_0 iteration did not settle within depth {depth}")


def flatness_residual(lam0, lam1):
    """d/dz lambda_1 - H lambda_0 + [lambda_0, lambda_1]."""
    return lam1.d_dz() - grading_H(lam0) + lam0.bracket(lam1)


def flatness_check(lam0, lam1):
    res = flatness_residual(lam0, lam1)
    regular = all(b > 0 for b in lam0.u_exponents())
    return {
        "residual": res.to_json(),
        "flat": res.is_zero(),
        "regular_at_u0": regular,
        "pass": res.is_zero() and regular,
    }


def perturbed_control(beta):
    """Negative control: add e_1 u z^-2 to the solved lambda_0."""
    lam1 = lambda1_from_beta(beta)
    lam0 = solve_lambda0(lam1)
    bump = LaurentLie(beta.D, {(-2, 1): GradedLieElem.generator(1, beta.D)})
    return flatness_check(lam0 + bump, lam1)


# parsing beta ---------------------------------------------------------------------

_TOKEN = re.compile(r"\s*(\d+(?:/\d+)?|e\d+|[-+*\[\],])")


def _tokenize(text):
    pos, out = 0, []
    text = text.strip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m:
            raise ValueError(f"cannot parse beta at {text[pos:]!r}")
        out.append(m.group(1))
        pos = m.end()
    return out


def parse_beta(text, D):
    """Parse e.g. "1*e1+2*e2" or "e1 - 1/2*[e1,e2]" into a Lie element."""
    try:
        return _parse_beta(_tokenize(text), D)
    except IndexError:
        raise ValueError(f"truncated expression {text!r}") from None


def _parse_beta(toks, D):
    i = 0

    def lie():
        nonlocal i
        t = toks[i]
        if t.startswith("e"):
            i += 1
            k = int(t[1:])
            if k < 1:
                raise ValueError("generators are e1, e2, ...")
            return {(k,): Fraction(1)}
        if t == "[":
            i += 1
            a = lie()
            if toks[i] != ",":
                raise ValueError("expected ',' in bracket")
            i += 1
            b = lie()
            if toks[i] != "]":
                raise ValueError("expected ']'")
            i += 1
            return t_bracket(a, b)
        raise ValueError(f"unexpected token {t!r}")

    total = {}
    sign = 1
    if not toks:
        raise ValueError("empty beta")
    while i < len(toks):
        if toks[i] in "+-":
            sign = -1 if toks[i] == "-" else 1
            i += 1
        coef = Fraction(1)
        if toks[i][0].isdigit():
            coef = Fraction(toks[i])
            i += 1
            if i < len(toks) and toks[i] == "*":
                i += 1
        poly = lie()
        for w, c in poly.items():
            total[w] = total.get(w, 0) + sign * coef * c
        sign = 1
        if i < len(toks) and toks[i] not in "+-":
            raise ValueError(f"unexpected token {toks[i]!r}")
    return GradedLieElem.from_poly(total, D)


def random_beta(rng, D, max_degree=4, height=5):
    """Random rational combination of Lyndon basis elements of degree <= max_degree."""
    terms = {}
    for w in lie_basis(min(D, max_degree)):
        if rng.random() < 0.6:
            terms[w] = Fraction(rng.randint(-height, height), rng.randint(1, height))
    if not any(terms.values()):
        terms[(1,)] = Fraction(1)
    return GradedLieElem(D, terms)


# Witt algebra ---------------------------------------------------------------------


class WittOperator:
    """v_k = u^(k+1) d/du acting on polynomials {exponent: coefficient}."""

    __slots__ = ("k",)

    def __init__(self, k):
        self.k = int(k)

    def __call__(self, f):
        return witt_apply(self.k, f)

    def __repr__(self):
        return f"v_{self.k}"


def witt_apply(k, f):
    if isinstance(k, WittOperator):
        k = k.k
    out = {}
    for m, c in f.items():
        if m and c:
            out[m + k] = out.get(m + k, 0) + Fraction(c) * m
    return {e: c for e, c in out.items() if c}


def witt_bracket_check(k, l, max_m=8):
    """[v_k, v_l] = (l - k) v_(k+l) on u^0 .. u^max_m."""
    failures = []
    for m in range(max_m + 1):
        mono = {m: Fraction(1)}
        lhs = witt_apply(k, witt_apply(l, mono))
        rhs_part = witt_apply(l, witt_apply(k, mono))
        for e, c in rhs_part.items():
            lhs[e] = lhs.get(e, 0) - c
        lhs = {e: c for e, c in lhs.items() if c}
        rhs = {e: c * (l - k) for e, c in witt_apply(k + l, mono).items() if c * (l - k)}
        if lhs != rhs:
            failures.append(m)
    return {"k": k, "l": l, "max_m": max_m, "failures": failures, "pass": not failures}
