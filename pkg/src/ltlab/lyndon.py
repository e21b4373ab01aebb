"""Lyndon words on a weighted alphabet and the free Lie algebra they index.

Letters are positive integers; letter k has weight k.  Words are tuples.
Tensor-algebra elements are dicts word -> coefficient.
"""
from fractions import Fraction
from functools import lru_cache


def compositions(k):
    """All compositions of k (tuples of positive ints summing to k)."""
    if k == 0:
        return [()]
    out = []
    for first in range(1, k + 1):
        out.extend((first,) + rest for rest in compositions(k - first))
    return out


def is_lyndon(w):
    """Nonempty and strictly smaller than each of its proper rotations."""
    w = tuple(w)
    if not w:
        return False
    return all(w < w[i:] + w[:i] for i in range(1, len(w)))


def lyndon_words(weight, letters=None):
    """Lyndon words of total weight ``weight``, sorted lexicographically.

    ``letters`` optionally restricts the alphabet (e.g. odd letters only).
    """
    allowed = None if letters is None else set(letters)
    out = [w for w in compositions(weight)
           if is_lyndon(w) and (allowed is None or set(w) <= allowed)]
    return sorted(out)


def standard_factorization(w):
    """w = u v with v the longest proper suffix of w that is Lyndon."""
    w = tuple(w)
    for i in range(1, len(w)):
        if is_lyndon(w[i:]):
            return w[:i], w[i:]
    raise ValueError(f"{w} has no standard factorization")


# tensor algebra -------------------------------------------------------------


def t_add(a, b, scale=1):
    out = dict(a)
    for w, c in b.items():
        v = out.get(w, 0) + scale * c
        if v:
            out[w] = v
        else:
            out.pop(w, None)
    return out


def t_mul(a, b, max_weight=None):
    out = {}
    for u, cu in a.items():
        su = sum(u)
        for v, cv in b.items():
            if max_weight is not None and su + sum(v) > max_weight:
                continue
            w = u + v
            c = out.get(w, 0) + cu * cv
            if c:
                out[w] = c
            else:
                out.pop(w, None)
    return out


def t_bracket(a, b, max_weight=None):
    return t_add(t_mul(a, b, max_weight), t_mul(b, a, max_weight), -1)


@lru_cache(maxsize=None)
def _lyndon_poly(w):
    if len(w) == 1:
        return ((w, Fraction(1)),)
    u, v = standard_factorization(w)
    pu, pv = dict(_lyndon_poly(u)), dict(_lyndon_poly(v))
    return tuple(sorted(t_bracket(pu, pv).items()))


def lyndon_poly(w):
    """Tensor expansion of the standard bracketing P_w of a Lyndon word."""
    return dict(_lyndon_poly(tuple(w)))


def bracket_text(w):
    if len(w) == 1:
        return f"e{w[0]}"
    u, v = standard_factorization(w)
    return f"[{bracket_text(u)},{bracket_text(v)}]"


def to_lyndon(poly):
    """Coordinates of a Lie polynomial in the Lyndon basis {P_w}.

    P_w = w + (lexicographically larger words of the same multidegree), so
    peeling off the smallest word repeatedly is a triangular solve.  A
    non-Lie input shows up as a smallest word that is not Lyndon.
    """
    poly = {w: c for w, c in poly.items() if c}
    coords = {}
    while poly:
        w = min(poly)
        c = poly[w]
        if not is_lyndon(w):
            raise ValueError(f"not a Lie polynomial: leading word {w} is not Lyndon")
        coords[w] = c
        poly = t_add(poly, lyndon_poly(w), -c)
    return coords


def from_lyndon(coords):
    out = {}
    for w, c in coords.items():
        out = t_add(out, lyndon_poly(w), c)
    return out
