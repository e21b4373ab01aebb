"""Multizeta numerics with rigorous error bounds.

Values are :class:`RealApprox` intervals (midpoint plus absolute error
bound) on top of mpmath floats.  Every routine states where its bound comes
from; rounding is absorbed by a relative slack of a few ulps per operation.
"""
import math
from fractions import Fraction
from functools import lru_cache

import mpmath
from mpmath import mpf

from .qsym import QSymElem, SymElem, as_partition, qsym_to_sym
from .series import UniSeries, series_exp

DEFAULT_DIGITS = 30
MAX_DIGITS = 500


def _bits(digits):
    return int(math.ceil(digits * 3.3219280948873626)) + 40


def _ulp(x, prec):
    return abs(x) * mpf(2) ** (4 - prec)


class RealApprox:
    """A real number known to lie in [value - err, value + err]."""

    __slots__ = ("value", "err", "prec")

    def __init__(self, value, err=0, prec=None):
        self.prec = prec or mpmath.mp.prec
        with mpmath.workprec(self.prec):
            self.value = mpf(value)
            self.err = abs(mpf(err))

    @classmethod
    def exact(cls, x, prec):
        """Round a rational (or int) to ``prec`` bits, recording the rounding."""
        with mpmath.workprec(prec):
            if isinstance(x, Fraction):
                v = mpf(x.numerator) / x.denominator
            else:
                v = mpf(x)
            err = 0 if isinstance(x, int) and abs(x) < 2 ** (prec - 2) else _ulp(v, prec)
        return cls(v, err, prec)

    def _coerce(self, other):
        if isinstance(other, RealApprox):
            return other
        if isinstance(other, (int, Fraction)):
            return RealApprox.exact(other, self.prec)
        raise TypeError(f"cannot combine RealApprox with {type(other).__name__}")

    def _wrap(self, value, err, prec):
        with mpmath.workprec(prec):
            return RealApprox(value, err + _ulp(value, prec), prec)

    def __add__(self, other):
        other = self._coerce(other)
        prec = min(self.prec, other.prec)
        with mpmath.workprec(prec):
            return self._wrap(self.value + other.value, self.err + other.err, prec)

    __radd__ = __add__

    def __neg__(self):
        with mpmath.workprec(self.prec):
            return RealApprox(-self.value, self.err, self.prec)

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        if isinstance(other, int) and abs(other) < 2 ** 53:
            with mpmath.workprec(self.prec):
                return self._wrap(self.value * other, self.err * abs(other), self.prec)
        other = self._coerce(other)
        prec = min(self.prec, other.prec)
        with mpmath.workprec(prec):
            v = self.value * other.value
            e = abs(self.value) * other.err + abs(other.value) * self.err + self.err * other.err
            return self._wrap(v, e, prec)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, int) and other != 0 and abs(other) < 2 ** 53:
            with mpmath.workprec(self.prec):
                return self._wrap(self.value / other, self.err / abs(other), self.prec)
        other = self._coerce(other)
        prec = min(self.prec, other.prec)
        with mpmath.workprec(prec):
            denom = abs(other.value) - other.err
            if denom <= 0:
                raise ZeroDivisionError("divisor interval contains zero")
            q = self.value / other.value
            e = (self.err + abs(q) * other.err) / denom
            return self._wrap(q, e, prec)

    def __rtruediv__(self, other):
        return self._coerce(other) / self

    def __pow__(self, k):
        result = RealApprox.exact(1, self.prec)
        for _ in range(k):
            result = result * self
        return result

    def is_zero(self):
        return self.value == 0 and self.err == 0

    def contains(self, x, tol=0):
        with mpmath.workprec(self.prec):
            return abs(self.value - mpf(x)) <= self.err + tol

    def agrees(self, other, tol=0):
        """|a - b| <= err_a + err_b + tol."""
        other = self._coerce(other)
        with mpmath.workprec(max(self.prec, other.prec)):
            return abs(self.value - other.value) <= self.err + other.err + tol

    def __float__(self):
        return float(self.value)

    def to_str(self, digits=None):
        digits = digits or max(10, int(self.prec / 3.33) - 12)
        return mpmath.nstr(self.value, digits)

    def err_str(self):
        return mpmath.nstr(self.err, 3)

    def to_json(self, digits=None):
        return {"value": self.to_str(digits), "err": self.err_str()}

    def __str__(self):
        return self.to_str()

    def __repr__(self):
        return f"RealApprox({self.to_str()} +/- {self.err_str()})"


class RealField:
    """Ring object for :mod:`ltlab.series` with RealApprox coefficients."""

    exact = False

    def __init__(self, digits=DEFAULT_DIGITS):
        self.digits = digits
        self.prec = _bits(digits)

    def zero(self):
        return RealApprox(0, 0, self.prec)

    def one(self):
        return RealApprox(1, 0, self.prec)

    def coerce(self, x):
        if isinstance(x, RealApprox):
            return x
        return RealApprox.exact(x, self.prec)

    def __eq__(self, other):
        return isinstance(other, RealField) and other.prec == self.prec

    def __hash__(self):
        return hash(("RealField", self.prec))

    def __repr__(self):
        return f"RealField({self.digits})"


def _check_digits(digits):
    if not 1 <= digits <= MAX_DIGITS:
        raise ValueError(f"digits must be in [1, {MAX_DIGITS}]")


# Bernoulli numbers -------------------------------------------------------------

_BERNOULLI = [Fraction(1)]


def bernoulli(k):
    """B_k from sum_{j<=k} C(k+1, j) B_j = 0 (so B_1 = -1/2)."""
    while len(_BERNOULLI) <= k:
        m = len(_BERNOULLI)
        s = sum(math.comb(m + 1, j) * _BERNOULLI[j] for j in range(m))
        _BERNOULLI.append(-s / (m + 1))
    return _BERNOULLI[k]


# zeta(n) and gamma ---------------------------------------------------------------


@lru_cache(maxsize=None)
def _zeta_cached(n, digits):
    prec = _bits(digits)
    target = mpf(10) ** (-(digits + 5))
    N = max(10, digits // 2 + 10)
    with mpmath.workprec(prec):
        while True:
            s = mpf(0)
            for k in range(1, N):
                s += mpf(k) ** (-n)
            s += mpf(N) ** (1 - n) / (n - 1) + mpf(N) ** (-n) / 2
            rising = mpf(n)       # (n)_(2j-1)
            j = 1
            prev = None
            while True:
                B = bernoulli(2 * j)
                term = mpf(B.numerator) / B.denominator / mpmath.factorial(2 * j) \
                    * rising * mpf(N) ** (-n - 2 * j + 1)
                if abs(term) < target:
                    # remainder after stopping is at most the first omitted term
                    tail = 2 * abs(term)
                    break
                if prev is not None and abs(term) > prev:
                    tail = None
                    break
                s += term
                prev = abs(term)
                rising *= (n + 2 * j - 1) * (n + 2 * j)
                j += 1
            if tail is not None:
                break
            N *= 2
        rounding = (N + 2 * j + 10) * _ulp(s, prec)
        return RealApprox(s, tail + rounding, prec)


def zeta(n, digits=DEFAULT_DIGITS):
    """Riemann zeta at an integer n >= 2 by Euler-Maclaurin summation."""
    if not isinstance(n, int) or n < 2:
        raise ValueError("zeta(n) needs an integer n >= 2 (s = 1 is a pole)")
    _check_digits(digits)
    return _zeta_cached(n, digits)


@lru_cache(maxsize=None)
def euler_gamma(digits=DEFAULT_DIGITS):
    """gamma = H_N - ln N - 1/(2N) + sum_k B_2k / (2k N^2k), with remainder bound."""
    _check_digits(digits)
    prec = _bits(digits)
    target = mpf(10) ** (-(digits + 5))
    N = max(10, digits)
    with mpmath.workprec(prec):
        H = mpf(0)
        for k in range(1, N + 1):
            H += mpf(1) / k
        g = H - mpmath.log(N) - mpf(1) / (2 * N)
        k = 1
        while True:
            B = bernoulli(2 * k)
            term = mpf(B.numerator) / B.denominator / (2 * k) / mpf(N) ** (2 * k)
            if abs(term) < target:
                tail = 2 * abs(term)
                break
            g += term
            k += 1
        rounding = (N + k + 10) * _ulp(H, prec)
        return RealApprox(g, tail + rounding, prec)


def euler_gamma_from_zeta(digits=DEFAULT_DIGITS):
    """Second algorithm: gamma = 1 - sum_{k>=2} (zeta(k) - 1)/k.

    Tail: zeta(k) - 1 <= 3 * 2^-k, so the tail after K is below 3*2^-K/(K+1).
    """
    _check_digits(digits)
    prec = _bits(digits)
    total = RealApprox.exact(1, prec)
    K = 1
    while True:
        K += 1
        total = total - (zeta(K, digits) - 1) / K
        with mpmath.workprec(prec):
            tail = 3 * mpf(2) ** (-K) / (K + 1)
        if tail < mpf(10) ** (-(digits + 5)):
            break
    return RealApprox(total.value, total.err + tail, prec)


def harmonic_gamma_estimate(N, digits=DEFAULT_DIGITS):
    """H_N - ln N, which exceeds gamma by a quantity in (0, 1/(2N)]."""
    prec = _bits(digits)
    with mpmath.workprec(prec):
        v = mpmath.fsum(mpf(1) / k for k in range(1, N + 1)) - mpmath.log(N)
    return RealApprox(v, _ulp(v, prec) * (N + 4), prec)


# multiple zeta values -------------------------------------------------------------


def is_admissible(s):
    s = tuple(s)
    return bool(s) and s[0] >= 2 and all(x >= 1 for x in s)


def _word(s):
    """ζ(s) as the 0/1 word 0^(s1-1) 1 0^(s2-1) 1 ... read from the outer end."""
    w = []
    for x in s:
        w.extend([0] * (x - 1))
        w.append(1)
    return tuple(w)


def _word_to_indices(w):
    """Inverse of _word for words ending in 1 (zeros allowed at the front)."""
    out = []
    zeros = 0
    for e in w:
        if e == 0:
            zeros += 1
        else:
            out.append(zeros + 1)
            zeros = 0
    if zeros:
        raise ValueError("word must end in 1")
    return tuple(out)


def _li_cutoff(k, digits):
    # terms with n1 > M are below 2^-n n^(k-1); geometric tail with ratio r
    target = mpf(10) ** (-(digits + 8))
    M = max(2 * k + 2, 8)
    while True:
        r = mpf(0.5) * (mpf(M + 2) / (M + 1)) ** (k - 1)
        tail = mpf(2) ** (-(M + 1)) * mpf(M + 1) ** (k - 1) / (1 - r)
        if tail < target:
            return M, tail
        M += 8


@lru_cache(maxsize=None)
def _li_half(s, digits):
    """Li_{s1..sk}(1/2) = sum_{n1 > ... > nk >= 1} 2^-n1 / (n1^s1 ... nk^sk)."""
    prec = _bits(digits)
    if not s:
        return RealApprox(1, 0, prec)
    k = len(s)
    with mpmath.workprec(prec):
        M, tail = _li_cutoff(k, digits)
        # c[j] = sum over chains strictly below the current n, starting at depth j
        c = [mpf(0)] * (k + 1)
        c[k] = mpf(1)
        total = mpf(0)
        half = mpf(1)
        for n in range(1, M + 1):
            half /= 2
            nn = mpf(n)
            terms = [None] * k
            for j in range(k - 1, -1, -1):
                terms[j] = c[j + 1] / nn ** s[j]
            total += half * terms[0]
            for j in range(1, k):
                c[j] += terms[j]
        rounding = (M * k + 10) * _ulp(total + 1, prec)
        return RealApprox(total, tail + rounding, prec)


def _dual_reverse(w):
    return tuple(1 - e for e in reversed(w))


@lru_cache(maxsize=None)
def _mzv_cached(s, digits):
    w = _word(s)
    prec = _bits(digits)
    total = RealApprox(0, 0, prec)
    # split the path 0 -> 1 at 1/2; the outer piece maps to 0 -> 1/2 under t -> 1 - t
    for j in range(len(w) + 1):
        outer = _li_half(_word_to_indices(_dual_reverse(w[:j])), digits)
        inner = _li_half(_word_to_indices(w[j:]), digits)
        total = total + outer * inner
    return total


def mzv(s, digits=DEFAULT_DIGITS):
    """ζ(s1, ..., sk) = sum_{n1 > ... > nk >= 1} n1^-s1 ... nk^-sk, s1 >= 2."""
    s = tuple(int(x) for x in s)
    if not is_admissible(s):
        raise ValueError(f"composition {s} is not admissible (need s1 >= 2, parts >= 1)")
    _check_digits(digits)
    return _mzv_cached(s, digits)


def mzv_direct(s, M, digits=20):
    """Truncated nested sum up to n1 <= M with an integral-comparison tail bound.

    Slow; meant as an independent low-precision check of :func:`mzv`.
    """
    s = tuple(s)
    if not is_admissible(s):
        raise ValueError("composition is not admissible")
    k = len(s)
    if M <= math.exp((k - 1) / 2) + 1:
        raise ValueError("cutoff too small for the tail estimate")
    prec = _bits(digits)
    with mpmath.workprec(prec):
        c = [mpf(0)] * (k + 1)
        c[k] = mpf(1)
        total = mpf(0)
        for n in range(1, M + 1):
            nn = mpf(n)
            terms = [c[j + 1] / nn ** s[j] for j in range(k)]
            total += terms[0]
            for j in range(1, k):
                c[j] += terms[j]
        # sum_{n > M} n^-2 (1 + ln n)^(k-1) / (k-1)! <= integral from M
        L = 1 + mpmath.log(M)
        integral = sum(mpmath.factorial(k - 1) / mpmath.factorial(k - 1 - j) * L ** (k - 1 - j)
                       for j in range(k)) / M
        tail = integral / mpmath.factorial(k - 1)
        return RealApprox(total, tail + (M * k + 10) * _ulp(total, prec), prec)


# evaluation on QSym ------------------------------------------------------------


def eval_qsym(x, digits=DEFAULT_DIGITS, regularize="p1"):
    """Linear extension of M_I -> ζ(I).

    Non-admissible terms are handled only through the regularization
    p_1 -> γ.  With ``regularize="p1"`` the non-admissible part must be a
    multiple of M_(1) = p_1.  With ``regularize="sym"`` any element whose
    non-admissible part lies in a symmetric element is evaluated through
    the power-sum basis with p_n -> ζ(n) and p_1 -> γ.
    """
    prec = _bits(digits)
    adm = {I: c for I, c in x.terms.items() if not I or is_admissible(I)}
    rest = {I: c for I, c in x.terms.items() if I and not is_admissible(I)}
    if rest and regularize == "sym":
        f = qsym_to_sym(x)
        if f is None:
            raise ValueError("non-admissible terms outside the symmetric image")
        return eval_sym(f, digits)
    total = RealApprox(0, 0, prec)
    if rest:
        if regularize != "p1" or set(rest) != {(1,)}:
            raise ValueError("non-admissible terms outside the regularized span of p_1")
        total = total + euler_gamma(digits) * rest[(1,)]
    for I, c in adm.items():
        v = RealApprox(1, 0, prec) if not I else mzv(I, digits)
        total = total + v * c
    return total


def eval_sym(f, digits=DEFAULT_DIGITS):
    """p_lambda -> prod ζ(lambda_i) with ζ(1) read as γ."""
    prec = _bits(digits)
    total = RealApprox(0, 0, prec)
    for lam, c in f.to_basis("p").terms.items():
        term = RealApprox(1, 0, prec)
        for part in lam:
            term = term * (euler_gamma(digits) if part == 1 else zeta(part, digits))
        total = total + term * c
    return total


# even zeta values --------------------------------------------------------------


def zeta_even_formula(n, digits=DEFAULT_DIGITS):
    """-1/2 B_2n (2 pi i)^2n / (2n)!  =  -1/2 B_2n (-1)^n (2 pi)^2n / (2n)!."""
    prec = _bits(digits)
    B = bernoulli(2 * n)
    coeff = -B * (-1) ** n / 2 / math.factorial(2 * n)
    with mpmath.workprec(prec + 20):
        two_pi = 2 * mpmath.pi
        pw = two_pi ** (2 * n)
    v = RealApprox(pw, _ulp(pw, prec) * (2 * n + 2), prec)
    return v * coeff


def zeta_even_check(n, digits=DEFAULT_DIGITS, tol=1e-10):
    if n < 1:
        raise ValueError("n must be >= 1")
    z = zeta(2 * n, digits)
    f = zeta_even_formula(n, digits)
    res = z - f
    ok = bool(abs(res.value) <= z.err + f.err + mpf(tol))
    return {
        "n": n, "B_2n": str(bernoulli(2 * n)),
        "zeta": z.to_json(), "formula": f.to_json(),
        "residual": mpmath.nstr(res.value, 5), "pass": ok,
    }


# 1/Gamma ----------------------------------------------------------------------


def gamma_reciprocal_series(D, digits=DEFAULT_DIGITS):
    """Taylor coefficients of 1/Γ(z) through z^D:

    1/Γ(z) = z exp(γ z - sum_{k>=2} (-1)^k ζ(k) z^k / k).
    """
    if D < 1:
        raise ValueError("D must be >= 1")
    R = RealField(digits)
    f = [R.zero(), euler_gamma(digits)]
    for k in range(2, D):
        f.append(zeta(k, digits) * (-(-1) ** k) / k)
    f = f[:D]
    if len(f) < D:
        f += [R.zero()] * (D - len(f))
    e = series_exp(UniSeries._raw(R, f))
    return UniSeries._raw(R, [R.zero()] + list(e.coeffs))


def eval_series(f, z):
    """Evaluate a RealApprox series at a rational point z (Horner)."""
    z = Fraction(z)
    acc = f.ring.zero()
    for c in reversed(f.coeffs):
        acc = acc * f.ring.coerce(z) + c
    return acc


@lru_cache(maxsize=None)
def rgamma_circle_bound(R=2, samples=4096):
    """Sampled max of |1/Γ| on |z| = R, inflated by 10%."""
    with mpmath.workdps(20):
        m = max(abs(mpmath.rgamma(R * mpmath.expjpi(2 * mpf(k) / samples)))
                for k in range(samples))
        return mpf(1.1) * m


def gamma_series_tail_bound(D, r, R=2):
    """Cauchy estimate of sum_{k > D} |c_k| r^k with |c_k| <= C / R^k."""
    C = rgamma_circle_bound(R)
    r = Fraction(r)
    with mpmath.workdps(20):
        x = mpf(r.numerator) / r.denominator / R
        return C * x ** (D + 1) / (1 - x)


def gamma_series_check(D=8, points=("0.1", "0.2"), digits=DEFAULT_DIGITS):
    """Compare the truncated series with mpmath's 1/Γ at a few points."""
    series = gamma_reciprocal_series(D, digits)
    rows = []
    ok = True
    for z in points:
        zf = Fraction(z)
        approx = eval_series(series, zf)
        with mpmath.workprec(approx.prec):
            oracle = mpmath.rgamma(mpf(zf.numerator) / zf.denominator)
            diff = abs(approx.value - oracle)
        bound = gamma_series_tail_bound(D, zf) + approx.err
        good = bool(diff <= bound)
        ok = ok and good
        rows.append({"z": str(z), "series": approx.to_str(20), "oracle": mpmath.nstr(oracle, 20),
                     "diff": mpmath.nstr(diff, 3), "bound": mpmath.nstr(bound, 3), "pass": good})
    return {"D": D, "points": rows, "pass": ok}


__all__ = [
    "RealApprox", "RealField", "bernoulli", "zeta", "euler_gamma", "euler_gamma_from_zeta",
    "harmonic_gamma_estimate", "mzv", "mzv_direct", "is_admissible", "eval_qsym", "eval_sym",
    "zeta_even_formula", "zeta_even_check", "gamma_reciprocal_series", "eval_series",
    "gamma_series_tail_bound", "gamma_series_check",
]
