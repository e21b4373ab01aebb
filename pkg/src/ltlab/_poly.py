"""Dense integer polynomial helpers modulo p^k.

Polynomials are lists of ints, lowest degree first.  Nothing here knows
about valuations; callers in :mod:`ltlab.padic` do that bookkeeping.
"""


def trim(f):
    f = list(f)
    while f and f[-1] == 0:
        f.pop()
    return f


def reduce_coeffs(f, mod):
    return trim([c % mod for c in f])


def add(f, g, mod):
    n = max(len(f), len(g))
    out = [0] * n
    for i, c in enumerate(f):
        out[i] += c
    for i, c in enumerate(g):
        out[i] += c
    return reduce_coeffs(out, mod)


def sub(f, g, mod):
    return add(f, [-c for c in g], mod)


def mul(f, g, mod):
    if not f or not g:
        return []
    out = [0] * (len(f) + len(g) - 1)
    for i, a in enumerate(f):
        if a:
            for j, b in enumerate(g):
                out[i + j] += a * b
    return reduce_coeffs(out, mod)


def divmod_monic(f, m, mod):
    """Divide f by the monic polynomial m over Z/mod."""
    f = [c % mod for c in f]
    d = len(m) - 1
    if len(f) <= d:
        return [], trim(f)
    q = [0] * (len(f) - d)
    for i in range(len(f) - 1, d - 1, -1):
        c = f[i] % mod
        if c:
            q[i - d] = c
            for j in range(d + 1):
                f[i - d + j] -= c * m[j]
    return reduce_coeffs(q, mod), reduce_coeffs(f[:d], mod)


def rem_monic(f, m, mod):
    return divmod_monic(f, m, mod)[1]


def mulmod(f, g, m, mod):
    return rem_monic(mul(f, g, mod), m, mod)


def powmod(f, e, m, mod):
    result = [1 % mod] if mod > 1 else []
    base = rem_monic(f, m, mod)
    while e:
        if e & 1:
            result = mulmod(result, base, m, mod)
        e >>= 1
        if e:
            base = mulmod(base, base, m, mod)
    return result


def compose_mod(f, g, m, mod):
    """f(g(x)) reduced modulo (m, mod), by Horner."""
    out = []
    for c in reversed(f):
        out = add(mulmod(out, g, m, mod), [c], mod)
    return out


def degree(f):
    return len(trim(f)) - 1


def _monic_field(f, p):
    f = reduce_coeffs(f, p)
    inv = pow(f[-1], -1, p)
    return [c * inv % p for c in f]


def divmod_field(f, g, p):
    """Division with remainder over F_p (g nonzero)."""
    g = reduce_coeffs(g, p)
    lead_inv = pow(g[-1], -1, p)
    f = [c % p for c in f]
    dg = len(g) - 1
    if len(trim(f)) - 1 < dg:
        return [], trim(f)
    q = [0] * (len(f) - dg)
    for i in range(len(f) - 1, dg - 1, -1):
        c = f[i] % p
        if c:
            t = c * lead_inv % p
            q[i - dg] = t
            for j in range(dg + 1):
                f[i - dg + j] -= t * g[j]
    return reduce_coeffs(q, p), reduce_coeffs(f[:dg], p)


def xgcd_field(f, g, p):
    """Return (d, s, t) with s*f + t*g = d = gcd(f, g) monic, over F_p."""
    r0, r1 = reduce_coeffs(f, p), reduce_coeffs(g, p)
    s0, s1 = [1], []
    t0, t1 = [], [1]
    while r1:
        q, r = divmod_field(r0, r1, p)
        r0, r1 = r1, r
        s0, s1 = s1, sub(s0, mul(q, s1, p), p)
        t0, t1 = t1, sub(t0, mul(q, t1, p), p)
    inv = pow(r0[-1], -1, p)
    return ([c * inv % p for c in r0], [c * inv % p for c in s0],
            [c * inv % p for c in t0])


def is_irreducible(f, p):
    """Rabin-style test over F_p: x^(p^n) = x mod f and gcd conditions."""
    f = _monic_field(f, p)
    n = len(f) - 1
    if n < 1:
        return False
    if n == 1:
        return True
    x = [0, 1]
    primes = [r for r in range(2, n + 1) if n % r == 0
              and all(r % s for s in range(2, r))]
    for r in primes:
        h = powmod(x, p ** (n // r), f, p)
        d, _, _ = xgcd_field(sub(h, x, p), f, p)
        if len(d) > 1:
            return False
    return powmod(x, p ** n, f, p) == rem_monic(x, f, p)
