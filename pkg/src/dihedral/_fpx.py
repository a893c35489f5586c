"""Dense polynomials over the prime field F_p.

Polynomials are tuples of ints in [0, p), lowest degree first, with no
trailing zeros (the zero polynomial is the empty tuple).
"""
from __future__ import annotations

import random


def trim(f):
    f = list(f)
    while f and f[-1] == 0:
        f.pop()
    return tuple(f)


def normalize(f, p):
    return trim(c % p for c in f)


def deg(f):
    return len(f) - 1


def add(f, g, p):
    n = max(len(f), len(g))
    return trim(((f[i] if i < len(f) else 0) + (g[i] if i < len(g) else 0)) % p for i in range(n))


def sub(f, g, p):
    n = max(len(f), len(g))
    return trim(((f[i] if i < len(f) else 0) - (g[i] if i < len(g) else 0)) % p for i in range(n))


def mul(f, g, p):
    if not f or not g:
        return ()
    out = [0] * (len(f) + len(g) - 1)
    for i, a in enumerate(f):
        if a:
            for j, b in enumerate(g):
                out[i + j] += a * b
    return normalize(out, p)


def divmod_(f, g, p):
    if not g:
        raise ZeroDivisionError("polynomial division by zero")
    f = list(f)
    inv = pow(g[-1], -1, p)
    dg = len(g) - 1
    q = [0] * max(len(f) - dg, 0)
    for i in range(len(f) - 1, dg - 1, -1):
        c = f[i] * inv % p
        if c:
            q[i - dg] = c
            for j, b in enumerate(g):
                f[i - dg + j] = (f[i - dg + j] - c * b) % p
    return trim(q), trim(f[:dg])


def mod(f, g, p):
    return divmod_(f, g, p)[1]


def monic(f, p):
    if not f:
        return f
    inv = pow(f[-1], -1, p)
    return tuple(c * inv % p for c in f)


def gcd(f, g, p):
    while g:
        f, g = g, mod(f, g, p)
    return monic(f, p)


def powmod(f, e, g, p):
    result = (1,)
    base = mod(f, g, p)
    while e:
        if e & 1:
            result = mod(mul(result, base, p), g, p)
        base = mod(mul(base, base, p), g, p)
        e >>= 1
    return result


def equal_degree_factors(f, d, p, rng=None):
    """Split a squarefree monic ``f`` whose irreducible factors all have degree ``d``.

    Cantor-Zassenhaus; the trace map replaces the power map in characteristic 2.
    The returned list is sorted, so the result does not depend on ``rng``.
    """
    rng = rng or random.Random(0)
    out = []
    stack = [f]
    while stack:
        h = stack.pop()
        n = deg(h)
        if n == d:
            out.append(h)
            continue
        while True:
            a = trim(rng.randrange(p) for _ in range(n))
            if deg(a) < 1:
                continue
            if p == 2:
                t = s = a
                for _ in range(d - 1):
                    t = mod(mul(t, t, p), h, p)
                    s = add(s, t, p)
                g = gcd(h, s, p)
            else:
                g = gcd(h, sub(powmod(a, (p**d - 1) // 2, h, p), (1,), p), p)
            if 0 < deg(g) < n:
                stack.append(g)
                stack.append(divmod_(h, g, p)[0])
                break
    return sorted(out, key=lambda q: tuple(reversed(q)))


def is_irreducible(f, p):
    """Ben-Or test: no factor of degree k divides ``f`` for any k <= deg(f)/2."""
    n = deg(f)
    if n < 1:
        return False
    xp = (0, 1)
    for k in range(1, n // 2 + 1):
        xp = powmod(xp, p, f, p)
        if deg(gcd(f, sub(xp, (0, 1), p), p)) > 0:
            return False
    return True
