"""Pure-Python kernels. Reference behaviour for the compiled ``_kernels`` module."""
from __future__ import annotations

from math import gcd, isqrt

import numpy as np


def spf_sieve(n):
    """Smallest prime factor of every integer 0..n (spf[0] = 0, spf[1] = 1)."""
    spf = np.zeros(n + 1, dtype=np.int64)
    if n >= 1:
        spf[1] = 1
    for i in range(2, n + 1):
        if spf[i] == 0:
            spf[i] = i
            if i * i <= n:
                for j in range(i * i, n + 1, i):
                    if spf[j] == 0:
                        spf[j] = i
    return spf


def reduced_forms_negative(D):
    """All primitive reduced forms (a, b, c) of discriminant D < 0."""
    out = []
    amax = isqrt(-D // 3)
    for a in range(1, amax + 1):
        for b in range(-a + 1, a + 1):
            if (b - D) & 1:
                continue
            num = b * b - D
            if num % (4 * a):
                continue
            c = num // (4 * a)
            if c < a or (c == a and b < 0):
                continue
            if gcd(gcd(a, b), c) != 1:
                continue
            out.append((a, b, c))
    return out


def reduced_forms_positive(D):
    """All primitive reduced indefinite forms of discriminant D > 0.

    Reduced means 0 < b < sqrt(D) and sqrt(D) - b < 2|a| < sqrt(D) + b.
    """
    out = []
    s = isqrt(D)
    for b in range(1, s + 1):
        if b * b >= D or (b - D) & 1:
            continue
        n = (D - b * b) // 4
        for a in range(1, s + 1):
            if n % a:
                continue
            two_a = 2 * a
            if (two_a + b) * (two_a + b) <= D:
                continue
            t = two_a - b
            if t > 0 and t * t >= D:
                continue
            c = n // a
            if gcd(gcd(a, b), c) != 1:
                continue
            out.append((a, b, -c))
            out.append((-a, b, c))
    return out


def ideal_counts(B, M, spf, kind, ea, eb):
    """Histogram of character exponents over the integral ideals of each norm n <= B.

    ``kind[l]`` is 0 (split), 1 (inert) or 2 (ramified) for each prime l <= B.
    ``ea[l]``/``eb[l]`` are the exponents mod M of the character at the prime
    ideal(s) over l (for inert l, ``ea`` is the value at lO_K); -1 marks a
    prime ideal dividing the conductor, where the character vanishes.
    Row n of the result counts, for each j, the ideals of norm n with value zeta_M^j.
    """
    counts = np.zeros((B + 1, M), dtype=np.int64)
    if B >= 1:
        counts[1, 0] = 1
    local = np.zeros(M, dtype=np.int64)
    for n in range(2, B + 1):
        l = int(spf[n])
        m = n
        e = 0
        while m % l == 0:
            m //= l
            e += 1
        local[:] = 0
        k = kind[l]
        a = int(ea[l])
        if k == 0:
            b = int(eb[l])
            for i in range(e + 1):
                if (i > 0 and a < 0) or (e - i > 0 and b < 0):
                    continue
                local[(i * max(a, 0) + (e - i) * max(b, 0)) % M] += 1
        elif k == 1:
            if e % 2 == 0 and a >= 0:
                local[(e // 2) * a % M] += 1
        else:
            if a >= 0:
                local[e * a % M] += 1
        if m == 1:
            counts[n] = local
        else:
            row = counts[m]
            out = counts[n]
            for i in range(M):
                if local[i]:
                    for j in range(M):
                        if row[j]:
                            out[(i + j) % M] += local[i] * row[j]
    return counts
