# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled kernels. Same contracts as ``_kernels_py``."""
import numpy as np
cimport numpy as cnp
from libc.math cimport sqrt

cnp.import_array()


cdef long long _gcd(long long a, long long b) nogil:
    if a < 0:
        a = -a
    if b < 0:
        b = -b
    while b:
        a, b = b, a % b
    return a


cdef long long _isqrt(long long n) nogil:
    cdef long long r = <long long> sqrt(<double> n)
    while r * r > n:
        r -= 1
    while (r + 1) * (r + 1) <= n:
        r += 1
    return r


def spf_sieve(long long n):
    cdef cnp.ndarray[cnp.int64_t, ndim=1] arr = np.zeros(n + 1, dtype=np.int64)
    cdef long long[:] spf = arr
    cdef long long i, j
    if n >= 1:
        spf[1] = 1
    for i in range(2, n + 1):
        if spf[i] == 0:
            spf[i] = i
            if i * i <= n:
                j = i * i
                while j <= n:
                    if spf[j] == 0:
                        spf[j] = i
                    j += i
    return arr


def reduced_forms_negative(long long D):
    cdef list out = []
    cdef long long a, b, c, num, amax = _isqrt(-D // 3)
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
            if _gcd(_gcd(a, b), c) != 1:
                continue
            out.append((a, b, c))
    return out


def reduced_forms_positive(long long D):
    cdef list out = []
    cdef long long s = _isqrt(D)
    cdef long long a, b, c, n, two_a, t
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
            if _gcd(_gcd(a, b), c) != 1:
                continue
            out.append((a, b, -c))
            out.append((-a, b, c))
    return out


def ideal_counts(long long B, long long M, spf_in, kind_in, ea_in, eb_in):
    cdef long long[:] spf = np.ascontiguousarray(spf_in, dtype=np.int64)
    cdef long long[:] kind = np.ascontiguousarray(kind_in, dtype=np.int64)
    cdef long long[:] ea = np.ascontiguousarray(ea_in, dtype=np.int64)
    cdef long long[:] eb = np.ascontiguousarray(eb_in, dtype=np.int64)
    cdef cnp.ndarray[cnp.int64_t, ndim=2] arr = np.zeros((B + 1, M), dtype=np.int64)
    cdef long long[:, :] counts = arr
    cdef cnp.ndarray[cnp.int64_t, ndim=1] larr = np.zeros(M, dtype=np.int64)
    cdef long long[:] local = larr
    cdef long long n, l, m, e, i, j, k, a, b, ua, ub
    if B >= 1:
        counts[1, 0] = 1
    for n in range(2, B + 1):
        l = spf[n]
        m = n
        e = 0
        while m % l == 0:
            m //= l
            e += 1
        for i in range(M):
            local[i] = 0
        k = kind[l]
        a = ea[l]
        if k == 0:
            b = eb[l]
            ua = a if a > 0 else 0
            ub = b if b > 0 else 0
            for i in range(e + 1):
                if (i > 0 and a < 0) or (e - i > 0 and b < 0):
                    continue
                local[(i * ua + (e - i) * ub) % M] += 1
        elif k == 1:
            if e % 2 == 0 and a >= 0:
                local[((e // 2) * a) % M] += 1
        else:
            if a >= 0:
                local[(e * a) % M] += 1
        if m == 1:
            for i in range(M):
                counts[n, i] = local[i]
        else:
            for i in range(M):
                if local[i]:
                    for j in range(M):
                        if counts[m, j]:
                            counts[n, (i + j) % M] += local[i] * counts[m, j]
    return arr
