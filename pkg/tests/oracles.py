"""Slow, independent reference implementations used to pin down library values."""
from __future__ import annotations

from math import gcd, isqrt


def brute_reduced_definite(D):
    """Reduced positive definite primitive forms: |b| <= a <= c, b >= 0 if |b| = a or a = c."""
    out = []
    a = 1
    while 3 * a * a <= -D:
        for b in range(-a + 1, a + 1):
            if (b * b - D) % (4 * a):
                continue
            c = (b * b - D) // (4 * a)
            if c < a or (c == a and b < 0):
                continue
            if gcd(gcd(a, b), c) == 1:
                out.append((a, b, c))
        a += 1
    return sorted(out)


def rep_count(form, n):
    """Number of (x, y) in Z^2 with a x^2 + b xy + c y^2 = n (positive definite)."""
    a, b, c = form
    D = b * b - 4 * a * c
    cnt = 0
    ymax = isqrt(4 * a * n // -D) + 1
    for y in range(-ymax, ymax + 1):
        # a x^2 + b y x + (c y^2 - n) = 0
        disc = b * b * y * y - 4 * a * (c * y * y - n)
        if disc < 0:
            continue
        s = isqrt(disc)
        if s * s != disc:
            continue
        for num in {-b * y + s, -b * y - s}:
            if num % (2 * a) == 0:
                cnt += 1
    return cnt


def eta_product_23(B):
    """Coefficients of q prod (1 - q^n)(1 - q^{23 n}) up to q^B, by truncated multiplication."""
    c = [0] * (B + 1)
    c[1] = 1
    for n in range(1, B + 1):
        for step in (n, 23 * n):
            if step > B:
                continue
            for i in range(B, step - 1, -1):
                c[i] -= c[i - step]
    return c


def pell_unit_norm(D, ymax=10**6):
    """Norm of the fundamental unit from the least y > 0 solving x^2 - D y^2 = +-4, or None."""
    for y in range(1, ymax):
        for sgn in (-4, 4):
            x2 = D * y * y + sgn
            if x2 > 0:
                x = isqrt(x2)
                if x * x == x2:
                    return -1 if sgn == -4 else 1
    return None


def _hnf_rows(rows):
    """Row-style HNF of a lattice in Z^2 given by generator rows; returns ((a, b), (0, d))."""
    rows = [list(r) for r in rows if any(r)]
    # column 1 (omega-coordinate) first
    while sum(1 for r in rows if r[1]) > 1:
        rows.sort(key=lambda r: (r[1] == 0, abs(r[1])))
        piv = rows[0]
        for r in rows[1:]:
            if r[1]:
                q = r[1] // piv[1]
                r[0] -= q * piv[0]
                r[1] -= q * piv[1]
        rows = [r for r in rows if any(r)]
    top = next(r for r in rows if r[1])
    if top[1] < 0:
        top = [-top[0], -top[1]]
    g = 0
    for r in rows:
        if r[1] == 0:
            g = gcd(g, r[0])
    return (g, 0), (top[0] % g, top[1])


def ideal_mul_form(f1, f2, D):
    """Compose positive definite forms through ideal multiplication in O_K.

    Lattices carry no orientation, so this is only an oracle for D < 0.

    The form (a, b, c) stands for the ideal a Z + ((-b + sqrt D)/2) Z. Elements are
    (u, v) = u + v * omega with omega = (D % 2 + sqrt D)/2.
    """
    k = D % 2
    t, n = (1, (1 - D) // 4) if k else (0, -D // 4)

    def gens(f):
        a, b, _ = f
        # (-b + sqrt D)/2 = omega - (b + k)/2
        return [(a, 0), (-(b + k) // 2, 1)]

    def mul(x, y):
        u1, v1 = x
        u2, v2 = y
        # omega^2 = t omega - n
        return (u1 * u2 - v1 * v2 * n, u1 * v2 + v1 * u2 + v1 * v2 * t)

    prods = [mul(x, y) for x in gens(f1) for y in gens(f2)]
    (g, _), (r, d) = _hnf_rows(prods)
    # lattice = g Z + (r + d omega) Z; content d divides g and r for an ideal of the form d * (N Z + ...)
    N = g // d
    r //= d
    # (r + omega) = ((2r + k) + sqrt D)/2, so B = -(2r + k) mod 2N
    Bv = (-(2 * r + k)) % (2 * N)
    if Bv > N:
        Bv -= 2 * N
    C = (Bv * Bv - D) // (4 * N)
    return (N, Bv, C)
