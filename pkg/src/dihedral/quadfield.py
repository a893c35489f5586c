"""Quadratic fields through their fundamental discriminants and binary quadratic forms."""
from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from math import gcd, isqrt

from sympy.ntheory import sqrt_mod

from .errors import ImaginaryField, InertPrime, InvalidDiscriminant, InvalidForm


def _squarefree(n: int) -> bool:
    n = abs(n)
    d = 2
    while d * d <= n:
        if n % (d * d) == 0:
            return False
        if n % d == 0:
            n //= d
        d += 1 if d == 2 else 2
    return True


def is_fundamental_discriminant(D: int) -> bool:
    if D in (0, 1):
        return False
    if D % 4 == 1:
        return _squarefree(D)
    if D % 4 == 0:
        m = D // 4
        return m % 4 in (2, 3) and _squarefree(m)
    return False


def check_discriminant(D: int) -> int:
    if not is_fundamental_discriminant(D):
        raise InvalidDiscriminant(f"{D} is not a fundamental discriminant")
    return D


def fundamental_discriminant_of(d: int) -> int:
    """Discriminant of Q(sqrt(d)) for squarefree d != 0, 1."""
    if not _squarefree(d) or d in (0, 1):
        raise InvalidDiscriminant(f"{d} is not squarefree")
    return d if d % 4 == 1 else 4 * d


def jacobi(a: int, n: int) -> int:
    if n <= 0 or n % 2 == 0:
        raise ValueError("n must be odd and positive")
    a %= n
    result = 1
    while a:
        while a % 2 == 0:
            a //= 2
            if n % 8 in (3, 5):
                result = -result
        a, n = n, a
        if a % 4 == 3 and n % 4 == 3:
            result = -result
        a %= n
    return result if n == 1 else 0


def kronecker_symbol(D: int, n: int) -> int:
    """Kronecker symbol (D/n) for n >= 1."""
    if n < 1:
        raise ValueError("n must be positive")
    result = 1
    v = 0
    while n % 2 == 0:
        n //= 2
        v += 1
    if v:
        if D % 2 == 0:
            return 0
        if v % 2 and D % 8 in (3, 5):
            result = -result
    return result * jacobi(D, n)


class SplittingType(str, Enum):
    split = "split"
    inert = "inert"
    ramified = "ramified"


def splitting_type(D: int, l: int) -> SplittingType:
    k = kronecker_symbol(D, l)
    if k == 1:
        return SplittingType.split
    if k == -1:
        return SplittingType.inert
    return SplittingType.ramified


@dataclass(frozen=True, order=True)
class Form:
    """The binary quadratic form a x^2 + b xy + c y^2."""

    a: int
    b: int
    c: int

    @property
    def disc(self) -> int:
        return self.b * self.b - 4 * self.a * self.c

    def is_primitive(self) -> bool:
        return gcd(gcd(self.a, self.b), self.c) == 1

    def opposite(self) -> "Form":
        return Form(self.a, -self.b, self.c)

    def __call__(self, x: int, y: int) -> int:
        return self.a * x * x + self.b * x * y + self.c * y * y

    def to_list(self) -> list[int]:
        return [self.a, self.b, self.c]

    def __str__(self):
        return f"({self.a},{self.b},{self.c})"


def principal_form(D: int) -> Form:
    k = D % 2
    return reduce_form(Form(1, k, (k - D) // 4))


def _check_form(f: Form, D: int | None = None) -> int:
    disc = f.disc
    if D is not None and disc != D:
        raise InvalidForm(f"{f} has discriminant {disc}, expected {D}")
    if disc == 0 or isqrt(abs(disc)) ** 2 == disc:
        raise InvalidForm(f"{f} has square discriminant")
    if not f.is_primitive():
        raise InvalidForm(f"{f} is not primitive")
    if disc < 0 and f.a <= 0:
        raise InvalidForm(f"{f} is not positive definite")
    return disc


# -- definite forms --------------------------------------------------------

def _normalize_definite(a, b, c):
    # b -> b + 2ra with -a < b <= a
    r = (a - b) // (2 * a)
    return a, b + 2 * r * a, a * r * r + b * r + c


def _reduce_definite(a, b, c):
    a, b, c = _normalize_definite(a, b, c)
    while a > c or (a == c and b < 0):
        a, b, c = _normalize_definite(c, -b, a)
    return Form(a, b, c)


# -- indefinite forms ------------------------------------------------------

def is_reduced_indefinite(a: int, b: int, c: int, D: int) -> bool:
    """0 < b < sqrt(D) and sqrt(D) - b < 2|a| < sqrt(D) + b."""
    if b <= 0 or b * b >= D:
        return False
    ta = 2 * abs(a)
    if (ta + b) ** 2 <= D:
        return False
    t = ta - b
    return t <= 0 or t * t < D


def rho(a: int, b: int, c: int, D: int) -> tuple[int, int, int]:
    """One step of the indefinite reduction operator (a proper equivalence)."""
    C = abs(c)
    if c * c > D:
        r = (-b) % (2 * C)
        if r > C:
            r -= 2 * C
    else:
        s = isqrt(D)
        r = s - ((s + b) % (2 * C))
    return c, r, (r * r - D) // (4 * c)


def _reduce_indefinite_raw(a, b, c, D):
    steps = 0
    while not is_reduced_indefinite(a, b, c, D):
        a, b, c = rho(a, b, c, D)
        steps += 1
        if steps > 10_000 + 4 * D:
            raise RuntimeError("indefinite reduction did not terminate")
    return a, b, c


def reduced_cycle(f: Form) -> list[Form]:
    """The rho-cycle of reduced forms properly equivalent to ``f`` (D > 0)."""
    D = f.disc
    start = _reduce_indefinite_raw(f.a, f.b, f.c, D)
    cyc = [Form(*start)]
    cur = rho(*start, D)
    while cur != start:
        cyc.append(Form(*cur))
        cur = rho(*cur, D)
    return cyc


def _cycle_key(f: Form):
    return (f.a < 0, abs(f.a), f.b, f.c)


def reduce_form(f: Form) -> Form:
    """Canonical representative of the proper equivalence class of ``f``.

    D < 0: the unique reduced form. D > 0: the reduced form of the cycle that
    is smallest under (a < 0, |a|, b, c), so positive leading coefficients win.
    """
    D = _check_form(f)
    if D < 0:
        return _reduce_definite(f.a, f.b, f.c)
    return min(reduced_cycle(f), key=_cycle_key)


# -- composition -----------------------------------------------------------

def _xgcd(a, b):
    """(g, x, y) with a x + b y = g = gcd(a, b) >= 0."""
    x0, y0, x1, y1 = 1, 0, 0, 1
    while b:
        q, r = divmod(a, b)
        a, b = b, r
        x0, x1 = x1, x0 - q * x1
        y0, y1 = y1, y0 - q * y1
    if a < 0:
        a, x0, y0 = -a, -x0, -y0
    return a, x0, y0


def compose_raw(f: Form, g: Form) -> Form:
    """Gauss composition without reduction (Dirichlet/Shanks formulas)."""
    D = f.disc
    if g.disc != D:
        raise InvalidForm(f"discriminant mismatch: {D} vs {g.disc}")
    a1, b1 = f.a, f.b
    a2, b2, c2 = g.a, g.b, g.c
    s = (b1 + b2) // 2
    n = b2 - s
    d, u, _ = _xgcd(a2, a1)
    y1 = u
    d1, x2, y2 = _xgcd(s, d)
    y2 = -y2
    v1 = a1 // d1
    v2 = a2 // d1
    r = (y1 * y2 * n - x2 * c2) % v1
    b3 = b2 + 2 * v2 * r
    a3 = v1 * v2
    num = b3 * b3 - D
    if num % (4 * a3):
        raise ArithmeticError("composition produced a non-integral form")
    return Form(a3, b3, num // (4 * a3))


def compose(f: Form, g: Form) -> Form:
    if f.disc != g.disc:
        raise InvalidForm(f"discriminant mismatch: {f.disc} vs {g.disc}")
    _check_form(f)
    _check_form(g)
    return reduce_form(compose_raw(f, g))


def form_power(f: Form, n: int) -> Form:
    D = f.disc
    if n < 0:
        f, n = reduce_form(f.opposite()), -n
    result = principal_form(D)
    base = reduce_form(f)
    while n:
        if n & 1:
            result = compose(result, base)
        base = compose(base, base)
        n >>= 1
    return result


# -- primes and classes ----------------------------------------------------

def prime_form(D: int, l: int) -> Form:
    """A form (l, b, c) of discriminant D, b the least admissible value in [0, 2l).

    Corresponds to the prime ideal lZ + ((-b + sqrt(D))/2)Z above l.
    """
    if splitting_type(D, l) is SplittingType.inert:
        raise InertPrime(f"{l} is inert in Q(sqrt({D}))")
    if l == 2:
        b = next(b for b in range(4) if (b - D) % 2 == 0 and (b * b - D) % 8 == 0)
    else:
        r = sqrt_mod(D % l, l) if D % l else 0
        b = r if (r - D) % 2 == 0 else l - r
    return Form(l, b, (b * b - D) // (4 * l))


def prime_form_from_root(D: int, l: int, omega_image: int) -> Form:
    """The form of the degree-one prime above l on which omega reduces to ``omega_image``."""
    # inverse of omega_image(): (b + D mod 2)/2 = omega_image mod l
    b = (2 * omega_image - (D % 2)) % (2 * l)
    if (b * b - D) % (4 * l):
        raise ValueError(f"{omega_image} is not the image of omega at a prime above {l}")
    return Form(l, b, (b * b - D) // (4 * l))


def omega_image(D: int, f: Form) -> int:
    """Image of omega in O_K / (lZ + ((-b + sqrt(D))/2)Z) = F_l for a prime form (l, b, c)."""
    # omega - (b + D mod 2)/2 = (-b + sqrt(D))/2 lies in the ideal
    return ((f.b + D % 2) // 2) % f.a


def prime_to_class(D: int, l: int) -> Form:
    """Class of one prime ideal above l (the other one, if any, is its inverse)."""
    return reduce_form(prime_form(D, l))


# -- units -----------------------------------------------------------------

def omega_cf_period(D: int) -> list[int]:
    """Partial quotients of one period of the continued fraction of omega."""
    if D <= 0:
        raise ImaginaryField(f"D={D} is not positive")
    s = isqrt(D)
    P, Q = (1, 2) if D % 4 == 1 else (0, 2)
    a = (P + s) // Q
    P = a * Q - P
    Q = (D - P * P) // Q
    start = (P, Q)
    period = []
    while True:
        a = (P + s) // Q
        period.append(a)
        P = a * Q - P
        Q = (D - P * P) // Q
        if (P, Q) == start:
            return period


def fundamental_unit_norm(D: int) -> int:
    """Norm (+1 or -1) of the fundamental unit of the real quadratic field of discriminant D."""
    if D < 0:
        raise ImaginaryField(f"D={D} is negative")
    check_discriminant(D)
    return -1 if len(omega_cf_period(D)) % 2 else 1


def omega_trace_norm(D: int) -> tuple[int, int]:
    """(Tr(omega), N(omega)), omega = (1 + sqrt D)/2 or sqrt(D)/2."""
    if D % 4 == 1:
        return 1, (1 - D) // 4
    return 0, -D // 4


def element_norm(D: int, x: int, y: int) -> int:
    """Norm of x + y*omega."""
    t, n = omega_trace_norm(D)
    return x * x + t * x * y + n * y * y
