"""Auxiliary primes with negative norm and the quadratic twist they define (real fields, p = 2).

Elements of O_K are coordinate pairs (x, y) meaning x + y*omega.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from itertools import count
from math import gcd

from sympy import isprime

from .errors import BadPrime, ImaginaryField, NotDihedral, SearchExhausted
from .quadfield import (
    Form,
    check_discriminant,
    element_norm,
    kronecker_symbol,
    omega_trace_norm,
    prime_form_from_root,
)


@dataclass(frozen=True)
class AuxiliaryPrime:
    D: int
    lam: tuple[int, int]
    l: int
    congruence_modulus: int

    @property
    def omega_root(self) -> int:
        """r in F_l with omega = r modulo the prime (lambda)."""
        x, y = self.lam
        return -x * pow(y, -1, self.l) % self.l

    def prime_form(self) -> Form:
        return prime_form_from_root(self.D, self.l, self.omega_root)

    def to_json(self) -> dict:
        return {
            "D": self.D,
            "lambda": list(self.lam),
            "norm": element_norm(self.D, *self.lam),
            "l": self.l,
            "congruence_modulus": self.congruence_modulus,
        }


def _shell(h: int):
    """Integer points with max(|x|, |y|) = h, in a fixed order."""
    pts = [(x, y) for x in range(-h, h + 1) for y in range(-h, h + 1) if max(abs(x), abs(y)) == h]
    return sorted(pts, key=lambda t: (abs(t[0]) + abs(t[1]), t[0], t[1]))


def auxiliary_primes(D: int, chi_conductor_norm: int = 1, search_bound: int = 10**4):
    """Lazily yield every lambda = 1 + 4Df(x + y*omega) with -Norm(lambda) an odd prime prime to 4Df."""
    if D < 0:
        raise ImaginaryField(f"D={D} is negative")
    check_discriminant(D)
    M = 4 * D * chi_conductor_norm
    for h in range(1, search_bound + 1):
        for x, y in _shell(h):
            if y == 0:
                continue
            lam = (1 + M * x, M * y)
            n = element_norm(D, *lam)
            if n >= 0:
                continue
            l = -n
            if l % 2 and gcd(l, M) == 1 and isprime(l):
                yield AuxiliaryPrime(D, lam, l, M)


def find_auxiliary(D: int, chi_conductor_norm: int = 1, search_bound: int = 10**4) -> AuxiliaryPrime:
    for aux in auxiliary_primes(D, chi_conductor_norm, search_bound):
        return aux
    raise SearchExhausted(f"no auxiliary prime for D={D} up to height {search_bound}")


def simple_negative_norm(D: int) -> tuple[int, int]:
    """The first lambda not in Z with negative norm, scanning by height."""
    if D < 0:
        raise ImaginaryField(f"D={D} is negative")
    for h in count(1):
        # prefer nonnegative coordinates among ties, so omega beats -omega
        for x, y in sorted(_shell(h), key=lambda t: (abs(t[0]) + abs(t[1]), -t[0], -t[1])):
            if y and element_norm(D, x, y) < 0:
                return (x, y)


# -- quadratic residue symbol ----------------------------------------------

def _fq2_pow(a, b, e, q, t, n):
    """(a + b*omega)^e in O_K/q with omega^2 = t*omega - n."""
    ra, rb = 1, 0
    while e:
        if e & 1:
            ra, rb = (ra * a - rb * b * n) % q, (ra * b + rb * a + rb * b * t) % q
        a, b = (a * a - b * b * n) % q, (2 * a * b + b * b * t) % q
        e >>= 1
    return ra, rb


def _euler(v, q):
    s = pow(v % q, (q - 1) // 2, q)
    return 1 if s == 1 else -1


def residue_symbol(lam: tuple[int, int], D: int, q: int, omega_root: int | None) -> int:
    """Quadratic residue symbol of lambda at a prime Q over an odd q.

    ``omega_root`` is the image of omega in O_K/Q for degree-one Q, or None
    for the inert prime qO_K (symbol computed in the field with q^2 elements).
    """
    l = -element_norm(D, *lam)
    if q == 2 or D % q == 0 or (l and abs(l) % q == 0):
        raise BadPrime(f"q={q} divides 2*l*D")
    return _symbol(lam, D, q, omega_root)


def _symbol(lam, D, q, omega_root):
    x, y = lam
    if omega_root is None:
        t, n = omega_trace_norm(D)
        ra, rb = _fq2_pow(x % q, y % q, (q * q - 1) // 2, q, t, n)
        if rb or ra not in (1, q - 1):
            raise ArithmeticError("Euler criterion failed in F_q^2")
        return 1 if ra == 1 else -1
    v = (x + y * omega_root) % q
    if v == 0:
        raise BadPrime(f"lambda lies in the prime above {q}")
    return _euler(v, q)


def _symbol_above_2(lam, D, omega_root):
    """xi at a prime above 2 for lambda = 1 mod 4: split iff mu = (lambda-1)/4 has trace 0."""
    x, y = lam
    mx, my = (x - 1) // 4, y // 4
    if omega_root is None:
        # O_K/2 = F_2[omega]/(omega^2 + omega + 1); Tr(a + b*omega) = b
        return -1 if my % 2 else 1
    return -1 if (mx + my * omega_root) % 2 else 1


@dataclass
class SymbolTwist:
    """The quadratic character xi of K(sqrt(lambda)) on prime ideals of K."""

    source: AuxiliaryPrime
    cache: dict = field(default_factory=dict)

    @property
    def conductor_norm(self) -> int:
        return self.source.l

    def divides_conductor(self, q: int, omega_root: int | None) -> bool:
        return q == self.source.l and omega_root == self.source.omega_root

    def value(self, q: int, omega_root: int | None) -> int:
        """xi(Q) for the prime Q over q given by ``omega_root`` (None for inert q)."""
        key = (q, omega_root)
        v = self.cache.get(key)
        if v is None:
            if self.divides_conductor(q, omega_root):
                raise BadPrime(f"the twist ramifies at the prime ({q}, omega={omega_root})")
            lam, D = self.source.lam, self.source.D
            v = _symbol_above_2(lam, D, omega_root) if q == 2 else _symbol(lam, D, q, omega_root)
            self.cache[key] = v
        return v


def twisted_character(chi, aux: AuxiliaryPrime):
    """chi times xi: odd, conductor norm l, same reduction mod 2 as chi."""
    from .thetaseries import IdealCharacter

    if aux.D != chi.D:
        raise ValueError(f"auxiliary prime for D={aux.D} used with a character of D={chi.D}")
    if chi.order <= 2:
        raise NotDihedral(f"{chi} satisfies chi^2 = 1")
    return IdealCharacter(chi, SymbolTwist(aux))


def norm_compatibility(aux: AuxiliaryPrime, q: int) -> bool:
    """xi(Q) * xi(sigma Q) == (Norm(lambda) / q) at a split odd q prime to l*D."""
    D = aux.D
    from sympy.ntheory import sqrt_mod

    t, n = omega_trace_norm(D)
    roots = sorted(set(sqrt_mod((t * t - 4 * n) % q, q, all_roots=True)))
    inv2 = pow(2, -1, q)
    r1 = (t + roots[0]) * inv2 % q
    r2 = (t - roots[0]) * inv2 % q
    lhs = residue_symbol(aux.lam, D, q, r1) * residue_symbol(aux.lam, D, q, r2)
    return lhs == kronecker_symbol(-aux.l, q)
