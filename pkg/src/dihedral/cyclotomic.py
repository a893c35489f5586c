"""Exact arithmetic in Z[zeta_m] and reduction modulo a prime above p.

Elements are stored in the power basis 1, zeta, ..., zeta^(phi(m)-1) and
kept reduced modulo the m-th cyclotomic polynomial, so equality of
elements is equality of coefficient tuples.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from math import gcd

from sympy import isprime

from . import _fpx
from .errors import BadCharacteristic, ModulusMismatch, NonCoprimeModulus


def _divisors(n):
    return [d for d in range(1, n + 1) if n % d == 0]


def _int_poly_divexact(f, g):
    """Exact quotient of integer polynomials, ``g`` monic."""
    f = list(f)
    dg = len(g) - 1
    q = [0] * (len(f) - dg)
    for i in range(len(f) - 1, dg - 1, -1):
        c = f[i]
        q[i - dg] = c
        if c:
            for j, b in enumerate(g):
                f[i - dg + j] -= c * b
    if any(f[:dg]):
        raise ArithmeticError("inexact polynomial division")
    return tuple(q)


@lru_cache(maxsize=None)
def cyclotomic_poly(m: int) -> tuple[int, ...]:
    """Coefficients of Phi_m, lowest degree first.

    >>> cyclotomic_poly(12)
    (1, 0, -1, 0, 1)
    """
    if m < 1:
        raise ValueError("m must be positive")
    f = (-1,) + (0,) * (m - 1) + (1,)
    for d in _divisors(m)[:-1]:
        f = _int_poly_divexact(f, cyclotomic_poly(d))
    return f


def _reduce_int_poly(coeffs, phi):
    """Reduce an integer polynomial modulo the monic ``phi``."""
    c = list(coeffs)
    n = len(phi) - 1
    for i in range(len(c) - 1, n - 1, -1):
        t = c[i]
        if t:
            for j in range(n):
                c[i - n + j] -= t * phi[j]
    c = c[:n]
    c.extend([0] * (n - len(c)))
    return tuple(c)


@dataclass(frozen=True)
class CycModulus:
    m: int
    phi_m: int
    min_poly: tuple[int, ...]
    _powers: tuple = field(default=(), compare=False, repr=False)

    @staticmethod
    def of(m: int) -> "CycModulus":
        return _modulus(m)

    def power(self, k: int) -> tuple[int, ...]:
        """Power-basis coordinates of zeta^k."""
        return self._powers[k % self.m]


@lru_cache(maxsize=None)
def _modulus(m):
    phi = cyclotomic_poly(m)
    n = len(phi) - 1
    powers = []
    for k in range(m):
        powers.append(_reduce_int_poly((0,) * k + (1,), phi))
    return CycModulus(m, n, phi, tuple(powers))


class CycElt:
    """An element of Z[zeta_m]."""

    __slots__ = ("modulus", "coeffs")

    def __init__(self, modulus: CycModulus, coeffs):
        coeffs = tuple(coeffs)
        if len(coeffs) != modulus.phi_m:
            coeffs = _reduce_int_poly(coeffs, modulus.min_poly)
        self.modulus = modulus
        self.coeffs = coeffs

    # constructors
    @classmethod
    def from_int(cls, m: int, n: int) -> "CycElt":
        mod = CycModulus.of(m)
        return cls(mod, (n,) + (0,) * (mod.phi_m - 1))

    @classmethod
    def zeta(cls, m: int, k: int = 1) -> "CycElt":
        mod = CycModulus.of(m)
        return cls(mod, mod.power(k))

    @classmethod
    def from_exponent_counts(cls, m: int, counts) -> "CycElt":
        """The element sum_j counts[j] * zeta^j."""
        mod = CycModulus.of(m)
        acc = [0] * mod.phi_m
        for j, c in enumerate(counts):
            if c:
                for i, v in enumerate(mod.power(j)):
                    if v:
                        acc[i] += c * v
        return cls(mod, acc)

    @property
    def m(self) -> int:
        return self.modulus.m

    def _coerce(self, other):
        if isinstance(other, CycElt):
            if other.modulus.m != self.modulus.m:
                raise ModulusMismatch(f"Z[zeta_{self.m}] vs Z[zeta_{other.m}]")
            return other
        if isinstance(other, int):
            return CycElt.from_int(self.m, other)
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return CycElt(self.modulus, tuple(a + b for a, b in zip(self.coeffs, o.coeffs)))

    __radd__ = __add__

    def __neg__(self):
        return CycElt(self.modulus, tuple(-a for a in self.coeffs))

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return CycElt(self.modulus, tuple(a - b for a, b in zip(self.coeffs, o.coeffs)))

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o - self

    def __mul__(self, other):
        if isinstance(other, int):
            return CycElt(self.modulus, tuple(a * other for a in self.coeffs))
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        n = self.modulus.phi_m
        prod = [0] * (2 * n - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(o.coeffs):
                    if b:
                        prod[i + j] += a * b
        return CycElt(self.modulus, _reduce_int_poly(prod, self.modulus.min_poly))

    __rmul__ = __mul__

    def __pow__(self, e: int):
        if e < 0:
            raise ValueError("negative powers are not integral in general")
        result = CycElt.from_int(self.m, 1)
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def __eq__(self, other):
        if isinstance(other, int):
            other = CycElt.from_int(self.m, other)
        if not isinstance(other, CycElt):
            return NotImplemented
        return self.modulus.m == other.modulus.m and self.coeffs == other.coeffs

    def __hash__(self):
        return hash((self.modulus.m, self.coeffs))

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def conjugate(self, k: int) -> "CycElt":
        """Image under the automorphism zeta -> zeta^k (k prime to m)."""
        if gcd(k, self.m) != 1:
            raise ValueError("k must be prime to m")
        acc = [0] * self.modulus.phi_m
        for i, c in enumerate(self.coeffs):
            if c:
                for j, v in enumerate(self.modulus.power(i * k)):
                    acc[j] += c * v
        return CycElt(self.modulus, acc)

    def to_json(self) -> dict:
        return {"m": self.m, "coeffs": list(self.coeffs)}

    def __repr__(self):
        terms = []
        for i, c in enumerate(self.coeffs):
            if c:
                terms.append(f"{c}" if i == 0 else f"{c}*z^{i}" if i > 1 else f"{c}*z")
        return f"CycElt(m={self.m}: {' + '.join(terms) or '0'})"


@dataclass(frozen=True)
class ResidueField:
    """F_p[x]/(factor), where factor is an irreducible factor of Phi_m mod p."""

    p: int
    modulus: CycModulus
    factor: tuple[int, ...]

    @property
    def d(self) -> int:
        return len(self.factor) - 1

    @property
    def size(self) -> int:
        return self.p**self.d

    def element(self, coeffs) -> "ResElt":
        r = _fpx.mod(_fpx.normalize(coeffs, self.p), self.factor, self.p)
        return ResElt(self, r + (0,) * (self.d - len(r)))

    def from_int(self, n: int) -> "ResElt":
        return self.element((n,))

    def zero(self) -> "ResElt":
        return self.from_int(0)

    def one(self) -> "ResElt":
        return self.from_int(1)

    def zeta(self, k: int = 1) -> "ResElt":
        return self.element(self.modulus.power(k))

    def to_json(self) -> dict:
        return {"p": self.p, "m": self.modulus.m, "factor": list(self.factor)}


class ResElt:
    """An element of a ResidueField, coordinates in the basis 1, x, ..., x^(d-1)."""

    __slots__ = ("field", "coeffs")

    def __init__(self, field: ResidueField, coeffs):
        self.field = field
        self.coeffs = tuple(coeffs)

    def _poly(self):
        return _fpx.trim(self.coeffs)

    def _coerce(self, other):
        if isinstance(other, ResElt):
            if other.field != self.field:
                raise ModulusMismatch("elements of different residue fields")
            return other
        if isinstance(other, int):
            return self.field.from_int(other)
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        p = self.field.p
        return ResElt(self.field, tuple((a + b) % p for a, b in zip(self.coeffs, o.coeffs)))

    __radd__ = __add__

    def __neg__(self):
        p = self.field.p
        return ResElt(self.field, tuple(-a % p for a in self.coeffs))

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o - self

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        F = self.field
        return F.element(_fpx.mul(self._poly(), o._poly(), F.p))

    __rmul__ = __mul__

    def __pow__(self, e: int):
        F = self.field
        if e < 0:
            return self.inverse() ** (-e)
        r = _fpx.powmod(self._poly(), e, F.factor, F.p)
        return F.element(r)

    def inverse(self) -> "ResElt":
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero")
        return self ** (self.field.size - 2)

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self * o.inverse()

    def __eq__(self, other):
        if isinstance(other, int):
            other = self.field.from_int(other)
        if not isinstance(other, ResElt):
            return NotImplemented
        return self.field == other.field and self.coeffs == other.coeffs

    def __hash__(self):
        return hash((self.field.p, self.field.factor, self.coeffs))

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def to_json(self) -> dict:
        F = self.field
        return {"p": F.p, "m": F.modulus.m, "factor": list(F.factor), "coeffs": list(self.coeffs)}

    def __repr__(self):
        return f"ResElt(F_{self.field.p}^{self.field.d}: {list(self.coeffs)})"


def multiplicative_order(a: int, m: int) -> int:
    if m == 1:
        return 1
    k, x = 1, a % m
    while x != 1:
        x = x * a % m
        k += 1
    return k


@lru_cache(maxsize=None)
def build_residue_field(m: int, p: int) -> ResidueField:
    """Residue field of Z[zeta_m] at the prime given by the smallest factor of Phi_m mod p.

    Factors are compared as coefficient tuples read from the leading
    coefficient down, so the choice is deterministic.
    """
    if not isprime(p):
        raise BadCharacteristic(f"p={p} is not prime")
    if gcd(m, p) != 1:
        raise NonCoprimeModulus(f"gcd({m}, {p}) != 1")
    mod = CycModulus.of(m)
    d = multiplicative_order(p, m)
    phi = _fpx.normalize(mod.min_poly, p)
    factors = _fpx.equal_degree_factors(phi, d, p)
    return ResidueField(p, mod, factors[0])


def reduce_mod_P(a: CycElt, F: ResidueField) -> ResElt:
    if a.modulus.m != F.modulus.m:
        raise ModulusMismatch(f"Z[zeta_{a.m}] element vs residue field of Z[zeta_{F.modulus.m}]")
    return F.element(a.coeffs)


def cyc_arith(a: CycElt, b: CycElt, op: str) -> CycElt:
    if a.modulus.m != b.modulus.m:
        raise ModulusMismatch(f"Z[zeta_{a.m}] vs Z[zeta_{b.m}]")
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    raise ValueError(f"unknown op {op!r}")
