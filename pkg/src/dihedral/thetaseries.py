"""Theta series of ideal characters of quadratic fields.

a_n is the sum of the character over the integral ideals of norm n. The
coefficients are exact elements of Z[zeta_m]; ``reduce_qexp`` carries them to
a residue field.
"""
from __future__ import annotations

from dataclasses import dataclass
from itertools import product
from math import gcd, lcm

import numpy as np
from sympy import factorint

from . import kernels
from .cyclotomic import CycElt, ResidueField, reduce_mod_P
from .errors import (
    InsufficientPrecision,
    RingMismatch,
    SmallDiscriminant,
    UnsupportedSignature,
)
from .galoisrep import ClassCharacter
from .quadfield import (
    Form,
    SplittingType,
    compose,
    form_power,
    omega_image,
    omega_trace_norm,
    prime_form,
    reduce_form,
    splitting_type,
)

SPLIT, INERT, RAMIFIED = 0, 1, 2
ZERO = -1  # marks a prime ideal dividing the conductor


@dataclass(frozen=True, eq=False)
class IdealCharacter:
    """A class-group character, optionally multiplied by a quadratic-symbol twist.

    Values are (signed) powers of zeta_m, m the order of ``base``; exponents
    are tracked in Z/M with M = lcm(m, 2) when twisted.
    """

    base: ClassCharacter
    twist: object | None = None

    @property
    def D(self) -> int:
        return self.base.D

    @property
    def m(self) -> int:
        return self.base.order

    @property
    def M(self) -> int:
        return self.m if self.twist is None else lcm(self.m, 2)

    @property
    def conductor_norm(self) -> int:
        return 1 if self.twist is None else self.twist.conductor_norm

    @property
    def conductor(self) -> int:
        """Artin conductor of the induced representation."""
        return abs(self.D) * self.conductor_norm

    def _base_exp(self, f: Form) -> int:
        return self.base.exp_at(f) * (self.M // self.m)

    def _twist_exp(self, q: int, omega_root: int | None) -> int:
        if self.twist is None:
            return 0
        return 0 if self.twist.value(q, omega_root) == 1 else self.M // 2

    def prime_data(self, l: int) -> tuple[int, int, int]:
        """(kind, ea, eb): exponents mod M at the prime ideals over l.

        split: ea at the prime of ``prime_form(D, l)``, eb at its conjugate;
        inert: ea at lO_K; ramified: ea at the prime. ZERO where the character vanishes.
        """
        D, M = self.D, self.M
        st = splitting_type(D, l)
        if st is SplittingType.inert:
            return INERT, self._twist_exp(l, None) % M, 0
        f = prime_form(D, l)
        r = omega_image(D, f)
        k = self._base_exp(reduce_form(f))
        if st is SplittingType.ramified:
            return RAMIFIED, (k + self._twist_exp(l, r)) % M, 0
        t, _ = omega_trace_norm(D)
        r_bar = (t - r) % l
        out = []
        for root, kk in ((r, k), (r_bar, -k)):
            if self.twist is not None and self.twist.divides_conductor(l, root):
                out.append(ZERO)
            else:
                out.append((kk + self._twist_exp(l, root)) % M)
        return SPLIT, out[0], out[1]

    def value_exponent(self, ideal: "IdealDescriptor") -> int | None:
        """Exponent of the value on an ideal, or None where the character vanishes."""
        total = 0
        for l, which, e in ideal.factors:
            kind, ea, eb = self.prime_data(l)
            if which == "conj":
                ea = eb
            if ea == ZERO:
                return None
            total += ea * e
        return total % self.M

    def det_data(self, q: int) -> tuple[int, int] | None:
        """(eps_K(q), e) with det rho(Frob_q) = eps_K(q) zeta_M^e; None if q divides the conductor."""
        if self.conductor % q == 0:
            return None
        kind, ea, eb = self.prime_data(q)
        if kind == SPLIT:
            return 1, (ea + eb) % self.M
        return -1, ea

    def det_value(self, q: int):
        d = self.det_data(q)
        if d is None:
            return CycElt.from_int(self.m, 0)
        sign, e = d
        return exponent_counts_to_cyc(self.m, self.M, {e: 1}) * sign

    def __repr__(self):
        tw = "" if self.twist is None else f", twist lambda={self.twist.source.lam}, l={self.twist.source.l}"
        return f"IdealCharacter(D={self.D}, exponents={list(self.base.exponents)}{tw})"


def exponent_counts_to_cyc(m: int, M: int, counts) -> CycElt:
    """sum_j counts[j] * zeta_M^j as an element of Z[zeta_m] (M = m or 2m with m odd)."""
    if isinstance(counts, dict):
        items = counts.items()
    else:
        items = ((j, int(c)) for j, c in enumerate(counts) if c)
    if M == m:
        dense = [0] * m
        for j, c in items:
            dense[j % m] += c
        return CycElt.from_exponent_counts(m, dense)
    # zeta_{2m} = -zeta_m^((m+1)/2) for odd m
    dense = [0] * m
    half = (m + 1) // 2
    for j, c in items:
        dense[(j * half) % m] += -c if j % 2 else c
    return CycElt.from_exponent_counts(m, dense)


@dataclass(frozen=True)
class IdealDescriptor:
    """An integral ideal as prime factors (l, which, exponent) plus its class.

    ``which`` is "prime" for the prime of ``prime_form(D, l)``, "conj" for its
    conjugate, "inert" for lO_K and "ram" for the ramified prime.
    """

    factors: tuple[tuple[int, str, int], ...]
    cls: Form

    @property
    def norm(self) -> int:
        n = 1
        for l, which, e in self.factors:
            n *= l ** (2 * e if which == "inert" else e)
        return n


def ideals_of_norm(D: int, n: int) -> list[IdealDescriptor]:
    """Every integral ideal of O_K of norm n, by explicit enumeration."""
    if n < 1:
        raise ValueError("n must be positive")
    identity = reduce_form(Form(1, D % 2, (D % 2 - D) // 4))
    local = []
    for l, e in sorted(factorint(n).items()):
        st = splitting_type(D, l)
        opts = []
        if st is SplittingType.split:
            P = reduce_form(prime_form(D, l))
            for i in range(e + 1):
                facs = tuple(f for f in ((l, "prime", i), (l, "conj", e - i)) if f[2])
                cls = compose(form_power(P, i), form_power(P, -(e - i)))
                opts.append((facs, cls))
        elif st is SplittingType.inert:
            if e % 2 == 0:
                opts.append((((l, "inert", e // 2),), identity))
        else:
            P = reduce_form(prime_form(D, l))
            opts.append((((l, "ram", e),), form_power(P, e)))
        local.append(opts)
    out = []
    for combo in product(*local):
        facs = tuple(f for fs, _ in combo for f in fs)
        cls = identity
        for _, c in combo:
            cls = compose(cls, c)
        out.append(IdealDescriptor(facs, cls))
    return out


# -- q-expansions ------------------------------------------------------------

def ring_zero(ring):
    kind = ring[0]
    if kind == "cyclotomic":
        return CycElt.from_int(ring[1], 0)
    if kind == "residue":
        return ring[1].zero()
    return 0


def ring_one(ring):
    return ring_zero(ring) + 1


@dataclass(frozen=True)
class QExpansion:
    """Coefficients a_0..a_B of a truncated q-expansion.

    ``ring`` is ("cyclotomic", m), ("residue", ResidueField) or ("generic",)
    for plain Python scalars (ints, sympy expressions).
    """

    ring: tuple
    coeffs: tuple

    @property
    def B(self) -> int:
        return len(self.coeffs) - 1

    def __getitem__(self, n: int):
        if n > self.B:
            raise InsufficientPrecision(f"a_{n} requested, expansion known to q^{self.B}")
        return self.coeffs[n]

    def _check(self, other: "QExpansion"):
        if self.ring != other.ring:
            raise RingMismatch(f"{self.ring} vs {other.ring}")

    def truncate(self, B: int) -> "QExpansion":
        if B > self.B:
            raise InsufficientPrecision(f"cannot extend q^{self.B} to q^{B}")
        return QExpansion(self.ring, self.coeffs[: B + 1])

    def __add__(self, other):
        self._check(other)
        B = min(self.B, other.B)
        return QExpansion(self.ring, tuple(a + b for a, b in zip(self.coeffs[: B + 1], other.coeffs)))

    def __sub__(self, other):
        self._check(other)
        B = min(self.B, other.B)
        return QExpansion(self.ring, tuple(a - b for a, b in zip(self.coeffs[: B + 1], other.coeffs)))

    def scale(self, c) -> "QExpansion":
        return QExpansion(self.ring, tuple(c * a for a in self.coeffs))

    def substitute(self, k: int, B: int | None = None) -> "QExpansion":
        """f(q^k) truncated at q^B (default: this expansion's bound)."""
        B = self.B if B is None else B
        if B // k > self.B:
            raise InsufficientPrecision(f"f(q^{k}) to q^{B} needs f to q^{B // k}")
        z = ring_zero(self.ring)
        return QExpansion(self.ring, tuple(self.coeffs[n // k] if n % k == 0 else z for n in range(B + 1)))

    def coefficients(self, start: int = 1) -> list:
        return list(self.coeffs[start:])

    @classmethod
    def zero(cls, ring, B: int) -> "QExpansion":
        z = ring_zero(ring)
        return cls(ring, (z,) * (B + 1))

    def to_rows(self) -> list[tuple[int, list[int]]]:
        out = []
        for n, a in enumerate(self.coeffs[1:], start=1):
            out.append((n, list(a.coeffs) if hasattr(a, "coeffs") else [a]))
        return out


def _check_supported(char: IdealCharacter):
    D = char.D
    if D in (-3, -4):
        raise SmallDiscriminant(f"D={D} has extra units")
    if D > 0 and char.twist is None:
        raise UnsupportedSignature(
            "untwisted characters of real fields induce even representations; twist first"
        )


def ideal_count_table(char: IdealCharacter, B: int) -> np.ndarray:
    """Row n counts the ideals of norm n with character value zeta_M^j, per j."""
    _check_supported(char)
    spf = kernels.spf_sieve(B)
    kind = np.zeros(B + 1, dtype=np.int64)
    ea = np.zeros(B + 1, dtype=np.int64)
    eb = np.zeros(B + 1, dtype=np.int64)
    for l in range(2, B + 1):
        if spf[l] == l:
            kind[l], ea[l], eb[l] = char.prime_data(l)
    return kernels.ideal_counts(B, char.M, spf, kind, ea, eb)


def theta_coeffs(char: IdealCharacter, B: int) -> QExpansion:
    """Theta series sum_a chi(a) q^N(a), exact over Z[zeta_m], to q^B."""
    counts = ideal_count_table(char, B)
    m, M = char.m, char.M
    zero = CycElt.from_int(m, 0)
    coeffs = [zero]
    for n in range(1, B + 1):
        coeffs.append(exponent_counts_to_cyc(m, M, counts[n]))
    return QExpansion(("cyclotomic", m), tuple(coeffs))


def reduce_qexp(f: QExpansion, F: ResidueField) -> QExpansion:
    if f.ring != ("cyclotomic", F.modulus.m):
        raise RingMismatch(f"cannot reduce {f.ring} into a residue field of Z[zeta_{F.modulus.m}]")
    return QExpansion(("residue", F), tuple(reduce_mod_P(a, F) for a in f.coeffs))


# -- eigenform recursions ----------------------------------------------------

@dataclass
class HeckeReport:
    checks: int
    violations: list

    @property
    def ok(self) -> bool:
        return not self.violations

    def to_json(self) -> dict:
        return {"checks": self.checks, "violations": self.violations}


def _primes_upto(n):
    spf = kernels.spf_sieve(max(n, 1))
    return [l for l in range(2, n + 1) if spf[l] == l]


def hecke_consistency(f: QExpansion, epsilon, k: int, N: int, prime_bound: int, B: int | None = None,
                      multiplicativity: bool = True) -> HeckeReport:
    """Check the normalized-eigenform identities of ``f`` up to q^B.

    a_1 = 1; a_mn = a_m a_n for coprime m, n; and for primes l <= prime_bound,
    a_{l^(r+1)} = a_l a_{l^r} - eps(l) l^(k-1) a_{l^(r-1)}, the last term
    dropped when l divides N.
    """
    B = f.B if B is None else B
    if B > f.B:
        raise InsufficientPrecision(f"checks to q^{B} need the expansion to q^{B}")
    a = f.coeffs
    one = ring_one(f.ring)
    violations = []
    checks = 1
    if a[1] != one:
        violations.append({"kind": "normalization", "n": 1})
    for l in _primes_upto(min(prime_bound, B)):
        eps_term = None if N % l == 0 else epsilon(l) * (l ** (k - 1))
        r = 1
        while l ** (r + 1) <= B:
            lhs = a[l ** (r + 1)]
            rhs = a[l] * a[l**r]
            if eps_term is not None:
                rhs = rhs - eps_term * a[l ** (r - 1)]
            checks += 1
            if lhs != rhs:
                violations.append({"kind": "prime_power", "l": l, "r": r + 1})
            r += 1
    if multiplicativity:
        for m in range(2, B + 1):
            if m * (m + 1) > B:
                break
            for n in range(m + 1, B // m + 1):
                if gcd(m, n) == 1:
                    checks += 1
                    if a[m * n] != a[m] * a[n]:
                        violations.append({"kind": "multiplicative", "m": m, "n": n})
    return HeckeReport(checks, violations)
