"""Dihedral representations induced from class-group characters, with their Serre invariants."""
from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from math import gcd, lcm

from .classgroup import FormClassGroup, class_group
from .cyclotomic import CycElt, ResElt, ResidueField, build_residue_field, reduce_mod_P
from .errors import InvalidCharacter, NotDihedral, RamifiedAtP, RamifiedPrime
from .quadfield import (
    Form,
    SplittingType,
    fundamental_unit_norm,
    kronecker_symbol,
    prime_to_class,
    splitting_type,
)


@dataclass(frozen=True, eq=False)
class ClassCharacter:
    """chi(g_i) = zeta_{n_i}^{e_i} on the cyclic generators g_i of the class group."""

    group: FormClassGroup
    exponents: tuple[int, ...]
    order: int

    @property
    def m(self) -> int:
        return self.order

    @property
    def D(self) -> int:
        return self.group.D

    @classmethod
    def trivial(cls, G: FormClassGroup) -> "ClassCharacter":
        return _build(G, (0,) * len(G.cyclic))

    def exp_at(self, f: Form) -> int:
        """k with chi([f]) = zeta_m^k."""
        c = self.group.coords_of(f)
        m = self.order
        return sum(e * ci * m // n for e, ci, (_, n) in zip(self.exponents, c, self.group.cyclic)) % m

    def value(self, f: Form) -> CycElt:
        return CycElt.zeta(self.order, self.exp_at(f))

    def inverse(self) -> "ClassCharacter":
        return _build(self.group, tuple(-e for e in self.exponents))

    def __eq__(self, other):
        if not isinstance(other, ClassCharacter):
            return NotImplemented
        return self.group.D == other.group.D and self.exponents == other.exponents

    def __hash__(self):
        return hash((self.group.D, self.exponents))

    def __repr__(self):
        return f"ClassCharacter(D={self.D}, exponents={list(self.exponents)}, m={self.order})"


def _build(G, exponents):
    exps = tuple(e % n for e, (_, n) in zip(exponents, G.cyclic))
    m = 1
    for e, (_, n) in zip(exps, G.cyclic):
        m = lcm(m, n // gcd(e, n))
    return ClassCharacter(G, exps, m)


def make_character(G: FormClassGroup, exponents) -> ClassCharacter:
    exponents = tuple(exponents)
    if len(exponents) != len(G.cyclic):
        raise InvalidCharacter(
            f"expected {len(G.cyclic)} exponents for invariants {[n for _, n in G.cyclic]}, got {len(exponents)}"
        )
    chi = _build(G, exponents)
    if chi.order <= 2:
        raise NotDihedral(f"{chi} satisfies chi^2 = 1; the induced representation is reducible")
    return chi


def sigma_conjugate(chi: ClassCharacter) -> ClassCharacter:
    # sigma(Lambda) * Lambda = (l) is principal, so conjugation inverts every class
    return chi.inverse()


def characters_of(G: FormClassGroup, max_order: int | None = None) -> list[ClassCharacter]:
    """All dihedral-admissible characters of G, optionally of order <= max_order."""
    from itertools import product

    out = []
    for exps in product(*(range(n) for _, n in G.cyclic)):
        chi = _build(G, exps)
        if chi.order > 2 and (max_order is None or chi.order <= max_order):
            out.append(chi)
    return out


@dataclass(frozen=True)
class DihedralRep:
    chi: ClassCharacter
    p: int
    residue: ResidueField

    @property
    def D(self) -> int:
        return self.chi.D

    @property
    def m(self) -> int:
        return self.chi.order


def make_rep(chi: ClassCharacter, p: int) -> DihedralRep:
    if chi.order <= 2:
        raise NotDihedral(f"{chi} satisfies chi^2 = 1")
    return DihedralRep(chi, p, build_residue_field(chi.order, p))


def rep_from_exponents(D: int, exponents, p: int) -> DihedralRep:
    return make_rep(make_character(class_group(D), exponents), p)


def frob_trace(rep: DihedralRep, l: int) -> CycElt:
    """Trace of rho(Frob_l) in Z[zeta_m] for l unramified in K."""
    D = rep.D
    st = splitting_type(D, l)
    if st is SplittingType.ramified:
        raise RamifiedPrime(f"{l} divides {D}")
    m = rep.m
    if st is SplittingType.inert:
        return CycElt.from_int(m, 0)
    k = rep.chi.exp_at(prime_to_class(D, l))
    return CycElt.zeta(m, k) + CycElt.zeta(m, -k)


def frob_det(rep: DihedralRep, l: int) -> CycElt:
    """eps_K(l) * chi((l)O_K); (l)O_K is generated by l > 0, hence narrowly principal."""
    D = rep.D
    eps = kronecker_symbol(D, l)
    if eps == 0:
        raise RamifiedPrime(f"{l} divides {D}")
    chi_l = rep.chi.value(rep.chi.group.identity)
    return chi_l * eps


def conductor(rep: DihedralRep, aux_prime: int | None = None) -> int:
    """Artin conductor |D| * Norm(f(chi)); class-group characters have trivial conductor.

    ``aux_prime`` is the extra tame prime of a quadratic-symbol twist.
    """
    N = abs(rep.D)
    return N * aux_prime if aux_prime else N


def prime_to_p_part(n: int, p: int) -> int:
    while n % p == 0:
        n //= p
    return n


class WeightReport(str, Enum):
    minimal_weight_one = "minimal_weight_one"
    unsupported_ramified_at_p = "unsupported_ramified_at_p"


class EpsilonMap:
    """l -> eps_rho(l) in the residue field, for l prime to N*p."""

    def __init__(self, rep: DihedralRep, N: int):
        self.rep = rep
        self.N = N

    def __call__(self, l: int) -> ResElt:
        if gcd(l, self.N * self.rep.p) != 1:
            raise ValueError(f"eps_rho is only defined on primes prime to {self.N * self.rep.p}")
        return reduce_mod_P(frob_det(self.rep, l), self.rep.residue)

    def table(self, primes) -> dict[int, ResElt]:
        return {l: self(l) for l in primes if gcd(l, self.N * self.rep.p) == 1}


@dataclass(frozen=True)
class SerreInvariants:
    conductor: int
    epsilon: EpsilonMap
    weight_report: WeightReport
    exceptional: bool | None

    @property
    def minimal_weight(self) -> int | None:
        return 1 if self.weight_report is WeightReport.minimal_weight_one else None


def exceptionality(rep: DihedralRep) -> bool:
    """Whether rho restricted to a decomposition group at p is two copies of one unramified character."""
    D, p = rep.D, rep.p
    st = splitting_type(D, p)
    if st is SplittingType.ramified:
        raise RamifiedAtP(f"p={p} divides D={D}")
    if st is SplittingType.inert:
        # eigenvalues +-sqrt(-det) only collide in characteristic 2
        return p == 2
    k = rep.chi.exp_at(prime_to_class(D, p))
    F = rep.residue
    return F.zeta(k) == F.zeta(-k)


def serre_invariants(rep: DihedralRep) -> SerreInvariants:
    cond = conductor(rep)
    N = prime_to_p_part(cond, rep.p)
    if cond % rep.p:
        return SerreInvariants(N, EpsilonMap(rep, N), WeightReport.minimal_weight_one, exceptionality(rep))
    return SerreInvariants(N, EpsilonMap(rep, N), WeightReport.unsupported_ramified_at_p, None)


def lift_is_odd(chi: ClassCharacter) -> bool:
    """Oddness of the characteristic-zero induction of the lifted character.

    Complex conjugation lies outside G_K for imaginary K; for real K it acts
    through the sign class of the narrow class group.
    """
    if chi.D < 0:
        return True
    return chi.exp_at(chi.group.sign_class()) != 0


class LiftCase(str, Enum):
    case_a = "case_a"
    case_b = "case_b"


def lift_case(rep: DihedralRep) -> LiftCase:
    if rep.D % rep.p == 0:
        raise RamifiedAtP(f"p={rep.p} divides D={rep.D}")
    if rep.p == 2 and rep.D > 0 and not lift_is_odd(rep.chi):
        return LiftCase.case_b
    return LiftCase.case_a


def no_char0_lift_same_level(rep: DihedralRep) -> bool:
    N = conductor(rep)
    return rep.p == 2 and N % 2 == 1 and rep.D > 0 and rep.D == N and fundamental_unit_norm(rep.D) == -1


def trace_table(rep: DihedralRep, primes) -> dict[int, CycElt]:
    return {l: frob_trace(rep, l) for l in primes if rep.D % l}
