"""Trace-versus-coefficient verification and a sampled reducibility classifier."""
from __future__ import annotations

from dataclasses import dataclass, field
from math import gcd

from sympy import factorint, primerange

from .cyclotomic import ResElt, reduce_mod_P
from .errors import BadCharacteristic, InsufficientPrecision, NonSquarefreeLevel
from .galoisrep import DihedralRep, frob_det, frob_trace
from .thetaseries import QExpansion


@dataclass
class ModularityReport:
    D: int
    p: int
    bound: int
    checked: int = 0
    mismatches: list = field(default_factory=list)
    epsilon_checked: int = 0
    epsilon_mismatches: list = field(default_factory=list)

    @property
    def matches(self) -> int:
        return self.checked - len(self.mismatches)

    @property
    def violations(self) -> list:
        return self.mismatches + self.epsilon_mismatches

    @property
    def ok(self) -> bool:
        return not self.violations

    def to_json(self) -> dict:
        return {
            "D": self.D,
            "p": self.p,
            "bound": self.bound,
            "checked": self.checked,
            "matches": self.matches,
            "epsilon_checked": self.epsilon_checked,
            "violations": self.violations,
        }


def verify_modularity(rep: DihedralRep, f: QExpansion, bound: int, excluded=(),
                      check_epsilon: bool = True) -> ModularityReport:
    """Compare a_q(f) with the reduced Frobenius trace at every prime q <= bound not excluded.

    Primes dividing D are always excluded; p itself is checked when unramified.
    Where q^2 is within precision the weight-one identity a_q^2 - a_{q^2} = eps(q)
    is compared with det rho(Frob_q).
    """
    if f.ring != ("residue", rep.residue):
        raise ValueError("the expansion must be reduced modulo the representation's prime")
    if bound > f.B:
        raise InsufficientPrecision(f"traces to {bound} need the expansion to q^{bound}")
    skip = set(excluded) | set(factorint(abs(rep.D)))
    F = rep.residue
    rpt = ModularityReport(rep.D, rep.p, bound)
    for q in primerange(2, bound + 1):
        if q in skip:
            continue
        rpt.checked += 1
        want = reduce_mod_P(frob_trace(rep, q), F)
        got = f[q]
        if want != got:
            rpt.mismatches.append({"kind": "trace", "q": q, "expected": want.to_json(), "found": got.to_json()})
        if check_epsilon and q * q <= f.B:
            rpt.epsilon_checked += 1
            det = reduce_mod_P(frob_det(rep, q), F)
            side = got * got - f[q * q]
            if det != side:
                rpt.epsilon_mismatches.append({"kind": "epsilon", "q": q, "expected": det.to_json(), "found": side.to_json()})
    return rpt


def conductor_divides_level(N_rho: int, M: int) -> bool:
    if N_rho < 1 or M < 1:
        raise ValueError("positive integers expected")
    return M % N_rho == 0


@dataclass(frozen=True)
class ReducibilityResult:
    """Outcome over the sampled primes; consistent with, not a proof of, the label."""

    kind: str
    order: int | None
    sampled: int

    def __str__(self):
        return f"{self.kind}({self.order})" if self.order is not None else self.kind

    def to_json(self) -> dict:
        return {"result": self.kind, "order": self.order, "sampled": self.sampled, "heuristic": True}


def _is_squarefree(n: int) -> bool:
    return all(e == 1 for e in factorint(n).values())


def _matches_int(a, v: int, p: int) -> bool:
    if isinstance(a, ResElt):
        return a == a.field.from_int(v)
    return (int(a) - v) % p == 0


def _is_zero(a, p: int) -> bool:
    return _matches_int(a, 0, p)


def classify_reducible(traces: dict, p: int, N: int, sample_bound: int | None = None) -> ReducibilityResult:
    """Classify sampled Frobenius traces at level N in characteristic p (trivial nebentypus).

    p = 2: all traces zero gives irreducible_or_trivial, otherwise irreducible.
    Odd p: look for j with a_l = l^j + l^-j mod p on every sample (eisenstein_pattern
    with the order of l -> l^j); none gives irreducible. An empty sample gives inconsistent.
    """
    if N < 1 or not _is_squarefree(N):
        raise NonSquarefreeLevel(f"N={N} is not squarefree")
    if N % p == 0:
        raise BadCharacteristic(f"p={p} divides N={N}")
    sample = {
        l: a for l, a in traces.items()
        if gcd(l, N * p) == 1 and (sample_bound is None or l <= sample_bound)
    }
    n = len(sample)
    if not n:
        return ReducibilityResult("inconsistent", None, 0)
    if p == 2:
        if all(_is_zero(a, 2) for a in sample.values()):
            return ReducibilityResult("irreducible_or_trivial", None, n)
        return ReducibilityResult("irreducible", None, n)
    for j in range(p - 1):
        if all(_matches_int(a, pow(l, j, p) + pow(l, -j, p), p) for l, a in sample.items()):
            return ReducibilityResult("eisenstein_pattern", (p - 1) // gcd(j, p - 1), n)
    return ReducibilityResult("irreducible", None, n)


def eisenstein_traces(p: int, j: int, primes) -> dict[int, int]:
    """a_l = chi(l) + chi(l)^-1 mod p for chi(l) = l^j."""
    return {l: (pow(l, j, p) + pow(l, -j, p)) % p for l in primes if l % p}
