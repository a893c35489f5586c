"""Oldforms at level N p^r: degeneracy maps, the T_p block and a_p = 0 stabilization.

Basis convention: e_i = f(q^{p^i}). The matrix acts on coordinate columns, so
column i holds the coordinates of T_p(e_i); T_p(e_0) = a_p e_0 - beta e_1 and
T_p(e_i) = e_{i-1} for i >= 1.
"""
from __future__ import annotations

from dataclasses import dataclass

from sympy import factorint

from .cyclotomic import build_residue_field, reduce_mod_P
from .errors import InsufficientPrecision, RingMismatch
from .thetaseries import QExpansion, ring_zero


def _zero_like(x):
    return x - x


def _json_scalar(x):
    if hasattr(x, "to_json"):
        return x.to_json()
    if isinstance(x, int):
        return x
    return str(x)


@dataclass(frozen=True)
class OldformBlock:
    r: int
    a_p: object
    beta: object
    matrix: tuple

    @property
    def size(self) -> int:
        return self.r + 1

    def kernel_vector(self):
        """(1, -a_p, beta): coordinates of the a_p = 0 combination when r >= 2."""
        if self.r < 2:
            raise ValueError("the stabilizing combination needs r >= 2")
        z = _zero_like(self.a_p)
        return (z + 1, -self.a_p, self.beta) + (z,) * (self.r - 2)

    def apply(self, v):
        n = self.size
        z = _zero_like(self.a_p)
        out = []
        for i in range(n):
            s = z
            for j in range(n):
                s = s + self.matrix[i][j] * v[j]
            out.append(s)
        return tuple(out)

    def to_json(self) -> dict:
        return {
            "r": self.r,
            "a_p": _json_scalar(self.a_p),
            "beta": _json_scalar(self.beta),
            "matrix": [[_json_scalar(x) for x in row] for row in self.matrix],
        }


def tp_matrix(a_p, epsilon_p, k: int, delta: int, r: int, p: int | None = None) -> OldformBlock:
    """The (r+1)x(r+1) matrix of T_p on f, f(q^p), ..., f(q^{p^r}); beta = delta p^(k-1) eps(p)."""
    if r < 0:
        raise ValueError("r must be nonnegative")
    if delta not in (0, 1):
        raise ValueError("delta must be 0 or 1")
    if k != 1 and p is None:
        raise ValueError("p is needed to form p^(k-1) when k != 1")
    z = _zero_like(a_p)
    pk = 1 if k == 1 else p ** (k - 1)
    beta = epsilon_p * (delta * pk)
    n = r + 1
    M = [[z] * n for _ in range(n)]
    M[0][0] = a_p
    if n > 1:
        M[1][0] = z - beta
    for i in range(n - 1):
        M[i][i + 1] = z + 1
    return OldformBlock(r, a_p, beta, tuple(tuple(row) for row in M))


def berkowitz(A) -> list:
    """Coefficients of det(xI - A), leading first, using only ring operations."""
    n = len(A)
    if n == 0:
        return [1]
    z = _zero_like(A[0][0])
    poly = [z + 1, z - A[0][0]]
    for k in range(1, n):
        R = [A[k][j] for j in range(k)]
        col = [A[i][k] for i in range(k)]
        # Toeplitz column: 1, -a_kk, -R C, -R M C, ..., -R M^{k-1} C
        t = [z + 1, z - A[k][k]]
        v = col
        for _ in range(k):
            s = z
            for j in range(k):
                s = s + R[j] * v[j]
            t.append(z - s)
            v = [sum((A[i][j] * v[j] for j in range(k)), z) for i in range(k)]
        new = []
        for i in range(k + 2):
            s = z
            for j in range(k + 1):
                if 0 <= i - j < len(t):
                    s = s + t[i - j] * poly[j]
            new.append(s)
        poly = new
    return poly


def char_poly(block: OldformBlock) -> list:
    return berkowitz([list(row) for row in block.matrix])


def expected_char_poly(block: OldformBlock) -> list:
    """x^(r-1) (x^2 - a_p x + beta) for r >= 1, x - a_p for r = 0; leading first."""
    z = _zero_like(block.a_p)
    if block.r == 0:
        return [z + 1, z - block.a_p]
    return [z + 1, z - block.a_p, block.beta] + [z] * (block.r - 1)


# -- q-expansion operators ---------------------------------------------------

def _common_ring(fs):
    ring = fs[0].ring
    for f in fs[1:]:
        if f.ring != ring:
            raise RingMismatch(f"{f.ring} vs {ring}")
    return ring


def degeneracy_embed(fs, p: int, B: int) -> QExpansion:
    """sum_i f_i(q^{p^i}) to q^B."""
    fs = list(fs)
    ring = _common_ring(fs)
    out = list(QExpansion.zero(ring, B).coeffs)
    for i, f in enumerate(fs):
        step = p**i
        if step > B:
            break
        if B // step > f.B:
            raise InsufficientPrecision(f"component {i} needed to q^{B // step}, known to q^{f.B}")
        for n in range(0, B + 1, step):
            out[n] = out[n] + f.coeffs[n // step]
    return QExpansion(ring, tuple(out))


def tp_action_level_divisible(f: QExpansion, p: int, B: int) -> QExpansion:
    """U_p: a_n -> a_{np}, the T_p operator at a level divisible by p."""
    if B * p > f.B:
        raise InsufficientPrecision(f"U_{p} to q^{B} needs the input to q^{B * p}")
    return QExpansion(f.ring, tuple(f.coeffs[n * p] for n in range(B + 1)))


def ap_zero_stabilize(f: QExpansion, a_p, epsilon_p, k: int, p: int, B: int) -> QExpansion:
    """f(q) - a_p f(q^p) + p^(k-1) eps(p) f(q^{p^2}), truncated at q^B."""
    g = f.truncate(B)
    beta = epsilon_p * (p ** (k - 1))
    return g - f.substitute(p, B).scale(a_p) + f.substitute(p * p, B).scale(beta)


def _eps_at(epsilon, d: int, N: int):
    val = 1
    for l, e in factorint(d).items():
        if N % l == 0:
            return 0
        v = epsilon(l)
        for _ in range(e):
            val = v * val
    return val


def hecke_tn(f: QExpansion, n: int, epsilon, k: int, N: int, B: int) -> QExpansion:
    """T_n at level N: a_m(T_n f) = sum_{d | (m, n)} eps(d) d^(k-1) a_{mn/d^2}."""
    if B * n > f.B:
        raise InsufficientPrecision(f"T_{n} to q^{B} needs the input to q^{B * n}")
    divs = [d for d in range(1, n + 1) if n % d == 0]
    wts = {d: _eps_at(epsilon, d, N) * (d ** (k - 1)) for d in divs}
    z = ring_zero(f.ring)
    out = [z] * (B + 1)
    for m in range(B + 1):
        s = z
        for d in divs:
            if m % d == 0:
                w = wts[d]
                if not (isinstance(w, int) and w == 0):
                    s = s + w * f.coeffs[m * n // (d * d)]
        out[m] = s
    return QExpansion(f.ring, tuple(out))


def _field_rank(rows, F) -> int:
    rows = [list(r) for r in rows]
    rank, ncols = 0, len(rows[0]) if rows else 0
    zero = F.zero()
    for c in range(ncols):
        piv = next((i for i in range(rank, len(rows)) if rows[i][c] != zero), None)
        if piv is None:
            continue
        rows[rank], rows[piv] = rows[piv], rows[rank]
        inv = rows[rank][c].inverse()
        rows[rank] = [x * inv for x in rows[rank]]
        for i in range(len(rows)):
            if i != rank and rows[i][c] != zero:
                t = rows[i][c]
                rows[i] = [x - t * y for x, y in zip(rows[i], rows[rank])]
        rank += 1
    return rank


def _large_split_prime(m: int) -> int:
    from sympy import isprime

    q = 10007 - (10007 % m) + 1
    while not isprime(q):
        q += m
    return q


def are_independent(fs, B: int | None = None) -> bool:
    """Whether the expansions are linearly independent, from coefficients up to q^B.

    Over Z[zeta_m] the grid is reduced at a degree-one prime; full rank there
    certifies full rank in characteristic zero.
    """
    fs = list(fs)
    ring = _common_ring(fs)
    B = min(f.B for f in fs) if B is None else B
    if ring[0] == "residue":
        F = ring[1]
        rows = [list(f.coeffs[: B + 1]) for f in fs]
    elif ring[0] == "cyclotomic":
        F = build_residue_field(ring[1], _large_split_prime(ring[1]))
        rows = [[reduce_mod_P(a, F) for a in f.coeffs[: B + 1]] for f in fs]
    else:
        raise RingMismatch(f"no rank routine for ring {ring}")
    return _field_rank(rows, F) == len(fs)


def basis_expansions(f: QExpansion, p: int, r: int, B: int) -> list[QExpansion]:
    """e_i = f(q^{p^i}) for i = 0..r, to q^B."""
    z = QExpansion.zero(f.ring, f.B)
    return [degeneracy_embed([z] * i + [f], p, B) for i in range(r + 1)]


__all__ = [
    "OldformBlock",
    "tp_matrix",
    "berkowitz",
    "char_poly",
    "expected_char_poly",
    "degeneracy_embed",
    "tp_action_level_divisible",
    "ap_zero_stabilize",
    "hecke_tn",
    "are_independent",
    "basis_expansions",
]
