from __future__ import annotations

import random

import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from dihedral.classgroup import class_group
from dihedral.cyclotomic import build_residue_field
from dihedral.errors import InsufficientPrecision, RingMismatch
from dihedral.galoisrep import characters_of, make_character
from dihedral.heckeold import (
    are_independent,
    ap_zero_stabilize,
    basis_expansions,
    berkowitz,
    char_poly,
    degeneracy_embed,
    expected_char_poly,
    hecke_tn,
    tp_action_level_divisible,
    tp_matrix,
)
from dihedral.thetaseries import IdealCharacter, QExpansion, reduce_qexp, theta_coeffs

a, e, x = sympy.symbols("a e x")


def cofactor_charpoly(M):
    """det(x I - M) by Laplace expansion along the first row."""
    n = len(M)
    A = [[(x if i == j else 0) - M[i][j] for j in range(n)] for i in range(n)]

    def det(B):
        if len(B) == 1:
            return B[0][0]
        return sum((-1) ** j * B[0][j] * det([row[:j] + row[j + 1:] for row in B[1:]]) for j in range(len(B)))

    return sympy.Poly(sympy.expand(det(A)), x).all_coeffs()


def poly_coeffs(cs):
    return [sympy.expand(c) for c in cs]


@pytest.fixture(scope="module")
def theta23():
    chi = IdealCharacter(make_character(class_group(-23), (1,)))
    return chi, theta_coeffs(chi, 5000)


def test_matrix_examples():
    assert tp_matrix(a, e, 1, 1, 0).matrix == ((a,),)
    blk = tp_matrix(a, e, 1, 1, 2)
    assert blk.matrix == ((a, 1, 0), (-e, 0, 1), (0, 0, 0))
    assert tp_matrix(a, e, 1, 0, 1).matrix == ((a, 1), (0, 0))


@pytest.mark.parametrize("r", range(6))
@pytest.mark.parametrize("delta", [0, 1])
@pytest.mark.parametrize("k", [1, 2, 3])
def test_char_poly_symbolic(r, delta, k):
    p = sympy.Symbol("p", positive=True)
    blk = tp_matrix(a, e, k, delta, r, p)
    got = poly_coeffs(char_poly(blk))
    want = [sympy.expand(c) for c in sympy.Poly(x ** max(r - 1, 0) * (x**2 - a * x + delta * p ** (k - 1) * e) if r else x - a, x).all_coeffs()]
    assert got == want
    assert got == poly_coeffs(expected_char_poly(blk))
    assert got == poly_coeffs(cofactor_charpoly([list(row) for row in blk.matrix]))


def test_char_poly_small_cases():
    assert poly_coeffs(char_poly(tp_matrix(a, e, 1, 1, 0))) == [1, -a]
    assert poly_coeffs(char_poly(tp_matrix(a, e, 1, 1, 2))) == [1, -a, e, 0]
    assert poly_coeffs(char_poly(tp_matrix(a, e, 1, 0, 1))) == [1, -a, 0]


@settings(max_examples=50, deadline=None)
@given(st.integers(1, 6).flatmap(lambda n: st.lists(st.lists(st.integers(-9, 9), min_size=n, max_size=n), min_size=n, max_size=n)))
def test_berkowitz_against_sympy(M):
    assert berkowitz(M) == [int(c) for c in sympy.Matrix(M).charpoly(x).all_coeffs()]


def test_char_poly_over_residue_field():
    F = build_residue_field(7, 2)
    blk = tp_matrix(F.zeta(1), F.one(), 1, 1, 3)
    cp = char_poly(blk)
    assert cp == expected_char_poly(blk)


def test_degeneracy_examples(theta23):
    _, f = theta23
    z = QExpansion.zero(f.ring, f.B)
    assert degeneracy_embed([f, z, z], 2, 100) == f.truncate(100)
    g = degeneracy_embed([z, f], 2, 100)
    for n in range(1, 101):
        assert g[n] == (f[n // 2] if n % 2 == 0 else z[0])
    h = degeneracy_embed([f, f], 2, 4)
    assert list(h.coeffs[1:]) == [f[1], f[2] + f[1], f[3], f[4] + f[2]]


def test_degeneracy_ring_mismatch(theta23):
    _, f = theta23
    g = reduce_qexp(f, build_residue_field(3, 2))
    with pytest.raises(RingMismatch):
        degeneracy_embed([f, g], 2, 10)


@pytest.mark.parametrize("p", [2, 3, 5, 7, 13])
@pytest.mark.parametrize("r", [1, 2, 3])
def test_matrix_matches_up_action(theta23, p, r):
    chi, f = theta23
    B = 200
    need = B * p
    assert need <= f.B
    es = basis_expansions(f, p, r, need)
    blk = tp_matrix(f[p], chi.det_value(p), 1, 1, r, p)
    for j in range(r + 1):
        lhs = tp_action_level_divisible(es[j], p, B)
        rhs = QExpansion.zero(f.ring, B)
        for i in range(r + 1):
            rhs = rhs + es[i].truncate(B).scale(blk.matrix[i][j])
        assert lhs == rhs


def test_kernel_vector_is_the_stabilized_form(theta23):
    chi, f = theta23
    for p in (2, 3, 5):
        blk = tp_matrix(f[p], chi.det_value(p), 1, 1, 2, p)
        v = blk.kernel_vector()
        assert all(c.is_zero() for c in blk.apply(v))
        es = basis_expansions(f, p, 2, 200)
        comb = QExpansion.zero(f.ring, 200)
        for c, b in zip(v, es):
            comb = comb + b.scale(c)
        assert comb == ap_zero_stabilize(f, f[p], chi.det_value(p), 1, p, 200)


@pytest.mark.parametrize("p", [2, 5, 3, 13])
def test_stabilize(theta23, p):
    chi, f = theta23
    g = ap_zero_stabilize(f, f[p], chi.det_value(p), 1, p, 200)
    assert g[p].is_zero()
    for l in sympy.primerange(2, 201):
        if l != p:
            assert g[l] == f[l]
    # U_p g = 0 * g: a_{p^j}(g) = 0 for j >= 1 and a_{np}(g) = 0 generally
    for n in range(1, 200 // p + 1):
        assert g[n * p].is_zero()


def test_stabilize_with_ap_zero(theta23):
    chi, f = theta23
    assert f[5].is_zero()
    beta = chi.det_value(5)
    g = ap_zero_stabilize(f, f[5], beta, 1, 5, 200)
    want = f.truncate(200) + f.substitute(25, 200).scale(beta)
    assert g == want


def test_minus23_p2_identity(theta23):
    chi, f = theta23
    g = ap_zero_stabilize(f, f[2], chi.det_value(2), 1, 2, 100)
    assert g[2] == f[2] - f[2] * f[1]


@pytest.mark.parametrize("p", [2, 3])
def test_degeneracy_commutes_with_tn(theta23, p):
    chi, f = theta23
    for n in range(1, 51):
        if n % p == 0:
            continue
        B = 5000 // max(n, 1) // p
        B = min(B, 60)
        emb = degeneracy_embed([f, f.scale(f[p])], p, B * n)
        lhs = hecke_tn(emb, n, chi.det_value, 1, 23 * p, B)
        img = hecke_tn(f, n, chi.det_value, 1, 23, B)
        rhs = degeneracy_embed([img, img.scale(f[p])], p, B)
        assert lhs == rhs, n


def test_random_data_consistency():
    """Random a_p, eps(p) over a residue field: U_p on embedded basis follows the matrix."""
    rng = random.Random(1)
    chars = characters_of(class_group(-3299), 9)
    for chi in rng.sample(chars, 4):
        ic = IdealCharacter(chi)
        f = theta_coeffs(ic, 2400)
        for k_p in (2, 3):
            if chi.order % k_p == 0:
                continue
            for r in (1, 2, 3):
                if 100 * k_p ** (r + 1) > 2400:
                    continue
                blk = tp_matrix(f[k_p], ic.det_value(k_p), 1, 1, r, k_p)
                es = basis_expansions(f, k_p, r, 100 * k_p)
                for j in range(r + 1):
                    rhs = QExpansion.zero(f.ring, 100)
                    for i in range(r + 1):
                        rhs = rhs + es[i].truncate(100).scale(blk.matrix[i][j])
                    assert tp_action_level_divisible(es[j], k_p, 100) == rhs


def test_independence(theta23):
    _, f = theta23
    for p in (2, 3, 5):
        es = basis_expansions(f, p, 3, 200)
        assert are_independent(es)
    F = build_residue_field(3, 2)
    g = reduce_qexp(f, F)
    assert are_independent(basis_expansions(g, 2, 3, 200))
    assert not are_independent([f.truncate(200), f.truncate(200).scale(f[2])])


def test_precision_errors(theta23):
    _, f = theta23
    with pytest.raises(InsufficientPrecision):
        tp_action_level_divisible(f, 2, 3000)
    with pytest.raises(InsufficientPrecision):
        degeneracy_embed([f.truncate(10), f], 2, 100)
    z = QExpansion.zero(f.ring, 40)
    assert all(c.is_zero() for c in tp_action_level_divisible(z, 2, 20).coeffs)
