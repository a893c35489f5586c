from __future__ import annotations

import pytest
import sympy

from dihedral.classgroup import class_group
from dihedral.cyclotomic import CycElt, build_residue_field
from dihedral.errors import InsufficientPrecision, RingMismatch, SmallDiscriminant, UnsupportedSignature
from dihedral.galoisrep import ClassCharacter, characters_of, make_character, make_rep, sigma_conjugate
from dihedral.modcheck import verify_modularity
from dihedral.quadfield import Form, is_fundamental_discriminant, kronecker_symbol
from dihedral.serretrick import find_auxiliary, twisted_character
from dihedral.thetaseries import (
    IdealCharacter,
    QExpansion,
    hecke_consistency,
    ideals_of_norm,
    reduce_qexp,
    theta_coeffs,
)

from oracles import eta_product_23, rep_count


@pytest.fixture(scope="module")
def cubic():
    chi = make_character(class_group(-23), (1,))
    return IdealCharacter(chi), theta_coeffs(IdealCharacter(chi), 1000)


def ints(f: QExpansion, n):
    a = f[n]
    assert all(c == 0 for c in a.coeffs[1:])
    return a.coeffs[0]


def test_first_coefficients(cubic):
    _, f = cubic
    assert f[1] == CycElt.from_int(3, 1)
    assert f[2] == CycElt.zeta(3) + CycElt.zeta(3, 2) == CycElt.from_int(3, -1)
    for l in sympy.primerange(3, 1000):
        if sympy.jacobi_symbol(-23, l) == -1:
            assert f[l].is_zero()


def test_eta_product(cubic):
    _, f = cubic
    eta = eta_product_23(50)
    assert [ints(f, n) for n in range(1, 51)] == eta[1:]


def test_trivial_minus_cubic_against_form_counts(cubic):
    _, f = cubic
    G = class_group(-23)
    triv = theta_coeffs(IdealCharacter(ClassCharacter.trivial(G)), 200)
    for n in range(1, 201):
        r1 = rep_count((1, 1, 6), n)
        r2 = rep_count((2, 1, 3), n)
        t = triv[n].coeffs[0]
        c = ints(f, n)
        assert 2 * (t - c) == 3 * r2
        assert 2 * (t + 2 * c) == 3 * r1
        assert 2 * t == r1 + 2 * r2
        assert 2 * c == r1 - r2


IMAG = [d for d in range(-500, -4) if is_fundamental_discriminant(d)]
IMAG_DIHEDRAL = [d for d in IMAG if characters_of(class_group(d), 7)]


@pytest.mark.parametrize("D", IMAG_DIHEDRAL[::4])
def test_theta_matches_form_lattice_counts(D):
    G = class_group(D)
    chars = characters_of(G, 7)
    B = 120
    counts = {f: [rep_count(f.to_list(), n) for n in range(B + 1)] for f in G.classes}
    for chi in chars[:3]:
        f = theta_coeffs(IdealCharacter(chi), B)
        for n in range(1, B + 1):
            want = CycElt.from_int(chi.order, 0)
            for cls in G.classes:
                want = want + chi.value(cls) * counts[cls][n]
            # each ideal of norm n is counted w = 2 times by the form of its class
            assert f[n] * 2 == want, (D, chi, n)


def test_ideals_of_norm_examples():
    one = ideals_of_norm(-23, 1)
    assert len(one) == 1 and one[0].cls == Form(1, 1, 6)
    two = ideals_of_norm(-23, 2)
    assert sorted(i.cls for i in two) == sorted([Form(2, 1, 3), Form(2, -1, 3)])
    four = ideals_of_norm(229, 4)
    assert len(four) == 1 and four[0].cls == class_group(229).identity
    assert four[0].norm == 4
    assert ideals_of_norm(229, 2) == []


@pytest.mark.parametrize("D", [-23, -47, -3299, 229, 316])
def test_ideal_count_is_divisor_sum(D):
    for n in range(1, 200):
        want = sum(kronecker_symbol(D, d) for d in sympy.divisors(n))
        assert len(ideals_of_norm(D, n)) == want


def test_reduce_examples(cubic):
    _, f = cubic
    F = build_residue_field(3, 2)
    g = reduce_qexp(f, F)
    assert g[2] == F.one()
    assert g.ring == ("residue", F)
    with pytest.raises(RingMismatch):
        reduce_qexp(f, build_residue_field(5, 2))
    z = QExpansion.zero(("cyclotomic", 3), 10)
    assert all(c.is_zero() for c in reduce_qexp(z, F).coeffs)


def test_hecke_examples(cubic):
    chi, f = cubic
    assert f[4] == f[2] * f[2] - chi.det_value(2) * f[1]
    assert f[6] == f[2] * f[3]
    assert f[23 * 23] == f[23] * f[23]
    rpt = hecke_consistency(f, chi.det_value, 1, 23, 100)
    assert rpt.ok and rpt.checks > 100


def test_hecke_detects_corruption(cubic):
    chi, f = cubic
    coeffs = list(f.coeffs)
    coeffs[6] = coeffs[6] + 1
    bad = QExpansion(f.ring, tuple(coeffs))
    rpt = hecke_consistency(bad, chi.det_value, 1, 23, 100, 100)
    assert {"kind": "multiplicative", "m": 2, "n": 3} in rpt.violations


def test_conjugate_character_gives_conjugate_series():
    G = class_group(-3299)
    for chi in characters_of(G, 9)[:6]:
        f = theta_coeffs(IdealCharacter(chi), 300)
        g = theta_coeffs(IdealCharacter(sigma_conjugate(chi)), 300)
        assert all(a.conjugate(-1) == b for a, b in zip(f.coeffs[1:], g.coeffs[1:]))


def test_errors():
    with pytest.raises(SmallDiscriminant):
        theta_coeffs(IdealCharacter(ClassCharacter.trivial(class_group(-4))), 10)
    with pytest.raises(SmallDiscriminant):
        theta_coeffs(IdealCharacter(ClassCharacter.trivial(class_group(-3))), 10)
    with pytest.raises(UnsupportedSignature):
        theta_coeffs(IdealCharacter(make_character(class_group(229), (1,))), 10)
    f = theta_coeffs(IdealCharacter(make_character(class_group(-23), (1,))), 10)
    with pytest.raises(InsufficientPrecision):
        f[11]
    with pytest.raises(InsufficientPrecision):
        f.truncate(20)


@pytest.mark.parametrize("D", IMAG)
def test_family_recursions_and_traces(D):
    """All characters of order <= 7 for |D| <= 500, p in {2, 3, 5}."""
    G = class_group(D)
    B = 400
    for chi in characters_of(G, 7):
        ic = IdealCharacter(chi)
        f = theta_coeffs(ic, B)
        assert f[1] == CycElt.from_int(chi.order, 1)
        assert hecke_consistency(f, ic.det_value, 1, abs(D), 100, B).ok
        for p in (2, 3, 5):
            if chi.order % p == 0:
                continue
            rep = make_rep(chi, p)
            rpt = verify_modularity(rep, reduce_qexp(f, rep.residue), B)
            assert rpt.ok, (D, chi, p, rpt.violations[:3])


REAL = [229, 257, 316, 321, 401, 577, 2089]


@pytest.mark.parametrize("D", REAL)
def test_twisted_family(D):
    aux = find_auxiliary(D)
    for chi in characters_of(class_group(D), 7):
        tw = twisted_character(chi, aux)
        assert tw.conductor == D * aux.l
        f = theta_coeffs(tw, 500)
        assert hecke_consistency(f, tw.det_value, 1, tw.conductor, 100, 500).ok
        if chi.order % 2:
            rep = make_rep(chi, 2)
            rpt = verify_modularity(rep, reduce_qexp(f, rep.residue), 500, {aux.l}, check_epsilon=False)
            assert rpt.ok
