from __future__ import annotations

import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from dihedral.classgroup import class_group, smith_normal_form, wide_class_number
from dihedral.errors import BoundExceeded, InvalidDiscriminant
from dihedral.quadfield import compose, form_power, fundamental_unit_norm, is_fundamental_discriminant

from oracles import brute_reduced_definite


def test_minus23():
    G = class_group(-23)
    assert G.h == 3
    assert [n for _, n in G.cyclic] == [3]


def test_named_real_examples():
    assert class_group(2089).h == 3
    assert class_group(229).h == 3


def test_noncyclic_group():
    G = class_group(-3299)
    assert G.h == 27
    assert [n for _, n in G.cyclic] == [3, 9]


@pytest.mark.parametrize(
    "D,narrow,wide",
    [(5, 1, 1), (8, 1, 1), (12, 2, 1), (40, 2, 2), (136, 4, 2), (316, 6, 3), (229, 3, 3), (60, 4, 2)],
)
def test_real_class_numbers(D, narrow, wide):
    G = class_group(D)
    assert G.h == narrow
    assert wide_class_number(G) == wide
    assert (narrow == 2 * wide) == (fundamental_unit_norm(D) == 1)


@pytest.mark.parametrize("D", [d for d in range(-500, -4) if is_fundamental_discriminant(d)])
def test_imaginary_class_numbers_match_scan(D):
    assert class_group(D).h == len(brute_reduced_definite(D))


@pytest.mark.parametrize("D", [d for d in range(-1500, 1500) if is_fundamental_discriminant(d) and d not in (-3, -4)][::13])
def test_decomposition_is_consistent(D):
    G = class_group(D)
    orders = [n for _, n in G.cyclic]
    for a, b in zip(orders, orders[1:]):
        assert b % a == 0
    for gen, n in G.cyclic:
        assert G.order_of(gen) == n
    seen = set()
    for f in G.classes:
        c = G.coords_of(f)
        assert G.element_from_coords(c) == f
        seen.add(c)
    assert len(seen) == G.h
    rng = random.Random(D)
    for _ in range(5):
        f, g = rng.choice(G.classes), rng.choice(G.classes)
        cf, cg = G.coords_of(f), G.coords_of(g)
        want = tuple((x + y) % n for x, y, (_, n) in zip(cf, cg, G.cyclic))
        assert G.coords_of(compose(f, g)) == want


def test_sign_class():
    assert class_group(229).sign_class() == class_group(229).identity
    G = class_group(12)
    assert G.sign_class() != G.identity
    assert form_power(G.sign_class(), 2) == G.identity


def test_errors():
    with pytest.raises(InvalidDiscriminant):
        class_group(-12)
    with pytest.raises(BoundExceeded):
        class_group(-3299, 1000)


def test_json_shape():
    js = class_group(-23).to_json()
    assert set(js) == {"D", "h", "cyclic", "classes"}
    assert js["h"] == 3
    assert js["classes"][0] == [1, 1, 6]


def _matmul(A, B):
    return [[sum(A[i][k] * B[k][j] for k in range(len(B))) for j in range(len(B[0]))] for i in range(len(A))]


@settings(max_examples=60, deadline=None)
@given(st.integers(1, 4).flatmap(lambda n: st.lists(st.lists(st.integers(-30, 30), min_size=n, max_size=n), min_size=n, max_size=n)))
def test_smith_normal_form(R):
    n = len(R)
    diag, V, Vi = smith_normal_form(R)
    I = [[int(i == j) for j in range(n)] for i in range(n)]
    assert _matmul(V, Vi) == I
    # R V has the same row lattice as diag(diag): compare determinants and divisibility
    for a, b in zip(diag, diag[1:]):
        assert a >= 0
        if a:
            assert b % a == 0
        else:
            assert b == 0
    import sympy

    det = abs(sympy.Matrix(R).det())
    prod = 1
    for d in diag:
        prod *= d
    assert prod == det
