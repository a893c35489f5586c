from __future__ import annotations

import numpy as np
import pytest
from sympy import factorint

from dihedral import _kernels_py, kernels
from dihedral.classgroup import class_group
from dihedral.galoisrep import make_character
from dihedral.quadfield import is_fundamental_discriminant
from dihedral.thetaseries import IdealCharacter, ideal_count_table, ideals_of_norm

from oracles import brute_reduced_definite

try:
    from dihedral import _kernels as _kernels_c
except ImportError:  # extension not built
    _kernels_c = None

needs_ext = pytest.mark.skipif(_kernels_c is None, reason="compiled extension not built")


def test_backend_flag():
    assert kernels.BACKEND in ("cython", "python")


def test_spf_matches_factorint():
    spf = _kernels_py.spf_sieve(3000)
    for n in range(2, 3001):
        assert spf[n] == min(factorint(n))


@pytest.mark.parametrize("D", [d for d in range(-400, -4) if is_fundamental_discriminant(d)][::7])
def test_reduced_forms_negative_match_scan(D):
    assert sorted(_kernels_py.reduced_forms_negative(D)) == brute_reduced_definite(D)


@needs_ext
def test_backends_agree_on_forms():
    for D in [d for d in range(-2000, 2000) if is_fundamental_discriminant(d)][::11]:
        if D < 0:
            assert sorted(_kernels_c.reduced_forms_negative(D)) == sorted(_kernels_py.reduced_forms_negative(D))
        else:
            assert sorted(_kernels_c.reduced_forms_positive(D)) == sorted(_kernels_py.reduced_forms_positive(D))


@needs_ext
def test_backends_agree_on_sieve_and_counts():
    assert np.array_equal(_kernels_c.spf_sieve(5000), _kernels_py.spf_sieve(5000))
    chi = IdealCharacter(make_character(class_group(-3299), (1, 2)))
    B = 2000
    spf = _kernels_py.spf_sieve(B)
    kind = np.zeros(B + 1, dtype=np.int64)
    ea = np.zeros(B + 1, dtype=np.int64)
    eb = np.zeros(B + 1, dtype=np.int64)
    for l in range(2, B + 1):
        if spf[l] == l:
            kind[l], ea[l], eb[l] = chi.prime_data(l)
    a = _kernels_c.ideal_counts(B, chi.M, spf, kind, ea, eb)
    b = _kernels_py.ideal_counts(B, chi.M, spf, kind, ea, eb)
    assert np.array_equal(a, b)


@pytest.mark.parametrize("D,exps", [(-23, (1,)), (-47, (1,)), (-3299, (1, 2)), (-71, (2,))])
def test_ideal_counts_match_enumeration(D, exps):
    chi = IdealCharacter(make_character(class_group(D), exps))
    table = ideal_count_table(chi, 300)
    assert list(table[1]) == [1] + [0] * (chi.M - 1)
    for n in range(1, 301):
        hist = [0] * chi.M
        for ideal in ideals_of_norm(D, n):
            hist[chi.value_exponent(ideal)] += 1
        assert list(table[n]) == hist, n
