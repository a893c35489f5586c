"""Time the compiled kernels against the pure-Python fallback on identical inputs.

    python benchmarks/bench_kernels.py [--B 200000] [--repeat 3]
"""
from __future__ import annotations

import argparse
import timeit

import numpy as np

from dihedral import _kernels_py, kernels
from dihedral.classgroup import class_group
from dihedral.galoisrep import make_character
from dihedral.thetaseries import IdealCharacter

try:
    from dihedral import _kernels as _kernels_c
except ImportError:
    _kernels_c = None


def ideal_inputs(D: int, exps, B: int):
    char = IdealCharacter(make_character(class_group(D), tuple(exps)))
    spf = kernels.spf_sieve(B)
    kind = np.zeros(B + 1, dtype=np.int64)
    ea = np.zeros(B + 1, dtype=np.int64)
    eb = np.zeros(B + 1, dtype=np.int64)
    for l in range(2, B + 1):
        if spf[l] == l:
            kind[l], ea[l], eb[l] = char.prime_data(l)
    return (B, char.M, spf, kind, ea, eb)


def cases(B: int):
    return [
        ("spf_sieve", (B,)),
        ("reduced_forms_negative", (-(10**6 + 3),)),
        ("reduced_forms_positive", (100049,)),
        ("ideal_counts", ideal_inputs(-3299, (1, 1), B)),
    ]


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--B", type=int, default=200_000)
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args(argv)
    if _kernels_c is None:
        print("compiled extension not built; run `pip install -e . --no-build-isolation` first")
        return 1
    print(f"{'kernel':<26}{'python (s)':>12}{'cython (s)':>12}{'speedup':>10}")
    for name, inp in cases(args.B):
        py, cy = getattr(_kernels_py, name), getattr(_kernels_c, name)
        a, b = py(*inp), cy(*inp)
        same = np.array_equal(np.asarray(a), np.asarray(b)) if not isinstance(a, list) else a == b
        assert same, f"{name}: backends disagree"
        tp = min(timeit.repeat(lambda: py(*inp), number=1, repeat=args.repeat))
        tc = min(timeit.repeat(lambda: cy(*inp), number=1, repeat=args.repeat))
        print(f"{name:<26}{tp:>12.4f}{tc:>12.4f}{tp / tc:>9.1f}x")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
