"""Hot loops, backed by the compiled extension when it is importable.

Set ``DIHEDRAL_PURE_PYTHON=1`` to force the pure-Python fallback.
"""
from __future__ import annotations

import os

from . import _kernels_py

BACKEND = "python"
_impl = _kernels_py

if os.environ.get("DIHEDRAL_PURE_PYTHON", "") in ("", "0"):
    try:
        from . import _kernels as _impl  # type: ignore[no-redef]

        BACKEND = "cython"
    except ImportError:
        _impl = _kernels_py

spf_sieve = _impl.spf_sieve
reduced_forms_negative = _impl.reduced_forms_negative
reduced_forms_positive = _impl.reduced_forms_positive
ideal_counts = _impl.ideal_counts

__all__ = [
    "BACKEND",
    "spf_sieve",
    "reduced_forms_negative",
    "reduced_forms_positive",
    "ideal_counts",
]
