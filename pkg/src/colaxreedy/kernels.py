"""Kernel selection: compiled core when importable, pure Python otherwise.

Set ``COLAXREEDY_PURE=1`` to force the fallback.
"""

from __future__ import annotations

import os

from . import _kernels_py

BACKEND = "python"
rref_mod_p = _kernels_py.rref_mod_p
finset_limit = _kernels_py.finset_limit

if not os.environ.get("COLAXREEDY_PURE"):
    try:
        from . import _kernels as _compiled
    except ImportError:
        pass
    else:
        rref_mod_p = _compiled.rref_mod_p
        finset_limit = _compiled.finset_limit
        BACKEND = "cython"

__all__ = ["BACKEND", "rref_mod_p", "finset_limit"]
