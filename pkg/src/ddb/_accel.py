"""Backend selection for the numeric kernels.

Kernels are written once as plain Python over numpy arrays.  When numba is
importable and ``DDB_USE_NUMBA`` is not ``0`` they are compiled with
``@njit``; otherwise the interpreted source runs unchanged.
"""

from __future__ import annotations

import os

try:
    import numba
except ImportError:  # pragma: no cover - numba is a declared dependency
    numba = None

USE_NUMBA = numba is not None and os.environ.get("DDB_USE_NUMBA", "1").lower() not in (
    "0",
    "false",
    "no",
    "off",
)


def jit(func):
    """Compile ``func`` when the numba backend is active; keep ``.py_func`` either way."""
    if USE_NUMBA:
        compiled = numba.njit(cache=True, nogil=True)(func)
        return compiled
    func.py_func = func
    return func


def backend_name() -> str:
    return "numba" if USE_NUMBA else "python"
