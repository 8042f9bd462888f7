"""Backend selection for the search kernels.

Kernels are written once in numba-compatible numpy.  They are compiled with
``numba.njit`` unless ``MIXSWITCH_NO_JIT`` is set to a non-empty value other
than ``0`` or numba cannot be imported, in which case the same functions run
as plain numpy code.
"""

import os

_flag = os.environ.get("MIXSWITCH_NO_JIT", "")
USE_NUMBA = _flag in ("", "0")

if USE_NUMBA:
    try:
        import numba
    except ImportError:  # pragma: no cover - numba is a declared dependency
        USE_NUMBA = False

BACKEND = "numba" if USE_NUMBA else "numpy"


def kernel(fn):
    if USE_NUMBA:
        return numba.njit(cache=True, nogil=True)(fn)
    return fn
