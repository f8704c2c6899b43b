"""JIT switch.

Set ``SCATTERED_LAB_DISABLE_NUMBA=1`` to force the pure-numpy kernels.
"""

import os

_DISABLED = os.environ.get("SCATTERED_LAB_DISABLE_NUMBA", "").strip().lower() in ("1", "true", "yes")

try:
    if _DISABLED:
        raise ImportError("numba disabled by environment")
    from numba import njit

    HAS_NUMBA = True
except ImportError:
    HAS_NUMBA = False

    def njit(func=None, **kwargs):
        if func is not None:
            return func

        def wrapper(f):
            return f

        return wrapper


def backend() -> str:
    return "numba" if HAS_NUMBA else "numpy"
