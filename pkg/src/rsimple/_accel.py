"""Backend switch for the hot kernels.

Set RSIMPLE_BACKEND=numpy to force the pure-numpy path; the default uses
numba when it imports cleanly.
"""

import os

BACKEND = os.environ.get("RSIMPLE_BACKEND", "numba").strip().lower()

try:
    if BACKEND == "numpy":
        raise ImportError
    from numba import njit as _njit

    HAVE_NUMBA = True
except ImportError:  # pragma: no cover - depends on environment
    HAVE_NUMBA = False
    _njit = None

USE_NUMBA = HAVE_NUMBA and BACKEND != "numpy"


def njit(*args, **kwargs):
    """numba.njit(cache=True) when available, otherwise the identity."""
    if not HAVE_NUMBA:
        if args and callable(args[0]):
            return args[0]
        return lambda f: f
    kwargs.setdefault("cache", True)
    return _njit(*args, **kwargs)
