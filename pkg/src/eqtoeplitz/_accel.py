"""Numba switch.

Hot kernels are written once as plain Python loops and compiled with
``numba.njit`` when numba is importable.  Setting ``EQTOEPLITZ_NO_NUMBA=1``
forces the vectorised numpy fallbacks instead; both paths are exercised by
the test suite and compared in ``benchmarks/bench_kernels.py``.
"""

import os

_DISABLED = os.environ.get("EQTOEPLITZ_NO_NUMBA", "").strip().lower() in {"1", "true", "yes"}

try:
    if _DISABLED:
        raise ImportError
    from numba import njit as _njit

    HAVE_NUMBA = True
except ImportError:
    HAVE_NUMBA = False
    _njit = None


def use_numba():
    return HAVE_NUMBA


def njit(*args, **kwargs):
    """``numba.njit(cache=True)`` if available, else identity."""
    kwargs.setdefault("cache", True)

    def wrap(fn):
        if HAVE_NUMBA:
            return _njit(**kwargs)(fn)
        return fn

    if args and callable(args[0]):
        return wrap(args[0])
    return wrap
