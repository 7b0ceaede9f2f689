"""Numba shim: hot kernels are written once and run either jitted or as plain Python.

Set ``PARACC_DISABLE_NUMBA=1`` to force the pure-Python/numpy path (useful for
debugging and for the backend benchmark). Results are identical on both paths.
"""
from __future__ import annotations

import contextlib
import os
import warnings

DISABLED = os.environ.get("PARACC_DISABLE_NUMBA", "").strip().lower() in {"1", "true", "yes"}

try:
    if DISABLED:
        raise ImportError("numba disabled by PARACC_DISABLE_NUMBA")
    warnings.filterwarnings("ignore", message="The TBB threading layer")
    import numba
    from numba import njit, prange

    HAVE_NUMBA = True
except ImportError:
    numba = None
    HAVE_NUMBA = False
    prange = range

    def njit(*args, **kwargs):
        if len(args) == 1 and callable(args[0]) and not kwargs:
            return args[0]

        def decorator(func):
            return func

        return decorator


def kernel(parallel=False):
    """Decorator for hot kernels; ``parallel`` enables prange threading under numba."""
    return njit(cache=True, nogil=True, parallel=parallel)


def max_threads() -> int:
    if HAVE_NUMBA:
        return numba.config.NUMBA_NUM_THREADS
    return 1


@contextlib.contextmanager
def thread_limit(threads: int | None):
    """Temporarily cap the worker pool used by parallel kernels."""
    if not HAVE_NUMBA or threads is None:
        yield
        return
    previous = numba.get_num_threads()
    numba.set_num_threads(max(1, min(int(threads), max_threads())))
    try:
        yield
    finally:
        numba.set_num_threads(previous)


def backend() -> str:
    return "numba" if HAVE_NUMBA else "python"
