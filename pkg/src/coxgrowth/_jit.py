"""Numba switch.

Set ``COXGROWTH_DISABLE_JIT=1`` to run the pure-numpy kernels instead of
the compiled ones (debugging, or platforms without numba).
"""
import os

JIT_ENABLED = os.environ.get("COXGROWTH_DISABLE_JIT", "").lower() not in ("1", "true", "yes")

if JIT_ENABLED:
    try:
        from numba import njit
    except ImportError:  # pragma: no cover
        JIT_ENABLED = False

if not JIT_ENABLED:

    def njit(func=None, **kwargs):
        if func is not None:
            return func

        def wrapper(f):
            return f

        return wrapper
