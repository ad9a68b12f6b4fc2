"""Select the compiled kernels when available, else the pure-Python ones.

Set ``QUOTA_BETTI_PURE=1`` to force the fallback.
"""
from __future__ import annotations

import os

from . import _fallback

_INT64_SAFE = 1 << 62

_impl = None
if os.environ.get("QUOTA_BETTI_PURE", "") != "1":
    try:
        from . import _kernels as _impl
    except ImportError:  # extension not built
        _impl = None

BACKEND = "cython" if _impl is not None else "python"


def count_window(weights, lo: int, hi: int) -> list[int]:
    weights = [int(w) for w in weights]
    if _impl is not None and sum(weights) + abs(lo) + abs(hi) < _INT64_SAFE:
        return _impl.count_window(weights, lo, hi)
    return _fallback.count_window(weights, lo, hi)


def matrix_rank(matrix) -> int:
    if _impl is not None:
        try:
            return _impl.matrix_rank(matrix)
        except OverflowError:
            pass
    return _fallback.matrix_rank(matrix)
