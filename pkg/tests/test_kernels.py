import os
import subprocess
import sys
from itertools import combinations

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from quota_betti import _backend, _fallback

try:
    from quota_betti import _kernels
except ImportError:
    _kernels = None

needs_ext = pytest.mark.skipif(_kernels is None, reason="compiled kernels not built")


def brute_window(ws, lo, hi):
    counts = [0] * len(ws)
    for k in range(1, len(ws) + 1):
        for f in combinations(ws, k):
            if lo <= sum(f) < hi:
                counts[k - 1] += 1
    return counts


windows = st.tuples(
    st.lists(st.integers(1, 9), max_size=10).map(sorted),
    st.integers(0, 30),
    st.integers(0, 30),
)


@settings(max_examples=200, deadline=None)
@given(windows)
def test_fallback_window_matches_brute_force(args):
    ws, lo, hi = args
    assert _fallback.count_window(ws, lo, hi) == brute_window(ws, lo, hi)


@needs_ext
@settings(max_examples=200, deadline=None)
@given(windows)
def test_compiled_window_matches_fallback(args):
    ws, lo, hi = args
    assert _kernels.count_window(ws, lo, hi) == _fallback.count_window(ws, lo, hi)


int_matrices = st.integers(1, 7).flatmap(
    lambda r: st.integers(1, 7).flatmap(
        lambda c: st.lists(st.lists(st.integers(-3, 3), min_size=c, max_size=c), min_size=r, max_size=r)
    )
)


@settings(max_examples=200, deadline=None)
@given(int_matrices)
def test_fallback_rank_matches_numpy(rows):
    assert _fallback.matrix_rank(rows) == np.linalg.matrix_rank(np.array(rows, dtype=float))


@needs_ext
@settings(max_examples=200, deadline=None)
@given(int_matrices)
def test_compiled_rank_matches_fallback(rows):
    assert _kernels.matrix_rank(np.array(rows)) == _fallback.matrix_rank(rows)


def test_rank_of_zero_and_empty():
    assert _fallback.matrix_rank([[0, 0], [0, 0]]) == 0
    assert _backend.matrix_rank(np.zeros((3, 2), dtype=np.int64)) == 0
    assert _backend.matrix_rank(np.zeros((0, 4), dtype=np.int64)) == 0


def test_rank_exact_where_floats_lose():
    # rank 1 over Q; entries too large for a float rank test to be trusted
    big = 3**38
    rows = [[big, big + 1], [2 * big, 2 * big + 2]]
    assert _fallback.matrix_rank(rows) == 1
    assert _fallback.matrix_rank([[big, big + 1], [big + 1, big + 2]]) == 2


@needs_ext
def test_compiled_overflow_falls_back():
    big = 3**38  # products of two entries leave int64
    rows = np.array([[big, big + 1], [big + 1, big + 2]], dtype=np.int64)
    with pytest.raises(OverflowError):
        _kernels.matrix_rank(rows)
    assert _backend.matrix_rank(rows) == 2


def test_backend_window_handles_huge_weights():
    ws = [2**62, 2**62 + 1]
    assert _backend.count_window(ws, 2**62, 2**63 + 2) == [2, 1]


def test_backend_name():
    assert _backend.BACKEND in {"cython", "python"}


def test_pure_env_forces_fallback():
    env = dict(os.environ, QUOTA_BETTI_PURE="1")
    res = subprocess.run(
        [sys.executable, "-c", "import quota_betti; print(quota_betti.BACKEND)"],
        capture_output=True, text=True, env=env, check=True,
    )
    assert res.stdout.strip() == "python"
