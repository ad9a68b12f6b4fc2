"""Time the compiled kernels against the pure-Python fallback.

    python benchmarks/bench_kernels.py [--repeat 3]
"""
import argparse
import random
import time

from quota_betti import _fallback
from quota_betti.core import QuotaSystem
from quota_betti.homology import ExplicitComplex, boundary_matrix

try:
    from quota_betti import _kernels
except ImportError:
    _kernels = None


def best_of(fn, repeat):
    times = []
    for _ in range(repeat):
        t = time.perf_counter()
        result = fn()
        times.append(time.perf_counter() - t)
    return min(times), result


def window_cases():
    rng = random.Random(0)
    yield "24 weights in [1,4], q=24", sorted(rng.randint(1, 4) for _ in range(24)), 22, 24
    yield "26 weights in [1,2], q=16", sorted(rng.randint(1, 2) for _ in range(26)), 15, 16
    yield "unit weights n=26, q=13", [1] * 26, 12, 13


def rank_cases():
    for n, q in ((10, 7), (11, 8), (12, 8)):
        cx = ExplicitComplex.from_quota_system(QuotaSystem([1] * n, q))
        m = cx.dimension // 2 + 1
        yield f"∂_{m} of {n}-vertex complex", boundary_matrix(cx, m)


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--repeat", type=int, default=3)
    args = parser.parse_args()
    if _kernels is None:
        print("compiled kernels not built; only the fallback is available")

    print(f"{'kernel':<14}{'case':<34}{'python s':>10}{'cython s':>10}{'speedup':>9}")
    for name, ws, lo, hi in window_cases():
        tp, rp = best_of(lambda: _fallback.count_window(ws, lo, hi), args.repeat)
        if _kernels is not None:
            tc, rc = best_of(lambda: _kernels.count_window(ws, lo, hi), args.repeat)
            assert rc == rp
            print(f"{'count_window':<14}{name:<34}{tp:>10.4f}{tc:>10.4f}{tp / tc:>8.1f}x")
        else:
            print(f"{'count_window':<14}{name:<34}{tp:>10.4f}{'-':>10}{'-':>9}")
    for name, mat in rank_cases():
        rows = mat.tolist()
        tp, rp = best_of(lambda: _fallback.matrix_rank(rows), args.repeat)
        label = f"{name} {mat.shape[0]}x{mat.shape[1]}"
        if _kernels is not None:
            tc, rc = best_of(lambda: _kernels.matrix_rank(mat), args.repeat)
            assert rc == rp
            print(f"{'matrix_rank':<14}{label:<34}{tp:>10.4f}{tc:>10.4f}{tp / tc:>8.1f}x")
        else:
            print(f"{'matrix_rank':<14}{label:<34}{tp:>10.4f}{'-':>10}{'-':>9}")


if __name__ == "__main__":
    main()
