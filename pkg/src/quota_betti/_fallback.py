"""Pure-Python versions of the hot kernels.

Used when the compiled extension is missing, when ``QUOTA_BETTI_PURE=1`` is
set, and whenever an input would overflow the extension's int64 arithmetic.
Both kernels take exact integers and return exact integers.
"""
from __future__ import annotations

from math import gcd
from typing import Sequence


def count_window(weights: Sequence[int], lo: int, hi: int) -> list[int]:
    """Count nonempty subsets by size whose weight sum lies in ``[lo, hi)``.

    ``weights`` must be positive and sorted ascending. Entry ``k`` of the
    result is the number of qualifying subsets with ``k + 1`` elements.
    """
    n = len(weights)
    counts = [0] * n
    suffix = [0] * (n + 1)
    for i in range(n - 1, -1, -1):
        suffix[i] = suffix[i + 1] + weights[i]

    def walk(start: int, size: int, total: int) -> None:
        for j in range(start, n):
            t = total + weights[j]
            if t >= hi:
                # ascending order: every later vertex overshoots too
                break
            if total + suffix[j] < lo:
                break
            if t >= lo:
                counts[size] += 1
            walk(j + 1, size + 1, t)

    walk(0, 0, 0)
    return counts


def matrix_rank(matrix) -> int:
    """Rank over the rationals by fraction-free row elimination.

    Rows are combined as ``a*row_i - b*row_pivot`` with integer multipliers
    and then divided by their content, so no fractions ever appear.
    """
    rows: list[dict[int, int]] = []
    for row in matrix:
        entries = {j: int(v) for j, v in enumerate(row) if v}
        if entries:
            rows.append(entries)
    if not rows:
        return 0
    ncols = max(max(r) for r in rows) + 1

    rank = 0
    active = rows
    for c in range(ncols):
        piv = None
        for idx, r in enumerate(active):
            v = r.get(c)
            if v is not None and (piv is None or abs(v) < abs(active[piv][c])):
                piv = idx
                if abs(v) == 1:
                    break
        if piv is None:
            continue
        pivot_row = active[piv]
        pv = pivot_row[c]
        remaining = []
        for idx, r in enumerate(active):
            if idx == piv:
                continue
            f = r.get(c)
            if f is None:
                remaining.append(r)
                continue
            g = gcd(pv, f)
            pm, fm = pv // g, f // g
            new = {}
            for j, v in r.items():
                if j != c:
                    new[j] = pm * v
            for j, v in pivot_row.items():
                if j != c:
                    val = new.get(j, 0) - fm * v
                    if val:
                        new[j] = val
                    else:
                        new.pop(j, None)
            new = {j: v for j, v in new.items() if v}
            if new:
                content = 0
                for v in new.values():
                    content = gcd(content, v)
                if content > 1:
                    new = {j: v // content for j, v in new.items()}
                remaining.append(new)
        rank += 1
        active = remaining
        if not active:
            break
    return rank
