"""Scalar quota complexes: construction, face queries, and Betti numbers.

A face belongs to the quota complex iff its total weight is strictly below
the quota. Weights and quota are held as :class:`fractions.Fraction` so the
strict comparison never depends on floating-point rounding.
"""
from __future__ import annotations

from dataclasses import dataclass
from decimal import Decimal
from fractions import Fraction
from math import lcm
from numbers import Rational
from typing import Iterable, Sequence

from . import _backend

Face = tuple[int, ...]


class EmptyComplexError(ValueError):
    """No vertex lies below the quota, so the complex is empty."""


def exact(value) -> Fraction:
    """Convert a weight or quota to an exact rational.

    Strings and floats are read as decimals, so ``0.1`` means one tenth and
    not the nearest binary double.
    """
    if isinstance(value, Fraction):
        return value
    if isinstance(value, (int, Rational)):
        return Fraction(value)
    if isinstance(value, float):
        return Fraction(repr(value))
    if isinstance(value, (str, Decimal)):
        return Fraction(str(value).strip())
    raise TypeError(f"cannot interpret {value!r} as an exact number")


@dataclass(frozen=True)
class QuotaSystem:
    weights: tuple[Fraction, ...]
    quota: Fraction

    def __init__(self, weights: Iterable, quota) -> None:
        ws = tuple(exact(w) for w in weights)
        q = exact(quota)
        if not ws:
            raise ValueError("a quota system needs at least one vertex")
        for i, w in enumerate(ws):
            if w <= 0:
                raise ValueError(f"weight of vertex {i} must be positive, got {w}")
        if q <= 0:
            raise ValueError(f"quota must be positive, got {q}")
        object.__setattr__(self, "weights", ws)
        object.__setattr__(self, "quota", q)

    def __len__(self) -> int:
        return len(self.weights)

    @property
    def base_vertex(self) -> int:
        """Lowest-index vertex of minimum weight."""
        m = min(self.weights)
        return self.weights.index(m)

    def is_empty(self) -> bool:
        return min(self.weights) >= self.quota

    def scaled(self) -> tuple[list[int], int]:
        """Weights and quota multiplied by the lcm of their denominators."""
        scale = lcm(self.quota.denominator, *(w.denominator for w in self.weights))
        ws = [int(w * scale) for w in self.weights]
        return ws, int(self.quota * scale)


@dataclass(frozen=True)
class BettiVector:
    """Reduced Betti numbers by dimension; trailing zeros are trimmed."""

    values: tuple[int, ...] = ()

    def __post_init__(self) -> None:
        vals = [int(v) for v in self.values]
        if any(v < 0 for v in vals):
            raise ValueError("Betti numbers are nonnegative")
        while vals and vals[-1] == 0:
            vals.pop()
        object.__setattr__(self, "values", tuple(vals))

    def __getitem__(self, m: int) -> int:
        if m < 0:
            raise IndexError("dimension must be nonnegative")
        return self.values[m] if m < len(self.values) else 0

    def __len__(self) -> int:
        return len(self.values)

    def to_list(self) -> list[int]:
        return list(self.values)


def check_face(system: QuotaSystem, face: Sequence[int]) -> Face:
    face = tuple(int(v) for v in face)
    if not face:
        raise ValueError("a face needs at least one vertex")
    n = len(system.weights)
    for v in face:
        if not 0 <= v < n:
            raise ValueError(f"vertex index {v} out of range for {n} vertices")
    if any(a >= b for a, b in zip(face, face[1:])):
        raise ValueError(f"face vertices must be strictly increasing, got {face}")
    return face


def face_weight(system: QuotaSystem, face: Sequence[int]) -> Fraction:
    face = check_face(system, face)
    return sum((system.weights[v] for v in face), Fraction(0))


def contains_face(system: QuotaSystem, face: Sequence[int]) -> bool:
    return face_weight(system, face) < system.quota


def enumerate_faces(system: QuotaSystem, max_dim: int | None = None) -> list[Face]:
    """All faces of the complex, ordered by dimension then lexicographically.

    Depth-first over increasing vertex indices; a branch is cut as soon as
    its weight reaches the quota, since positive weights can only add.
    """
    ws, q = system.scaled()
    n = len(ws)
    limit = n if max_dim is None else max_dim + 1
    out: list[Face] = []
    if limit <= 0:
        return out

    def walk(prefix: list[int], total: int) -> None:
        start = prefix[-1] + 1 if prefix else 0
        for j in range(start, n):
            t = total + ws[j]
            if t >= q:
                continue
            prefix.append(j)
            out.append(tuple(prefix))
            if len(prefix) < limit:
                walk(prefix, t)
            prefix.pop()

    walk([], 0)
    out.sort(key=len)  # stable: lexicographic order survives within a dimension
    return out


def betti_by_counting(system: QuotaSystem, base: int | None = None) -> BettiVector:
    """Reduced Betti numbers from the bouquet-of-spheres count.

    With ``v0`` a minimum-weight vertex, dimension ``s`` gets one sphere for
    every ``s``-face avoiding ``v0`` whose weight lies in ``[q - w(v0), q)``.
    ``base`` overrides the choice of ``v0`` (it must have minimum weight).
    """
    if system.is_empty():
        raise EmptyComplexError("no vertex has weight below the quota")
    if base is None:
        base = system.base_vertex
    elif system.weights[base] != min(system.weights):
        raise ValueError(f"vertex {base} does not have minimum weight")
    ws, q = system.scaled()
    rest = sorted(w for i, w in enumerate(ws) if i != base)
    counts = _backend.count_window(rest, q - ws[base], q)
    return BettiVector(tuple(counts))


def read_weights(lines: Iterable[str]) -> list[Fraction]:
    """Parse a weights file: one positive decimal per line, ``#`` comments.

    Raises ``ValueError`` whose message names the offending line number.
    """
    weights = []
    for lineno, raw in enumerate(lines, start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        try:
            w = Fraction(line)
        except (ValueError, ZeroDivisionError):
            raise ValueError(f"line {lineno}: not a number: {line!r}") from None
        if w <= 0:
            raise ValueError(f"line {lineno}: weight must be positive, got {line}")
        weights.append(w)
    if not weights:
        raise ValueError("weights file contains no weights")
    return weights
