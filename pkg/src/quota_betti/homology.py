"""Brute-force reduced homology of an explicit simplicial complex.

This is the independent check on :func:`quota_betti.core.betti_by_counting`:
it builds every boundary matrix and takes exact ranks over the rationals.
Meant for small complexes (a dozen vertices or so).
"""
from __future__ import annotations

import csv
from dataclasses import dataclass
from itertools import combinations
from typing import Iterable, Sequence

import numpy as np

from . import _backend
from .core import BettiVector, Face, QuotaSystem, enumerate_faces


class ComplexValidationError(ValueError):
    pass


@dataclass(frozen=True)
class ExplicitComplex:
    faces: tuple[tuple[Face, ...], ...]  # faces[m] = sorted m-faces
    vertex_count: int

    @classmethod
    def from_faces(cls, faces: Iterable[Sequence[int]], vertex_count: int | None = None) -> "ExplicitComplex":
        by_dim: dict[int, set[Face]] = {}
        for f in faces:
            f = tuple(sorted(int(v) for v in f))
            if not f:
                raise ComplexValidationError("empty face")
            if len(set(f)) != len(f):
                raise ComplexValidationError(f"repeated vertex in face {f}")
            by_dim.setdefault(len(f) - 1, set()).add(f)
        top = max(by_dim) if by_dim else -1
        grouped = tuple(tuple(sorted(by_dim.get(m, ()))) for m in range(top + 1))
        if vertex_count is None:
            vertex_count = max((v for f in grouped[0] for v in f), default=-1) + 1 if grouped else 0
        cx = cls(grouped, vertex_count)
        cx.validate()
        return cx

    @classmethod
    def from_quota_system(cls, system: QuotaSystem, max_dim: int | None = None) -> "ExplicitComplex":
        return cls.from_faces(enumerate_faces(system, max_dim), len(system.weights))

    @property
    def dimension(self) -> int:
        return len(self.faces) - 1

    def chain_dims(self) -> list[int]:
        return [len(fs) for fs in self.faces]

    def validate(self) -> None:
        for m in range(1, len(self.faces)):
            lower = set(self.faces[m - 1])
            for f in self.faces[m]:
                for sub in combinations(f, m):
                    if sub not in lower:
                        raise ComplexValidationError(f"face {f} is present but its subface {sub} is not")
        for f in self.faces[0] if self.faces else ():
            if not 0 <= f[0] < self.vertex_count:
                raise ComplexValidationError(f"vertex {f[0]} outside 0..{self.vertex_count - 1}")


@dataclass(frozen=True)
class RankProfile:
    chain_dims: list[int]
    boundary_ranks: list[int]  # boundary_ranks[m] = rank of the boundary map from m-chains; [0] is augmentation


def boundary_matrix(complex: ExplicitComplex, m: int) -> np.ndarray:
    """Signed boundary matrix from m-chains to (m-1)-chains.

    Rows follow the lexicographic order of the (m-1)-faces, columns that of
    the m-faces. For ``m == 0`` this is the augmentation: a single row of
    ones mapping every vertex to the empty face.
    """
    if not 0 <= m <= complex.dimension:
        raise ValueError(f"dimension {m} outside 0..{complex.dimension}")
    cols = complex.faces[m]
    if m == 0:
        return np.ones((1, len(cols)), dtype=np.int64)
    rows = {f: i for i, f in enumerate(complex.faces[m - 1])}
    mat = np.zeros((len(rows), len(cols)), dtype=np.int64)
    for j, f in enumerate(cols):
        for k in range(len(f)):
            mat[rows[f[:k] + f[k + 1:]], j] = -1 if k % 2 else 1
    return mat


def rank_profile(complex: ExplicitComplex) -> RankProfile:
    dims = complex.chain_dims()
    ranks = [_backend.matrix_rank(boundary_matrix(complex, m)) for m in range(len(dims))]
    return RankProfile(dims, ranks)


def reduced_betti(complex: ExplicitComplex) -> BettiVector:
    if not complex.faces or not complex.faces[0]:
        raise ComplexValidationError("reduced homology of the empty complex is not defined here")
    complex.validate()
    prof = rank_profile(complex)
    dims, ranks = prof.chain_dims, prof.boundary_ranks + [0]
    return BettiVector(tuple(dims[m] - ranks[m] - ranks[m + 1] for m in range(len(dims))))


def dump_boundary_csv(complex: ExplicitComplex, m: int, path) -> None:
    """Write one boundary matrix as CSV, face labels in the header and first column."""
    mat = boundary_matrix(complex, m)
    row_labels = ["()"] if m == 0 else ["-".join(map(str, f)) for f in complex.faces[m - 1]]
    col_labels = ["-".join(map(str, f)) for f in complex.faces[m]]
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow([""] + col_labels)
        for label, row in zip(row_labels, mat):
            w.writerow([label] + [int(x) for x in row])
