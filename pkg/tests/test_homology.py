import random

import numpy as np
import pytest

from quota_betti.core import QuotaSystem
from quota_betti.homology import (
    ComplexValidationError,
    ExplicitComplex,
    boundary_matrix,
    dump_boundary_csv,
    rank_profile,
    reduced_betti,
)

HOLLOW = ExplicitComplex.from_faces([(0,), (1,), (2,), (0, 1), (0, 2), (1, 2)])
FULL = ExplicitComplex.from_faces([(0,), (1,), (2,), (0, 1), (0, 2), (1, 2), (0, 1, 2)])


def random_complexes(count, seed=3):
    rng = random.Random(seed)
    out = []
    while len(out) < count:
        ws = [rng.randint(1, 8) for _ in range(rng.randint(1, 9))]
        q = rng.randint(2, 20)
        if min(ws) < q:
            out.append(ExplicitComplex.from_quota_system(QuotaSystem(ws, q)))
    return out


def test_hollow_triangle_boundary():
    d1 = boundary_matrix(HOLLOW, 1)
    assert d1.shape == (3, 3)
    assert (d1.sum(axis=0) == 0).all()
    assert not (boundary_matrix(HOLLOW, 0) @ d1).any()


def test_augmentation_single_vertex():
    cx = ExplicitComplex.from_faces([(0,)])
    assert boundary_matrix(cx, 0).tolist() == [[1]]


def test_full_triangle_top_boundary():
    assert boundary_matrix(FULL, 2).ravel().tolist() == [1, -1, 1]


def test_boundary_dimension_out_of_range():
    with pytest.raises(ValueError):
        boundary_matrix(HOLLOW, 2)
    with pytest.raises(ValueError):
        boundary_matrix(HOLLOW, -1)


def test_reduced_betti_examples():
    assert reduced_betti(ExplicitComplex.from_faces([(0,)])).to_list() == []
    assert reduced_betti(HOLLOW).to_list() == [0, 1]
    assert reduced_betti(FULL).to_list() == []
    assert reduced_betti(ExplicitComplex.from_faces([(0,), (1,), (2,)])).to_list() == [2]
    assert reduced_betti(ExplicitComplex.from_quota_system(QuotaSystem((1, 3, 4, 7), 12))).to_list() == [0, 1]


def test_not_downward_closed():
    with pytest.raises(ComplexValidationError):
        ExplicitComplex.from_faces([(0,), (1,), (0, 1, 2)])
    with pytest.raises(ComplexValidationError):
        reduced_betti(ExplicitComplex((), 0))


def test_lexicographic_layout():
    cx = ExplicitComplex.from_faces([(1, 2), (0,), (2,), (1,), (0, 2)])
    assert cx.faces == (((0,), (1,), (2,)), ((0, 2), (1, 2)))


@pytest.mark.parametrize("cx", random_complexes(40))
def test_boundary_squares_to_zero(cx):
    for m in range(1, cx.dimension + 1):
        assert not (boundary_matrix(cx, m - 1) @ boundary_matrix(cx, m)).any()


@pytest.mark.parametrize("cx", random_complexes(40, seed=11))
def test_euler_characteristic_and_rank_bounds(cx):
    prof = rank_profile(cx)
    betti = reduced_betti(cx)
    dims, ranks = prof.chain_dims, prof.boundary_ranks + [0]
    assert sum((-1) ** m * c for m, c in enumerate(dims)) - 1 == sum(
        (-1) ** m * betti[m] for m in range(len(dims))
    )
    for m in range(len(dims)):
        below = 1 if m == 0 else dims[m - 1]
        assert ranks[m] <= min(dims[m], below)
        assert ranks[m] + ranks[m + 1] <= dims[m]


def test_rank_matches_float_rank_on_small_complexes():
    for cx in random_complexes(15, seed=5):
        for m in range(cx.dimension + 1):
            mat = boundary_matrix(cx, m)
            assert rank_profile(cx).boundary_ranks[m] == np.linalg.matrix_rank(mat.astype(float))


def test_dump_boundary_csv(tmp_path):
    path = tmp_path / "d1.csv"
    dump_boundary_csv(HOLLOW, 1, path)
    lines = path.read_text().splitlines()
    assert lines[0] == ",0-1,0-2,1-2"
    assert lines[1] == "0,-1,-1,0"
