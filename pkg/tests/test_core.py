from fractions import Fraction
from itertools import combinations

import pytest
from hypothesis import given, settings, strategies as st

from quota_betti.core import (
    BettiVector,
    EmptyComplexError,
    QuotaSystem,
    betti_by_counting,
    contains_face,
    enumerate_faces,
    face_weight,
    read_weights,
)
from quota_betti.homology import ExplicitComplex, reduced_betti

PAPER = (1, 3, 4, 7)


def brute_faces(system, max_dim=None):
    n = len(system.weights)
    out = []
    top = n if max_dim is None else min(n, max_dim + 1)
    for k in range(1, top + 1):
        for f in combinations(range(n), k):
            if sum(system.weights[v] for v in f) < system.quota:
                out.append(f)
    return out


systems = st.builds(
    QuotaSystem,
    st.lists(st.integers(1, 8), min_size=1, max_size=9),
    st.integers(2, 20),
).filter(lambda s: not s.is_empty())


def test_face_weight_examples():
    s = QuotaSystem(PAPER, 10)
    assert face_weight(s, (0, 1, 2)) == 8
    assert face_weight(s, (1, 3)) == 10
    for i, w in enumerate(PAPER):
        assert face_weight(s, (i,)) == w


@pytest.mark.parametrize("face", [(4,), (1, 1), (2, 1), ()])
def test_invalid_faces_rejected(face):
    with pytest.raises(ValueError):
        face_weight(QuotaSystem(PAPER, 10), face)


def test_contains_face_examples():
    assert not contains_face(QuotaSystem(PAPER, 10), (1, 3))
    assert contains_face(QuotaSystem(PAPER, 12), (0, 1, 3))
    assert not contains_face(QuotaSystem(PAPER, 15), (0, 1, 2, 3))
    assert contains_face(QuotaSystem(PAPER, 16), (0, 1, 2, 3))


def test_enumerate_paper_example():
    faces = enumerate_faces(QuotaSystem(PAPER, 10))
    assert faces == [(0,), (1,), (2,), (3,), (0, 1), (0, 2), (0, 3), (1, 2), (0, 1, 2)]


def test_enumerate_empty_and_full():
    assert enumerate_faces(QuotaSystem(PAPER, 1)) == []
    n = 6
    assert len(enumerate_faces(QuotaSystem([1] * (n + 1), n + 2))) == 2 ** (n + 1) - 1


def test_enumerate_max_dim():
    s = QuotaSystem([1] * 5, 7)
    assert all(len(f) <= 2 for f in enumerate_faces(s, max_dim=1))
    assert enumerate_faces(s, max_dim=1) == brute_faces(s, 1)


def test_exact_decimal_weights():
    # 0.1 + 0.2 == 0.3 exactly, so the face is not strictly below the quota
    s = QuotaSystem(["0.1", "0.2"], "0.3")
    assert not contains_face(s, (0, 1))
    s = QuotaSystem([0.1, 0.2], 0.3)
    assert s.weights == (Fraction(1, 10), Fraction(1, 5))
    assert not contains_face(s, (0, 1))


def test_quota_system_validation():
    with pytest.raises(ValueError):
        QuotaSystem([], 3)
    with pytest.raises(ValueError):
        QuotaSystem([1, 0], 3)
    with pytest.raises(ValueError):
        QuotaSystem([1, 2], 0)


def test_betti_vector_trims_and_pads():
    b = BettiVector((0, 1, 0, 0))
    assert b.to_list() == [0, 1]
    assert b[5] == 0
    assert b == BettiVector((0, 1))
    with pytest.raises(ValueError):
        BettiVector((-1,))


def test_betti_examples():
    assert betti_by_counting(QuotaSystem(PAPER, 10)).to_list() == []
    assert betti_by_counting(QuotaSystem(PAPER, 12)).to_list() == [0, 1]
    N = 5
    assert betti_by_counting(QuotaSystem([1] * (N + 1), N + 1)).to_list() == [0] * (N - 1) + [1]


def test_betti_matches_oracle_on_examples():
    for q in (10, 12, 15, 16, 20):
        s = QuotaSystem(PAPER, q)
        assert betti_by_counting(s) == reduced_betti(ExplicitComplex.from_quota_system(s))


def test_empty_complex_error():
    with pytest.raises(EmptyComplexError):
        betti_by_counting(QuotaSystem([3, 4], 3))


def test_read_weights():
    assert read_weights(["# c", "1", "", "2.5", " 3/2 "]) == [1, Fraction(5, 2), Fraction(3, 2)]
    with pytest.raises(ValueError, match="line 2"):
        read_weights(["1", "x"])
    with pytest.raises(ValueError, match="line 3"):
        read_weights(["1", "# ok", "-2"])


@settings(max_examples=150, deadline=None)
@given(systems)
def test_enumeration_matches_brute_force(s):
    assert enumerate_faces(s) == sorted(brute_faces(s), key=lambda f: (len(f), f))


@settings(max_examples=100, deadline=None)
@given(systems)
def test_subface_closure(s):
    faces = set(enumerate_faces(s))
    for f in faces:
        for k in range(1, len(f)):
            assert all(sub in faces for sub in combinations(f, k))


@settings(max_examples=100, deadline=None)
@given(st.lists(st.integers(1, 8), min_size=1, max_size=8), st.integers(1, 20), st.integers(0, 10))
def test_raising_quota_keeps_faces(ws, q, extra):
    small, big = QuotaSystem(ws, q), QuotaSystem(ws, q + extra)
    assert set(enumerate_faces(small)) <= set(enumerate_faces(big))


@settings(max_examples=150, deadline=None)
@given(systems)
def test_counting_matches_homology(s):
    assert betti_by_counting(s) == reduced_betti(ExplicitComplex.from_quota_system(s))


@settings(max_examples=100, deadline=None)
@given(systems)
def test_any_minimum_vertex_gives_same_betti(s):
    low = min(s.weights)
    choices = [i for i, w in enumerate(s.weights) if w == low]
    results = {betti_by_counting(s, base=i) for i in choices}
    assert len(results) == 1


def test_non_minimum_base_rejected():
    with pytest.raises(ValueError):
        betti_by_counting(QuotaSystem(PAPER, 12), base=2)


def test_fractional_weights_match_oracle():
    s = QuotaSystem(["0.5", "1.25", "0.75", "1.5", "0.5"], "2.5")
    assert betti_by_counting(s) == reduced_betti(ExplicitComplex.from_quota_system(s))
