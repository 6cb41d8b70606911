import random
from fractions import Fraction

from hypothesis import given, settings, strategies as st

from pimatroid import intersection
from pimatroid.intersection import (
    brute_force_max_common, brute_force_min_weight_common, max_common_independent, min_weight_common_basis,
)
from pimatroid.matroids import PartitionMatroid, UniformMatroid, greedy_extreme_basis, rank, truncate

from _support import brute_min_common, naive_rank, random_matroid, random_partition


def test_examples():
    u = UniformMatroid(4, 2)
    p = PartitionMatroid([[1, 2], [3, 4]], [1, 1])
    assert len(max_common_independent(u, p)) == 2
    S = min_weight_common_basis(u, p, (9, 1, 1, 9), 2)
    assert S == {2, 3}
    assert min_weight_common_basis(u, p, (9, 1, 1, 9), 3) is None
    assert max_common_independent(u, truncate(u, 0)) == frozenset()


def test_inactive_second_matroid_gives_greedy():
    rng = random.Random(4)
    for _ in range(40):
        n = rng.randint(1, 8)
        m = random_matroid(n, rng)
        free = PartitionMatroid([list(range(1, n + 1))], [n])
        w = [rng.randint(0, 9) for _ in range(n)]
        S = min_weight_common_basis(m, free, w, rank(m))
        G = greedy_extreme_basis(m, w, "min")
        assert sum(w[e - 1] for e in S) == sum(w[e - 1] for e in G)
        assert max_common_independent(m, free).__len__() == rank(m)


def _pair(rng, n):
    m1 = random_matroid(n, rng)
    m2 = random_partition(n, rng) if rng.random() < 0.7 else random_matroid(n, rng)
    return m1, m2


def test_max_common_matches_brute_force():
    rng = random.Random(21)
    for _ in range(120):
        n = rng.randint(1, 10)
        m1, m2 = _pair(rng, n)
        S = max_common_independent(m1, m2)
        assert m1.is_independent(S) and m2.is_independent(S)
        assert len(S) == len(brute_force_max_common(m1, m2))


def test_min_weight_matches_brute_force_with_negative_rationals():
    rng = random.Random(22)
    for _ in range(150):
        n = rng.randint(1, 9)
        m1, m2 = _pair(rng, n)
        w = [Fraction(rng.randint(-20, 20), rng.randint(1, 4)) for _ in range(n)]
        for b in range(0, n + 1):
            S = min_weight_common_basis(m1, m2, w, b)
            expected = brute_min_common(m1, m2, w, b)
            if expected is None:
                assert S is None
            else:
                assert len(S) == b and m1.is_independent(S) and m2.is_independent(S)
                assert sum((w[e - 1] for e in S), Fraction(0)) == expected


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 2 ** 32 - 1), st.integers(2, 12))
def test_min_weight_property(seed, n):
    rng = random.Random(seed)
    m1, m2 = _pair(rng, n)
    w = [rng.randint(-9, 9) for _ in range(n)]
    b = min(naive_rank(m1), naive_rank(m2))
    S = min_weight_common_basis(m1, m2, w, b)
    expected = brute_min_common(m1, m2, w, b)
    assert (S is None) == (expected is None)
    if S is not None:
        assert sum(w[e - 1] for e in S) == expected


def test_brute_force_threshold_is_respected():
    u = UniformMatroid(4, 2)
    p = PartitionMatroid([[1, 2], [3, 4]], [1, 1])
    assert min_weight_common_basis(u, p, (9, 1, 1, 9), 2, brute_force_below=10) == {2, 3}
    assert brute_force_min_weight_common(u, p, (9, 1, 1, 9), 2) == {2, 3}
    assert intersection.BRUTE_FORCE_BELOW >= 0
