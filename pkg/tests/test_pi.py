import random
import warnings
from itertools import combinations

import pytest
from hypothesis import given, settings, strategies as st

from pimatroid.emb import brute_force_emb
from pimatroid.matroids import is_paving, rank, verify_matroid_axioms
from pimatroid.pi import (
    CountingFamily, EmptyFamily, ExplicitFamily, GraphIndependentSets, PiMatroid, SatInstance, SatMatroidCode,
    SingletonFamily, choose_hard_parameters, count_target_sets, decide_sat_via_emb, densest_alpha,
    enumerate_target_sets, induced_emb_instance, pi_membership, sat_matroid_membership, sat_solution_check, sum_of,
    truth_table_satisfiable,
)

from _support import all_subsets, naive_bases, quiet_pi, random_pi

FIG_EDGES = [(1, 2), (1, 3), (1, 4), (2, 4), (3, 4)]


def fig_pi():
    return PiMatroid(4, 2, 5, GraphIndependentSets(FIG_EDGES))


def test_sum_of():
    assert sum_of(()) == 0
    assert sum_of({2, 3}) == 5
    assert sum_of(range(1, 8)) == 28


def test_membership_figure_example():
    pm = fig_pi()
    assert pi_membership(pm, {2, 4})
    assert pi_membership(pm, {2, 3})
    assert not pi_membership(pm, {1, 4})
    assert pi_membership(pm, ())
    assert not pi_membership(pm, {1, 2, 3})


def test_figure_layers():
    pm = fig_pi()
    two_sets = [frozenset(c) for c in combinations(range(1, 5), 2)]
    wrong_sum = {S for S in two_sets if sum(S) != 5}
    assert wrong_sum == {frozenset(s) for s in [(2, 4), (1, 2), (3, 4), (1, 3)]}
    assert {S for S in two_sets if pm.is_independent(S)} - wrong_sum == {frozenset({2, 3})}


def test_enumerate_target_sets():
    assert enumerate_target_sets(4, 2, 5) == [{1, 4}, {2, 3}]
    assert enumerate_target_sets(6, 2, 7) == [{1, 6}, {2, 5}, {3, 4}]
    assert enumerate_target_sets(3, 3, 100) == []
    with pytest.raises(ValueError):
        enumerate_target_sets(3, 4, 6)


def test_enumerate_matches_brute_force_and_dp():
    for n in range(1, 10):
        for k in range(1, n + 1):
            for alpha in range(0, k * n + 2):
                direct = [frozenset(c) for c in combinations(range(1, n + 1), k) if sum(c) == alpha]
                assert enumerate_target_sets(n, k, alpha) == direct
                assert count_target_sets(n, k, alpha) == len(direct)


def test_densest_alpha_toy():
    assert densest_alpha(4, 2) == (5, 2)


def test_hard_parameters_d1():
    hp = choose_hard_parameters(1)
    n = hp.n
    assert 2 * n ** 3 * 12 * n ** 5 < 2 ** n - 1
    assert not 2 * (n - 1) ** 3 * 12 * (n - 1) ** 5 < 2 ** (n - 1) - 1
    assert hp.k == n // 2
    assert hp.family_size == count_target_sets(n, hp.k, hp.alpha)
    assert hp.family_size > 2 * 12 * n ** 5
    assert 1 <= hp.alpha <= n * n


def test_axioms_and_paving_exhaustive_small():
    rng = random.Random(1)
    for n in range(1, 5):
        for k in range(1, n + 1):
            for alpha in range(1, n * n + 1):
                pm = quiet_pi(lambda: random_pi(n, rng, k, alpha))
                assert verify_matroid_axioms(pm).passed
                assert is_paving(pm)


def test_bases_are_wrong_sum_plus_secret_layer():
    rng = random.Random(2)
    for n in range(1, 6):
        for k in range(1, n + 1):
            for alpha in range(1, n * n + 1, 2):
                pm = quiet_pi(lambda: random_pi(n, rng, k, alpha))
                layer = {frozenset(c) for c in combinations(range(1, n + 1), k)
                         if sum(c) != alpha or pm.secret.contains(c)}
                if layer:
                    assert set(naive_bases(pm)) == layer
                    assert rank(pm) == k


def test_degenerate_configuration_warns():
    with pytest.warns(UserWarning):
        pm = PiMatroid(3, 3, 6, EmptyFamily())
    assert pm.degenerate and rank(pm) == 2
    with warnings.catch_warnings():
        warnings.simplefilter("error")
        ok = PiMatroid(3, 3, 6, ExplicitFamily([(1, 2, 3)]))
    assert not ok.degenerate and rank(ok) == 3


def test_secret_consulted_only_on_target_layer():
    for n in range(1, 6):
        for k in range(1, n + 1):
            for alpha in range(1, n * n + 1):
                fam = CountingFamily(EmptyFamily())
                with warnings.catch_warnings():
                    warnings.simplefilter("ignore")
                    pm = PiMatroid(n, k, alpha, fam)
                fam.calls = 0
                for S in all_subsets(range(1, n + 1)):
                    before = fam.calls
                    pm.is_independent(S)
                    on_layer = len(S) == k and sum(S) == alpha
                    assert fam.calls - before == (1 if on_layer else 0)


def test_secret_invisible_outside_target_layer():
    rng = random.Random(3)
    for n in range(1, 6):
        for _ in range(10):
            a = quiet_pi(lambda: random_pi(n, rng))
            b = quiet_pi(lambda: random_pi(n, rng, a.k, a.alpha))
            for S in all_subsets(range(1, n + 1)):
                if not (len(S) == a.k and sum(S) == a.alpha):
                    assert a.is_independent(S) == b.is_independent(S)


def test_induced_instances():
    yes = induced_emb_instance(PiMatroid(4, 2, 5, ExplicitFamily([(2, 3)])))
    assert brute_force_emb(yes) == {2, 3}
    assert brute_force_emb(induced_emb_instance(PiMatroid(4, 2, 5, EmptyFamily()))) is None
    assert brute_force_emb(induced_emb_instance(PiMatroid(4, 2, 6, ExplicitFamily([(2, 3)])))) is None


def test_yes_iff_secret_hits_target_layer():
    rng = random.Random(4)
    for n in range(1, 6):
        for k in range(1, n + 1):
            for alpha in range(1, n * n + 1):
                pm = quiet_pi(lambda: random_pi(n, rng, k, alpha, density=0.3))
                if rank(pm) != k:
                    continue
                hit = any(pm.secret.contains(S) for S in enumerate_target_sets(n, k, alpha))
                assert (brute_force_emb(induced_emb_instance(pm)) is not None) == hit


def test_sat_checks():
    assert sat_solution_check(SatInstance(2, [[1, 2]]), {1})
    assert not sat_solution_check(SatInstance(1, [[-1]]), {1})
    assert sat_solution_check(SatInstance(2, [[1, -2], [-1, 2]]), ())


def test_sat_instance_validation():
    with pytest.raises(ValueError):
        SatInstance(2, [[]])
    with pytest.raises(ValueError):
        SatInstance(2, [[3]])
    with pytest.raises(ValueError):
        SatInstance(2, [[0]])
    with pytest.raises(ValueError):
        SatMatroidCode(SatInstance(2, [[1]]), 3, 1)
    with pytest.raises(ValueError):
        SatMatroidCode(SatInstance(2, [[1]]), 1, 5)


def test_sat_matroid_membership_examples():
    A = SatInstance(4, [[2], [3], [-1], [-4]])
    code = SatMatroidCode(A, 2, 5)
    assert sat_matroid_membership(code, {2, 3})
    assert not sat_matroid_membership(code, {1, 4})
    assert sat_matroid_membership(code, {4})


def _random_sat(rng, n, m):
    clauses = []
    for _ in range(m):
        width = rng.randint(1, n)
        vars_ = rng.sample(range(1, n + 1), width)
        clauses.append([v if rng.random() < 0.5 else -v for v in vars_])
    return SatInstance(n, clauses)


def test_sat_membership_equals_decoded_pi_membership():
    rng = random.Random(6)
    for n in range(1, 5):
        for _ in range(15):
            A = _random_sat(rng, n, rng.randint(0, 5))
            k = rng.randint(1, n)
            alpha = rng.randint(1, n * n)
            code = SatMatroidCode(A, k, alpha)
            pm = code.decode()
            for S in all_subsets(range(1, n + 1)):
                assert sat_matroid_membership(code, S) == pi_membership(pm, S)


def test_decide_sat_examples():
    assert decide_sat_via_emb(SatInstance(1, [[1]]))
    assert not decide_sat_via_emb(SatInstance(1, [[1], [-1]]))
    trace = []
    assert decide_sat_via_emb(SatInstance(3, []), trace=trace)


@settings(max_examples=80, deadline=None)
@given(st.integers(0, 2 ** 32 - 1), st.integers(1, 3), st.integers(0, 5))
def test_decide_sat_matches_truth_table(seed, n, m):
    A = _random_sat(random.Random(seed), n, m)
    trace = []
    found = decide_sat_via_emb(A, trace=trace)
    assert found == truth_table_satisfiable(A)
    # every traced pair names a real solution of that size and sum
    for k, alpha in trace:
        assert any(sat_solution_check(A, S) for S in enumerate_target_sets(n, k, alpha))


def test_singleton_family():
    fam = SingletonFamily({2, 3})
    assert fam.contains((3, 2)) and not fam.contains({1, 4})
