"""Pi-matroids, SAT-matroids and the hard-parameter search.

A Pi-matroid on ``(n, k, alpha)`` with secret family ``Pi`` accepts every set
with fewer than ``k`` elements, every k-set whose element sum differs from
``alpha``, and a k-set of sum ``alpha`` only if the secret family contains it.
The secret family is an opaque query object; it is consulted for nothing else.
"""

import warnings
from dataclasses import dataclass
from itertools import combinations
from math import comb

from . import kernels
from .matroids import Matroid, as_set, canonical


def sum_of(S):
    return sum(S, 0)


# --- secret families -------------------------------------------------------

class SecretFamily:
    def contains(self, S):
        raise NotImplementedError


class EmptyFamily(SecretFamily):
    def contains(self, S):
        return False

    def __repr__(self):
        return "EmptyFamily()"


class SingletonFamily(SecretFamily):
    def __init__(self, S):
        self.member = as_set(S)

    def contains(self, S):
        return as_set(S) == self.member

    def __repr__(self):
        return f"SingletonFamily({canonical(self.member)})"


class ExplicitFamily(SecretFamily):
    def __init__(self, sets):
        self.sets = frozenset(as_set(S) for S in sets)

    def contains(self, S):
        return as_set(S) in self.sets

    def __repr__(self):
        return f"ExplicitFamily({sorted(canonical(S) for S in self.sets)})"


class GraphIndependentSets(SecretFamily):
    """S is a member iff no edge has both endpoints in S."""

    def __init__(self, edges):
        self.edges = tuple(tuple(sorted(e)) for e in edges)

    def contains(self, S):
        S = as_set(S)
        return not any(u in S and v in S for u, v in self.edges)

    def __repr__(self):
        return f"GraphIndependentSets({list(self.edges)})"


class SatSolutions(SecretFamily):
    def __init__(self, sat):
        self.sat = sat

    def contains(self, S):
        return sat_solution_check(self.sat, S)

    def __repr__(self):
        return f"SatSolutions({self.sat!r})"


class CountingFamily(SecretFamily):
    """Wraps a family and counts how often it is consulted."""

    def __init__(self, inner):
        self.inner = inner
        self.calls = 0

    def contains(self, S):
        self.calls += 1
        return self.inner.contains(S)


# --- Pi-matroid ------------------------------------------------------------

class PiMatroid(Matroid):
    def __init__(self, n, k, alpha, secret):
        if n < 1:
            raise ValueError("n must be positive")
        if not 1 <= k <= n:
            raise ValueError("k must lie in [n]")
        if alpha < 1:
            raise ValueError("alpha must be positive")
        self.ground_set = tuple(range(1, n + 1))
        self.k = k
        self.alpha = alpha
        self.secret = secret
        # bases are the k-sets outside F plus F-members of Pi; both empty only when k = n
        self.degenerate = k == n and alpha == n * (n + 1) // 2 and not secret.contains(self.ground_set)
        if self.degenerate:
            warnings.warn(
                f"PiMatroid(n={n}, k={k}, alpha={alpha}) has no k-element independent set; rank is {k - 1}",
                stacklevel=2,
            )

    def is_independent(self, S):
        S = as_set(S)
        size = len(S)
        if size < self.k:
            return True
        if size > self.k:
            return False
        if sum_of(S) != self.alpha:
            return True
        return bool(self.secret.contains(S))

    def __repr__(self):
        return f"PiMatroid(n={self.n}, k={self.k}, alpha={self.alpha}, secret={self.secret!r})"


def pi_membership(pm, S):
    return pm.is_independent(S)


def enumerate_target_sets(n, k, alpha):
    """All k-subsets of [n] with sum alpha, lexicographic."""
    if not 1 <= k <= n:
        raise ValueError("need 1 <= k <= n")
    lo = k * (k + 1) // 2
    hi = k * (2 * n - k + 1) // 2
    if not lo <= alpha <= hi:
        return []
    out = []

    def extend(prefix, start, remaining, need):
        if remaining == 0:
            if need == 0:
                out.append(frozenset(prefix))
            return
        for i in range(start, n + 1):
            # smallest and largest sums still reachable with `remaining` elements from i on
            if i * remaining + remaining * (remaining - 1) // 2 > need:
                break
            if remaining * (2 * n - remaining + 1) // 2 < need:
                return
            prefix.append(i)
            extend(prefix, i + 1, remaining - 1, need - i)
            prefix.pop()

    extend([], 1, k, alpha)
    return out


def count_target_sets(n, k, alpha):
    """|F_{n,k,alpha}| by the restricted-partition DP."""
    counts = kernels.count_subsets_by_sum(n, k)
    return counts[alpha] if 0 <= alpha < len(counts) else 0


def densest_alpha(n, k):
    """Smallest alpha in [n^2] maximizing |F_{n,k,alpha}|, and that count."""
    counts = kernels.count_subsets_by_sum(n, k)
    best_alpha, best = 1, -1
    for alpha in range(1, min(n * n, len(counts) - 1) + 1):
        if counts[alpha] > best:
            best_alpha, best = alpha, counts[alpha]
    return best_alpha, best


@dataclass(frozen=True)
class HardParameters:
    n: int
    k: int
    alpha: int
    family_size: int


def choose_hard_parameters(d):
    """Smallest n with (12 n^5)^d < (2^n - 1) / (2 n^3), k = n // 2, densest alpha.

    Guarantees |F_{n,k,alpha}| > 2 (12 n^5)^d; raises if the chosen k fails the
    binomial bound (it cannot for the central coefficient).
    """
    if d < 1:
        raise ValueError("d must be >= 1")
    n = 1
    while not 2 * n ** 3 * (12 * n ** 5) ** d < 2 ** n - 1:
        n += 1
    k = n // 2
    if comb(n, k) * n < 2 ** n - 1:
        raise AssertionError(f"C({n},{k}) below (2^n - 1)/n")
    alpha, size = densest_alpha(n, k)
    if not size > 2 * (12 * n ** 5) ** d:
        raise AssertionError(f"|F| = {size} does not exceed 2 (12 n^5)^{d}")
    return HardParameters(n, k, alpha, size)


# --- SAT-matroids ----------------------------------------------------------

@dataclass(frozen=True)
class SatInstance:
    n_vars: int
    clauses: tuple

    def __init__(self, n_vars, clauses):
        cl = tuple(tuple(sorted(set(c), key=lambda x: (abs(x), x))) for c in clauses)
        for c in cl:
            if not c:
                raise ValueError("clauses must be non-empty")
            for lit in c:
                if lit == 0 or abs(lit) > n_vars:
                    raise ValueError(f"literal {lit} outside [{n_vars}]")
        object.__setattr__(self, "n_vars", n_vars)
        object.__setattr__(self, "clauses", cl)


def sat_solution_check(A, S):
    """Assignment 'i true iff i in S' satisfies every clause."""
    S = as_set(S)
    for clause in A.clauses:
        if not any((lit > 0 and lit in S) or (lit < 0 and -lit not in S) for lit in clause):
            return False
    return True


@dataclass(frozen=True)
class SatMatroidCode:
    sat: SatInstance
    k: int
    alpha: int

    def __post_init__(self):
        n = self.sat.n_vars
        if not 1 <= self.k <= n:
            raise ValueError("k must lie in [n(A)]")
        if not 1 <= self.alpha <= n * n:
            raise ValueError("alpha must lie in [n(A)^2]")

    def decode(self):
        return SatMatroid(self)


class SatMatroid(PiMatroid):
    """The decoded Pi-matroid; membership costs one clause scan."""

    def __init__(self, code):
        self.code = code
        with warnings.catch_warnings():
            warnings.simplefilter("ignore")
            super().__init__(code.sat.n_vars, code.k, code.alpha, SatSolutions(code.sat))


def sat_matroid_membership(code, S):
    S = as_set(S)
    size = len(S)
    if size != code.k:
        return size < code.k
    if sum_of(S) != code.alpha:
        return True
    return sat_solution_check(code.sat, S)


def truth_table_satisfiable(A):
    """Reference oracle: try all 2^n assignments."""
    universe = range(1, A.n_vars + 1)
    return any(
        sat_solution_check(A, c)
        for r in range(A.n_vars + 1)
        for c in combinations(universe, r)
    )


def induced_emb_instance(pm):
    from .emb import EmbInstance
    return EmbInstance(pm, lambda e: e, pm.alpha)


def structured_instance(A, k, alpha):
    from .emb import EmbInstance
    return EmbInstance(SatMatroidCode(A, k, alpha).decode(), lambda e: e, alpha)


def decide_sat_via_emb(A, emb_decider=None, trace=None):
    """Decide satisfiability with an exact EMB decider on structured instances.

    ``emb_decider(instance)`` returns truthy iff the instance has a solution. If
    ``trace`` is a list, every succeeding ``(k, alpha)`` is appended and the loop
    does not stop early.
    """
    if emb_decider is None:
        from .emb import brute_force_emb
        emb_decider = brute_force_emb
    n = A.n_vars
    found = sat_solution_check(A, ())
    if found and trace is None:
        return True
    for k in range(1, n + 1):
        for alpha in range(1, n * n + 1):
            result = emb_decider(structured_instance(A, k, alpha))
            if result is not None and result is not False:
                found = True
                if trace is None:
                    return True
                trace.append((k, alpha))
    return found
