"""Membership-oracle matroids over natural-number ground sets.

A matroid here is anything with a ``ground_set`` (ascending tuple of ints >= 1)
and an ``is_independent(S)`` query. Everything else in the package reaches
independence only through that query.
"""

from collections.abc import Mapping
from dataclasses import dataclass
from itertools import combinations

from . import kernels
from .errors import GroundSetTooLarge

DEFAULT_SCAN_LIMIT = 16


def as_set(S):
    return S if isinstance(S, frozenset) else frozenset(S)


def canonical(S):
    """Sorted tuple form used for transcripts and comparisons."""
    return tuple(sorted(S))


def weight_fn(weight):
    """Normalize a weight given as a mapping, a callable, or a sequence indexed by ``id - 1``."""
    if callable(weight):
        return weight
    if isinstance(weight, Mapping):
        return weight.__getitem__
    seq = tuple(weight)
    return lambda e: seq[e - 1]


def total(weight, S):
    w = weight_fn(weight)
    return sum((w(e) for e in S), 0)


class Matroid:
    ground_set = ()

    @property
    def n(self):
        return len(self.ground_set)

    def is_independent(self, S):
        raise NotImplementedError

    def subset(self, mask):
        return frozenset(e for i, e in enumerate(self.ground_set) if mask >> i & 1)

    def mask(self, S):
        pos = {e: i for i, e in enumerate(self.ground_set)}
        m = 0
        for e in S:
            m |= 1 << pos[e]
        return m

    def independence_table(self, limit=DEFAULT_SCAN_LIMIT):
        """Query every subset; ``bytes`` indexed by ground-set-position bitmask."""
        if self.n > limit:
            raise GroundSetTooLarge(f"|E| = {self.n} exceeds limit {limit}")
        return bytes(1 if self.is_independent(self.subset(m)) else 0 for m in range(1 << self.n))


class ExplicitMatroid(Matroid):
    """Independent sets listed outright. Only the empty set is checked at construction."""

    def __init__(self, ground_set, independent):
        if isinstance(ground_set, int):
            ground_set = range(1, ground_set + 1)
        self.ground_set = tuple(sorted(ground_set))
        self.family = frozenset(as_set(S) for S in independent)
        if frozenset() not in self.family:
            raise ValueError("the empty set must be independent")
        universe = frozenset(self.ground_set)
        for S in self.family:
            if not S <= universe:
                raise ValueError(f"{sorted(S)} is not a subset of the ground set")

    def is_independent(self, S):
        return as_set(S) in self.family

    def __repr__(self):
        return f"ExplicitMatroid(n={self.n}, |family|={len(self.family)})"


class UniformMatroid(Matroid):
    def __init__(self, n, k):
        if k < 0 or n < 0:
            raise ValueError("n and k must be non-negative")
        self.ground_set = tuple(range(1, n + 1))
        self.k = k

    def is_independent(self, S):
        return len(as_set(S)) <= self.k

    def __repr__(self):
        return f"UniformMatroid(n={self.n}, k={self.k})"


class PartitionMatroid(Matroid):
    def __init__(self, blocks, bounds):
        self.blocks = tuple(frozenset(b) for b in blocks)
        self.bounds = tuple(int(b) for b in bounds)
        if len(self.blocks) != len(self.bounds):
            raise ValueError("one bound per block")
        if any(b < 0 for b in self.bounds):
            raise ValueError("bounds must be non-negative")
        seen = set()
        for b in self.blocks:
            if seen & b:
                raise ValueError("blocks must be pairwise disjoint")
            seen |= b
        self.ground_set = tuple(sorted(seen))
        self._block_of = {e: i for i, b in enumerate(self.blocks) for e in b}

    def is_independent(self, S):
        counts = [0] * len(self.blocks)
        for e in S:
            i = self._block_of[e]
            counts[i] += 1
            if counts[i] > self.bounds[i]:
                return False
        return True

    def __repr__(self):
        return f"PartitionMatroid(blocks={[sorted(b) for b in self.blocks]}, bounds={list(self.bounds)})"


class TruncatedMatroid(Matroid):
    def __init__(self, inner, q):
        self.inner = inner
        self.q = q
        self.ground_set = inner.ground_set

    def is_independent(self, S):
        S = as_set(S)
        return len(S) <= self.q and self.inner.is_independent(S)

    def __repr__(self):
        return f"truncate({self.inner!r}, {self.q})"


def truncate(m, q):
    return TruncatedMatroid(m, q)


class CountingOracle(Matroid):
    """Records every query and its answer. Single writer: one per experiment."""

    def __init__(self, inner):
        self.inner = inner
        self.ground_set = inner.ground_set
        self.transcript = []

    def is_independent(self, S):
        S = as_set(S)
        answer = bool(self.inner.is_independent(S))
        self.transcript.append((canonical(S), answer))
        return answer

    @property
    def queries(self):
        return len(self.transcript)

    def queried_sets(self):
        return {q for q, _ in self.transcript}

    def replay(self, oracle=None):
        """Re-ask every recorded query; True iff all answers match."""
        oracle = self.inner if oracle is None else oracle
        return all(bool(oracle.is_independent(frozenset(q))) == a for q, a in self.transcript)


def rank(m):
    """Greedy rank: scan ids ascending, keep each element that preserves independence."""
    grown = frozenset()
    for e in m.ground_set:
        candidate = grown | {e}
        if m.is_independent(candidate):
            grown = candidate
    return len(grown)


def greedy_extreme_basis(m, weight, direction="min"):
    if direction not in ("min", "max"):
        raise ValueError("direction must be 'min' or 'max'")
    w = weight_fn(weight)
    sign = 1 if direction == "min" else -1
    order = sorted(m.ground_set, key=lambda e: (sign * w(e), e))
    basis = frozenset()
    for e in order:
        candidate = basis | {e}
        if m.is_independent(candidate):
            basis = candidate
    return basis


@dataclass(frozen=True)
class AxiomReport:
    passed: bool
    violation: str = None  # "empty" | "hereditary" | "exchange"
    A: frozenset = None
    B: frozenset = None
    element: int = None  # hereditary: the element whose removal breaks independence

    def to_json(self):
        out = {"passed": self.passed}
        if not self.passed:
            out["violation"] = self.violation
            out["A"] = canonical(self.A)
            out["B"] = canonical(self.B)
            if self.element is not None:
                out["element"] = self.element
        return out


def verify_matroid_axioms(m, limit=DEFAULT_SCAN_LIMIT):
    table = m.independence_table(limit)
    code, a, b, e = kernels.axiom_scan(table, m.n)
    if code == kernels.AXIOMS_OK:
        return AxiomReport(True)
    if code == kernels.EMPTY_DEPENDENT:
        return AxiomReport(False, "empty", frozenset(), frozenset())
    if code == kernels.NOT_HEREDITARY:
        return AxiomReport(False, "hereditary", m.subset(a), m.subset(b), m.ground_set[e])
    return AxiomReport(False, "exchange", m.subset(a), m.subset(b))


def is_paving(m, limit=DEFAULT_SCAN_LIMIT):
    """Every dependent set has at least rank-many elements (exhaustive)."""
    table = m.independence_table(limit)
    r = kernels.table_rank(table, m.n)
    return kernels.paving_scan(table, m.n, r) < 0


def independent_sets(m, limit=DEFAULT_SCAN_LIMIT):
    """All independent sets, by brute force."""
    if m.n > limit:
        raise GroundSetTooLarge(f"|E| = {m.n} exceeds limit {limit}")
    return [frozenset(c) for r in range(m.n + 1) for c in combinations(m.ground_set, r) if m.is_independent(c)]


def bases(m, limit=DEFAULT_SCAN_LIMIT):
    ind = independent_sets(m, limit)
    r = max(len(S) for S in ind)
    return [S for S in ind if len(S) == r]
