"""Matroid intersection via exchange-graph augmenting paths.

Both matroids must share a ground set. Weights may be any exactly-comparable
numbers (ints, ``Fraction``); nothing here rounds.
"""

from collections import deque
from itertools import combinations

from .errors import GroundSetTooLarge
from .matroids import weight_fn

# Sizes at or below this are solved by enumeration instead of augmenting paths.
BRUTE_FORCE_BELOW = 0
BRUTE_FORCE_LIMIT = 20


def _exchange_arcs(m1, m2, S):
    outside = [e for e in m1.ground_set if e not in S]
    inside = sorted(S)
    sources = {x for x in outside if m1.is_independent(S | {x})}
    sinks = {x for x in outside if m2.is_independent(S | {x})}
    arcs = {e: [] for e in m1.ground_set}
    for y in inside:
        without = S - {y}
        for x in outside:
            swapped = without | {x}
            if m1.is_independent(swapped):
                arcs[y].append(x)
            if m2.is_independent(swapped):
                arcs[x].append(y)
    return sources, sinks, arcs


def _augment(S, path):
    return S.symmetric_difference(path)


def max_common_independent(m1, m2):
    """Maximum-cardinality common independent set (shortest augmenting paths)."""
    S = frozenset()
    while True:
        sources, sinks, arcs = _exchange_arcs(m1, m2, S)
        pred = {}
        queue = deque()
        for x in sorted(sources):
            pred[x] = None
            queue.append(x)
        end = None
        while queue:
            u = queue.popleft()
            if u in sinks:
                end = u
                break
            for v in arcs[u]:
                if v not in pred:
                    pred[v] = u
                    queue.append(v)
        if end is None:
            return S
        path = []
        while end is not None:
            path.append(end)
            end = pred[end]
        S = _augment(S, path)


def _shortest_weighted_path(m1, sources, sinks, arcs, length):
    # vertex-weighted Bellman-Ford; ties broken by fewer arcs, then smaller id
    dist = {}
    pred = {}
    for x in sources:
        dist[x] = (length[x], 0)
        pred[x] = None
    vertices = list(m1.ground_set)
    for _ in range(len(vertices)):
        changed = False
        for u in vertices:
            if u not in dist:
                continue
            du, hu = dist[u]
            for v in arcs[u]:
                cand = (du + length[v], hu + 1)
                if v not in dist or cand < dist[v]:
                    dist[v] = cand
                    pred[v] = u
                    changed = True
        if not changed:
            break
    reachable = [x for x in sinks if x in dist]
    if not reachable:
        return None
    end = min(reachable, key=lambda x: (dist[x], x))
    path = []
    seen = set()
    while end is not None:
        if end in seen:
            raise RuntimeError("negative cycle in exchange graph; input is not a matroid pair")
        seen.add(end)
        path.append(end)
        end = pred[end]
    return path


def min_weight_common_basis(m1, m2, weight, b, brute_force_below=None):
    """Minimum-weight common independent set of cardinality exactly ``b``, or None.

    Successive shortest augmenting paths: after ``i`` augmentations the current
    set is a minimum-weight common independent set of size ``i``.
    """
    if brute_force_below is None:
        brute_force_below = BRUTE_FORCE_BELOW
    if len(m1.ground_set) <= brute_force_below:
        return brute_force_min_weight_common(m1, m2, weight, b)
    if b < 0 or b > len(m1.ground_set):
        return None
    w = weight_fn(weight)
    S = frozenset()
    for _ in range(b):
        sources, sinks, arcs = _exchange_arcs(m1, m2, S)
        length = {e: (-w(e) if e in S else w(e)) for e in m1.ground_set}
        path = _shortest_weighted_path(m1, sources, sinks, arcs, length)
        if path is None:
            return None
        S = _augment(S, path)
    return S


def brute_force_max_common(m1, m2, limit=BRUTE_FORCE_LIMIT):
    E = m1.ground_set
    if len(E) > limit:
        raise GroundSetTooLarge(f"|E| = {len(E)} exceeds limit {limit}")
    for r in range(len(E), -1, -1):
        for c in combinations(E, r):
            S = frozenset(c)
            if m1.is_independent(S) and m2.is_independent(S):
                return S
    return frozenset()


def brute_force_min_weight_common(m1, m2, weight, b, limit=BRUTE_FORCE_LIMIT):
    E = m1.ground_set
    if len(E) > limit:
        raise GroundSetTooLarge(f"|E| = {len(E)} exceeds limit {limit}")
    if b < 0 or b > len(E):
        return None
    w = weight_fn(weight)
    best = None
    best_val = None
    for c in combinations(E, b):
        S = frozenset(c)
        if m1.is_independent(S) and m2.is_independent(S):
            val = sum((w(e) for e in S), 0)
            if best is None or val < best_val:
                best, best_val = S, val
    return best
