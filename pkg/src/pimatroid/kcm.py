"""Knapsack cover with a matroid: exact solvers, conversions and the Lagrangian EPTAS.

KCM asks for a cheapest independent set whose total size reaches the demand;
KCMB asks the same over bases only. The approximation scheme guesses how many
elements of each cost class an optimum uses (a pattern), enforces the guess
with a partition matroid, and then walks between two Lagrangian-optimal bases
that bracket the demand.
"""

import math
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations, product

from .errors import ChainSearchFailed, EmptyFeasible, GroundSetTooLarge, Infeasible, InfeasiblePattern, InvariantViolation, NoBracket
from .intersection import min_weight_common_basis
from .matroids import PartitionMatroid, as_set, greedy_extreme_basis, rank, truncate, weight_fn

BRUTE_FORCE_LIMIT = 20
INFINITY = math.inf


@dataclass
class KcmInstance:
    matroid: object
    cost: object
    size: object
    demand: int

    def c(self, S):
        f = weight_fn(self.cost)
        return sum((f(e) for e in S), 0)

    def d(self, S):
        f = weight_fn(self.size)
        return sum((f(e) for e in S), 0)

    def with_matroid(self, m):
        return KcmInstance(m, self.cost, self.size, self.demand)


def normalize_eps(eps):
    """Round eps down to 1/m with m a positive integer."""
    eps = Fraction(eps)
    if not 0 < eps <= 1:
        raise ValueError("eps must lie in (0, 1]")
    return Fraction(1, math.ceil(1 / eps))


# --- exact solvers ----------------------------------------------------------

def _enumerate_best(inst, sizes, limit):
    m = inst.matroid
    if m.n > limit:
        raise GroundSetTooLarge(f"|E| = {m.n} exceeds limit {limit}")
    best = None
    for size in sizes:
        for combo in combinations(m.ground_set, size):
            S = frozenset(combo)
            if inst.d(S) < inst.demand or not m.is_independent(S):
                continue
            cost = inst.c(S)
            if best is None or cost < best[1]:
                best = (S, cost)
    return best


def brute_force_kcm(inst, limit=BRUTE_FORCE_LIMIT):
    """Cheapest independent set covering the demand, as ``(set, cost)``, or None."""
    return _enumerate_best(inst, range(inst.matroid.n + 1), limit)


def brute_force_kcmb(inst, limit=BRUTE_FORCE_LIMIT):
    """Cheapest basis covering the demand, as ``(set, cost)``, or None."""
    return _enumerate_best(inst, [rank(inst.matroid)], limit)


def is_kcmb_solution(inst, S, r=None):
    S = as_set(S)
    r = rank(inst.matroid) if r is None else r
    return len(S) == r and inst.matroid.is_independent(S) and inst.d(S) >= inst.demand


# --- conversions ------------------------------------------------------------

def _solution_set(result):
    if result is None:
        return None
    if isinstance(result, tuple) and len(result) == 2 and isinstance(result[0], frozenset):
        return result[0]
    return as_set(result)


def kcm_via_kcmb(inst, kcmb_solver=None, eps=Fraction(1, 2)):
    """Solve KCM by running a KCMB solver on every truncation of the matroid.

    ``kcmb_solver(instance, eps)`` returns a basis, a ``(basis, cost)`` pair or None.
    """
    if inst.demand <= 0:
        return frozenset()
    if kcmb_solver is None:
        kcmb_solver = kcmb_eptas
    best = None
    for q in range(1, rank(inst.matroid) + 1):
        sub = inst.with_matroid(truncate(inst.matroid, q))
        S = _solution_set(kcmb_solver(sub, eps))
        if S is None or not inst.matroid.is_independent(S) or inst.d(S) < inst.demand:
            continue
        if best is None or inst.c(S) < inst.c(best):
            best = S
    return best


def shifted_instance(inst, k=None):
    """Sizes d + 2 d(E) and demand D + 2 k d(E): only k-sets can cover."""
    k = rank(inst.matroid) if k is None else k
    d = weight_fn(inst.size)
    dE = inst.d(inst.matroid.ground_set)
    return KcmInstance(inst.matroid, inst.cost, lambda e: d(e) + 2 * dE, inst.demand + 2 * k * dE), k


def kcmb_via_kcm_shift(inst, kcm_solver=None):
    if kcm_solver is None:
        kcm_solver = brute_force_kcm
    k = rank(inst.matroid)
    if inst.d(inst.matroid.ground_set) == 0:
        # shifting by zero changes nothing; every basis covers a non-positive demand
        if inst.demand > 0:
            return None
        return greedy_extreme_basis(inst.matroid, inst.cost, "min")
    shifted, _ = shifted_instance(inst, k)
    S = _solution_set(kcm_solver(shifted))
    if S is None:
        return None
    if len(S) != k:
        raise InvariantViolation(f"shifted solution has {len(S)} elements, rank is {k}")
    return S


# --- constant-factor estimate and cost classes ------------------------------

def exact_estimator(inst):
    best = brute_force_kcmb(inst)
    if best is None:
        raise Infeasible("no basis covers the demand")
    return best[1]


def doubling_estimator(inst):
    return 2 * exact_estimator(inst)


def constant_factor_estimate(inst, estimator=None):
    """A value C with OPT <= C <= 2 OPT."""
    return (estimator or exact_estimator)(inst)


@dataclass
class CostClassing:
    C: int
    eps: Fraction
    k_eps: int
    classes: tuple  # classes[i] is E_i, i = 0..k_eps
    discarded: frozenset = frozenset()
    class_of: dict = field(default_factory=dict)

    def bounds(self, i):
        """Half-open cost interval [lo, hi) of class i >= 1."""
        lo = (self.eps + (i - 1) * self.eps ** 2) * self.C
        return lo, lo + self.eps ** 2 * self.C


def class_count(eps):
    eps = Fraction(eps)
    return math.ceil((1 - eps) / eps ** 2)


def build_cost_classes(inst, eps, C):
    eps = normalize_eps(eps)
    k_eps = class_count(eps)
    c = weight_fn(inst.cost)
    buckets = [[] for _ in range(k_eps + 1)]
    discarded = []
    class_of = {}
    top = (eps + k_eps * eps ** 2) * C
    for e in inst.matroid.ground_set:
        ce = c(e)
        if ce > C:
            discarded.append(e)
            continue
        if ce < eps * C or ce == 0:
            i = 0
        elif ce >= top:
            i = k_eps  # only ce == C reaches here; the top interval is closed
        else:
            i = math.floor((ce - eps * C) / (eps ** 2 * C)) + 1
        buckets[i].append(e)
        class_of[e] = i
    return CostClassing(C, eps, k_eps, tuple(frozenset(b) for b in buckets), frozenset(discarded), class_of)


def enumerate_patterns(classing, eps, n_elems):
    """All (n_0, ..., n_k) with sum_{i>=1} n_i <= 1/eps and total <= n_elems."""
    m = math.ceil(1 / Fraction(eps))
    k = classing.k_eps
    for upper in _bounded_vectors(k, min(m, n_elems)):
        rest = n_elems - sum(upper)
        for n0 in range(rest + 1):
            yield (n0,) + upper


def _bounded_vectors(length, cap, caps=None):
    # vectors of naturals with total <= cap (and entrywise <= caps), lexicographic
    if length == 0:
        yield ()
        return
    top = cap if caps is None else min(cap, caps[0])
    for first in range(top + 1):
        for tail in _bounded_vectors(length - 1, cap - first, None if caps is None else caps[1:]):
            yield (first,) + tail


def basis_patterns(classing, eps, b):
    """Patterns a basis could have: totals equal b and class quotas fit the class sizes."""
    m = math.ceil(1 / Fraction(eps))
    sizes = [len(E) for E in classing.classes]
    for upper in _bounded_vectors(classing.k_eps, min(m, b), sizes[1:]):
        n0 = b - sum(upper)
        if 0 <= n0 <= sizes[0]:
            yield (n0,) + upper


def pattern_of(classing, S):
    counts = [0] * (classing.k_eps + 1)
    for e in S:
        counts[classing.class_of[e]] += 1
    return tuple(counts)


def pattern_matroid(classing, pattern):
    blocks = list(classing.classes)
    bounds = list(pattern)
    if classing.discarded:
        blocks.append(classing.discarded)
        bounds.append(0)
    keep = [(blk, bd) for blk, bd in zip(blocks, bounds) if blk]
    return PartitionMatroid([blk for blk, _ in keep], [bd for _, bd in keep])


# --- Lagrangian relaxation --------------------------------------------------

def _reduced(inst, lam):
    c, d = weight_fn(inst.cost), weight_fn(inst.size)
    return lambda e: c(e) - lam * d(e)


def _tie_broken_basis(inst, J, lam, prefer, b):
    """Minimum c - lam d common basis; ties go to smaller (low) or larger (high) size."""
    lam = Fraction(lam)
    c, d = weight_fn(inst.cost), weight_fn(inst.size)
    E = inst.matroid.ground_set
    if prefer is None:
        return min_weight_common_basis(inst.matroid, J, _reduced(inst, lam), b)
    # bases' reduced costs are multiples of 1/q; scaling by q*K keeps them apart by K
    q = lam.denominator
    K = sum(d(e) for e in E) + 1
    sign = 1 if prefer == "low" else -1
    w = {e: (q * (c(e) - lam * d(e))) * K + sign * d(e) for e in E}
    return min_weight_common_basis(inst.matroid, J, w, b)


def lagrangian_value(inst, pattern, lam, classing, b=None):
    """``(LR(lam), argmin basis)``; ``(inf, None)`` when the pattern admits no common basis."""
    lam = Fraction(lam)
    b = rank(inst.matroid) if b is None else b
    J = pattern_matroid(classing, pattern)
    S = min_weight_common_basis(inst.matroid, J, _reduced(inst, lam), b)
    if S is None:
        return INFINITY, None
    cl = _reduced(inst, lam)
    return lam * inst.demand + sum((cl(e) for e in S), Fraction(0)), S


@dataclass
class LagrangianResult:
    lambda_star: Fraction
    value: Fraction
    S_low: frozenset
    S_high: frozenset


def _line(inst, S):
    # LR restricted to S: intercept c(S), slope D - d(S)
    return inst.c(S), inst.demand - inst.d(S)


def optimize_lambda(inst, pattern, classing, b=None):
    """Maximize LR over lam >= 0 exactly by intersecting supporting lines.

    ``S_low`` is None when lam* = 0 and every optimal basis already covers D.
    """
    b = rank(inst.matroid) if b is None else b
    J = pattern_matroid(classing, pattern)
    D = inst.demand
    first = _tie_broken_basis(inst, J, 0, "high", b)
    if first is None:
        raise EmptyFeasible(f"pattern {pattern} admits no common basis")
    if inst.d(first) >= D:
        low = _tie_broken_basis(inst, J, 0, "low", b)
        value = Fraction(inst.c(first))
        return LagrangianResult(Fraction(0), value, low if inst.d(low) <= D else None, first)
    d = weight_fn(inst.size)
    c = weight_fn(inst.cost)
    E = inst.matroid.ground_set
    K = sum(c(e) for e in E) + 1
    far = min_weight_common_basis(inst.matroid, J, {e: -d(e) * K + c(e) for e in E}, b)
    if inst.d(far) < D:
        raise InfeasiblePattern(f"no common basis of pattern {pattern} covers the demand")
    left, right = _line(inst, first), _line(inst, far)
    while True:
        # left slope > 0 >= right slope
        lam = Fraction(right[0] - left[0], left[1] - right[1])
        value, S = lagrangian_value(inst, pattern, lam, classing, b)
        if value == left[0] + lam * left[1]:
            break
        line = _line(inst, S)
        if line[1] > 0:
            left = line
        elif line[1] < 0:
            right = line
        else:
            break
    low = _tie_broken_basis(inst, J, lam, "low", b)
    high = _tie_broken_basis(inst, J, lam, "high", b)
    if not inst.d(low) <= D <= inst.d(high):
        raise NoBracket(f"optimal bases at lambda = {lam} do not bracket D = {D}")
    return LagrangianResult(lam, value, low, high)


# --- chain ------------------------------------------------------------------

def _reduced_total(inst, lam, S):
    cl = _reduced(inst, lam)
    return sum((cl(e) for e in S), Fraction(0))


def chain(inst, pattern, lam, S, S_end, classing, b=None, max_pairs=None):
    """Lagrangian-optimal bases from S to S_end, one swap per cost class per step.

    Each step exchanges a few elements of the current set outside the target
    for elements of the target, pairing removals and additions inside a class.
    Single swaps are tried first, then larger class-balanced exchanges.
    """
    b = rank(inst.matroid) if b is None else b
    lam = Fraction(lam)
    S, S_end = as_set(S), as_set(S_end)
    J = pattern_matroid(classing, pattern)
    best = lagrangian_value(inst, pattern, lam, classing, b)[0] - lam * inst.demand
    for X in (S, S_end):
        if _reduced_total(inst, lam, X) != best or not (inst.matroid.is_independent(X) and J.is_independent(X)) or len(X) != b:
            raise InvariantViolation(f"{sorted(X)} is not an optimal common basis at lambda = {lam}")
    seq = [S]
    current = S
    cls = classing.class_of
    while current != S_end:
        out_by = {}
        for x in sorted(current - S_end):
            out_by.setdefault(cls.get(x), []).append(x)
        in_by = {}
        for y in sorted(S_end - current):
            in_by.setdefault(cls.get(y), []).append(y)
        shared = sorted(set(out_by) & set(in_by))
        limit = len(shared) if max_pairs is None else min(max_pairs, len(shared))
        step = None
        for t in range(1, limit + 1):
            for group in combinations(shared, t):
                for xs in product(*(out_by[i] for i in group)):
                    for ys in product(*(in_by[i] for i in group)):
                        cand = (current - set(xs)) | set(ys)
                        if inst.matroid.is_independent(cand) and _reduced_total(inst, lam, cand) == best:
                            step = cand
                            break
                    if step is not None:
                        break
                if step is not None:
                    break
            if step is not None:
                break
        if step is None:
            raise ChainSearchFailed(f"no class-balanced optimal exchange from {sorted(current)} toward {sorted(S_end)}")
        seq.append(step)
        current = step
    return seq


# --- EPTAS ------------------------------------------------------------------

def kcmb_eptas(inst, eps=Fraction(1, 2), estimator=None, trace=None):
    """Basis covering the demand with cost at most (1 + 5 eps) OPT, or None if infeasible.

    ``trace``, if callable, receives one dict per pattern that reached the chain step.
    """
    eps = normalize_eps(eps)
    m = inst.matroid
    b = rank(m)
    incumbent = greedy_extreme_basis(m, inst.size, "max")
    if len(incumbent) != b or inst.d(incumbent) < inst.demand:
        return None
    C = constant_factor_estimate(inst, estimator)
    classing = build_cost_classes(inst, eps, C)
    best_cost = inst.c(incumbent)
    for pattern in basis_patterns(classing, eps, b):
        try:
            res = optimize_lambda(inst, pattern, classing, b)
        except (EmptyFeasible, NoBracket):
            continue
        if res.S_low is None:
            seq = [res.S_high]
            candidate = res.S_high
        else:
            seq = chain(inst, pattern, res.lambda_star, res.S_low, res.S_high, classing, b)
            candidate = None
            for j in range(len(seq) - 1):
                if inst.c(seq[j]) <= res.value <= inst.c(seq[j + 1]):
                    candidate = seq[j + 1]
                    break
            if candidate is None and len(seq) == 1:
                candidate = seq[0]
        if trace is not None:
            trace({"pattern": pattern, "lagrangian": res, "chain": seq, "candidate": candidate, "classing": classing})
        if candidate is not None and is_kcmb_solution(inst, candidate, b) and inst.c(candidate) < best_cost:
            incumbent, best_cost = candidate, inst.c(candidate)
    return incumbent
