"""Exact matroid basis / independent set solvers and the adversary game.

A decider is any callable ``decider(meta, oracle, seed) -> bool``. ``meta`` is
the instance metadata (``n``, ``k``, ``alpha``, ``cost``, ``target``); the
oracle is the only way to learn about independence; ``seed`` is the decider's
whole source of randomness. Given the same seed and the same oracle answers a
decider must issue the same queries, which is what makes replay possible.
"""

import random
from dataclasses import dataclass, field
from itertools import combinations

from . import kernels
from .errors import EmptyTargetFamily, GroundSetTooLarge, GroundSetTooSmall, InvariantViolation, UnsupportedTopology
from .matroids import CountingOracle, canonical, rank, weight_fn
from .pi import EmptyFamily, PiMatroid, SingletonFamily, enumerate_target_sets

BRUTE_FORCE_LIMIT = 20


@dataclass
class EmbInstance:
    matroid: object
    cost: object
    target: int

    def c(self, e):
        return weight_fn(self.cost)(e)

    def cost_of(self, S):
        c = weight_fn(self.cost)
        return sum((c(e) for e in S), 0)

    def cost_vector(self):
        c = weight_fn(self.cost)
        return [c(e) for e in self.matroid.ground_set]


@dataclass
class EmiInstance:
    matroid: object
    weight: object
    k: int
    target: int

    def weight_of(self, S):
        w = weight_fn(self.weight)
        return sum((w(e) for e in S), 0)


def brute_force_emb(inst, limit=BRUTE_FORCE_LIMIT):
    """Lexicographically first basis of cost exactly T, or None.

    Only sets of the right size and cost are sent to the oracle.
    """
    m = inst.matroid
    if m.n > limit:
        raise GroundSetTooLarge(f"|E| = {m.n} exceeds limit {limit}")
    c = weight_fn(inst.cost)
    r = rank(m)
    for combo in combinations(m.ground_set, r):
        if sum(c(e) for e in combo) == inst.target and m.is_independent(frozenset(combo)):
            return frozenset(combo)
    return None


def brute_force_emi(inst, limit=BRUTE_FORCE_LIMIT):
    m = inst.matroid
    if m.n > limit:
        raise GroundSetTooLarge(f"|E| = {m.n} exceeds limit {limit}")
    if inst.k < 0 or inst.k > m.n:
        return None
    w = weight_fn(inst.weight)
    for combo in combinations(m.ground_set, inst.k):
        if sum(w(e) for e in combo) == inst.target and m.is_independent(frozenset(combo)):
            return frozenset(combo)
    return None


def k_subset_sum_dp(weights, k, T):
    return kernels.ksubset_sum_exists(list(weights), k, T)


# --- deciders --------------------------------------------------------------

def induced_metadata(n, k, alpha):
    return {"n": n, "k": k, "alpha": alpha, "cost": list(range(1, n + 1)), "target": alpha}


def always_no(meta, oracle, seed):
    return False


def brute_force_decider(meta, oracle, seed):
    inst = EmbInstance(oracle, meta["cost"], meta["target"])
    return brute_force_emb(inst) is not None


class BudgetDecider:
    """Spends at most ``budget`` queries on target-sum k-sets, then answers.

    Answers yes only when a queried set turned out independent, so it never errs
    on no-instances; with ``budget < |F|`` it cannot see every candidate.
    ``decoys`` extra queries go to random sets of the wrong size or sum.
    """

    def __init__(self, budget, decoys=0, order="random"):
        self.budget = budget
        self.decoys = decoys
        self.order = order

    def __call__(self, meta, oracle, seed):
        n, k, alpha = meta["n"], meta["k"], meta["alpha"]
        rng = random.Random(seed)
        family = enumerate_target_sets(n, k, alpha)
        if self.order == "random":
            rng.shuffle(family)
        elif self.order == "reverse":
            family.reverse()
        found = False
        for _ in range(self.decoys):
            size = rng.randint(0, n)
            oracle.is_independent(frozenset(rng.sample(range(1, n + 1), size)))
        for S in family[: self.budget]:
            if oracle.is_independent(S):
                found = True
                break
        return found

    def __repr__(self):
        return f"BudgetDecider(budget={self.budget}, decoys={self.decoys}, order={self.order!r})"


class RandomSingleQuery:
    """Queries one uniformly random member of F and answers accordingly."""

    def __call__(self, meta, oracle, seed):
        rng = random.Random(seed)
        family = enumerate_target_sets(meta["n"], meta["k"], meta["alpha"])
        return oracle.is_independent(rng.choice(family))


# --- adversary -------------------------------------------------------------

@dataclass
class AdversaryReport:
    n: int
    k: int
    alpha: int
    seed: int
    family_size: int
    queried: frozenset  # canonical tuples queried in run 1
    verdict_empty: bool
    defeated: bool
    hidden_set: frozenset = None
    verdict_hidden: bool = None
    transcript_empty: list = field(default_factory=list)
    transcript_hidden: list = field(default_factory=list)

    @property
    def queries(self):
        return len(self.transcript_empty)


def adversary_game(decider, n, k, alpha, seed=0):
    """Replay the lower-bound argument against one decider and one seed.

    Run 1 uses the empty secret family (a no-instance). A yes there is already a
    wrong answer. Otherwise the first target set the decider never asked about
    becomes the lone secret of run 2; with the same seed the decider must see the
    same answers, say no again, and so miss a yes-instance.
    """
    family = enumerate_target_sets(n, k, alpha)
    if not family:
        raise EmptyTargetFamily(f"no {k}-subset of [{n}] sums to {alpha}")
    meta = induced_metadata(n, k, alpha)
    first = CountingOracle(PiMatroid(n, k, alpha, EmptyFamily()))
    verdict = bool(decider(meta, first, seed))
    queried = frozenset(first.queried_sets())
    report = AdversaryReport(n, k, alpha, seed, len(family), queried, verdict, False,
                             transcript_empty=list(first.transcript))
    if verdict:
        report.defeated = True
        return report
    hidden = next((S for S in family if canonical(S) not in queried), None)
    if hidden is None:
        return report
    second = CountingOracle(PiMatroid(n, k, alpha, SingletonFamily(hidden)))
    verdict2 = bool(decider(meta, second, seed))
    report.hidden_set = hidden
    report.verdict_hidden = verdict2
    report.transcript_hidden = list(second.transcript)
    if second.transcript != first.transcript or verdict2:
        raise InvariantViolation(
            "decider behaved differently on oracles that agree on every query it made; "
            "it is not a pure function of (metadata, answers, seed)"
        )
    report.defeated = True
    return report


def empirical_frequent_queries(decider, n, k, alpha, num_seeds, seeds=None):
    """Members of F queried in at least half of ``num_seeds`` runs on the empty-secret instance."""
    if num_seeds < 1:
        raise ValueError("num_seeds must be >= 1")
    seeds = range(num_seeds) if seeds is None else list(seeds)[:num_seeds]
    family = {canonical(S) for S in enumerate_target_sets(n, k, alpha)}
    meta = induced_metadata(n, k, alpha)
    hits = {}
    for seed in seeds:
        oracle = CountingOracle(PiMatroid(n, k, alpha, EmptyFamily()))
        decider(meta, oracle, seed)
        for q in oracle.queried_sets() & family:
            hits[q] = hits.get(q, 0) + 1
    return {frozenset(q) for q, h in hits.items() if 2 * h >= num_seeds}


# --- GWCP ------------------------------------------------------------------

@dataclass
class GwcpInstance:
    vertices: tuple
    edges: tuple
    A: frozenset
    B: frozenset
    matroid: object
    weight: object
    p: int
    k: int
    target: int


def emi_to_gwcp(inst):
    E = inst.matroid.ground_set
    if len(E) < 2:
        raise GroundSetTooSmall("path construction needs |E| >= 2; solve directly")
    edges = tuple((E[i], E[i + 1]) for i in range(len(E) - 1))
    return GwcpInstance(tuple(E), edges, frozenset({E[0]}), frozenset({E[-1]}),
                        inst.matroid, inst.weight, 1, inst.k, inst.target)


def decide_emi_via_gwcp(inst, gwcp_decider=None):
    if gwcp_decider is None:
        gwcp_decider = brute_force_gwcp
    if inst.matroid.n < 2:
        return brute_force_emi(inst) is not None
    return bool(gwcp_decider(emi_to_gwcp(inst)))


def _path_order(vertices, edges):
    adj = {v: [] for v in vertices}
    for u, v in edges:
        if u == v or u not in adj or v not in adj:
            return None
        adj[u].append(v)
        adj[v].append(u)
    if len(vertices) == 1 and not edges:
        return list(vertices)
    if len(edges) != len(vertices) - 1 or len(set(map(frozenset, edges))) != len(edges):
        return None
    if any(len(nb) > 2 for nb in adj.values()):
        return None
    ends = [v for v, nb in adj.items() if len(nb) == 1]
    if len(ends) != 2:
        return None
    order = [min(ends)]
    prev = None
    while len(order) < len(vertices):
        nxt = [v for v in adj[order[-1]] if v != prev]
        if not nxt:
            return None
        prev = order[-1]
        order.append(nxt[0])
    return order


def brute_force_gwcp(inst, limit=BRUTE_FORCE_LIMIT):
    """Single-path GWCP on a simple path graph, by enumeration."""
    if len(inst.vertices) > limit:
        raise GroundSetTooLarge(f"|V| = {len(inst.vertices)} exceeds limit {limit}")
    if inst.p != 1:
        raise UnsupportedTopology("only p = 1 is supported")
    order = _path_order(inst.vertices, inst.edges)
    if order is None:
        raise UnsupportedTopology("graph is not a simple path")
    pos = {v: i for i, v in enumerate(order)}
    w = weight_fn(inst.weight)
    covered = set()
    for a in inst.A:
        for b in inst.B:
            lo, hi = sorted((pos[a], pos[b]))
            span = tuple(order[lo:hi + 1])
            if span in covered:
                continue
            covered.add(span)
            for combo in combinations(span, inst.k) if 0 <= inst.k <= len(span) else ():
                if sum(w(e) for e in combo) == inst.target and inst.matroid.is_independent(frozenset(combo)):
                    return True
    return False
