"""Matroid optimization with one linear constraint (MOL), and reductions into it.

A MOL problem is fixed by three choices: maximize or minimize ``v``, over
independent sets or bases, subject to ``w(S) <= L`` or ``w(S) >= L``. The
exact-basis problem reduces to every variant except (min, IS, <=), which is
trivially solved by the empty set.
"""

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations

from .emb import EmbInstance, EmiInstance, brute_force_emb
from .errors import AlphaOutOfRange, GroundSetTooLarge, InvariantViolation, SolverContractViolation, TrivialParams
from .matroids import as_set, rank, weight_fn

MOL_BRUTE_FORCE_LIMIT = 18
CERTIFY_LIMIT = 14

_OPT = {"max": "max", "min": "min"}
_FEAS = {"is": "is", "IS": "is", "bases": "bases", "basis": "bases"}
_REL = {"le": "le", "<=": "le", "≤": "le", "ge": "ge", ">=": "ge", "≥": "ge"}


@dataclass(frozen=True)
class MolParams:
    opt: str
    feas: str
    rel: str

    def __post_init__(self):
        try:
            object.__setattr__(self, "opt", _OPT[self.opt])
            object.__setattr__(self, "feas", _FEAS[self.feas])
            object.__setattr__(self, "rel", _REL[self.rel])
        except KeyError as exc:
            raise ValueError(f"unknown MOL parameter {exc.args[0]!r}") from None

    @property
    def trivial(self):
        return (self.opt, self.feas, self.rel) == ("min", "is", "le")

    def to_json(self):
        return {"opt": self.opt, "feas": self.feas, "rel": self.rel}

    def __str__(self):
        return f"({self.opt},{'IS' if self.feas == 'is' else 'bases'},{'<=' if self.rel == 'le' else '>='})"


ALL_PARAMS = tuple(MolParams(o, f, r) for o in ("max", "min") for f in ("is", "bases") for r in ("le", "ge"))
NONTRIVIAL_PARAMS = tuple(P for P in ALL_PARAMS if not P.trivial)


@dataclass
class MolInstance:
    matroid: object
    v: object
    w: object
    L: int

    def value(self, S):
        f = weight_fn(self.v)
        return sum((f(e) for e in S), 0)

    def weight(self, S):
        f = weight_fn(self.w)
        return sum((f(e) for e in S), 0)


@dataclass
class ReducedMolInstance:
    mol: MolInstance
    P: MolParams
    H: int
    k_rank: int
    d: int
    eps: Fraction
    source: EmbInstance

    @property
    def target_value(self):
        return self.k_rank * self.H + self.source.target


def d_of(P):
    if P.trivial:
        raise TrivialParams("(min, IS, <=) is solved by the empty set")
    return 0 if (P.opt, P.rel) in (("max", "le"), ("min", "ge")) else 1


def reduce_emb_to_mol(I, P):
    d = d_of(P)
    E = I.matroid.ground_set
    c = weight_fn(I.cost)
    costs = {e: c(e) for e in E}
    cE = sum(costs.values())
    H = 2 * max(1, cE)
    sign = -1 if d else 1
    v = {e: H + costs[e] for e in E}
    w = {e: H + sign * costs[e] for e in E}
    if any(x < 0 for x in w.values()):
        raise InvariantViolation("negative MOL weight; costs must be non-negative")
    k = rank(I.matroid)
    L = k * H + sign * I.target
    eps = Fraction(1, 8 * (len(E) + 1) * (I.target + 1) * (cE + 1))
    return ReducedMolInstance(MolInstance(I.matroid, v, w, L), P, H, k, d, eps, I)


def _feasible(mol, P, S, r=None):
    m = mol.matroid
    if not m.is_independent(S):
        return False
    if P.feas == "bases":
        if r is None:
            r = rank(m)
        if len(S) != r:
            return False
    ws = mol.weight(S)
    return ws <= mol.L if P.rel == "le" else ws >= mol.L


def is_mol_solution(mol, P, S):
    return _feasible(mol, P, as_set(S))


def mol_solutions(mol, P, limit=MOL_BRUTE_FORCE_LIMIT):
    """Every feasible set, by enumeration."""
    m = mol.matroid
    if m.n > limit:
        raise GroundSetTooLarge(f"|E| = {m.n} exceeds limit {limit}")
    r = rank(m)
    sizes = [r] if P.feas == "bases" else range(m.n + 1)
    out = []
    for size in sizes:
        for combo in combinations(m.ground_set, size):
            S = frozenset(combo)
            if _feasible(mol, P, S, r):
                out.append(S)
    return out


def brute_force_mol(mol, P, eps=None, limit=MOL_BRUTE_FORCE_LIMIT):
    """Exact optimum ``(set, value)`` or None; first optimizer in enumeration order.

    ``eps`` is accepted so the function can stand in for any approximation scheme.
    """
    best = None
    for S in mol_solutions(mol, P, limit):
        val = mol.value(S)
        if best is None or (val > best[1] if P.opt == "max" else val < best[1]):
            best = (S, val)
    return best


def _unpack(result):
    if result is None or result is False:
        return None
    if isinstance(result, tuple) and len(result) == 2 and not isinstance(result[0], int):
        return as_set(result[0])
    return as_set(result)


def decide_emb_via_mol(I, P, approx_solver=brute_force_mol):
    """Yes iff the solver's (1 + eps)-approximate answer hits value k*H + T exactly.

    ``approx_solver(mol, P, eps)`` returns a set, a ``(set, value)`` pair, or None.
    """
    R = reduce_emb_to_mol(I, P)
    S = _unpack(approx_solver(R.mol, P, R.eps))
    if S is None:
        return False
    if not is_mol_solution(R.mol, P, S):
        raise SolverContractViolation(f"solver returned infeasible set {sorted(S)}")
    return R.mol.value(S) == R.target_value


def certify_value_bounds(R, limit=CERTIFY_LIMIT):
    """Check the extremal-value bounds and both directions of the witness correspondence."""
    m = R.mol.matroid
    if m.n > limit:
        raise GroundSetTooLarge(f"|E| = {m.n} exceeds limit {limit}")
    I = R.source
    P = R.P
    bound = R.target_value
    c = weight_fn(I.cost)
    solutions = mol_solutions(R.mol, P, limit)
    for S in solutions:
        val = R.mol.value(S)
        if P.opt == "max" and val > bound:
            return False
        if P.opt == "min" and val < bound:
            return False
        if val == bound:
            # hitting the bound forces a basis of cost exactly T
            if len(S) != R.k_rank or sum(c(e) for e in S) != I.target:
                return False
    r = R.k_rank
    for combo in combinations(m.ground_set, r):
        S = frozenset(combo)
        if sum(c(e) for e in S) == I.target and m.is_independent(S):
            if not _feasible(R.mol, P, S, r) or R.mol.value(S) != bound:
                return False
    return True


def gap_holds(R, limit=CERTIFY_LIMIT):
    """Every (1 + eps)-approximate solution of a yes-instance has value exactly k*H + T."""
    best = brute_force_mol(R.mol, R.P, limit=limit)
    if best is None:
        return True
    opt = best[1]
    for S in mol_solutions(R.mol, R.P, limit):
        val = R.mol.value(S)
        good = val * (1 + R.eps) >= opt if R.P.opt == "max" else val <= (1 + R.eps) * opt
        if good and brute_force_emb(R.source) is not None and val != R.target_value:
            return False
    return True


def mol_to_json(R_or_mol, P=None):
    if isinstance(R_or_mol, ReducedMolInstance):
        mol, P = R_or_mol.mol, R_or_mol.P
    else:
        mol = R_or_mol
    from .descriptors import matroid_to_json
    E = mol.matroid.ground_set
    v, w = weight_fn(mol.v), weight_fn(mol.w)
    return {
        "matroid": matroid_to_json(mol.matroid),
        "v": [v(e) for e in E],
        "w": [w(e) for e in E],
        "L": mol.L,
        "params": P.to_json(),
    }


def mol_from_json(doc):
    from .descriptors import matroid_from_json
    m = matroid_from_json(doc["matroid"])
    mol = MolInstance(m, list(doc["v"]), list(doc["w"]), int(doc["L"]))
    p = doc.get("params", {})
    return mol, MolParams(p.get("opt", "max"), p.get("feas", "is"), p.get("rel", "le"))


# --- standard weights for Pi-matroids ---------------------------------------

@dataclass(frozen=True)
class LegacyWeights:
    n: int

    @property
    def base(self):
        return self.n * (self.n + 1)

    def w(self, i):
        return i + self.base

    def c(self, i):
        return self.base - i

    def budget(self, k, alpha):
        return alpha + k * self.base

    def bound(self, k, alpha):
        return k * self.base - alpha

    def w_of(self, S):
        return sum(self.w(i) for i in S)

    def c_of(self, S):
        return sum(self.c(i) for i in S)

    def epsilon(self):
        """Error parameter used by the standard-weight reductions."""
        return Fraction(1, 6 * self.n ** 3)


def _check_alpha(pm):
    if not 1 <= pm.alpha <= pm.n ** 2:
        raise AlphaOutOfRange(f"alpha = {pm.alpha} outside [1, {pm.n ** 2}]")


def legacy_weight_check(pm, S):
    """Is S a secret-family member of the target layer? Cross-checked against the weight test."""
    _check_alpha(pm)
    S = as_set(S)
    lw = LegacyWeights(pm.n)
    B = lw.budget(pm.k, pm.alpha)
    in_top = len(S) == pm.k and sum(S) == pm.alpha and pm.is_independent(S)
    if in_top != (lw.w_of(S) == B):
        raise InvariantViolation(f"{sorted(S)}: layer membership {in_top} but w_n(S) = {lw.w_of(S)}, B = {B}")
    if len(S) == pm.k and (lw.w_of(S) >= B) != (lw.c_of(S) <= lw.bound(pm.k, pm.alpha)):
        raise InvariantViolation(f"{sorted(S)}: w_n(S) >= B disagrees with c_n(S) <= L")
    return in_top


@dataclass
class BmInstance:
    """Budgeted matroid: maximize profit over independent sets with cost <= budget."""
    matroid: object
    cost: object
    profit: object
    budget: int


@dataclass
class CmbInstance:
    """Constrained minimum basis: minimize weight over bases with cost <= bound."""
    matroid: object
    cost: object
    weight: object
    bound: int


def legacy_reduce(pm, target):
    _check_alpha(pm)
    lw = LegacyWeights(pm.n)
    B = lw.budget(pm.k, pm.alpha)
    if target == "BM":
        return BmInstance(pm, lw.w, lw.w, B)
    if target == "EMI":
        return EmiInstance(pm, lw.w, pm.k, B)
    if target == "CMB":
        return CmbInstance(pm, lw.c, lw.w, lw.bound(pm.k, pm.alpha))
    if target == "KCM":
        from .kcm import KcmInstance
        return KcmInstance(pm, lw.w, lw.w, B)
    raise ValueError(f"unknown target {target!r}")


def _best(m, feasible, objective, direction, only_size=None, limit=MOL_BRUTE_FORCE_LIMIT):
    if m.n > limit:
        raise GroundSetTooLarge(f"|E| = {m.n} exceeds limit {limit}")
    sizes = [only_size] if only_size is not None else range(m.n + 1)
    best = None
    for size in sizes:
        for combo in combinations(m.ground_set, size):
            S = frozenset(combo)
            if not feasible(S) or not m.is_independent(S):
                continue
            val = objective(S)
            if best is None or (val > best[1] if direction == "max" else val < best[1]):
                best = (S, val)
    return best


def solve_legacy(inst):
    """Exact optimum ``(set, objective)`` of a legacy-target instance, or None."""
    if isinstance(inst, BmInstance):
        c, p = weight_fn(inst.cost), weight_fn(inst.profit)
        return _best(inst.matroid, lambda S: sum(c(e) for e in S) <= inst.budget,
                     lambda S: sum(p(e) for e in S), "max")
    if isinstance(inst, CmbInstance):
        c, w = weight_fn(inst.cost), weight_fn(inst.weight)
        return _best(inst.matroid, lambda S: sum(c(e) for e in S) <= inst.bound,
                     lambda S: sum(w(e) for e in S), "min", only_size=rank(inst.matroid))
    if isinstance(inst, EmiInstance):
        from .emb import brute_force_emi
        S = brute_force_emi(inst)
        return None if S is None else (S, inst.weight_of(S))
    from .kcm import KcmInstance
    if isinstance(inst, KcmInstance):
        c, d = weight_fn(inst.cost), weight_fn(inst.size)
        return _best(inst.matroid, lambda S: sum(d(e) for e in S) >= inst.demand,
                     lambda S: sum(c(e) for e in S), "min")
    raise TypeError(f"not a legacy instance: {inst!r}")


def legacy_hits_budget(pm, target):
    """Whether the exact optimum of the reduced instance attains the budget exactly."""
    best = solve_legacy(legacy_reduce(pm, target))
    if best is None:
        return False
    B = LegacyWeights(pm.n).budget(pm.k, pm.alpha)
    if target == "CMB":
        return LegacyWeights(pm.n).w_of(best[0]) == B
    return best[1] == B
