"""JSON descriptors for matroids and problem instances.

Matroids::

    {"type": "uniform", "n": 4, "k": 2}
    {"type": "partition", "blocks": [[1, 2], [3]], "bounds": [1, 1]}
    {"type": "explicit", "n": 3, "independent": [[], [1], [2], [1, 2]]}
    {"type": "pi", "n": 4, "k": 2, "alpha": 5, "secret": {"type": "explicit", "sets": [[2, 3]]}}
    {"type": "sat", "n_vars": 3, "clauses": [[1, -2]], "k": 2, "alpha": 4}
    {"type": "truncated", "inner": {...}, "q": 2}

Secret families are ``empty``, ``explicit`` (``sets``), ``graph`` (``edges``)
or ``sat`` (``sat``). SAT instances may also be read as DIMACS CNF.
"""

import json

from .emb import EmbInstance, EmiInstance
from .errors import DescriptorError
from .kcm import KcmInstance
from .matroids import ExplicitMatroid, PartitionMatroid, TruncatedMatroid, UniformMatroid, canonical, weight_fn
from .pi import EmptyFamily, ExplicitFamily, GraphIndependentSets, PiMatroid, SatInstance, SatMatroid, SatMatroidCode, SatSolutions, SingletonFamily


def _need(doc, key, where):
    if not isinstance(doc, dict) or key not in doc:
        raise DescriptorError(f"{where}: missing field {key!r}")
    return doc[key]


def _int(x, where):
    if isinstance(x, bool) or not isinstance(x, int):
        raise DescriptorError(f"{where}: expected an integer, got {x!r}")
    return x


def _int_list(xs, where):
    if not isinstance(xs, list):
        raise DescriptorError(f"{where}: expected a list")
    return [_int(x, where) for x in xs]


def sat_from_json(doc):
    try:
        return SatInstance(_int(_need(doc, "n_vars", "sat"), "sat.n_vars"),
                           [_int_list(c, "sat.clauses") for c in _need(doc, "clauses", "sat")])
    except ValueError as exc:
        raise DescriptorError(f"sat: {exc}") from None


def sat_to_json(sat):
    return {"n_vars": sat.n_vars, "clauses": [list(c) for c in sat.clauses]}


def parse_dimacs(text):
    n_vars = None
    clauses, current = [], []
    for raw in text.splitlines():
        line = raw.strip()
        if not line or line.startswith("c") or line.startswith("%"):
            continue
        if line.startswith("p"):
            parts = line.split()
            if len(parts) != 4 or parts[1] != "cnf":
                raise DescriptorError(f"bad DIMACS header: {line!r}")
            n_vars = int(parts[2])
            continue
        try:
            lits = [int(tok) for tok in line.split()]
        except ValueError:
            raise DescriptorError(f"bad DIMACS clause line: {line!r}") from None
        for lit in lits:
            if lit == 0:
                clauses.append(current)
                current = []
            else:
                current.append(lit)
    if current:
        clauses.append(current)
    if n_vars is None:
        raise DescriptorError("DIMACS input has no 'p cnf' header")
    try:
        return SatInstance(n_vars, clauses)
    except ValueError as exc:
        raise DescriptorError(str(exc)) from None


def secret_from_json(doc):
    kind = _need(doc, "type", "secret")
    if kind == "empty":
        return EmptyFamily()
    if kind == "explicit":
        return ExplicitFamily(_int_list(S, "secret.sets") for S in _need(doc, "sets", "secret"))
    if kind == "singleton":
        return SingletonFamily(_int_list(_need(doc, "set", "secret"), "secret.set"))
    if kind == "graph":
        return GraphIndependentSets(_int_list(e, "secret.edges") for e in _need(doc, "edges", "secret"))
    if kind == "sat":
        return SatSolutions(sat_from_json(_need(doc, "sat", "secret")))
    raise DescriptorError(f"unknown secret family type {kind!r}")


def secret_to_json(secret):
    if isinstance(secret, EmptyFamily):
        return {"type": "empty"}
    if isinstance(secret, SingletonFamily):
        return {"type": "singleton", "set": list(canonical(secret.member))}
    if isinstance(secret, ExplicitFamily):
        return {"type": "explicit", "sets": sorted(list(canonical(S)) for S in secret.sets)}
    if isinstance(secret, GraphIndependentSets):
        return {"type": "graph", "edges": [list(e) for e in secret.edges]}
    if isinstance(secret, SatSolutions):
        return {"type": "sat", "sat": sat_to_json(secret.sat)}
    raise DescriptorError(f"cannot serialize secret family {secret!r}")


def matroid_from_json(doc):
    kind = _need(doc, "type", "matroid")
    try:
        if kind == "uniform":
            return UniformMatroid(_int(_need(doc, "n", "uniform"), "n"), _int(_need(doc, "k", "uniform"), "k"))
        if kind == "partition":
            return PartitionMatroid([_int_list(b, "blocks") for b in _need(doc, "blocks", "partition")],
                                    _int_list(_need(doc, "bounds", "partition"), "bounds"))
        if kind == "explicit":
            ground = doc.get("ground_set")
            ground = _int_list(ground, "ground_set") if ground is not None else _int(_need(doc, "n", "explicit"), "n")
            return ExplicitMatroid(ground, [_int_list(S, "independent") for S in _need(doc, "independent", "explicit")])
        if kind == "pi":
            return PiMatroid(_int(_need(doc, "n", "pi"), "n"), _int(_need(doc, "k", "pi"), "k"),
                             _int(_need(doc, "alpha", "pi"), "alpha"), secret_from_json(doc.get("secret", {"type": "empty"})))
        if kind == "sat":
            sat = sat_from_json(doc["sat"] if "sat" in doc else doc)
            code = SatMatroidCode(sat, _int(_need(doc, "k", "sat"), "k"),
                                  _int(_need(doc, "alpha", "sat"), "alpha"))
            return code.decode()
        if kind == "truncated":
            return TruncatedMatroid(matroid_from_json(_need(doc, "inner", "truncated")), _int(_need(doc, "q", "truncated"), "q"))
    except (ValueError, TypeError) as exc:
        raise DescriptorError(f"{kind}: {exc}") from None
    raise DescriptorError(f"unknown matroid type {kind!r}")


def matroid_to_json(m):
    if isinstance(m, SatMatroid):
        return dict({"type": "sat"}, **sat_to_json(m.code.sat), k=m.code.k, alpha=m.code.alpha)
    if isinstance(m, PiMatroid):
        return {"type": "pi", "n": m.n, "k": m.k, "alpha": m.alpha, "secret": secret_to_json(m.secret)}
    if isinstance(m, UniformMatroid):
        return {"type": "uniform", "n": m.n, "k": m.k}
    if isinstance(m, PartitionMatroid):
        return {"type": "partition", "blocks": [sorted(b) for b in m.blocks], "bounds": list(m.bounds)}
    if isinstance(m, ExplicitMatroid):
        return {"type": "explicit", "ground_set": list(m.ground_set),
                "independent": sorted((list(canonical(S)) for S in m.family), key=lambda s: (len(s), s))}
    if isinstance(m, TruncatedMatroid):
        return {"type": "truncated", "inner": matroid_to_json(m.inner), "q": m.q}
    raise DescriptorError(f"cannot serialize matroid {m!r}")


def _weights(doc, key, m, where):
    values = _int_list(_need(doc, key, where), f"{where}.{key}")
    if len(values) != m.n:
        raise DescriptorError(f"{where}.{key}: expected {m.n} entries, got {len(values)}")
    # entries follow ground-set order
    return dict(zip(m.ground_set, values))


def emb_from_json(doc):
    m = matroid_from_json(_need(doc, "matroid", "emb"))
    return EmbInstance(m, _weights(doc, "cost", m, "emb"), _int(_need(doc, "target", "emb"), "target"))


def emb_to_json(inst):
    return {"matroid": matroid_to_json(inst.matroid), "cost": inst.cost_vector(), "target": inst.target}


def emi_from_json(doc):
    m = matroid_from_json(_need(doc, "matroid", "emi"))
    return EmiInstance(m, _weights(doc, "weight", m, "emi"), _int(_need(doc, "k", "emi"), "k"),
                       _int(_need(doc, "target", "emi"), "target"))


def kcm_from_json(doc):
    m = matroid_from_json(_need(doc, "matroid", "kcm"))
    inst = KcmInstance(m, _weights(doc, "cost", m, "kcm"), _weights(doc, "size", m, "kcm"),
                       _int(_need(doc, "demand", "kcm"), "demand"))
    kind = doc.get("kind", "kcmb")
    if kind not in ("kcm", "kcmb"):
        raise DescriptorError(f"kcm.kind must be 'kcm' or 'kcmb', got {kind!r}")
    return inst, kind


def kcm_to_json(inst, kind="kcmb"):
    c, d = weight_fn(inst.cost), weight_fn(inst.size)
    E = inst.matroid.ground_set
    return {"matroid": matroid_to_json(inst.matroid), "cost": [c(e) for e in E],
            "size": [d(e) for e in E], "demand": inst.demand, "kind": kind}


def load_json(path):
    try:
        with open(path) as fh:
            return json.load(fh)
    except OSError as exc:
        raise DescriptorError(f"cannot read {path}: {exc.strerror}") from None
    except json.JSONDecodeError as exc:
        raise DescriptorError(f"{path}: invalid JSON ({exc.msg} at line {exc.lineno})") from None


def load_sat(path):
    try:
        with open(path) as fh:
            text = fh.read()
    except OSError as exc:
        raise DescriptorError(f"cannot read {path}: {exc.strerror}") from None
    if text.lstrip().startswith("{"):
        try:
            return sat_from_json(json.loads(text))
        except json.JSONDecodeError as exc:
            raise DescriptorError(f"{path}: invalid JSON ({exc.msg})") from None
    return parse_dimacs(text)
