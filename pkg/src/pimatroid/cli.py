"""Command-line driver.

Exit codes: 0 success, 1 negative answer (no solution, unsat, axiom failure,
trivial parameters), 2 bad input, 3 decider protocol error.
"""

import argparse
import csv
import io
import json
import shlex
import sys
from concurrent.futures import ThreadPoolExecutor
from fractions import Fraction

from . import descriptors
from .emb import BudgetDecider, adversary_game, always_no, brute_force_decider, brute_force_emb
from .errors import (
    DescriptorError, EmptyTargetFamily, GroundSetTooLarge, Infeasible, MatroidToolkitError, ProtocolError, TrivialParams,
)
from .kcm import brute_force_kcm, brute_force_kcmb, kcm_via_kcmb, kcmb_eptas, normalize_eps
from .matroids import canonical, is_paving, rank, verify_matroid_axioms
from .mol import MolParams, brute_force_mol, decide_emb_via_mol, mol_to_json, reduce_emb_to_mol
from .pi import decide_sat_via_emb, sat_solution_check
from .protocol import ProcessDecider

ADVERSARY_COLUMNS = ["seed", "queries", "defeated", "hidden_set", "family_size"]


class Failure(Exception):
    def __init__(self, code, payload):
        super().__init__(payload)
        self.code = code
        self.payload = payload


def _jsonable(x):
    if isinstance(x, Fraction):
        return str(x)
    if isinstance(x, (set, frozenset)):
        return list(canonical(x))
    if isinstance(x, dict):
        return {k: _jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_jsonable(v) for v in x]
    return x


def _cell(v):
    if isinstance(v, (list, dict)):
        return json.dumps(v, separators=(",", ":"))
    if v is None:
        return ""
    if isinstance(v, bool):
        return "true" if v else "false"
    return str(v)


def _render(result, fmt):
    result = _jsonable(result)
    if fmt == "json":
        return json.dumps(result, indent=2, sort_keys=False) + "\n"
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    if isinstance(result, dict) and "runs" in result:
        writer.writerow(ADVERSARY_COLUMNS)
        for row in result["runs"]:
            writer.writerow([_cell(row.get(c)) for c in ADVERSARY_COLUMNS])
        s = result["summary"]
        writer.writerow(["summary", _cell(s["mean_queries"]), _cell(s["defeat_rate"]), "", _cell(s["family_size"])])
    else:
        keys = list(result)
        writer.writerow(keys)
        writer.writerow([_cell(result[k]) for k in keys])
    return buf.getvalue()


# --- subcommands ------------------------------------------------------------

def cmd_axioms(args):
    m = descriptors.matroid_from_json(descriptors.load_json(args.file))
    report = verify_matroid_axioms(m, args.limit)
    out = report.to_json()
    if report.passed:
        out["rank"] = rank(m)
        out["paving"] = is_paving(m, args.limit)
        return out
    raise Failure(1, out)


def _decider_from_args(args):
    if args.decider:
        return ProcessDecider(shlex.split(args.decider))
    if args.builtin == "budget":
        return BudgetDecider(args.budget, args.decoys)
    if args.builtin == "bruteforce":
        return brute_force_decider
    return always_no


def cmd_adversary(args):
    decider = _decider_from_args(args)
    seeds = [args.seed + i for i in range(args.seeds)]

    def play(seed):
        return adversary_game(decider, args.n, args.k, args.alpha, seed)

    try:
        if args.jobs > 1:
            with ThreadPoolExecutor(args.jobs) as pool:
                reports = list(pool.map(play, seeds))
        else:
            reports = [play(s) for s in seeds]
    except EmptyTargetFamily as exc:
        raise Failure(1, {"error": "EmptyTargetFamily", "message": str(exc)}) from None
    runs = [{
        "seed": r.seed,
        "queries": r.queries,
        "defeated": r.defeated,
        "hidden_set": None if r.hidden_set is None else list(canonical(r.hidden_set)),
        "family_size": r.family_size,
    } for r in reports]
    defeated = sum(r.defeated for r in reports)
    summary = {
        "runs": len(reports),
        "defeat_rate": defeated / len(reports) if reports else 0.0,
        "mean_queries": sum(r.queries for r in reports) / len(reports) if reports else 0.0,
        "family_size": reports[0].family_size if reports else 0,
    }
    return {"runs": runs, "summary": summary}


def _params(args):
    return MolParams(args.opt, args.feas, args.rel)


def cmd_reduce(args):
    inst = descriptors.emb_from_json(descriptors.load_json(args.file))
    P = _params(args)
    try:
        R = reduce_emb_to_mol(inst, P)
    except TrivialParams as exc:
        raise Failure(1, {"error": "TrivialParams", "message": str(exc)}) from None
    out = {
        "mol": mol_to_json(R),
        "H": R.H,
        "k_rank": R.k_rank,
        "d": R.d,
        "eps": R.eps,
        "target_value": R.target_value,
    }
    if inst.matroid.n <= args.limit:
        via_mol = decide_emb_via_mol(inst, P, brute_force_mol)
        direct = brute_force_emb(inst) is not None
        out["emb"] = direct
        out["equiv"] = via_mol == direct
    return out


def cmd_emb(args):
    inst = descriptors.emb_from_json(descriptors.load_json(args.file))
    S = brute_force_emb(inst, limit=args.limit)
    out = {"solution": None if S is None else list(canonical(S))}
    if args.opt:
        out["via_mol"] = decide_emb_via_mol(inst, _params(args), brute_force_mol)
    if S is None:
        raise Failure(1, out)
    return out


def cmd_sat(args):
    sat = descriptors.load_sat(args.file)
    trace = []
    found = decide_sat_via_emb(sat, brute_force_emb, trace=trace)
    out = {
        "satisfiable": found,
        "empty_assignment": sat_solution_check(sat, ()),
        "trace": [list(t) for t in trace],
    }
    if not found:
        raise Failure(1, out)
    return out


def cmd_kcm(args):
    inst, kind = descriptors.kcm_from_json(descriptors.load_json(args.file))
    eps = normalize_eps(Fraction(args.eps))
    if kind == "kcm":
        S = kcm_via_kcmb(inst, kcmb_eptas, eps)
    else:
        S = kcmb_eptas(inst, eps)
    if S is None:
        raise Failure(1, {"error": "Infeasible", "message": "no feasible solution", "kind": kind})
    out = {"kind": kind, "eps": eps, "solution": list(canonical(S)), "cost": inst.c(S), "size": inst.d(S)}
    if args.oracle:
        best = brute_force_kcm(inst) if kind == "kcm" else brute_force_kcmb(inst)
        out["opt"] = best[1]
        out["ratio"] = Fraction(inst.c(S), best[1]) if best[1] else (Fraction(1) if inst.c(S) == 0 else None)
        out["bound"] = 1 + 5 * eps
    return out


# --- parser -----------------------------------------------------------------

def build_parser():
    parser = argparse.ArgumentParser(prog="pimatroid", description="Matroid-oracle experiments.")
    parser.add_argument("--seed", type=int, default=0, help="base seed for all randomness")
    parser.add_argument("--jobs", type=int, default=1, help="parallel workers across seeds")
    parser.add_argument("--format", choices=["json", "csv"], default=None,
                        help="output format (default: csv for adversary, json otherwise)")
    parser.add_argument("--out", default=None, help="write output here instead of stdout")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("axioms", help="verify matroid axioms and paving property")
    p.add_argument("file")
    p.add_argument("--limit", type=int, default=16)
    p.set_defaults(func=cmd_axioms)

    p = sub.add_parser("adversary", help="play the replay adversary against a decider")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--alpha", type=int, required=True)
    p.add_argument("--seeds", type=int, default=20, help="number of seeds, starting at --seed")
    group = p.add_mutually_exclusive_group()
    group.add_argument("--decider", help="decider command line (speaks the line protocol)")
    group.add_argument("--builtin", choices=["budget", "bruteforce", "alwaysno"], default="alwaysno")
    p.add_argument("--budget", type=int, default=1)
    p.add_argument("--decoys", type=int, default=0)
    p.set_defaults(func=cmd_adversary)

    def mol_flags(p, required):
        p.add_argument("--opt", choices=["max", "min"], required=required)
        p.add_argument("--feas", choices=["is", "bases"], default="is")
        p.add_argument("--rel", choices=["le", "ge"], default="le")

    p = sub.add_parser("reduce", help="reduce an EMB instance to a MOL instance")
    p.add_argument("file")
    mol_flags(p, True)
    p.add_argument("--limit", type=int, default=14, help="largest |E| for the brute-force equivalence check")
    p.set_defaults(func=cmd_reduce)

    p = sub.add_parser("emb", help="solve an EMB instance exactly")
    p.add_argument("file")
    p.add_argument("--limit", type=int, default=20)
    mol_flags(p, False)
    p.set_defaults(func=cmd_emb)

    p = sub.add_parser("sat", help="decide SAT through exact-basis queries")
    p.add_argument("file", help="JSON or DIMACS CNF")
    p.set_defaults(func=cmd_sat)

    p = sub.add_parser("kcm", help="run the knapsack-cover approximation scheme")
    p.add_argument("file")
    p.add_argument("--eps", default="1/2")
    p.add_argument("--oracle", action="store_true", help="also report the brute-force ratio")
    p.set_defaults(func=cmd_kcm)
    return parser


def _emit(text, path):
    if path:
        with open(path, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    fmt = args.format or ("csv" if args.command == "adversary" else "json")
    try:
        if args.command == "kcm":
            try:
                Fraction(args.eps)
            except (ValueError, ZeroDivisionError):
                raise DescriptorError(f"bad --eps {args.eps!r}") from None
        result = args.func(args)
        code = 0
    except Failure as f:
        result, code = f.payload, f.code
    except ProtocolError as exc:
        result, code = {"error": "ProtocolError", "message": str(exc)}, 3
    except (DescriptorError, GroundSetTooLarge, ValueError) as exc:
        result, code = {"error": type(exc).__name__, "message": str(exc)}, 2
    except Infeasible as exc:
        result, code = {"error": "Infeasible", "message": str(exc)}, 1
    except MatroidToolkitError as exc:
        result, code = {"error": type(exc).__name__, "message": str(exc)}, 1
    if code in (2, 3) and fmt == "csv":
        fmt = "json"
    _emit(_render(result, fmt), args.out)
    if code:
        print(f"{result.get('error', 'negative result') if isinstance(result, dict) else 'error'}", file=sys.stderr)
    return code


if __name__ == "__main__":
    sys.exit(main())
