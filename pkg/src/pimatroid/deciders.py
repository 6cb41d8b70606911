"""Sample deciders speaking the line protocol.

    python -m pimatroid.deciders budget --budget 10
    python -m pimatroid.deciders bruteforce
    python -m pimatroid.deciders alwaysno
"""

import argparse

from .emb import BudgetDecider, always_no, brute_force_decider
from .protocol import serve


def main(argv=None):
    parser = argparse.ArgumentParser(prog="python -m pimatroid.deciders")
    parser.add_argument("kind", choices=["budget", "bruteforce", "alwaysno"])
    parser.add_argument("--budget", type=int, default=1, help="target-set queries before giving up")
    parser.add_argument("--decoys", type=int, default=0, help="extra random queries outside the target layer")
    args = parser.parse_args(argv)
    if args.kind == "budget":
        decider = BudgetDecider(args.budget, args.decoys)
    elif args.kind == "bruteforce":
        decider = brute_force_decider
    else:
        decider = always_no
    serve(decider)


if __name__ == "__main__":
    main()
