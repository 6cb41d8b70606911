"""Time the compiled kernels against their pure-Python twins.

    python benchmarks/bench_kernels.py [--repeat 3]

Both backends run on identical inputs; results are compared before timing.
"""

import argparse
import random
import sys
import timeit

from pimatroid import kernels


def uniform_table(n, k):
    return bytes(1 if bin(mask).count("1") <= k else 0 for mask in range(1 << n))


def cases():
    rng = random.Random(0)
    weights = [rng.randint(1, 200) for _ in range(30)]
    yield "axiom_scan uniform(14,7)", "axiom_scan", (uniform_table(14, 7), 14)
    yield "paving_scan uniform(14,7)", "paving_scan", (uniform_table(14, 7), 14, 7)
    yield "table_rank uniform(16,8)", "table_rank", (uniform_table(16, 8), 16)
    yield "count_subsets_by_sum n=40 k=20", "count_subsets_by_sum", (40, 20)
    yield "ksubset_sum_exists |w|=30 k=15", "ksubset_sum_exists", (weights, 15, sum(sorted(weights)[:15]) + 1)


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args(argv)
    if "cython" not in kernels.BACKENDS:
        print("compiled extension not built; run `python setup.py build_ext --inplace` first")
        return 1
    py, cy = kernels.BACKENDS["python"], kernels.BACKENDS["cython"]
    print(f"{'kernel':34} {'python s':>10} {'cython s':>10} {'speedup':>8}")
    for label, name, call_args in cases():
        f_py, f_cy = getattr(py, name), getattr(cy, name)
        if f_py(*call_args) != f_cy(*call_args):
            print(f"{label}: backends disagree", file=sys.stderr)
            return 2
        t_py = min(timeit.repeat(lambda: f_py(*call_args), number=1, repeat=args.repeat))
        t_cy = min(timeit.repeat(lambda: f_cy(*call_args), number=1, repeat=args.repeat))
        print(f"{label:34} {t_py:10.4f} {t_cy:10.4f} {t_py / t_cy:7.1f}x")
    return 0


if __name__ == "__main__":
    sys.exit(main())
