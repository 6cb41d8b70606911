"""Pure-Python kernels. Same signatures and results as the compiled ``_ckernels``.

Sets are bitmasks: bit ``i`` stands for element ``i + 1``. An independence
table is a ``bytes``-like object of length ``2**n`` with a nonzero entry at
index ``mask`` iff that set is independent.
"""

AXIOMS_OK = 0
EMPTY_DEPENDENT = 1
NOT_HEREDITARY = 2
NO_EXCHANGE = 3


def _layers(table, n):
    layers = [[] for _ in range(n + 1)]
    for mask in range(1 << n):
        if table[mask]:
            layers[bin(mask).count("1")].append(mask)
    return layers


def axiom_scan(table, n):
    """Exhaustive matroid-axiom check of an independence table.

    Returns ``(code, a, b, e)``. For ``NOT_HEREDITARY``, ``a`` is independent and
    ``b = a - e`` is not. For ``NO_EXCHANGE``, ``|a| = |b| + 1`` and no element of
    ``a \\ b`` extends ``b``; ``e`` is -1. Once single-element deletions are closed,
    checking exchange on pairs with ``|a| = |b| + 1`` covers every ``|a| > |b|``.
    """
    if not table[0]:
        return (EMPTY_DEPENDENT, 0, 0, -1)
    for mask in range(1, 1 << n):
        if not table[mask]:
            continue
        rest = mask
        while rest:
            low = rest & -rest
            if not table[mask ^ low]:
                return (NOT_HEREDITARY, mask, mask ^ low, low.bit_length() - 1)
            rest ^= low
    layers = _layers(table, n)
    for size in range(n):
        upper = layers[size + 1]
        if not upper:
            continue
        for b in layers[size]:
            for a in upper:
                diff = a & ~b
                ok = False
                while diff:
                    low = diff & -diff
                    if table[b | low]:
                        ok = True
                        break
                    diff ^= low
                if not ok:
                    return (NO_EXCHANGE, a, b, -1)
    return (AXIOMS_OK, 0, 0, -1)


def table_rank(table, n):
    best = 0
    for mask in range(1 << n):
        if table[mask]:
            c = bin(mask).count("1")
            if c > best:
                best = c
    return best


def paving_scan(table, n, rank):
    """First dependent mask with fewer than ``rank`` elements, or -1."""
    for mask in range(1 << n):
        if not table[mask] and bin(mask).count("1") < rank:
            return mask
    return -1


def count_subsets_by_sum(n, k):
    """``out[s]`` = number of k-subsets of {1..n} with element sum ``s``."""
    if k < 0 or k > n:
        return [0]
    top = k * n
    dp = [[0] * (top + 1) for _ in range(k + 1)]
    dp[0][0] = 1
    for i in range(1, n + 1):
        for j in range(min(i, k), 0, -1):
            prev = dp[j - 1]
            cur = dp[j]
            for s in range(top, i - 1, -1):
                v = prev[s - i]
                if v:
                    cur[s] += v
    return dp[k]


def ksubset_sum_exists(weights, k, target):
    """Is there a k-subset of ``weights`` (non-negative ints) summing to ``target``?"""
    if k < 0 or target < 0 or k > len(weights):
        return False
    cap = (1 << (target + 1)) - 1
    # reach[j] bit s set <=> some j-subset of the prefix sums to s
    reach = [0] * (k + 1)
    reach[0] = 1
    for i, w in enumerate(weights):
        if w < 0:
            raise ValueError("weights must be non-negative")
        for j in range(min(i + 1, k), 0, -1):
            reach[j] |= (reach[j - 1] << w) & cap
    return bool((reach[k] >> target) & 1)
