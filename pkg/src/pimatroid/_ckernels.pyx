# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled kernels; see ``_pykernels`` for the reference semantics."""

from libc.stdint cimport int64_t, uint64_t
from libc.stdlib cimport malloc, calloc, free

from ._pykernels import count_subsets_by_sum as _py_count_subsets_by_sum

cdef extern from *:
    int __builtin_popcountll(unsigned long long)
    int __builtin_ctzll(unsigned long long)

AXIOMS_OK = 0
EMPTY_DEPENDENT = 1
NOT_HEREDITARY = 2
NO_EXCHANGE = 3


def axiom_scan(const unsigned char[:] table, int n):
    cdef uint64_t full = (<uint64_t>1) << n
    cdef uint64_t mask, rest, low, a, b, diff
    cdef Py_ssize_t i, j, size
    cdef bint ok
    cdef uint64_t *order
    cdef Py_ssize_t *start
    cdef Py_ssize_t *fill
    cdef Py_ssize_t total = 0

    if not table[0]:
        return (EMPTY_DEPENDENT, 0, 0, -1)
    for mask in range(1, full):
        if not table[mask]:
            continue
        rest = mask
        while rest:
            low = rest & (~rest + 1)
            if not table[mask ^ low]:
                return (NOT_HEREDITARY, mask, mask ^ low, __builtin_ctzll(low))
            rest ^= low

    # bucket independent masks by cardinality, ascending mask order within a bucket
    start = <Py_ssize_t *> calloc(n + 2, sizeof(Py_ssize_t))
    fill = <Py_ssize_t *> calloc(n + 2, sizeof(Py_ssize_t))
    for mask in range(full):
        if table[mask]:
            start[__builtin_popcountll(mask) + 1] += 1
            total += 1
    for size in range(1, n + 2):
        start[size] += start[size - 1]
    order = <uint64_t *> malloc(max(total, 1) * sizeof(uint64_t))
    for mask in range(full):
        if table[mask]:
            size = __builtin_popcountll(mask)
            order[start[size] + fill[size]] = mask
            fill[size] += 1
    try:
        for size in range(n):
            for i in range(start[size], start[size + 1]):
                b = order[i]
                for j in range(start[size + 1], start[size + 2]):
                    a = order[j]
                    diff = a & ~b
                    ok = False
                    while diff:
                        low = diff & (~diff + 1)
                        if table[b | low]:
                            ok = True
                            break
                        diff ^= low
                    if not ok:
                        return (NO_EXCHANGE, a, b, -1)
        return (AXIOMS_OK, 0, 0, -1)
    finally:
        free(order)
        free(start)
        free(fill)


def table_rank(const unsigned char[:] table, int n):
    cdef uint64_t full = (<uint64_t>1) << n
    cdef uint64_t mask
    cdef int best = 0, c
    for mask in range(full):
        if table[mask]:
            c = __builtin_popcountll(mask)
            if c > best:
                best = c
    return best


def paving_scan(const unsigned char[:] table, int n, int rank):
    cdef uint64_t full = (<uint64_t>1) << n
    cdef uint64_t mask
    for mask in range(full):
        if not table[mask] and __builtin_popcountll(mask) < rank:
            return <object>mask
    return -1


def count_subsets_by_sum(int n, int k):
    # C(62, 31) < 2**63; beyond that counts may overflow int64
    if n > 62:
        return _py_count_subsets_by_sum(n, k)
    if k < 0 or k > n:
        return [0]
    cdef Py_ssize_t top = k * n
    cdef Py_ssize_t width = top + 1
    cdef int64_t *dp = <int64_t *> calloc((k + 1) * width, sizeof(int64_t))
    cdef Py_ssize_t i, j, s
    cdef int jmax
    try:
        dp[0] = 1
        for i in range(1, n + 1):
            jmax = i if i < k else k
            for j in range(jmax, 0, -1):
                for s in range(top, i - 1, -1):
                    dp[j * width + s] += dp[(j - 1) * width + s - i]
        return [dp[k * width + s] for s in range(width)]
    finally:
        free(dp)


def ksubset_sum_exists(weights, int k, long long target):
    cdef Py_ssize_t n = len(weights)
    if k < 0 or target < 0 or k > n:
        return False
    cdef Py_ssize_t width = target + 1
    cdef unsigned char *reach = <unsigned char *> calloc((k + 1) * width, 1)
    cdef Py_ssize_t i, j, s, jmax
    cdef long long w
    try:
        reach[0] = 1
        for i in range(n):
            w = weights[i]
            if w < 0:
                raise ValueError("weights must be non-negative")
            jmax = i + 1 if i + 1 < k else k
            for j in range(jmax, 0, -1):
                for s in range(target, w - 1, -1):
                    if reach[(j - 1) * width + s - w]:
                        reach[j * width + s] = 1
        return bool(reach[k * width + target])
    finally:
        free(reach)
