"""Kernel backend selection.

The compiled extension is used when it was built; setting
``PIMATROID_PURE_PYTHON=1`` forces the pure-Python twin.
"""

import os

from . import _pykernels

try:
    from . import _ckernels
except ImportError:
    _ckernels = None

BACKENDS = {"python": _pykernels}
if _ckernels is not None:
    BACKENDS["cython"] = _ckernels

if _ckernels is not None and os.environ.get("PIMATROID_PURE_PYTHON", "") not in ("1", "true", "yes"):
    BACKEND = "cython"
else:
    BACKEND = "python"
_impl = BACKENDS[BACKEND]

AXIOMS_OK = _pykernels.AXIOMS_OK
EMPTY_DEPENDENT = _pykernels.EMPTY_DEPENDENT
NOT_HEREDITARY = _pykernels.NOT_HEREDITARY
NO_EXCHANGE = _pykernels.NO_EXCHANGE

axiom_scan = _impl.axiom_scan
table_rank = _impl.table_rank
paving_scan = _impl.paving_scan
count_subsets_by_sum = _impl.count_subsets_by_sum
ksubset_sum_exists = _impl.ksubset_sum_exists
