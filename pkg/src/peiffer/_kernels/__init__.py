"""Hot loops: free reduction and mod-p truncated Magnus arithmetic.

The compiled extension is used when it was built; otherwise the pure-Python
module with identical signatures.  Set ``PEIFFER_PURE_PYTHON=1`` to force the
fallback.
"""

import os

from . import _pykernels
from ._tables import MonomialTable, monomial_table

if os.environ.get("PEIFFER_PURE_PYTHON"):
    _impl = _pykernels
else:
    try:
        from . import _ckernels as _impl
    except ImportError:
        _impl = _pykernels

BACKEND = _impl.BACKEND
reduce_letters = _impl.reduce_letters
concat_reduce = _impl.concat_reduce
series_mul = _impl.series_mul
series_inv = _impl.series_inv
project_letters = _impl.project_letters
closure = _impl.closure


def available_backends():
    """Map backend name to module for every backend importable here."""
    found = {"python": _pykernels}
    try:
        from . import _ckernels
    except ImportError:
        pass
    else:
        found["cython"] = _ckernels
    return found


__all__ = [
    "BACKEND", "MonomialTable", "monomial_table", "available_backends",
    "reduce_letters", "concat_reduce", "series_mul", "series_inv",
    "project_letters", "closure",
]
