"""Backend selection for the exact kernels.

The compiled extension is preferred; set ``AGCHAR_PURE_PYTHON=1`` to force
the pure-Python implementations.
"""

import os

from . import _kernels_py

if os.environ.get("AGCHAR_PURE_PYTHON"):
    _impl = _kernels_py
    BACKEND = "python"
else:
    try:
        from . import _kernels as _impl
        BACKEND = "cython"
    except ImportError:
        _impl = _kernels_py
        BACKEND = "python"

bareiss_rank = _impl.bareiss_rank
bareiss_det = _impl.bareiss_det
iterated_partial_sums = _impl.iterated_partial_sums

__all__ = ["BACKEND", "bareiss_rank", "bareiss_det", "iterated_partial_sums"]
