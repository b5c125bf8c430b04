"""Hot pairwise kernels with a numba fast path and a pure-numpy fallback.

Backend selection happens once at import time via the RELGAP_BACKEND
environment variable: "numba" requires numba (import error otherwise),
"numpy" forces the fallback, and unset prefers numba when it is importable.
`benchmarks/benchmark_kernels.py` compares the two paths.
"""

from __future__ import annotations

import logging
import os

from . import _numpy
from .csr import graph_csr, pair_id_arrays

logger = logging.getLogger(__name__)

_requested = os.environ.get("RELGAP_BACKEND", "").strip().lower()
if _requested not in ("", "numba", "numpy"):
    raise RuntimeError(
        f"RELGAP_BACKEND must be 'numba' or 'numpy', got {_requested!r}"
    )

if _requested == "numpy":
    _impl = _numpy
else:
    try:
        from . import _numba as _impl  # type: ignore[no-redef]
    except ImportError as exc:
        if _requested == "numba":
            raise RuntimeError("RELGAP_BACKEND=numba but numba is not importable") from exc
        logger.info("numba unavailable, using pure-numpy kernels")
        _impl = _numpy

BACKEND: str = "numpy" if _impl is _numpy else "numba"

pair_cn_aa = _impl.pair_cn_aa
instance_common_total = _impl.instance_common_total

__all__ = [
    "BACKEND",
    "graph_csr",
    "pair_id_arrays",
    "pair_cn_aa",
    "instance_common_total",
]
