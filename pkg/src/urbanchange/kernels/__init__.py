"""Hot numeric kernels: numba-jitted with a pure-numpy fallback.

Set URBANCHANGE_NO_NUMBA=1 before import to force the numpy path. The two
backends are bit-for-bit interchangeable; BACKEND names the one in use.
benchmarks/bench_kernels.py compares their throughput.
"""

import os

_flag = os.environ.get("URBANCHANGE_NO_NUMBA", "").strip().lower()
if _flag in {"1", "true", "yes", "on"}:
    BACKEND = "numpy"
else:
    try:
        import numba  # noqa: F401

        BACKEND = "numba"
    except ImportError:
        BACKEND = "numpy"

if BACKEND == "numba":
    from .numba_impl import points_in_ring, split_scan, tree_apply
else:
    from .numpy_impl import points_in_ring, split_scan, tree_apply

__all__ = ["BACKEND", "points_in_ring", "split_scan", "tree_apply"]
