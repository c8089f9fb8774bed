"""Hot numeric kernels with a numba backend and a pure-numpy fallback.

The backend is chosen once at import time: numba when it imports cleanly,
unless the environment sets ``TORSDIAM_DISABLE_NUMBA=1``. Both backends
return identical results; ``benchmarks/bench_kernels.py`` times them
against each other.
"""
from __future__ import annotations

import os

from . import _numpy

BACKEND = "numpy"
_impl = _numpy

if os.environ.get("TORSDIAM_DISABLE_NUMBA", "").strip().lower() not in ("1", "true", "yes"):
    try:
        from . import _numba
    except ImportError:  # numba missing or broken for this interpreter
        pass
    else:
        BACKEND = "numba"
        _impl = _numba

orbit_count = _impl.orbit_count
count_transitive_partners = _impl.count_transitive_partners
batch_diameters = _impl.batch_diameters
greedy_net = _impl.greedy_net

__all__ = [
    "BACKEND",
    "orbit_count",
    "count_transitive_partners",
    "batch_diameters",
    "greedy_net",
]
