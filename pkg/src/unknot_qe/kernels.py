"""Backend selection for the box classifier.

The compiled extension is used when it imports; setting the environment
variable ``UNKNOT_QE_PURE=1`` forces the numpy fallback.
"""
import os
from concurrent.futures import ThreadPoolExecutor

import numpy as np

from . import _kernels_py

if os.environ.get("UNKNOT_QE_PURE"):
    _compiled = None
else:
    try:
        from . import _kernels as _compiled
    except ImportError:
        _compiled = None

BACKEND = "compiled" if _compiled is not None else "python"
UNDECIDED = _kernels_py.UNDECIDED
POSITIVE_P = _kernels_py.POSITIVE_P
SMALL_N = _kernels_py.SMALL_N


def get_backend(name=None):
    """The kernel module for ``name`` ('compiled', 'python' or None = default)."""
    if name is None:
        name = BACKEND
    if name == "python":
        return _kernels_py
    if name == "compiled":
        if _compiled is None:
            raise RuntimeError("compiled kernels are not available")
        return _compiled
    raise ValueError(f"unknown backend {name!r}")


def classify(lo, hi, eq, ineq, delta, threads=1, backend=None):
    """Classify boxes ``lo[i] <= x <= hi[i]`` against compiled polynomials.

    Rows are split into contiguous chunks for ``threads`` workers; results
    do not depend on the split.
    """
    mod = get_backend(backend)
    args = (eq.ptr, eq.const, eq.coef, eq.v1, eq.v2,
            ineq.ptr, ineq.const, ineq.coef, ineq.v1, ineq.v2, float(delta))
    nb = len(lo)
    if threads <= 1 or nb < 2 * threads:
        return mod.classify_boxes(lo, hi, *args)
    cuts = np.linspace(0, nb, threads + 1).astype(int)
    with ThreadPoolExecutor(max_workers=threads) as pool:
        parts = list(pool.map(
            lambda s: mod.classify_boxes(lo[s[0]:s[1]], hi[s[0]:s[1]], *args),
            zip(cuts[:-1], cuts[1:]),
        ))
    return tuple(np.concatenate([p[i] for p in parts]) for i in range(3))
