"""Interval branch-and-prune over the gauge chart.

A box is discarded when the outward-rounded lower bound of ``P`` is
positive, or when the upper bound of ``N`` is below ``delta``.  Surviving
boxes are bisected along their widest side.  Boxes are popped from a
depth-first stack in fixed-size batches, so the sequence of classified
boxes, and therefore the outcome, does not depend on the thread count.
"""
from __future__ import annotations

import math
import time
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .. import kernels
from ..polysys import RealSystem
from .chart import Chart, compile_system
from .types import Box, RefuteResult

__all__ = ["RefuteBudget", "refute", "float_below"]

BATCH = 256


@dataclass(frozen=True)
class RefuteBudget:
    boxes: int = 2_000_000
    seconds: float = math.inf
    min_width: float = 1e-3


def float_below(q: Fraction) -> float:
    """Largest double not exceeding ``q``."""
    f = float(q)
    if Fraction(f) > q:
        f = math.nextafter(f, -math.inf)
    return f


def refute(
    sys: RealSystem,
    delta: Fraction,
    budget: RefuteBudget = RefuteBudget(),
    *,
    shared_trace: bool = False,
    threads: int = 1,
    backend: str | None = None,
    deadline: float | None = None,
) -> RefuteResult:
    """Try to show that no point of the chart has ``P = 0`` and ``N >= delta``."""
    delta = Fraction(delta)
    if delta <= 0:
        raise ValueError("delta must be positive")
    start = time.monotonic()
    if deadline is None:
        deadline = start + budget.seconds
    else:
        deadline = min(deadline, start + budget.seconds)
    chart = Chart(sys.n, 2, shared_trace)
    eq, ineq = compile_system(sys, chart)
    dlt = float_below(delta)
    lo0, hi0 = chart.bounds()

    dim = chart.dim
    cap = 1024
    st_lo = np.empty((cap, dim))
    st_hi = np.empty((cap, dim))
    st_dep = np.empty(cap, dtype=np.int64)
    st_lo[0], st_hi[0], st_dep[0] = lo0, hi0, 0
    top = 1
    boxes = by_p = by_n = max_depth = 0

    def result(refuted, reason, stuck=None):
        return RefuteResult(
            refuted=refuted, delta=delta, boxes=boxes, refuted_by_p=by_p,
            refuted_by_n=by_n, max_depth=max_depth, reason=reason,
            stuck_box=stuck, elapsed=time.monotonic() - start,
        )

    while top:
        if boxes >= budget.boxes:
            return result(False, "box budget exhausted")
        if time.monotonic() > deadline:
            return result(False, "time budget exhausted")
        take = min(BATCH, top, budget.boxes - boxes)
        top -= take
        lo = st_lo[top:top + take].copy()
        hi = st_hi[top:top + take].copy()
        dep = st_dep[top:top + take].copy()
        codes, _, _ = kernels.classify(lo, hi, eq, ineq, dlt, threads=threads, backend=backend)
        boxes += take
        by_p += int(np.count_nonzero(codes == kernels.POSITIVE_P))
        by_n += int(np.count_nonzero(codes == kernels.SMALL_N))
        live = np.flatnonzero(codes == kernels.UNDECIDED)[::-1]
        if not len(live):
            continue
        w = hi[live] - lo[live]
        split = np.argmax(w, axis=1)
        thin = w[np.arange(len(live)), split] < budget.min_width
        if thin.any():
            r = live[int(np.argmax(thin))]
            return result(False, "minimum width reached", Box.from_arrays(lo[r], hi[r]))
        rows = np.arange(len(live))
        mid = 0.5 * (lo[live, split] + hi[live, split])
        left_hi = hi[live].copy()
        left_hi[rows, split] = mid
        right_lo = lo[live].copy()
        right_lo[rows, split] = mid
        k = 2 * len(live)
        while top + k > cap:
            cap *= 2
            st_lo = np.resize(st_lo, (cap, dim))
            st_hi = np.resize(st_hi, (cap, dim))
            st_dep = np.resize(st_dep, cap)
        # right child below left child, so the lowest batch index is explored first
        st_lo[top:top + k:2] = right_lo
        st_hi[top:top + k:2] = hi[live]
        st_lo[top + 1:top + k:2] = lo[live]
        st_hi[top + 1:top + k:2] = left_hi
        st_dep[top:top + k] = np.repeat(dep[live] + 1, 2)
        max_depth = max(max_depth, int(dep[live].max()) + 1)
        top += k
    return result(True, "all boxes refuted")
