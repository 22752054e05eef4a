"""Numerical witness search: Levenberg-Marquardt from random gauge-fixed
starts, followed by a Newton polish that keeps every generator on S^3."""
from __future__ import annotations

import math
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np
from scipy.optimize import least_squares

from ..polysys import RealSystem
from ..representation import Representation
from .chart import Chart, compile_polys, compile_system
from .gauge import gauge_normalize

__all__ = ["SearchConfig", "SearchOutcome", "search_witness", "polish"]

ACCEPT_P = 1e-20


@dataclass(frozen=True)
class SearchConfig:
    restarts: int = 32
    seed: int = 0
    min_n: float = 1e-6
    shared_trace: bool = False
    threads: int = 1


@dataclass(frozen=True)
class SearchOutcome:
    witness: Representation | None
    attempts: int
    best_p: float
    source: str


def _full_system(sys: RealSystem):
    members = compile_polys(sys.members())
    diffs = compile_polys(sys.n_source)
    return members, diffs


def polish(sys: RealSystem, x: np.ndarray, iters: int = 40, compiled=None) -> tuple[np.ndarray, float]:
    """Gauss-Newton on the full coordinates with per-generator renormalization.

    Returns the polished point and its ``P`` value.
    """
    members, _ = compiled or _full_system(sys)
    dim = 4 * sys.n
    x = np.array(x, dtype=float)
    best = x.copy()
    best_p = float(np.sum(members.evaluate(x) ** 2))
    for _ in range(iters):
        if best_p <= 1e-30:
            break
        r = members.evaluate(x)
        J = members.jacobian(x, dim)
        dx, *_ = np.linalg.lstsq(J, -r, rcond=None)
        x = x + dx
        g = x.reshape(-1, 4)
        g /= np.linalg.norm(g, axis=1, keepdims=True)
        x = g.reshape(-1)
        p = float(np.sum(members.evaluate(x) ** 2))
        if p < best_p:
            best, best_p = x.copy(), p
        elif p > 1e3 * best_p:
            break
    return best, best_p


def _n_value(diffs, x) -> float:
    return float(np.sum(diffs.evaluate(x) ** 2))


def search_witness(
    sys: RealSystem,
    config: SearchConfig = SearchConfig(),
    seeds=(),
    deadline: float = math.inf,
) -> SearchOutcome:
    """Look for a point with ``P`` below ``1e-20`` and ``N >= min_n``.

    ``seeds`` are candidate representations tried before random starts.
    The random stream depends only on ``config.seed``.
    """
    full = _full_system(sys)
    _, diffs = full
    best_p = math.inf
    attempts = 0
    for rep in seeds:
        attempts += 1
        x, p = polish(sys, np.array(rep.flat()), compiled=full)
        best_p = min(best_p, p)
        if p <= ACCEPT_P and _n_value(diffs, x) >= config.min_n:
            return SearchOutcome(gauge_normalize(Representation.from_array(x)), attempts, p, "seed")
    if sys.n < 2:
        return SearchOutcome(None, attempts, best_p, "none")
    chart = Chart(sys.n, 2, config.shared_trace)
    eq, _ = compile_system(sys, chart)
    if eq.count == 0:
        return SearchOutcome(None, attempts, best_p, "none")
    rng = np.random.default_rng(config.seed)
    lo, hi = chart.bounds()
    starts = rng.uniform(lo, hi, size=(config.restarts, chart.dim))
    jac = lambda y: eq.jacobian(y, chart.dim)  # noqa: E731

    def attempt(y0):
        fit = least_squares(eq.evaluate, y0, jac=jac, method="lm",
                            xtol=1e-15, ftol=1e-15, gtol=1e-15, max_nfev=400)
        x = chart.lift(fit.x)
        if _n_value(diffs, x) < config.min_n:
            return None, float(np.sum(fit.fun ** 2))
        x, p = polish(sys, x, compiled=full)
        if p <= ACCEPT_P and _n_value(diffs, x) >= config.min_n:
            return x, p
        return None, p

    # restarts run in chunks; the lowest-index success wins, so the result
    # does not depend on the thread count
    width = max(1, config.threads)
    pool = ThreadPoolExecutor(max_workers=width) if width > 1 else None
    try:
        for begin in range(0, config.restarts, width):
            if time.monotonic() > deadline:
                break
            chunk = starts[begin:begin + width]
            results = list(pool.map(attempt, chunk)) if pool else [attempt(y) for y in chunk]
            for offset, (x, p) in enumerate(results):
                best_p = min(best_p, p)
                if x is not None:
                    return SearchOutcome(gauge_normalize(Representation.from_array(x)),
                                         attempts + offset + 1, p, "random")
            attempts += len(chunk)
    finally:
        if pool:
            pool.shutdown()
    return SearchOutcome(None, attempts, best_p, "none")
