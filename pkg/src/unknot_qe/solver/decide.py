"""End-to-end decision: oracle seeds, witness search, then refutation."""
from __future__ import annotations

import math
import time
from dataclasses import dataclass
from fractions import Fraction

from ..diagram import KnotDiagram
from ..oracle import DEFAULT_PRIMES, Coloring, coloring_to_rep, find_coloring
from ..polysys import RealSystem, build_system
from ..representation import Representation
from ..wirtinger import build_presentation
from .certify import certify_exact, certify_interval, certify_witness
from .refute import RefuteBudget, refute
from .search import SearchConfig, search_witness
from .types import (
    ExactCertificate,
    ResidualCertificate,
    Status,
    Verdict,
    WitnessRejected,
)

__all__ = ["DecideConfig", "decide", "reverify"]


@dataclass(frozen=True)
class DecideConfig:
    delta: Fraction = Fraction(1, 10_000)
    budget_seconds: float = 60.0
    budget_boxes: int = 2_000_000
    restarts: int = 32
    threads: int = 1
    seed: int = 0
    primes: tuple[int, ...] = DEFAULT_PRIMES
    shared_trace: bool = False
    min_width: float = 1e-3
    use_oracle: bool = True

    def __post_init__(self):
        object.__setattr__(self, "delta", Fraction(self.delta))
        if self.delta <= 0:
            raise ValueError("delta must be positive")
        if self.budget_seconds < 0 or self.budget_boxes < 0 or self.restarts < 0:
            raise ValueError("budgets must be nonnegative")
        if self.threads < 1:
            raise ValueError("threads must be at least 1")

    def to_dict(self) -> dict:
        return {
            "delta": str(self.delta),
            "budget_seconds": self.budget_seconds,
            "budget_boxes": self.budget_boxes,
            "restarts": self.restarts,
            "seed": self.seed,
            "primes": list(self.primes),
            "shared_trace": self.shared_trace,
            "min_width": self.min_width,
        }


def _system_of(target) -> tuple[int, RealSystem | None]:
    if isinstance(target, RealSystem):
        return target.n, target
    if isinstance(target, KnotDiagram):
        pres = build_presentation(target)
    else:
        pres = target
    if pres.n == 0:
        return 0, None
    return pres.n, build_system(pres)


def decide(target, config: DecideConfig | None = None) -> Verdict:
    """Decide a diagram, presentation or prebuilt system.

    The stages run in a fixed order, so the verdict depends only on the
    input and ``config`` (and on the time budget when it is hit).
    """
    config = config or DecideConfig()
    start = time.monotonic()
    n, sys = _system_of(target)
    report: dict = {"config": config.to_dict()}

    def finish(status, **kw):
        return Verdict(status=status, n=n, report=report,
                       wall_time=time.monotonic() - start, **kw)

    if sys is None:
        report["stage"] = "no crossings"
        return finish(Status.UNKNOT, delta=config.delta)
    if config.budget_seconds <= 0:
        report["stage"] = "no budget"
        return finish(Status.UNRESOLVED)
    deadline = start + config.budget_seconds
    pres = sys.presentation

    if config.use_oracle and pres is not None:
        tried = []
        for p in config.primes:
            col = find_coloring(pres, p)
            tried.append(p)
            if col is None:
                continue
            rep = coloring_to_rep(col, pres)
            try:
                cert = certify_exact(sys, rep, col)
            except WitnessRejected:
                continue
            report.update(stage="oracle", primes_tried=tried)
            return finish(Status.KNOTTED, delta=config.delta, witness=rep, certificate=cert)
        report["primes_tried"] = tried

    found = search_witness(
        sys,
        SearchConfig(restarts=config.restarts, seed=config.seed, min_n=float(config.delta),
                     shared_trace=config.shared_trace, threads=config.threads),
        deadline=deadline,
    )
    report["search"] = {"attempts": found.attempts, "best_P": repr(found.best_p)}
    if found.witness is not None:
        try:
            cert = certify_witness(sys, found.witness)
        except WitnessRejected as exc:
            report["search"]["rejected"] = str(exc)
        else:
            report["stage"] = "search"
            witness = Representation.from_array(cert.point) if cert.point else found.witness
            return finish(Status.KNOTTED, delta=config.delta, witness=witness, certificate=cert)

    result = refute(
        sys, config.delta,
        RefuteBudget(boxes=config.budget_boxes, seconds=math.inf, min_width=config.min_width),
        shared_trace=config.shared_trace, threads=config.threads, deadline=deadline,
    )
    report["refute"] = result.to_dict()
    if result.refuted:
        report["stage"] = "refute"
        return finish(Status.UNKNOT, delta=config.delta, boxes_refuted=result.boxes)
    report["stage"] = "exhausted"
    return finish(Status.UNRESOLVED, delta=config.delta)


def reverify(sys: RealSystem, verdict: Verdict) -> ExactCertificate | ResidualCertificate:
    """Re-run certification from a (deserialized) KNOTTED verdict."""
    if verdict.status is not Status.KNOTTED or verdict.witness is None:
        raise WitnessRejected("verdict carries no witness")
    cert = verdict.certificate
    if isinstance(cert, ExactCertificate) and cert.coloring is not None:
        if sys.presentation is None:
            raise WitnessRejected("exact re-verification needs the presentation")
        rep = coloring_to_rep(Coloring(cert.p, cert.coloring), sys.presentation)
        for got, want in zip(verdict.witness.points, rep.points):
            if max(abs(a - b) for a, b in zip(got, want)) > 1e-15:
                raise WitnessRejected("witness coordinates do not match the coloring")
        return certify_exact(sys, rep, Coloring(cert.p, cert.coloring))
    radius = cert.radius if isinstance(cert, ResidualCertificate) else 1e-6
    return certify_interval(sys, verdict.witness, radius=radius)
