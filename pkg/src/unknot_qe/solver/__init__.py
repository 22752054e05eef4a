"""Feasibility of the real system: witness search, certification and
interval refutation."""
from .certify import certify_exact, certify_interval, certify_witness
from .decide import DecideConfig, decide, reverify
from .gauge import gauge_normalize
from .refute import RefuteBudget, refute
from .search import SearchConfig, search_witness
from .types import (
    Box,
    ExactCertificate,
    RefuteResult,
    ResidualCertificate,
    Status,
    Verdict,
    WitnessRejected,
)

__all__ = [
    "Box",
    "DecideConfig",
    "ExactCertificate",
    "RefuteBudget",
    "RefuteResult",
    "ResidualCertificate",
    "SearchConfig",
    "Status",
    "Verdict",
    "WitnessRejected",
    "certify_exact",
    "certify_interval",
    "certify_witness",
    "decide",
    "gauge_normalize",
    "refute",
    "reverify",
    "search_witness",
]
