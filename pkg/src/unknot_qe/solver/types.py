"""Result types shared by the solver stages."""
from __future__ import annotations

import enum
import json
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from ..representation import Representation

__all__ = [
    "Box",
    "Status",
    "ExactCertificate",
    "ResidualCertificate",
    "RefuteResult",
    "Verdict",
    "WitnessRejected",
    "VERDICT_SCHEMA",
]

VERDICT_SCHEMA = 1


@dataclass(frozen=True)
class Box:
    """Closed box with rational endpoints, one interval per chart coordinate.

    Bisection of the unit domain only produces dyadic rationals, so the
    float arrays used by the kernels hold these endpoints exactly.
    """

    lo: tuple[Fraction, ...]
    hi: tuple[Fraction, ...]

    def __post_init__(self):
        if len(self.lo) != len(self.hi):
            raise ValueError("endpoint dimension mismatch")
        for a, b in zip(self.lo, self.hi):
            if a > b:
                raise ValueError(f"empty interval [{a}, {b}]")

    @classmethod
    def from_arrays(cls, lo, hi) -> Box:
        return cls(tuple(Fraction(float(x)) for x in lo), tuple(Fraction(float(x)) for x in hi))

    def arrays(self) -> tuple[np.ndarray, np.ndarray]:
        return np.array([float(x) for x in self.lo]), np.array([float(x) for x in self.hi])

    @property
    def widths(self) -> tuple[Fraction, ...]:
        return tuple(b - a for a, b in zip(self.lo, self.hi))

    def contains(self, point) -> bool:
        return all(a <= Fraction(x) <= b for a, b, x in zip(self.lo, self.hi, point))

    def bisect(self) -> tuple[Box, Box]:
        """Split the widest coordinate (lowest index on ties)."""
        w = self.widths
        d = max(range(len(w)), key=lambda i: (w[i], -i))
        mid = (self.lo[d] + self.hi[d]) / 2
        left_hi = list(self.hi)
        left_hi[d] = mid
        right_lo = list(self.lo)
        right_lo[d] = mid
        return Box(self.lo, tuple(left_hi)), Box(tuple(right_lo), self.hi)


class Status(enum.Enum):
    UNKNOT = "UNKNOT"
    KNOTTED = "KNOTTED"
    UNRESOLVED = "UNRESOLVED"


class WitnessRejected(Exception):
    def __init__(self, reason: str, bound: float | None = None):
        super().__init__(reason if bound is None else f"{reason} (bound {bound:.3e})")
        self.reason = reason
        self.bound = bound


@dataclass(frozen=True)
class ExactCertificate:
    """Every equality member vanishes exactly and some coordinate differs
    from generator 1 exactly.  ``p``/``coloring`` name the Fox coloring the
    witness came from, when it did."""

    field: str
    p: int | None = None
    coloring: tuple[int, ...] | None = None
    kind: str = "exact"

    def to_dict(self) -> dict:
        out = {"kind": self.kind, "field": self.field}
        if self.p is not None:
            out["p"] = self.p
            out["coloring"] = list(self.coloring)
        return out


@dataclass(frozen=True)
class ResidualCertificate:
    """Interval certificate.

    The Krawczyk operator maps ``box`` into itself for the square subsystem
    ``square_rows``; ``implied_rows`` follow from those by the group
    structure, and ``enclosed_rows`` have enclosures of width ``bound``
    around zero on the box.  ``n_lower`` is a lower bound of N on the box.
    """

    bound: float
    radius: float
    trace: Fraction
    m: int
    square_rows: tuple[str, ...]
    implied_rows: tuple[str, ...]
    enclosed_rows: tuple[str, ...]
    n_lower: float
    point: tuple[float, ...] = ()
    kind: str = "residual"

    def to_dict(self) -> dict:
        return {
            "kind": self.kind,
            "bound": repr(self.bound),
            "radius": repr(self.radius),
            "trace": str(self.trace),
            "m": self.m,
            "square_rows": list(self.square_rows),
            "implied_rows": list(self.implied_rows),
            "enclosed_rows": list(self.enclosed_rows),
            "n_lower": repr(self.n_lower),
            "point": [repr(x) for x in self.point],
        }


@dataclass(frozen=True)
class RefuteResult:
    refuted: bool
    delta: Fraction
    boxes: int
    refuted_by_p: int
    refuted_by_n: int
    max_depth: int
    reason: str
    stuck_box: Box | None = None
    elapsed: float = field(default=0.0, compare=False)

    def to_dict(self) -> dict:
        return {
            "refuted": self.refuted,
            "delta": str(self.delta),
            "boxes": self.boxes,
            "refuted_by_P": self.refuted_by_p,
            "refuted_by_N": self.refuted_by_n,
            "max_depth": self.max_depth,
            "reason": self.reason,
        }


@dataclass(frozen=True)
class Verdict:
    status: Status
    n: int
    delta: Fraction | None = None
    boxes_refuted: int = 0
    witness: Representation | None = None
    certificate: ExactCertificate | ResidualCertificate | None = None
    report: dict = field(default_factory=dict)
    wall_time: float = field(default=0.0, compare=False)

    @property
    def feasible(self) -> bool | None:
        """Whether the real system is satisfiable (None when unresolved)."""
        if self.status is Status.KNOTTED:
            return True
        if self.status is Status.UNKNOT:
            return False
        return None

    def witness_error(self) -> float:
        """Coordinate-wise distance from the printed witness to the
        certified point: one rounding for exact witnesses, the box radius
        for interval ones."""
        if isinstance(self.certificate, ResidualCertificate):
            return self.certificate.radius
        return 2.0 ** -53

    def to_dict(self, include_timing: bool = False) -> dict:
        out: dict = {
            "schema": VERDICT_SCHEMA,
            "verdict": self.status.value,
            "system_feasible": self.feasible,
            "n": self.n,
            "delta": None if self.delta is None else str(self.delta),
        }
        if self.status is Status.UNKNOT:
            out["boxes_refuted"] = self.boxes_refuted
        if self.witness is not None:
            out["witness"] = self.witness.to_json()
            out["witness_error"] = repr(self.witness_error())
        if self.certificate is not None:
            out["certificate"] = self.certificate.to_dict()
        out["report"] = self.report
        if include_timing:
            out["wall_time"] = self.wall_time
        return out

    def to_json(self, include_timing: bool = False) -> str:
        return json.dumps(self.to_dict(include_timing), indent=1, sort_keys=False)

    @classmethod
    def from_json(cls, text: str) -> Verdict:
        data = json.loads(text)
        witness = None
        if "witness" in data:
            witness = Representation(tuple(tuple(float(x) for x in p) for p in data["witness"]))
        cert = None
        c = data.get("certificate")
        if c is not None:
            if c["kind"] == "exact":
                cert = ExactCertificate(
                    field=c["field"], p=c.get("p"),
                    coloring=tuple(c["coloring"]) if "coloring" in c else None,
                )
            else:
                cert = ResidualCertificate(
                    bound=float(c["bound"]), radius=float(c["radius"]),
                    trace=Fraction(c["trace"]), m=c["m"],
                    square_rows=tuple(c["square_rows"]),
                    implied_rows=tuple(c["implied_rows"]),
                    enclosed_rows=tuple(c["enclosed_rows"]),
                    n_lower=float(c["n_lower"]),
                    point=tuple(float(x) for x in c.get("point", ())),
                )
        return cls(
            status=Status(data["verdict"]),
            n=data["n"],
            delta=None if data["delta"] is None else Fraction(data["delta"]),
            boxes_refuted=data.get("boxes_refuted", 0),
            witness=witness,
            certificate=cert,
            report=data.get("report", {}),
            wall_time=data.get("wall_time", 0.0),
        )
