"""Oriented knot diagrams given as planar-diagram (PD) codes.

A PD code lists, for every crossing, the four incident edge labels in
counterclockwise order starting from the incoming under-strand.  The edge
that leaves a slot ``s`` is the one at slot ``s + 2`` (mod 4), so the under
strand runs slot 0 -> slot 2 and the over strand runs between slots 1 and 3.

Parsing validates the code, walks the closed curve once, and records the
Wirtinger arc structure: crossing ``k`` (1-based, traversal order) is where
arc ``k`` ends as the incoming under-strand and arc ``k + 1`` begins.
Crossing 1 is always the first crossing listed in the input.
"""
from __future__ import annotations

import json
import re
from dataclasses import dataclass, field

__all__ = [
    "Crossing",
    "KnotDiagram",
    "DiagramError",
    "PDSyntaxError",
    "StructureError",
    "parse_pd",
    "parse_json",
    "parse",
    "validate",
]


class DiagramError(ValueError):
    """Base class for all diagram input errors."""


class PDSyntaxError(DiagramError):
    """The PD text does not match the grammar."""


class StructureError(DiagramError):
    """The crossings do not describe a single closed oriented curve."""

    def __init__(self, message, arcs=(), crossings=()):
        super().__init__(message)
        self.arcs = tuple(arcs)
        self.crossings = tuple(crossings)


@dataclass(frozen=True)
class Crossing:
    arcs: tuple[int, int, int, int]
    sign: int

    @property
    def under(self) -> tuple[int, int]:
        return self.arcs[0], self.arcs[2]

    @property
    def over(self) -> tuple[int, int]:
        return self.arcs[1], self.arcs[3]

    def reversed(self) -> Crossing:
        i, j, k, l = self.arcs
        return Crossing((k, l, i, j), self.sign)


@dataclass(frozen=True)
class KnotDiagram:
    """A validated single-component diagram.

    ``crossings`` keeps the input labels and order so the diagram prints back
    to what was parsed.  The traversal data (``order``, ``over_arc``,
    ``signs``) is indexed by traversal crossing ``k - 1``.
    """

    crossings: tuple[Crossing, ...]
    order: tuple[int, ...] = ()
    over_arc: tuple[int, ...] = ()
    edge_arc: dict[int, int] = field(default_factory=dict, compare=False)
    edge_sequence: tuple[int, ...] = ()

    @property
    def n(self) -> int:
        return len(self.crossings)

    @property
    def arc_count(self) -> int:
        return len(self.crossings)

    @property
    def signs(self) -> tuple[int, ...]:
        """Crossing signs in traversal order."""
        return tuple(self.crossings[c].sign for c in self.order)

    def to_pd(self) -> str:
        body = ",".join("X(%d,%d,%d,%d)" % c.arcs for c in self.crossings)
        return f"PD[{body}]"

    def to_json(self) -> str:
        return json.dumps({"crossings": [list(c.arcs) for c in self.crossings]})

    def reversed(self) -> KnotDiagram:
        """The same curve with the opposite orientation."""
        return _build([c.reversed().arcs for c in self.crossings])

    def canonical(self) -> KnotDiagram:
        """Relabel edges 1..2n along the traversal and list crossings in
        traversal order.  Edge 1 is the incoming under-strand of crossing 1.
        """
        if not self.crossings:
            return self
        relabel = {e: pos + 1 for pos, e in enumerate(self.edge_sequence)}
        tuples = [
            tuple(relabel[e] for e in self.crossings[c].arcs) for c in self.order
        ]
        return _build(tuples)

    def recompute_signs(self) -> tuple[int, ...]:
        """Signs in input order, recomputed from a fresh traversal."""
        return tuple(c.sign for c in _build([c.arcs for c in self.crossings]).crossings)

    def __str__(self) -> str:
        return self.to_pd()


_PD_RE = re.compile(r"^PD\[(.*)\]$", re.S)
_X_RE = re.compile(r"X\((\d+),(\d+),(\d+),(\d+)\)")


def parse_pd(text: str, reverse: bool = False) -> KnotDiagram:
    """Parse ``PD[X(i,j,k,l), ...]`` (whitespace-insensitive)."""
    compact = re.sub(r"\s+", "", text)
    m = _PD_RE.match(compact)
    if m is None:
        raise PDSyntaxError(f"expected PD[...], got {text!r}")
    body = m.group(1)
    tuples = []
    if body:
        pos = 0
        while True:
            x = _X_RE.match(body, pos)
            if x is None:
                raise PDSyntaxError(f"malformed crossing near {body[pos:pos + 20]!r}")
            tuples.append(tuple(int(g) for g in x.groups()))
            pos = x.end()
            if pos == len(body):
                break
            if body[pos] != ",":
                raise PDSyntaxError(f"expected ',' at {body[pos:pos + 20]!r}")
            pos += 1
    return _from_tuples(tuples, reverse)


def parse_json(text: str, reverse: bool = False) -> KnotDiagram:
    """Parse ``{"crossings": [[i, j, k, l], ...]}``."""
    try:
        data = json.loads(text)
        raw = data["crossings"]
    except (ValueError, KeyError, TypeError) as exc:
        raise PDSyntaxError(f"invalid JSON diagram: {exc}") from None
    tuples = []
    for item in raw:
        if (
            not isinstance(item, list)
            or len(item) != 4
            or not all(isinstance(v, int) and not isinstance(v, bool) for v in item)
        ):
            raise PDSyntaxError(f"crossing must be four integers, got {item!r}")
        tuples.append(tuple(item))
    return _from_tuples(tuples, reverse)


def parse(text: str, reverse: bool = False) -> KnotDiagram:
    """Dispatch on the leading character: JSON object or PD text."""
    if text.lstrip().startswith("{"):
        return parse_json(text, reverse)
    return parse_pd(text, reverse)


def validate(diagram: KnotDiagram) -> None:
    """Re-check every structural invariant; raises StructureError."""
    rebuilt = _build([c.arcs for c in diagram.crossings])
    if rebuilt.crossings != diagram.crossings:
        bad = [
            i + 1
            for i, (a, b) in enumerate(zip(rebuilt.crossings, diagram.crossings))
            if a != b
        ]
        raise StructureError(f"stored crossing signs disagree at crossings {bad}", crossings=bad)
    if rebuilt.order != diagram.order or rebuilt.over_arc != diagram.over_arc:
        raise StructureError("stored traversal data is stale")


def _from_tuples(tuples, reverse):
    if reverse:
        tuples = [(k, l, i, j) for i, j, k, l in tuples]
    return _build(tuples)


def _build(tuples) -> KnotDiagram:
    n = len(tuples)
    if n == 0:
        return KnotDiagram(crossings=())
    for idx, t in enumerate(tuples):
        if any(v <= 0 for v in t):
            raise PDSyntaxError(f"crossing {idx + 1} has a non-positive label: {t}")

    slots: dict[int, list[tuple[int, int]]] = {}
    for c, t in enumerate(tuples):
        for s, e in enumerate(t):
            slots.setdefault(e, []).append((c, s))
    once = sorted(e for e, where in slots.items() if len(where) == 1)
    if once:
        raise StructureError(f"open strand: arcs {once} are incident only once", arcs=once)
    many = sorted(e for e, where in slots.items() if len(where) > 2)
    if many:
        raise StructureError(f"arcs {many} are incident more than twice", arcs=many)

    # Walk the curve from crossing 0, slot 0.  Each step leaves the current
    # crossing through the opposite slot and enters the edge's other end.
    sign = [0] * n
    under_seen = [False] * n
    sequence = []  # (edge, crossing it enters, slot it enters)
    c, s = 0, 0
    for _ in range(2 * n + 1):
        out = (s + 2) % 4
        e = tuples[c][out]
        a, b = slots[e]
        nc, ns = b if a == (c, out) else a
        sequence.append((e, nc, ns))
        if ns == 2:
            raise StructureError(
                f"arc {e} enters crossing {nc + 1} through its outgoing under-strand slot",
                arcs=[e], crossings=[nc + 1],
            )
        if ns == 0:
            under_seen[nc] = True
        else:
            # Over strand from slot 3 to slot 1 is a positive crossing.
            sign[nc] = 1 if ns == 3 else -1
        c, s = nc, ns
        if (c, s) == (0, 0):
            break
    if (c, s) != (0, 0) or len(sequence) != 2 * n:
        seen = {e for e, _, _ in sequence}
        missing = sorted(set(slots) - seen)
        raise StructureError(
            f"diagram has more than one component; arcs {missing} not reached",
            arcs=missing,
        )
    if not all(under_seen) or not all(sign):
        bad = [i + 1 for i in range(n) if not under_seen[i] or not sign[i]]
        raise StructureError(f"crossings {bad} are not passed once over and once under", crossings=bad)

    # The walk left crossing 0 on arc 2 and closes on arc n + 1 == arc 1.
    order = [0] * n
    edge_arc = {}
    arc = 2
    for e, nc, ns in sequence:
        label = (arc - 1) % n + 1
        edge_arc[e] = label
        if ns == 0:
            order[label - 1] = nc
            arc += 1
    over_arc = [edge_arc[tuples[c][1]] for c in order]
    # rotate so the edge sequence starts with the edge entering crossing 1
    sequence = sequence[-1:] + sequence[:-1]
    crossings = tuple(Crossing(tuple(t), sign[i]) for i, t in enumerate(tuples))
    return KnotDiagram(
        crossings=crossings,
        order=tuple(order),
        over_arc=tuple(over_arc),
        edge_arc=edge_arc,
        edge_sequence=tuple(e for e, _, _ in sequence),
    )
