"""Bundled PD codes: unknot diagrams and small knots."""
from __future__ import annotations

from importlib import resources

__all__ = ["FIXTURES", "KNOTTED", "UNKNOTS", "load", "load_diagram"]

#: name -> (file, ground truth: True if knotted)
FIXTURES = {
    "unknot_0": ("unknot_0.pd", False),
    "unknot_1": ("unknot_1.pd", False),
    "unknot_2": ("unknot_2.pd", False),
    "unknot_4_messy": ("unknot_4_messy.pd", False),
    "trefoil": ("trefoil.pd", True),
    "figure_eight": ("figure_eight.pd", True),
    "5_1": ("knot_5_1.pd", True),
    "5_2": ("knot_5_2.pd", True),
    "6_1": ("knot_6_1.pd", True),
    "trefoil_r1": ("trefoil_r1.pd", True),
}
KNOTTED = tuple(k for k, (_, v) in FIXTURES.items() if v)
UNKNOTS = tuple(k for k, (_, v) in FIXTURES.items() if not v)


def load(name: str) -> str:
    """PD text of a bundled fixture."""
    try:
        fname = FIXTURES[name][0]
    except KeyError:
        raise KeyError(f"unknown fixture {name!r}; known: {', '.join(FIXTURES)}") from None
    return resources.files(__package__).joinpath(fname).read_text().strip()


def load_diagram(name: str):
    from ..diagram import parse
    return parse(load(name))
