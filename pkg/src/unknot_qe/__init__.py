"""Unknot recognition by deciding feasibility of the SU(2) representation
system of a knot diagram's Wirtinger presentation."""
from .diagram import DiagramError, KnotDiagram, parse
from .kernels import BACKEND
from .oracle import count_colorings, is_colorable
from .polysys import RealSystem, build_system
from .solver import DecideConfig, Status, Verdict, decide
from .wirtinger import WirtingerPresentation, build_presentation

__version__ = "0.1.0"

__all__ = [
    "BACKEND",
    "DecideConfig",
    "DiagramError",
    "KnotDiagram",
    "RealSystem",
    "Status",
    "Verdict",
    "WirtingerPresentation",
    "build_presentation",
    "build_system",
    "count_colorings",
    "decide",
    "is_colorable",
    "parse",
]
