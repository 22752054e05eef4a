"""Wirtinger presentations of knot groups read off an oriented diagram."""
from __future__ import annotations

import enum
import json
from dataclasses import dataclass

from .diagram import KnotDiagram

__all__ = ["Form", "Relation", "WirtingerPresentation", "build_presentation", "presentation_to_text"]


class Form(enum.Enum):
    PLUS = "+"   # g_j g_k g_j^-1 g_{k+1}^-1
    MINUS = "-"  # g_j^-1 g_k g_j g_{k+1}^-1


@dataclass(frozen=True)
class Relation:
    k: int
    j: int
    form: Form
    n: int

    @property
    def next(self) -> int:
        """Index of g_{k+1}, wrapping n + 1 to 1."""
        return self.k % self.n + 1

    def word(self) -> list[tuple[int, int]]:
        """The relator as (generator, exponent) letters."""
        if self.form is Form.PLUS:
            return [(self.j, 1), (self.k, 1), (self.j, -1), (self.next, -1)]
        return [(self.j, -1), (self.k, 1), (self.j, 1), (self.next, -1)]


@dataclass(frozen=True)
class WirtingerPresentation:
    n: int
    relations: tuple[Relation, ...]

    def to_json(self) -> str:
        return json.dumps(
            {
                "n": self.n,
                "relations": [
                    {"k": r.k, "j": r.j, "form": r.form.value} for r in self.relations
                ],
            }
        )

    @classmethod
    def from_json(cls, text: str) -> WirtingerPresentation:
        data = json.loads(text)
        n = data["n"]
        rels = tuple(Relation(r["k"], r["j"], Form(r["form"]), n) for r in data["relations"])
        return cls(n, rels)


def build_presentation(diagram: KnotDiagram) -> WirtingerPresentation:
    """One generator per arc, one relation per crossing.

    Positive crossings give the PLUS form and negative ones the MINUS form.
    """
    n = diagram.n
    rels = []
    for k in range(1, n + 1):
        sign = diagram.signs[k - 1]
        form = Form.PLUS if sign > 0 else Form.MINUS
        rels.append(Relation(k=k, j=diagram.over_arc[k - 1], form=form, n=n))
    return WirtingerPresentation(n=n, relations=tuple(rels))


_SUP = {1: "", -1: "⁻¹"}


def presentation_to_text(p: WirtingerPresentation) -> str:
    gens = ",".join(f"g{i}" for i in range(1, p.n + 1))
    words = ", ".join(
        " ".join(f"g{g}{_SUP[e]}" for g, e in r.word()) for r in p.relations
    )
    return f"⟨{gens} | {words}⟩"
