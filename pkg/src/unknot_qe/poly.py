"""Sparse multivariate polynomials with exact integer coefficients.

Variables are the SU(2) coordinates ``a_k, b_k, c_k, d_k`` flattened to the
index ``4 * (k - 1) + comp``.  A monomial is a tuple of ``(index, exponent)``
pairs sorted by index; the constant monomial is ``()``.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

__all__ = ["Var", "MultiPoly", "COMPONENTS", "var_index", "var_of", "var_name"]

COMPONENTS = "abcd"

Monomial = tuple  # tuple[tuple[int, int], ...]


@dataclass(frozen=True, order=True)
class Var:
    gen: int
    comp: str

    def __post_init__(self):
        if self.gen < 1 or self.comp not in COMPONENTS:
            raise ValueError(f"bad variable {self.comp}_{self.gen}")

    @property
    def index(self) -> int:
        return var_index(self.gen, self.comp)

    def __str__(self) -> str:
        return f"{self.comp}_{self.gen}"


def var_index(gen: int, comp: str) -> int:
    return 4 * (gen - 1) + COMPONENTS.index(comp)


def var_of(index: int) -> Var:
    return Var(index // 4 + 1, COMPONENTS[index % 4])


def var_name(index: int) -> str:
    return f"{COMPONENTS[index % 4]}_{index // 4 + 1}"


def _mono_mul(m1: Monomial, m2: Monomial) -> Monomial:
    if not m1:
        return m2
    if not m2:
        return m1
    out = dict(m1)
    for v, e in m2:
        out[v] = out.get(v, 0) + e
    return tuple(sorted(out.items()))


def _mono_degree(m: Monomial) -> int:
    return sum(e for _, e in m)


def _grlex_key(m: Monomial):
    # ascending sort on this key lists monomials in descending grlex order
    return (-_mono_degree(m), tuple((v, -e) for v, e in m))


class MultiPoly:
    """Immutable polynomial; ``terms`` maps monomials to nonzero ints."""

    __slots__ = ("_terms", "_hash")

    def __init__(self, terms: Mapping[Monomial, int] | None = None):
        clean = {}
        if terms:
            for m, c in terms.items():
                if c:
                    if not isinstance(c, int):
                        raise TypeError("coefficients must be integers")
                    clean[m] = c
        self._terms = clean
        self._hash = None

    @classmethod
    def const(cls, c: int) -> MultiPoly:
        return cls({(): c})

    @classmethod
    def var(cls, gen: int, comp: str) -> MultiPoly:
        return cls({((var_index(gen, comp), 1),): 1})

    @classmethod
    def from_index(cls, index: int) -> MultiPoly:
        return cls({((index, 1),): 1})

    @property
    def terms(self) -> dict:
        return dict(self._terms)

    def items(self):
        """Terms in descending graded-lex order."""
        return sorted(self._terms.items(), key=lambda t: _grlex_key(t[0]))

    def __bool__(self) -> bool:
        return bool(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def __len__(self) -> int:
        return len(self._terms)

    def __eq__(self, other) -> bool:
        if isinstance(other, int):
            other = MultiPoly.const(other)
        if not isinstance(other, MultiPoly):
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(frozenset(self._terms.items()))
        return self._hash

    def __add__(self, other) -> MultiPoly:
        if isinstance(other, int):
            other = MultiPoly.const(other)
        out = dict(self._terms)
        for m, c in other._terms.items():
            out[m] = out.get(m, 0) + c
        return MultiPoly(out)

    __radd__ = __add__

    def __neg__(self) -> MultiPoly:
        return MultiPoly({m: -c for m, c in self._terms.items()})

    def __sub__(self, other) -> MultiPoly:
        if isinstance(other, int):
            other = MultiPoly.const(other)
        return self + (-other)

    def __rsub__(self, other) -> MultiPoly:
        return (-self) + other

    def __mul__(self, other) -> MultiPoly:
        if isinstance(other, int):
            return MultiPoly({m: c * other for m, c in self._terms.items()})
        out: dict = {}
        for m1, c1 in self._terms.items():
            for m2, c2 in other._terms.items():
                m = _mono_mul(m1, m2)
                out[m] = out.get(m, 0) + c1 * c2
        return MultiPoly(out)

    __rmul__ = __mul__

    def __pow__(self, k: int) -> MultiPoly:
        if k < 0:
            raise ValueError("negative power")
        out = MultiPoly.const(1)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def degree(self) -> int:
        """Total degree; -1 for the zero polynomial."""
        return max((_mono_degree(m) for m in self._terms), default=-1)

    def diff(self, index: int) -> MultiPoly:
        """Partial derivative with respect to variable ``index``."""
        out: dict = {}
        for m, c in self._terms.items():
            for pos, (v, e) in enumerate(m):
                if v == index:
                    rest = m[:pos] + (((v, e - 1),) if e > 1 else ()) + m[pos + 1:]
                    out[rest] = out.get(rest, 0) + c * e
        return MultiPoly(out)

    def substitute(self, mapping: Mapping[int, int | None]) -> MultiPoly:
        """Rename variables; a variable mapped to None is set to zero.

        Unlisted variables keep their index.
        """
        out: dict = {}
        for m, c in self._terms.items():
            new: dict = {}
            for v, e in m:
                target = mapping.get(v, v)
                if target is None:
                    break
                new[target] = new.get(target, 0) + e
            else:
                key = tuple(sorted(new.items()))
                out[key] = out.get(key, 0) + c
        return MultiPoly(out)

    def coefficients(self) -> set[int]:
        return set(self._terms.values())

    def variables(self) -> set[int]:
        return {v for m in self._terms for v, _ in m}

    def evaluate(self, point: Sequence | Mapping):
        """Value at ``point`` (indexable by variable index, or a Var-keyed map).

        Exact for ``Fraction``/``int`` and ring elements; float input uses
        a correctly rounded final summation.
        """
        if isinstance(point, Mapping):
            lookup = {}
            for key, val in point.items():
                lookup[key.index if isinstance(key, Var) else key] = val
        else:
            lookup = point
        values = []
        for m, c in self._terms.items():
            t = c
            for v, e in m:
                try:
                    x = lookup[v]
                except (KeyError, IndexError):
                    raise KeyError(f"no value assigned to {var_name(v)}") from None
                t = t * (x ** e if e > 1 else x)
            values.append(t)
        if any(isinstance(t, float) for t in values) and all(
            isinstance(t, (float, int)) for t in values
        ):
            return math.fsum(values)
        total = 0
        for t in values:
            total = total + t
        return total

    def __call__(self, point):
        return self.evaluate(point)

    def to_dict(self) -> dict[str, int]:
        return {_mono_str(m): c for m, c in self.items()}

    @classmethod
    def from_dict(cls, data: Mapping[str, int]) -> MultiPoly:
        return cls({_parse_mono(s): int(c) for s, c in data.items()})

    def __str__(self) -> str:
        if not self._terms:
            return "0"
        parts = []
        for m, c in self.items():
            body = _mono_str(m)
            if not m:
                s = str(abs(c))
            elif abs(c) == 1:
                s = body
            else:
                s = f"{abs(c)}*{body}"
            parts.append(("- " if c < 0 else "+ ") + s)
        text = " ".join(parts)
        return text[2:] if text.startswith("+ ") else "-" + text[2:]

    def __repr__(self) -> str:
        return f"MultiPoly({self})"


def _mono_str(m: Monomial) -> str:
    if not m:
        return "1"
    return "*".join(var_name(v) + (f"^{e}" if e > 1 else "") for v, e in m)


def _parse_mono(s: str) -> Monomial:
    if s == "1":
        return ()
    out = {}
    for factor in s.split("*"):
        name, _, exp = factor.partition("^")
        comp, _, gen = name.partition("_")
        idx = var_index(int(gen), comp)
        out[idx] = out.get(idx, 0) + (int(exp) if exp else 1)
    return tuple(sorted(out.items()))


def sum_of_squares(polys: Iterable[MultiPoly]) -> MultiPoly:
    total = MultiPoly()
    for p in polys:
        total = total + p * p
    return total


def as_fraction_point(values: Iterable) -> list[Fraction]:
    return [Fraction(v) for v in values]
