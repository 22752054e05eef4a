"""Fox p-colorings and the binary dihedral representations they induce.

A coloring assigns residues mod p to the generators so that at every
relation ``2 c_j = c_k + c_{k+1}``.  Sending ``g_k`` to the traceless unit
quaternion ``cos(2 pi c_k / p) i + sin(2 pi c_k / p) j`` satisfies every
relation exactly, since conjugating ``u(t)`` by ``u(s)`` gives ``u(2s - t)``.
"""
from __future__ import annotations

import itertools
import json
from dataclasses import dataclass
from fractions import Fraction

from .cyclotomic import CyclotomicField
from .representation import Representation
from .wirtinger import WirtingerPresentation

__all__ = [
    "Coloring",
    "DEFAULT_PRIMES",
    "count_colorings",
    "count_colorings_brute",
    "is_colorable",
    "find_coloring",
    "coloring_to_rep",
    "coloring_report",
]

DEFAULT_PRIMES = (3, 5, 7, 11, 13)


@dataclass(frozen=True)
class Coloring:
    p: int
    colors: tuple[int, ...]

    def is_valid(self, pres: WirtingerPresentation) -> bool:
        c = self.colors
        return len(c) == pres.n and all(
            (2 * c[r.j - 1] - c[r.k - 1] - c[r.next - 1]) % self.p == 0
            for r in pres.relations
        )

    def is_trivial(self) -> bool:
        return len(set(self.colors)) <= 1


def _check_prime(p: int) -> None:
    if p < 3 or p % 2 == 0 or any(p % d == 0 for d in range(3, int(p ** 0.5) + 1, 2)):
        raise ValueError(f"{p} is not an odd prime")


def _coloring_matrix(pres: WirtingerPresentation, p: int) -> list[list[int]]:
    rows = []
    for r in pres.relations:
        row = [0] * pres.n
        row[r.j - 1] += 2
        row[r.k - 1] -= 1
        row[r.next - 1] -= 1
        rows.append([x % p for x in row])
    return rows


def _nullspace_mod_p(rows: list[list[int]], n: int, p: int) -> list[list[int]]:
    """Reduced row echelon form mod p; returns a basis of the kernel."""
    rows = [list(r) for r in rows]
    pivots = []
    rank = 0
    for col in range(n):
        piv = next((i for i in range(rank, len(rows)) if rows[i][col]), None)
        if piv is None:
            continue
        rows[rank], rows[piv] = rows[piv], rows[rank]
        inv = pow(rows[rank][col], -1, p)
        rows[rank] = [x * inv % p for x in rows[rank]]
        for i in range(len(rows)):
            if i != rank and rows[i][col]:
                f = rows[i][col]
                rows[i] = [(x - f * y) % p for x, y in zip(rows[i], rows[rank])]
        pivots.append(col)
        rank += 1
    free = [c for c in range(n) if c not in pivots]
    basis = []
    for fc in free:
        v = [0] * n
        v[fc] = 1
        for i, pc in enumerate(pivots):
            v[pc] = -rows[i][fc] % p
        basis.append(v)
    return basis


def count_colorings(pres: WirtingerPresentation, p: int) -> int:
    _check_prime(p)
    if pres.n < 1:
        raise ValueError("coloring count needs n >= 1")
    return p ** len(_nullspace_mod_p(_coloring_matrix(pres, p), pres.n, p))


def count_colorings_brute(pres: WirtingerPresentation, p: int) -> int:
    """Enumerate all p^n assignments.  Test oracle; exponential."""
    total = 0
    for colors in itertools.product(range(p), repeat=pres.n):
        if Coloring(p, colors).is_valid(pres):
            total += 1
    return total


def is_colorable(pres: WirtingerPresentation, p: int) -> bool:
    return count_colorings(pres, p) > p


def find_coloring(pres: WirtingerPresentation, p: int) -> Coloring | None:
    """A nontrivial coloring normalized to c_1 = 0, or None.

    The first nonzero color is taken below p/2, so the matching
    representation is already in gauge normal form.
    """
    _check_prime(p)
    basis = _nullspace_mod_p(_coloring_matrix(pres, p), pres.n, p)
    for v in basis:
        if len(set(v)) > 1:
            shift = v[0]
            col = [(x - shift) % p for x in v]
            first = next(x for x in col if x)
            if 2 * first > p:
                col = [(-x) % p for x in col]
            return Coloring(p, tuple(col))
    return None


def coloring_to_rep(col: Coloring, pres: WirtingerPresentation | None = None) -> Representation:
    """Exact binary dihedral representation with coordinates in Q(zeta_4p)."""
    if pres is not None and not col.is_valid(pres):
        raise ValueError("coloring violates a relation congruence")
    field = CyclotomicField(4 * col.p)
    zero = field.from_rational(0)
    pts = []
    for c in col.colors:
        pts.append((zero, field.cos_2pi(c, col.p), field.sin_2pi(c, col.p), zero))
    return Representation.from_exact(pts)


def coloring_report(pres: WirtingerPresentation, primes=DEFAULT_PRIMES) -> dict:
    out = {}
    for p in primes:
        count = count_colorings(pres, p)
        out[str(p)] = {"count": count, "colorable": count > p}
    return out


def coloring_report_json(pres: WirtingerPresentation, primes=DEFAULT_PRIMES) -> str:
    return json.dumps({"n": pres.n, "primes": coloring_report(pres, primes)}, sort_keys=False)


def rational_point(values) -> list[Fraction]:
    return [Fraction(v) for v in values]
