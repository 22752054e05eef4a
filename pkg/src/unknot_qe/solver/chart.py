"""Gauge-fixed coordinates and the flat arrays the box kernels consume.

Every representation is conjugate to one with ``c_1 = d_1 = 0``,
``b_1 >= 0`` and, for a chosen generator ``m != 1``, ``d_m = 0`` and
``c_m >= 0``: first rotate the vector part of ``g_1`` onto the ``i`` axis,
then spin about that axis (which fixes ``g_1``) until ``g_m`` has no ``k``
component.  The chart drops the three pinned coordinates and, with
``shared_trace``, ties every ``a_k`` to ``a_1``.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ..poly import MultiPoly, var_index, var_name
from ..polysys import RealSystem

__all__ = ["Chart", "CompiledPolys", "compile_polys", "compile_system"]


@dataclass(frozen=True)
class Chart:
    n: int
    m: int = 2
    shared_trace: bool = False

    def __post_init__(self):
        if self.n >= 2 and not 2 <= self.m <= self.n:
            raise ValueError(f"gauge generator m={self.m} out of range")

    @property
    def pinned(self) -> tuple[int, ...]:
        out = [var_index(1, "c"), var_index(1, "d")]
        if self.n >= 2:
            out.append(var_index(self.m, "d"))
        return tuple(out)

    @property
    def free(self) -> tuple[int, ...]:
        """Full variable indices that are chart coordinates, in order."""
        skip = set(self.pinned)
        if self.shared_trace:
            skip |= {var_index(k, "a") for k in range(2, self.n + 1)}
        return tuple(i for i in range(4 * self.n) if i not in skip)

    @property
    def dim(self) -> int:
        return len(self.free)

    def mapping(self) -> dict[int, int | None]:
        """Full index -> chart index (None means pinned to zero)."""
        pos = {v: i for i, v in enumerate(self.free)}
        out: dict[int, int | None] = {v: None for v in self.pinned}
        for v, i in pos.items():
            out[v] = i
        if self.shared_trace:
            a1 = pos[var_index(1, "a")]
            for k in range(2, self.n + 1):
                out[var_index(k, "a")] = a1
        return out

    def bounds(self) -> tuple[np.ndarray, np.ndarray]:
        lo = np.full(self.dim, -1.0)
        hi = np.full(self.dim, 1.0)
        pos = {v: i for i, v in enumerate(self.free)}
        lo[pos[var_index(1, "b")]] = 0.0
        if self.n >= 2:
            lo[pos[var_index(self.m, "c")]] = 0.0
        return lo, hi

    def names(self) -> list[str]:
        return [var_name(v) for v in self.free]

    def lift(self, x) -> np.ndarray:
        """Chart point -> full coordinate vector."""
        full = np.zeros(4 * self.n)
        for v, i in self.mapping().items():
            if i is not None:
                full[v] = x[i]
        return full

    def project(self, full) -> np.ndarray:
        """Full coordinates (assumed inside the chart) -> chart point."""
        return np.array([full[v] for v in self.free], dtype=float)


@dataclass(frozen=True)
class CompiledPolys:
    """Polynomials of degree <= 2 as flat term arrays.

    Polynomial ``i`` owns terms ``ptr[i]:ptr[i+1]``; a term is
    ``coef * x[v1] * x[v2]`` with ``v2 == -1`` for linear terms and
    ``v1 == v2`` for squares.
    """

    ptr: np.ndarray
    const: np.ndarray
    coef: np.ndarray
    v1: np.ndarray
    v2: np.ndarray

    @property
    def count(self) -> int:
        return len(self.const)

    def evaluate(self, x: np.ndarray) -> np.ndarray:
        """Float values at one point."""
        x = np.asarray(x, dtype=float)
        second = np.where(self.v2 >= 0, x[np.maximum(self.v2, 0)], 1.0)
        vals = self.coef * x[self.v1] * second
        owner = np.repeat(np.arange(self.count), np.diff(self.ptr))
        return self.const + np.bincount(owner, weights=vals, minlength=self.count)

    def jacobian(self, x: np.ndarray, dim: int) -> np.ndarray:
        x = np.asarray(x, dtype=float)
        owner = np.repeat(np.arange(self.count), np.diff(self.ptr))
        J = np.zeros((self.count, dim))
        lin = self.v2 < 0
        np.add.at(J, (owner[lin], self.v1[lin]), self.coef[lin])
        quad = ~lin
        v2q = self.v2[quad]
        np.add.at(J, (owner[quad], self.v1[quad]), self.coef[quad] * x[v2q])
        np.add.at(J, (owner[quad], v2q), self.coef[quad] * x[self.v1[quad]])
        return J


def compile_polys(polys) -> CompiledPolys:
    ptr = [0]
    const = []
    coef, v1, v2 = [], [], []
    for p in polys:
        c0 = 0
        for mono, c in p.items():
            if not mono:
                c0 = c
                continue
            if len(mono) == 1:
                (v, e), = mono
                if e == 1:
                    coef.append(c); v1.append(v); v2.append(-1)
                elif e == 2:
                    coef.append(c); v1.append(v); v2.append(v)
                else:
                    raise ValueError("degree > 2 term in compiled polynomial")
            elif len(mono) == 2 and mono[0][1] == mono[1][1] == 1:
                coef.append(c); v1.append(mono[0][0]); v2.append(mono[1][0])
            else:
                raise ValueError("degree > 2 term in compiled polynomial")
        const.append(c0)
        ptr.append(len(coef))
    return CompiledPolys(
        ptr=np.array(ptr, dtype=np.int64),
        const=np.array(const, dtype=float),
        coef=np.array(coef, dtype=float),
        v1=np.array(v1, dtype=np.int64),
        v2=np.array(v2, dtype=np.int64),
    )


def compile_system(sys: RealSystem, chart: Chart) -> tuple[CompiledPolys, CompiledPolys]:
    """(equality members, inequality differences) in chart coordinates."""
    mapping = chart.mapping()
    members = [q.substitute(mapping) for q in sys.members()]
    members = [q for q in members if not q.is_zero()]
    diffs = [d.substitute(mapping) for d in sys.n_source]
    diffs = [d for d in diffs if not d.is_zero()]
    return compile_polys(members), compile_polys(diffs)


def substituted_members(sys: RealSystem, chart: Chart) -> list[MultiPoly]:
    mapping = chart.mapping()
    return [q.substitute(mapping) for q in sys.members()]
