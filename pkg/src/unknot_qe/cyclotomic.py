"""Exact arithmetic in the cyclotomic field Q(zeta_m).

Binary dihedral witnesses built from a p-coloring have coordinates
cos(2 pi c / p) and sin(2 pi c / p), all of which live in Q(zeta_{4p}).
Elements are coefficient vectors over the power basis, reduced modulo the
m-th cyclotomic polynomial.
"""
from __future__ import annotations

import cmath
import math
from fractions import Fraction
from functools import lru_cache

__all__ = ["CyclotomicField", "CycNumber"]


def _polydiv_exact(num: list[int], den: list[int]) -> list[int]:
    # coefficient lists are lowest degree first; den is monic
    num = list(num)
    out = [0] * (len(num) - len(den) + 1)
    for i in range(len(out) - 1, -1, -1):
        q = num[i + len(den) - 1]
        out[i] = q
        if q:
            for t, d in enumerate(den):
                num[i + t] -= q * d
    assert not any(num), "inexact cyclotomic division"
    return out


@lru_cache(maxsize=None)
def cyclotomic_poly(m: int) -> tuple[int, ...]:
    poly = [-1] + [0] * (m - 1) + [1]
    for d in range(1, m):
        if m % d == 0:
            poly = _polydiv_exact(poly, list(cyclotomic_poly(d)))
    return tuple(poly)


class CyclotomicField:
    _cache: dict = {}

    def __new__(cls, m: int):
        if m in cls._cache:
            return cls._cache[m]
        self = super().__new__(cls)
        self.m = m
        self.modulus = cyclotomic_poly(m)
        self.degree = len(self.modulus) - 1
        cls._cache[m] = self
        return self

    def __repr__(self) -> str:
        return f"CyclotomicField({self.m})"

    def __reduce__(self):
        return (CyclotomicField, (self.m,))

    def zeta(self, k: int = 1) -> CycNumber:
        k %= self.m
        coeffs = [Fraction(0)] * max(k + 1, 1)
        coeffs[k] = Fraction(1)
        return CycNumber(self, coeffs)

    def from_rational(self, q) -> CycNumber:
        return CycNumber(self, [Fraction(q)])

    def cos_2pi(self, num: int, den: int) -> CycNumber:
        """cos(2 pi num / den); requires den | m."""
        k = num * (self.m // den)
        return (self.zeta(k) + self.zeta(-k)) * Fraction(1, 2)

    def sin_2pi(self, num: int, den: int) -> CycNumber:
        """sin(2 pi num / den); requires den | m and 4 | m (for i)."""
        k = num * (self.m // den)
        minus_i = self.zeta(3 * self.m // 4)
        return (self.zeta(k) - self.zeta(-k)) * minus_i * Fraction(1, 2)


class CycNumber:
    __slots__ = ("field", "coeffs")

    def __init__(self, field: CyclotomicField, coeffs):
        self.field = field
        self.coeffs = _reduce(list(coeffs), field.modulus)

    def _coerce(self, other) -> CycNumber:
        if isinstance(other, CycNumber):
            if other.field is not self.field:
                raise ValueError("mixing cyclotomic fields")
            return other
        if isinstance(other, (int, Fraction)):
            return CycNumber(self.field, [Fraction(other)])
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        a, b = self.coeffs, other.coeffs
        size = max(len(a), len(b))
        return CycNumber(
            self.field,
            [(a[i] if i < len(a) else 0) + (b[i] if i < len(b) else 0) for i in range(size)],
        )

    __radd__ = __add__

    def __neg__(self):
        return CycNumber(self.field, [-c for c in self.coeffs])

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return CycNumber(self.field, [c * other for c in self.coeffs])
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        out = [Fraction(0)] * (len(self.coeffs) + len(other.coeffs))
        for i, x in enumerate(self.coeffs):
            if x:
                for j, y in enumerate(other.coeffs):
                    out[i + j] += x * y
        return CycNumber(self.field, out)

    __rmul__ = __mul__

    def __pow__(self, e: int):
        out = CycNumber(self.field, [Fraction(1)])
        for _ in range(e):
            out = out * self
        return out

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def __bool__(self) -> bool:
        return not self.is_zero()

    def __eq__(self, other) -> bool:
        other = self._coerce(other)
        if other is NotImplemented:
            return False
        return (self - other).is_zero()

    def __hash__(self):
        return hash(tuple(self.coeffs))

    def __complex__(self) -> complex:
        w = cmath.exp(2j * math.pi / self.field.m)
        return sum((complex(c) * w ** i for i, c in enumerate(self.coeffs)), 0j)

    def __float__(self) -> float:
        return complex(self).real

    def __repr__(self) -> str:
        return f"CycNumber({float(self):.17g}, m={self.field.m})"


def _reduce(coeffs: list, modulus: tuple[int, ...]) -> list:
    deg = len(modulus) - 1
    coeffs = [Fraction(c) for c in coeffs]
    for i in range(len(coeffs) - 1, deg - 1, -1):
        q = coeffs[i]
        if q:
            for t in range(deg + 1):
                coeffs[i - deg + t] -= q * modulus[t]
    coeffs = coeffs[:deg] if len(coeffs) > deg else coeffs
    while coeffs and not coeffs[-1]:
        coeffs.pop()
    return coeffs


def conjugate(x: CycNumber) -> CycNumber:
    """Complex conjugate (zeta -> zeta^-1)."""
    m = x.field.m
    out = [Fraction(0)] * m
    for i, c in enumerate(x.coeffs):
        out[(-i) % m] += c
    return CycNumber(x.field, out)


def is_real(x) -> bool:
    if isinstance(x, CycNumber):
        return conjugate(x) == x
    return True
