"""Hénon maps H(x, y) = (y, p(y) - a x) in normal form.

``p`` is monic of degree ``d >= 2`` with vanishing y^(d-1) coefficient. The
coefficients are kept as exact sympy numbers (so normalisation and symbolic
identity checks are exact); numerical work uses their double-precision
values, cached on first use. Scalars flowing through ``step``/``step_inverse``
may be Python ``complex`` or mpmath ``mpc``.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from numbers import Number
from typing import Sequence

import sympy

from .arith import is_finite, is_mp
from .errors import HenonError


def exact(v) -> sympy.Expr:
    """Exact sympy value of a scalar: ints, Fractions, floats (binary-exact), complex."""
    if isinstance(v, sympy.Basic):
        return v
    if isinstance(v, bool):
        raise TypeError("boolean is not a coefficient")
    if isinstance(v, int):
        return sympy.Integer(v)
    if isinstance(v, Fraction):
        return sympy.Rational(v.numerator, v.denominator)
    if isinstance(v, float):
        return sympy.Rational(v)
    if isinstance(v, complex):
        return sympy.Rational(v.real) + sympy.I * sympy.Rational(v.imag)
    if isinstance(v, str):
        return sympy.nsimplify(sympy.sympify(v), rational=True)
    if isinstance(v, Number):
        return exact(complex(v))
    raise TypeError(f"cannot interpret {v!r} as a coefficient")


@dataclass(frozen=True, slots=True)
class ComplexPair:
    x: complex
    y: complex

    def __post_init__(self):
        if not is_mp(self.x):
            object.__setattr__(self, "x", complex(self.x))
        if not is_mp(self.y):
            object.__setattr__(self, "y", complex(self.y))
        if not (is_finite(self.x) and is_finite(self.y)):
            raise HenonError("non-finite", f"point ({self.x}, {self.y}) is not finite")

    def __iter__(self):
        yield self.x
        yield self.y

    def __sub__(self, other: "ComplexPair") -> "ComplexPair":
        return ComplexPair(self.x - other.x, self.y - other.y)

    def norm(self) -> float:
        return float(max(abs(self.x), abs(self.y)))


@dataclass(frozen=True)
class MonicPoly:
    """p(y) = y^d + a_{d-2} y^{d-2} + ... + a_0; ``coeffs`` lists a_0 first."""

    d: int
    coeffs: tuple = ()

    def __post_init__(self):
        if self.d < 2:
            raise ValueError("degree must be at least 2")
        coeffs = tuple(exact(c) for c in self.coeffs)
        if len(coeffs) < self.d - 1:
            coeffs = coeffs + (sympy.Integer(0),) * (self.d - 1 - len(coeffs))
        if len(coeffs) != self.d - 1:
            raise ValueError(f"degree {self.d} needs exactly {self.d - 1} coefficients")
        object.__setattr__(self, "coeffs", coeffs)

    @cached_property
    def numeric(self) -> tuple[complex, ...]:
        return tuple(complex(c) for c in self.coeffs)

    @cached_property
    def horner(self) -> tuple[complex, ...]:
        # a_{d-2}, ..., a_0; Horner starts from y since the y^{d-1} coefficient is zero
        return tuple(reversed(self.numeric))

    @cached_property
    def coeff_abs_sum(self) -> float:
        return sum(abs(c) for c in self.numeric)

    def __call__(self, y):
        acc = y
        for c in self.horner:
            acc = acc * y + c
        return acc

    def expr(self, var: sympy.Symbol) -> sympy.Expr:
        return var**self.d + sum(c * var**i for i, c in enumerate(self.coeffs))

    def is_pure_power(self) -> bool:
        return all(c == 0 for c in self.coeffs)


@dataclass(frozen=True)
class HenonMap:
    p: MonicPoly
    a: sympy.Expr = field(default=sympy.Integer(1))

    def __post_init__(self):
        a = exact(self.a)
        if a == 0:
            raise HenonError("degenerate-map", "a must be nonzero")
        object.__setattr__(self, "a", a)

    @classmethod
    def make(cls, d: int, q: Sequence = (), a=1) -> "HenonMap":
        return cls(MonicPoly(d, tuple(q)), a)

    @property
    def d(self) -> int:
        return self.p.d

    @cached_property
    def a_num(self) -> complex:
        return complex(self.a)

    def step(self, x, y):
        return y, self.p(y) - self.a_num * x

    def step_inverse(self, x, y):
        return (self.p(x) - y) / self.a_num, x

    def describe(self) -> str:
        y = sympy.Symbol("y")
        return f"H(x,y) = (y, {sympy.expand(self.p.expr(y))} - ({self.a})*x)"


def apply(hmap: HenonMap, z: ComplexPair) -> ComplexPair:
    x, y = hmap.step(z.x, z.y)
    if not (is_finite(x) and is_finite(y)):
        raise HenonError("orbit-overflow", "image is not finite", last_index=0)
    return ComplexPair(x, y)


def apply_inverse(hmap: HenonMap, z: ComplexPair) -> ComplexPair:
    x, y = hmap.step_inverse(z.x, z.y)
    if not (is_finite(x) and is_finite(y)):
        raise HenonError("orbit-overflow", "preimage is not finite", last_index=0)
    return ComplexPair(x, y)


def iterate(hmap: HenonMap, z: ComplexPair, n: int) -> ComplexPair:
    """H^n(z) for any integer n; negative n iterates the inverse."""
    x, y = z.x, z.y
    step = hmap.step if n >= 0 else hmap.step_inverse
    for i in range(abs(n)):
        nx, ny = step(x, y)
        if not (is_finite(nx) and is_finite(ny)):
            raise HenonError("orbit-overflow", f"iterate {i + 1} is not finite", last_index=i)
        x, y = nx, ny
    return ComplexPair(x, y)


def escape_radius(hmap: HenonMap) -> float:
    """R0 = max(2, 2(1 + |a| + sum |a_i|)).

    On V+_{R0} one has |p(y) - a x| >= |y| (|y| - |a| - sum|a_i|) >= 2|y|, and the
    same radius works for H^-1 on V-_{R0}.
    """
    return max(2.0, 2.0 * (1.0 + abs(hmap.a_num) + hmap.p.coeff_abs_sum))


class Region(str, enum.Enum):
    V = "V"
    VPLUS = "Vplus"
    VMINUS = "Vminus"


@dataclass(frozen=True)
class FiltrationRegion:
    tag: Region
    radius: float


def region_of(x, y, radius: float) -> Region:
    ax, ay = abs(x), abs(y)
    if ay >= ax and ay >= radius:
        return Region.VPLUS
    if ax >= ay and ax >= radius:
        return Region.VMINUS
    return Region.V


def classify(hmap: HenonMap, z: ComplexPair, radius: float) -> FiltrationRegion:
    if radius < escape_radius(hmap):
        raise HenonError("radius-too-small", f"R={radius} is below the escape radius {escape_radius(hmap)}")
    return FiltrationRegion(region_of(z.x, z.y, radius), radius)


def normalize(p_raw: Sequence, a) -> tuple[HenonMap, sympy.Expr]:
    """Conjugate by T(x, y) = (x + t, y + t) to kill the y^(d-1) coefficient.

    ``p_raw`` lists all coefficients c_0, ..., c_d (ascending, c_d = 1). Returns the
    normalised map and the translation t = -c_{d-1}/d, so that
    T^-1 o H_raw o T = H with p(y) = p_raw(y + t) - (a + 1) t.
    """
    coeffs = [exact(c) for c in p_raw]
    d = len(coeffs) - 1
    if d < 2:
        raise ValueError("degree must be at least 2")
    if coeffs[-1] != 1:
        raise ValueError("p_raw must be monic")
    a = exact(a)
    if a == 0:
        raise HenonError("degenerate-map", "a must be nonzero")
    t = -coeffs[d - 1] / d
    y = sympy.Symbol("y")
    raw = sum(c * y**i for i, c in enumerate(coeffs))
    shifted = sympy.Poly(sympy.expand(raw.subs(y, y + t) - (a + 1) * t), y)
    new = [sympy.expand(shifted.coeff_monomial(y**i)) for i in range(d + 1)]
    assert new[d] == 1 and new[d - 1] == 0
    return HenonMap(MonicPoly(d, tuple(new[: d - 1])), a), t
