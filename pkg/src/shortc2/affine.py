"""Diagonal affine symmetries L_eta(x, y) = (eta x, eta^d y), eta^(d^2-1) = 1, of a Hénon map.

Candidates are indexed by the exponent s with eta = e^{2 pi i s/(d^2-1)}. A candidate
preserves the escaping sets iff p(f y) = e p(y) and p(e y) = f p(y) with e = eta,
f = eta^d; coefficientwise this is pure exponent arithmetic modulo d^2 - 1.

Symbolic identities are checked in Q[t]/Phi_L(t), L = lcm(d^2 - 1, 4), where
t = e^{2 pi i/L}; the factor 4 makes i = t^(L/4) available for Gaussian-rational data.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass

import sympy

from .core import ComplexPair, HenonMap
from .greens import green_plus
from .modelspace import root_of_unity
from .reports import Report


@dataclass(frozen=True)
class DiagonalSym:
    d: int
    exponent: int

    def __post_init__(self):
        object.__setattr__(self, "exponent", self.exponent % self.modulus)

    @property
    def modulus(self) -> int:
        return self.d * self.d - 1

    @property
    def eta(self) -> complex:
        return root_of_unity(self.exponent, self.modulus)

    @property
    def e(self) -> complex:
        return self.eta

    @property
    def f(self) -> complex:
        return root_of_unity(self.exponent * self.d, self.modulus)

    def apply(self, z: ComplexPair) -> ComplexPair:
        return ComplexPair(self.e * z.x, self.f * z.y)

    def compose(self, other: "DiagonalSym") -> "DiagonalSym":
        return DiagonalSym(self.d, self.exponent + other.exponent)

    def inverse(self) -> "DiagonalSym":
        return DiagonalSym(self.d, -self.exponent)


@dataclass(frozen=True)
class AffineGroup:
    d: int
    order: int
    generator_exponent: int
    elements: tuple[DiagonalSym, ...]

    def to_json(self) -> dict:
        return {
            "d": self.d,
            "modulus": self.d * self.d - 1,
            "order": self.order,
            "generator_exponent": self.generator_exponent,
            "elements": [s.exponent for s in self.elements],
        }


def _accepts(hmap: HenonMap, s: int) -> bool:
    d = hmap.d
    n = d * d - 1
    for j, c in enumerate(hmap.p.coeffs):
        if c == 0:
            continue
        if (d * j * s - s) % n or (j * s - d * s) % n:
            return False
    return True


def affine_preservers(hmap: HenonMap) -> AffineGroup:
    d = hmap.d
    n = d * d - 1
    accepted = [s for s in range(n) if _accepts(hmap, s)]
    step = math.gcd(n, *accepted)
    return AffineGroup(d, n // step, step % n, tuple(DiagonalSym(d, s) for s in accepted))


class _Cyclotomic:
    """Exact arithmetic in Q(i)(e^{2 pi i/N}) realised as Q[t]/Phi_L(t)."""

    def __init__(self, n: int):
        self.L = n * 4 // math.gcd(n, 4)
        self.n = n
        self.t = sympy.Symbol("t")
        self.phi = sympy.Poly(sympy.cyclotomic_poly(self.L, self.t), self.t)

    def root(self, k: int) -> sympy.Expr:
        """e^{2 pi i k/N}."""
        return self.t ** ((k % self.n) * (self.L // self.n))

    def embed(self, value: sympy.Expr) -> sympy.Expr:
        re, im = sympy.re(value), sympy.im(value)
        return re + im * self.t ** (self.L // 4)

    def is_zero(self, expr: sympy.Expr) -> bool:
        return self.reduce(expr) == 0

    def reduce(self, expr: sympy.Expr) -> sympy.Expr:
        poly = sympy.Poly(sympy.expand(expr), self.t)
        return poly.rem(self.phi).as_expr()


def _symbolic_map(hmap: HenonMap, cyc: _Cyclotomic):
    p_coeffs = [cyc.embed(c) for c in hmap.p.coeffs]
    a = cyc.embed(hmap.a)
    d = hmap.d

    def p(v):
        return v**d + sum(c * v**i for i, c in enumerate(p_coeffs))

    def step(x, y):
        return y, p(y) - a * x

    return step


def _compare(cyc: _Cyclotomic, lhs, rhs, x, y) -> tuple[bool, str | None]:
    for k, (u, v) in enumerate(zip(lhs, rhs)):
        diff = sympy.Poly(sympy.expand(u - v), x, y)
        for monom, coeff in diff.terms():
            if not cyc.is_zero(coeff):
                return False, f"coordinate {k}, monomial x^{monom[0]} y^{monom[1]}: {cyc.reduce(coeff)}"
    return True, None


def verify_L_semiconjugacy(hmap: HenonMap, exponent: int) -> Report:
    """Exact check of H o L_eta = L_{eta^d} o H."""
    d = hmap.d
    n = d * d - 1
    cyc = _Cyclotomic(n)
    x, y = sympy.symbols("x y")
    step = _symbolic_map(hmap, cyc)
    e, f = cyc.root(exponent), cyc.root(exponent * d)
    ff = cyc.root(exponent * d * d)
    lhs = step(e * x, f * y)
    hx, hy = step(x, y)
    rhs = (f * hx, ff * hy)
    ok, where = _compare(cyc, lhs, rhs, x, y)
    details = {"exponent": exponent % n, "modulus": n}
    if where:
        details["offending"] = where
    return Report(f"H o L = L^d o H (eta exponent {exponent % n})", ok, 0.0 if ok else 1.0, 0.0, 1, details)


def verify_commute_H2(hmap: HenonMap, sym: DiagonalSym, samples: int = 1000, seed: int = 0,
                      tol: float = 1e-10, symbolic: bool = True) -> Report:
    """L o H^2 = H^2 o L: numerically at random points and, optionally, exactly."""
    rng = random.Random(seed)
    worst = 0.0
    for _ in range(samples):
        z = ComplexPair(complex(rng.uniform(-2, 2), rng.uniform(-2, 2)), complex(rng.uniform(-2, 2), rng.uniform(-2, 2)))
        lhs = sym.apply(ComplexPair(*hmap.step(*hmap.step(z.x, z.y))))
        w = sym.apply(z)
        rhs = ComplexPair(*hmap.step(*hmap.step(w.x, w.y)))
        scale = max(1.0, lhs.norm(), rhs.norm())
        worst = max(worst, (lhs - rhs).norm() / scale)
    ok = worst < tol
    details = {"exponent": sym.exponent, "modulus": sym.modulus}
    if symbolic:
        cyc = _Cyclotomic(sym.modulus)
        x, y = sympy.symbols("x y")
        step = _symbolic_map(hmap, cyc)
        e, f = cyc.root(sym.exponent), cyc.root(sym.exponent * sym.d)
        u, v = step(*step(x, y))
        lhs = (e * u, f * v)
        rhs = step(*step(e * x, f * y))
        exact_ok, where = _compare(cyc, lhs, rhs, x, y)
        details["symbolic"] = exact_ok
        if where:
            details["offending"] = where
        ok = ok and exact_ok
    return Report(f"L o H^2 = H^2 o L (eta exponent {sym.exponent})", ok, worst, tol, samples, details)


def green_invariance(hmap: HenonMap, sym: DiagonalSym, points, tol: float = 1e-10) -> Report:
    """|G+(L z) - G+(z)| against the combined certified bounds at escaping points."""
    worst_ratio = 0.0
    worst = 0.0
    used = 0
    for z in points:
        g1 = green_plus(hmap, z, tol=tol)
        g2 = green_plus(hmap, sym.apply(z), tol=tol)
        if not (g1.escaped and g2.escaped):
            continue
        used += 1
        gap = abs(g1.value - g2.value)
        worst = max(worst, gap)
        worst_ratio = max(worst_ratio, gap / (g1.error_bound + g2.error_bound))
    return Report(f"G+ o L = G+ (eta exponent {sym.exponent})", worst_ratio <= 1.0, worst, 2 * tol, used,
                  {"worst_gap_over_bound": worst_ratio})

