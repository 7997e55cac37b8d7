"""The model C x A_c: the polynomial Q, the lift (z, zeta) -> ((a/d) z + Q(zeta), zeta^d),
its deck group indexed by Z[1/d]/Z, and the constrained automorphisms (z, zeta) -> (beta z + gamma, alpha zeta).

Roots of unity are kept as integer exponents so that group laws are exact; complex
values are only formed when a transformation is applied to a point.
"""

from __future__ import annotations

import cmath
import math
import random
from dataclasses import dataclass
from functools import cached_property
from fractions import Fraction

import sympy

from .core import HenonMap, exact
from .dyadic import DyadicClass
from .errors import HenonError
from .reports import Report


def root_of_unity(k: int, n: int) -> complex:
    """e^{2 pi i k / n}, reduced first so the float is as accurate as possible."""
    k %= n
    if k == 0:
        return 1 + 0j
    if 2 * k == n:
        return -1 + 0j
    if 4 * k == n:
        return 1j
    if 4 * k == 3 * n:
        return -1j
    return cmath.exp(2j * math.pi * k / n)


@dataclass(frozen=True)
class QPoly:
    """Monic of degree d+1 with no zeta^d term; ``coeffs`` ascending, exact."""

    d: int
    coeffs: tuple

    def __post_init__(self):
        coeffs = tuple(exact(c) for c in self.coeffs)
        if len(coeffs) != self.d + 2 or coeffs[-1] != 1 or coeffs[-2] != 0:
            raise ValueError("Q must be monic of degree d+1 with zero zeta^d coefficient")
        object.__setattr__(self, "coeffs", coeffs)

    @cached_property
    def numeric(self) -> tuple[complex, ...]:
        return tuple(complex(c) for c in self.coeffs)

    @cached_property
    def _horner(self) -> tuple[complex, ...]:
        return tuple(reversed(self.numeric))

    def __call__(self, zeta):
        acc = 0
        for c in self._horner:
            acc = acc * zeta + c
        return acc

    def expr(self, var: sympy.Symbol) -> sympy.Expr:
        return sum(c * var**i for i, c in enumerate(self.coeffs))

    def is_pure_power(self) -> bool:
        return all(c == 0 for c in self.coeffs[:-1])


def q_poly(hmap: HenonMap) -> QPoly:
    d = hmap.d
    if d == 2:
        (a0,) = hmap.p.coeffs
        return QPoly(2, (0, -a0 / 2, 0, 1))
    if d == 3:
        a0, a1 = hmap.p.coeffs
        return QPoly(3, (a1**2 / 9, -a0 / 3, -a1 / 3, 0, 1))
    raise HenonError("q-coefficients-unavailable", f"Q is only tabulated for d in (2, 3), got d={d}")


@dataclass(frozen=True)
class ModelPoint:
    z: complex
    zeta: complex
    c: float

    def __post_init__(self):
        object.__setattr__(self, "z", complex(self.z))
        object.__setattr__(self, "zeta", complex(self.zeta))
        if not self.c > 0:
            raise HenonError("bad-level", "annulus level must be positive")
        r = abs(self.zeta)
        if not (1.0 < r and math.log(r) < self.c):
            raise HenonError("not-in-annulus", f"|zeta| = {r} is not in (1, e^{self.c})")

    def to_json(self) -> dict:
        return {"z": [self.z.real, self.z.imag], "zeta": [self.zeta.real, self.zeta.imag], "c": self.c}

    @classmethod
    def from_json(cls, data: dict) -> "ModelPoint":
        return cls(complex(*data["z"]), complex(*data["zeta"]), float(data["c"]))


def lift_apply(hmap: HenonMap, pt: ModelPoint, q: QPoly | None = None) -> ModelPoint:
    q = q or q_poly(hmap)
    d = hmap.d
    return ModelPoint(hmap.a_num / d * pt.z + q(pt.zeta), pt.zeta**d, d * pt.c)


def g_chain(hmap: HenonMap, pt: ModelPoint, n: int, q: QPoly | None = None) -> ModelPoint:
    """Closed form of the n-fold lift: ((a/d)^n s + sum_j (a/d)^(n-1-j) Q(t^(d^j)), t^(d^n))."""
    if n < 1:
        raise ValueError("n must be at least 1")
    q = q or q_poly(hmap)
    d = hmap.d
    r = hmap.a_num / d
    z = r**n * pt.z
    t = pt.zeta
    for j in range(n):
        z += r ** (n - 1 - j) * q(t)
        t = t**d
    return ModelPoint(z, t, d**n * pt.c)


@dataclass(frozen=True)
class DeckTransform:
    cls: DyadicClass
    m: int = 0

    def __post_init__(self):
        if self.m < 0:
            raise ValueError("level index must be nonnegative")

    @classmethod
    def of(cls, k: int, n: int, d: int, m: int = 0) -> "DeckTransform":
        return cls(DyadicClass(k, n, d), m)


def _deck_shift(hmap: HenonMap, q: QPoly, r: DyadicClass, zeta: complex) -> complex:
    d, k, n = hmap.d, r.k, r.n
    dn = d**n
    w = hmap.a_num
    total = 0j
    for l in range(n):
        rot = root_of_unity(k * d**l, dn)
        base = zeta ** (d**l)
        total += (d / w) ** (l + 1) * (q(base) - q(rot * base))
    return total


def deck_apply(hmap: HenonMap, g: DeckTransform, pt: ModelPoint, q: QPoly | None = None) -> ModelPoint:
    """(z, zeta) -> (z + sum_l (d/a)^(l+1) (Q(zeta^(d^l)) - Q((w zeta)^(d^l))), w zeta), w = e^{2 pi i k/d^n}."""
    q = q or q_poly(hmap)
    r = g.cls.mod_one()
    if r.k == 0:
        return pt
    rot = root_of_unity(r.k, hmap.d**r.n)
    return ModelPoint(pt.z + _deck_shift(hmap, q, r, pt.zeta), rot * pt.zeta, pt.c)


def deck_error_bound(hmap: HenonMap, g: DeckTransform, pt: ModelPoint, q: QPoly | None = None) -> float:
    """A priori floating-point bound on |z'| error of deck_apply (zeta' is a single product)."""
    q = q or q_poly(hmap)
    r = g.cls.mod_one()
    if r.k == 0:
        return 0.0
    d, n = hmap.d, r.n
    mags = [abs(c) for c in q.numeric]
    total = abs(pt.z)
    for l in range(n):
        b = abs(pt.zeta) ** (d**l)
        total += 2 * (d / abs(hmap.a_num)) ** (l + 1) * sum(m * b**i for i, m in enumerate(mags))
    return 4 * (len(mags) + d**n + 2 * n + 4) * 2.0**-52 * total


def _rel(u: complex, v: complex, scale: float) -> float:
    return abs(u - v) / (1.0 + scale)


def random_model_point(rng: random.Random, c: float, zeta_cap: float | None = None, z_box: float = 2.0) -> ModelPoint:
    """Uniform in log|zeta| on (0, min(c, zeta_cap)) and uniform arg; z in a square box."""
    top = min(c, zeta_cap) if zeta_cap is not None else c
    rho = math.exp(top * (0.02 + 0.96 * rng.random()))
    zeta = rho * cmath.exp(2j * math.pi * rng.random())
    z = complex(rng.uniform(-z_box, z_box), rng.uniform(-z_box, z_box))
    return ModelPoint(z, zeta, c)


def _log_cap(d: int, n: int, budget: float = 4.0) -> float:
    # keep |zeta|^((d+1) d^n) <= e^budget so every term of the sums stays moderate
    return budget / ((d + 1) * d**n)


def verify_comm_cover(hmap: HenonMap, n: int, m: int = 0, samples: int = 1000, seed: int = 0,
                      c: float = 1.0, tol: float = 1e-10) -> Report:
    """gamma^(m+1)_{1/d^n} o lift = lift o gamma^(m)_{1/d^(n+1)} at random points."""
    q = q_poly(hmap)
    d = hmap.d
    rng = random.Random(seed)
    level = d**m * c
    left_g = DeckTransform.of(1, n, d, m + 1)
    right_g = DeckTransform.of(1, n + 1, d, m)
    worst = 0.0
    for _ in range(samples):
        pt = random_model_point(rng, level, _log_cap(d, n + 1))
        lhs = deck_apply(hmap, left_g, lift_apply(hmap, pt, q), q)
        rhs = lift_apply(hmap, deck_apply(hmap, right_g, pt, q), q)
        scale = abs(lhs.z) + abs(rhs.z) + abs(pt.zeta) ** ((d + 1) * d ** (n + 1))
        worst = max(worst, _rel(lhs.z, rhs.z, scale), _rel(lhs.zeta, rhs.zeta, abs(lhs.zeta)))
    return Report(f"comm-cover n={n} m={m}", worst < tol, worst, tol, samples)


def verify_deck_group_law(hmap: HenonMap, max_n: int = 6, samples: int = 1000, seed: int = 0,
                          c: float = 1.0, tol: float = 1e-12) -> Report:
    """deck(r) o deck(s) = deck(r + s mod 1) for random classes with n <= max_n."""
    q = q_poly(hmap)
    d = hmap.d
    rng = random.Random(seed)
    worst = 0.0
    for _ in range(samples):
        n1, n2 = rng.randint(0, max_n), rng.randint(0, max_n)
        r = DyadicClass(rng.randrange(d**n1), n1, d)
        s = DyadicClass(rng.randrange(d**n2), n2, d)
        pt = random_model_point(rng, c, _log_cap(d, max_n))
        lhs = deck_apply(hmap, DeckTransform(r), deck_apply(hmap, DeckTransform(s), pt, q), q)
        rhs = deck_apply(hmap, DeckTransform(r + s), pt, q)
        scale = abs(lhs.z) + abs(rhs.z) + abs(pt.zeta) ** ((d + 1) * d**max_n) * (d / abs(hmap.a_num)) ** max_n
        worst = max(worst, _rel(lhs.z, rhs.z, scale), _rel(lhs.zeta, rhs.zeta, abs(lhs.zeta)))
    return Report(f"deck group law n<={max_n}", worst < tol, worst, tol, samples)


def verify_integer_deck_identity(hmap: HenonMap, samples: int = 100, seed: int = 0, c: float = 1.0) -> Report:
    """gamma_k for integer k fixes every point exactly."""
    rng = random.Random(seed)
    worst = 0.0
    for _ in range(samples):
        pt = random_model_point(rng, c)
        k = rng.randint(-5, 5)
        img = deck_apply(hmap, DeckTransform.of(k, 0, hmap.d), pt)
        worst = max(worst, abs(img.z - pt.z), abs(img.zeta - pt.zeta))
    return Report("integer deck is identity", worst == 0.0, worst, 0.0, samples)


def verify_g_chain(hmap: HenonMap, n: int = 3, samples: int = 100, seed: int = 0, c: float = 1.0,
                   tol: float = 1e-12) -> Report:
    q = q_poly(hmap)
    d = hmap.d
    rng = random.Random(seed)
    worst = 0.0
    for _ in range(samples):
        pt = random_model_point(rng, c, _log_cap(d, n))
        closed = g_chain(hmap, pt, n, q)
        step = pt
        for _ in range(n):
            step = lift_apply(hmap, step, q)
        worst = max(worst, _rel(closed.z, step.z, abs(closed.z)), _rel(closed.zeta, step.zeta, abs(closed.zeta)))
    return Report(f"g_chain n={n} vs composed lift", worst < tol, worst, tol, samples)


@dataclass(frozen=True)
class ModelAut:
    """(z, zeta) -> (beta z + gamma, alpha zeta) with alpha = e^{2 pi i s/(d^2-1)} and beta = alpha^(d+1).

    ``beta`` is determined by ``alpha``: alpha^(d+1) is a (d-1)-th root of unity.
    """

    d: int
    exponent: int
    gamma: complex = 0j

    def __post_init__(self):
        if self.d < 2:
            raise ValueError("degree must be at least 2")
        object.__setattr__(self, "exponent", self.exponent % self.order)
        object.__setattr__(self, "gamma", complex(self.gamma))

    @property
    def order(self) -> int:
        return self.d * self.d - 1

    @property
    def alpha(self) -> complex:
        return root_of_unity(self.exponent, self.order)

    @property
    def beta(self) -> complex:
        return root_of_unity(self.exponent * (self.d + 1), self.order)

    @property
    def beta_exponent(self) -> Fraction:
        """beta = e^{2 pi i t}, t returned in [0, 1)."""
        return Fraction(self.exponent * (self.d + 1) % self.order, self.order)

    @classmethod
    def identity(cls, d: int) -> "ModelAut":
        return cls(d, 0, 0j)

    @classmethod
    def from_values(cls, d: int, beta: complex, gamma: complex, alpha: complex, tol: float = 1e-12) -> "ModelAut":
        """Validate a numeric triple: beta^(d-1) = 1 and alpha^(d+1) = beta."""
        order = d * d - 1
        s = round(cmath.phase(alpha) / (2 * math.pi) * order) % order
        cand = cls(d, s, gamma)
        if abs(cand.alpha - alpha) > tol or abs(cand.beta - beta) > tol:
            raise HenonError("invalid-model-aut", "need beta^(d-1) = 1 and alpha^(d+1) = beta")
        return cand

    def to_json(self) -> dict:
        return {
            "d": self.d,
            "alpha_exponent": self.exponent,
            "order": self.order,
            "beta": [self.beta.real, self.beta.imag],
            "gamma": [self.gamma.real, self.gamma.imag],
            "alpha": [self.alpha.real, self.alpha.imag],
        }


def model_aut_compose(a2: ModelAut, a1: ModelAut) -> ModelAut:
    """a2 o a1 = (beta2 beta1, beta2 gamma1 + gamma2, alpha2 alpha1)."""
    if a1.d != a2.d:
        raise HenonError("invalid-model-aut", "degrees differ")
    return ModelAut(a1.d, a1.exponent + a2.exponent, a2.beta * a1.gamma + a2.gamma)


def model_aut_inverse(a: ModelAut) -> ModelAut:
    inv = ModelAut(a.d, -a.exponent)
    return ModelAut(a.d, -a.exponent, -inv.beta * a.gamma)


def model_aut_apply(a: ModelAut, pt: ModelPoint) -> ModelPoint:
    return ModelPoint(a.beta * pt.z + a.gamma, a.alpha * pt.zeta, pt.c)


def model_aut_normalizes_deck(hmap: HenonMap, a: ModelAut, g: DeckTransform, samples: int = 100,
                              seed: int = 0, c: float = 1.0, tol: float = 1e-12) -> Report:
    """Check A o gamma_r o A^-1 = gamma_r at random points (needs p = y^d)."""
    if not hmap.p.is_pure_power():
        raise HenonError("invalid-input", "normalizer check needs p = y^d")
    if a.d != hmap.d:
        raise HenonError("invalid-model-aut", "degrees differ")
    q = q_poly(hmap)
    d = hmap.d
    rng = random.Random(seed)
    inv = model_aut_inverse(a)
    worst = 0.0
    n = g.cls.n
    for _ in range(samples):
        pt = random_model_point(rng, c, _log_cap(d, n))
        lhs = model_aut_apply(a, deck_apply(hmap, g, model_aut_apply(inv, pt), q))
        rhs = deck_apply(hmap, g, pt, q)
        scale = abs(lhs.z) + abs(rhs.z) + abs(pt.zeta) ** ((d + 1) * d**n) * (d / abs(hmap.a_num)) ** max(n, 1)
        worst = max(worst, _rel(lhs.z, rhs.z, scale), _rel(lhs.zeta, rhs.zeta, abs(lhs.zeta)))
    return Report(f"aut normalizes deck {g.cls}", worst < tol, worst, tol, samples)
