"""Certified forward/backward Green's functions and sub-level membership.

On V+_R the orbit satisfies y_{k+1} = y_k^d (1 + u_k) with
|u_k| <= f(|y_k|) := (A |y_k|^{d-2} + |a| |y_k|) / |y_k|^d, A = sum |a_i|, and f
decreasing while |y_k| at least doubles. Hence after n steps

    |G+(z) - d^-n log|y_n||  <=  sum_{k>=n} d^-(k+1) (-log(1 - f(|y_n|)))
                             =   d^-n (-log(1 - f(|y_n|))) / (d - 1),

which is the certified tail bound used below (|log|1 + u|| <= -log(1 - |u|)).
The backward function is the same construction for H^-1 on V-_R, where
x_{k+1} = x_k^d (1 + u_k) / a contributes the exact shift -log|a| / (d - 1).
"""

from __future__ import annotations

import enum
import math
from dataclasses import asdict, dataclass

from .arith import bits_of, extended, is_finite, is_mp, log_abs
from .core import ComplexPair, HenonMap, escape_radius
from .errors import HenonError

DEFAULT_BUDGET = 10_000
DEFAULT_TOL = 1e-10
_LIFT_AT = 1e100


@dataclass(frozen=True)
class GreenEstimate:
    value: float
    error_bound: float | None
    iterations: int
    escaped: bool
    status: str = "escaped"

    def __post_init__(self):
        if self.escaped and not (self.value > 0 and self.error_bound is not None and math.isfinite(self.error_bound)):
            raise ValueError("escaped estimates need a positive value and a finite bound")

    @property
    def lower(self) -> float:
        return self.value - (self.error_bound or 0.0)

    @property
    def upper(self) -> float:
        return self.value + (self.error_bound or 0.0)

    def to_json(self) -> dict:
        return asdict(self)

    @classmethod
    def from_json(cls, data: dict) -> "GreenEstimate":
        return cls(**data)


def _majorant(r: float, d: int, coeff_sum: float, cross: float) -> float:
    # (A r^{d-2} + cross r) / r^d, written to stay finite for huge r
    return coeff_sum / (r * r) + cross * r ** (1 - d)


def tail_bound(r: float, d: int, coeff_sum: float, cross: float) -> float:
    """Bound on sum_{k>=0} d^-(k+1) |log|1 + u_k|| for an orbit starting at |y| = r in V+."""
    f = _majorant(r, d, coeff_sum, cross)
    if f >= 1.0:
        return math.inf
    return -math.log1p(-f) / (d - 1)


def _lift(x, y):
    return extended(x), extended(y)


def _green(hmap: HenonMap, z: ComplexPair, tol: float, budget: int, backward: bool) -> GreenEstimate:
    if tol <= 0:
        raise ValueError("tol must be positive")
    d = hmap.d
    radius = escape_radius(hmap)
    coeff_sum = hmap.p.coeff_abs_sum
    if backward:
        step, cross = hmap.step_inverse, 1.0
        shift = math.log(abs(hmap.a_num)) / (d - 1)
    else:
        step, cross = hmap.step, abs(hmap.a_num)
        shift = 0.0
    x, y = z.x, z.y
    eps = 2.0 ** (1 - bits_of(x))
    scale = 1.0
    for n in range(budget + 1):
        lead, other = (x, y) if backward else (y, x)
        r_lead = float(abs(lead))
        if r_lead >= radius and r_lead >= float(abs(other)):
            tail = tail_bound(r_lead, d, coeff_sum, cross) / scale
            if tail <= tol:
                value = (log_abs(lead) - shift) / scale
                if not value > 0:
                    # escaping only after so many steps that G+ underflows
                    return GreenEstimate(0.0, None, n, False, "undecided")
                rounding = 16.0 * (n + 1) * eps * (1.0 + abs(value))
                return GreenEstimate(value, tail + rounding, n, True)
        if n == budget:
            break
        if not is_mp(x) and max(abs(x.real), abs(x.imag), abs(y.real), abs(y.imag)) > _LIFT_AT:
            x, y = _lift(x, y)
        nx, ny = step(x, y)
        if not (is_finite(nx) and is_finite(ny)):
            if is_mp(x):
                raise HenonError("orbit-overflow", "extended iteration failed", last_index=n)
            x, y = _lift(x, y)
            nx, ny = step(x, y)
        x, y = nx, ny
        scale *= d
    if float(abs(x)) <= radius and float(abs(y)) <= radius:
        return GreenEstimate(0.0, None, budget, False, "bounded")
    return GreenEstimate(0.0, None, budget, False, "undecided")


def green_plus(hmap: HenonMap, z: ComplexPair, tol: float = DEFAULT_TOL, budget: int = DEFAULT_BUDGET) -> GreenEstimate:
    """G+(z) = lim d^-n log+|y_n| with a certified error bound <= tol (plus rounding).

    Orbits that stay in V_R u V-_R for the whole budget are reported as
    ``status="bounded"`` (value 0, no bound claimed); an orbit still out in V-
    when the budget runs out is ``"undecided"``.
    """
    return _green(hmap, z, tol, budget, backward=False)


def green_minus(hmap: HenonMap, z: ComplexPair, tol: float = DEFAULT_TOL, budget: int = DEFAULT_BUDGET) -> GreenEstimate:
    return _green(hmap, z, tol, budget, backward=True)


def radius_for_accuracy(hmap: HenonMap, eps: float) -> float:
    """Smallest R >= R0 (up to 1e-6 relative) with |G+ - log|y|| <= eps on V+_R."""
    d, coeff_sum, cross = hmap.d, hmap.p.coeff_abs_sum, abs(hmap.a_num)
    lo = escape_radius(hmap)
    if tail_bound(lo, d, coeff_sum, cross) <= eps:
        return lo
    hi = lo
    while tail_bound(hi, d, coeff_sum, cross) > eps:
        lo, hi = hi, hi * 2.0
    while hi - lo > 1e-6 * hi:
        mid = 0.5 * (lo + hi)
        if tail_bound(mid, d, coeff_sum, cross) > eps:
            lo = mid
        else:
            hi = mid
    return hi


class Membership(str, enum.Enum):
    K_PLUS = "K_plus"
    OMEGA_PRIME = "Omega_prime_interior"
    UNRESOLVED = "boundary_unresolved"
    OUTSIDE = "outside"


def classify_estimate(est: GreenEstimate, c: float) -> Membership:
    if est.status == "bounded":
        return Membership.K_PLUS
    if not est.escaped:
        return Membership.UNRESOLVED
    if est.lower >= c:
        return Membership.OUTSIDE
    if est.lower > 0 and est.upper < c:
        return Membership.OMEGA_PRIME
    return Membership.UNRESOLVED


def membership(hmap: HenonMap, z: ComplexPair, c: float, budget: int = DEFAULT_BUDGET, tol: float = DEFAULT_TOL) -> Membership:
    if c <= 0:
        raise ValueError("level must be positive")
    if budget < 1:
        raise ValueError("budget must be at least 1")
    return classify_estimate(green_plus(hmap, z, tol=tol, budget=budget), c)
