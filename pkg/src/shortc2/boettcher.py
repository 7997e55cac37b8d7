"""Böttcher coordinate, branch-tracked continuation of log phi+, and loop classes.

Away from V+ the coordinate is reached through the functional equation
log phi+(z) = d^-n log phi+(H^n z) (mod 2 pi i / d^n): every sample of a path is
pushed forward to its own level n, where the principal value is computed from
the product formula. Consecutive samples are then compared at the larger of
their two levels; the imaginary part of that difference is read modulo 2 pi and
must lie strictly inside (-pi/2, pi/2), otherwise the segment is bisected.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .arith import extended, is_finite, is_mp, log_abs, principal_log
from .core import ComplexPair, HenonMap, escape_radius
from .dyadic import DyadicClass
from .errors import HenonError
from .greens import DEFAULT_BUDGET, Membership, classify_estimate, green_plus, tail_bound

TWO_PI = 2.0 * math.pi
MAX_DEPTH = 24
_LIFT_AT = 1e100


@dataclass(frozen=True)
class SampledPath:
    points: tuple[ComplexPair, ...]
    refinement_tol: float = 0.25

    def __post_init__(self):
        pts = tuple(p if isinstance(p, ComplexPair) else ComplexPair(*p) for p in self.points)
        if len(pts) < 2:
            raise ValueError("a path needs at least two samples")
        object.__setattr__(self, "points", pts)

    @property
    def start(self) -> ComplexPair:
        return self.points[0]

    @property
    def end(self) -> ComplexPair:
        return self.points[-1]

    @property
    def is_loop(self) -> bool:
        return self.points[0] == self.points[-1]

    def reversed(self) -> "SampledPath":
        return SampledPath(self.points[::-1], self.refinement_tol)

    def then(self, other: "SampledPath") -> "SampledPath":
        if self.end != other.start:
            raise ValueError("paths do not join")
        return SampledPath(self.points + other.points[1:], min(self.refinement_tol, other.refinement_tol))

    def repeated(self, m: int) -> "SampledPath":
        if not self.is_loop or m < 1:
            raise ValueError("only loops can be repeated, m >= 1")
        out = self
        for _ in range(m - 1):
            out = out.then(self)
        return out

    def __len__(self) -> int:
        return len(self.points)


@dataclass(frozen=True)
class BranchValue:
    log_phi: complex


@dataclass(frozen=True)
class PhiValue:
    log_value: complex
    truncation_bound: float
    terms: int

    @property
    def value(self) -> complex:
        return cmath.exp(self.log_value)


def _q_term(hmap: HenonMap, x, y):
    """q(x, y) = p(y) - y^d - a x, so that y_1 = y^d (1 + q / y^d)."""
    acc = 0
    for c in hmap.p.horner:
        acc = acc * y + c
    return acc - hmap.a_num * x


def _in_vplus(x, y, radius: float) -> bool:
    ay = abs(y)
    return ay >= radius and ay >= abs(x)


def _log_phi_in_vplus(hmap: HenonMap, x, y, terms: int, stop_below: float = 1e-18) -> PhiValue:
    d = hmap.d
    radius = escape_radius(hmap)
    coeff_sum, cross = hmap.p.coeff_abs_sum, abs(hmap.a_num)
    total = principal_log(y)
    weight = 1.0
    bound = tail_bound(float(abs(y)), d, coeff_sum, cross)
    used = 0
    for j in range(terms):
        bound = tail_bound(float(abs(y)), d, coeff_sum, cross) * weight
        if bound < stop_below:
            break
        weight /= d
        u = _q_term(hmap, x, y) / y**d
        total += weight * principal_log(1 + u)
        used = j + 1
        if not is_mp(y) and abs(y) > _LIFT_AT:
            x, y = extended(x), extended(y)
        x, y = hmap.step(x, y)
    else:
        bound = tail_bound(float(abs(y)), d, coeff_sum, cross) * weight
    if not _in_vplus(x, y, radius):
        raise HenonError("not-in-Vplus", "orbit left V+; point was not in V+_R0")
    return PhiValue(total, bound, used)


def phi_plus(hmap: HenonMap, z: ComplexPair, terms: int = 60) -> PhiValue:
    """Truncated product y prod_j (1 + q(x_j, y_j)/y_j^d)^(1/d^(j+1)) with principal roots.

    Stops early once the certified remainder of log phi+ falls below 1e-18
    (the remaining factors are 1 to double precision).
    """
    if terms < 1:
        raise ValueError("terms must be at least 1")
    if not _in_vplus(z.x, z.y, escape_radius(hmap)):
        raise HenonError("not-in-Vplus", f"{z} is not in V+_R0")
    return _log_phi_in_vplus(hmap, z.x, z.y, terms)


@dataclass(frozen=True)
class _Sample:
    point: ComplexPair
    level: int
    log_phi: complex  # principal log phi+ at H^level(point)


def _lift_to_margin(hmap: HenonMap, z: ComplexPair, budget: int) -> tuple[int, object, object]:
    radius = escape_radius(hmap)
    margin = 2.0 * radius
    x, y = z.x, z.y
    for n in range(budget + 1):
        ay = abs(y)
        if ay >= margin and ay >= abs(x):
            return n, x, y
        if not is_mp(x) and max(abs(x), ay) > _LIFT_AT:
            x, y = extended(x), extended(y)
        x, y = hmap.step(x, y)
        if not (is_finite(x) and is_finite(y)):
            raise HenonError("orbit-overflow", "push-forward overflowed", last_index=n)
    raise HenonError("path-leaves-Uplus", f"{z} did not reach V+ within {budget} steps")


def _sample(hmap: HenonMap, z: ComplexPair, budget: int) -> _Sample:
    n, x, y = _lift_to_margin(hmap, z, budget)
    return _Sample(z, n, _log_phi_in_vplus(hmap, x, y, 200).log_value)


def _midpoint(p: ComplexPair, q: ComplexPair) -> ComplexPair:
    return ComplexPair((p.x + q.x) / 2, (p.y + q.y) / 2)


def _reduce_angle(t: float) -> float:
    return math.remainder(t, TWO_PI)


@dataclass
class Continuation:
    """Accumulated change of log phi+ along a path plus per-step records.

    ``steps`` holds (level m, reduced Im difference at level m) so that the
    exact winding can be assembled at a common level afterwards.
    """

    delta: complex = 0j
    steps: list = field(default_factory=list)
    samples: int = 0
    max_abs_step: float = 0.0
    start: _Sample | None = None
    end: _Sample | None = None


def _step_value(d: int, a: _Sample, b: _Sample) -> tuple[int, float, float]:
    m = max(a.level, b.level)
    diff = b.log_phi * d ** (m - b.level) - a.log_phi * d ** (m - a.level)
    return m, diff.real, _reduce_angle(diff.imag)


def track(hmap: HenonMap, path: SampledPath, budget: int = DEFAULT_BUDGET,
          step_bound: float = math.pi / 2, max_depth: int = MAX_DEPTH) -> Continuation:
    d = hmap.d
    out = Continuation()
    cur = _sample(hmap, path.points[0], budget)
    out.start = cur
    out.samples = 1
    for q in path.points[1:]:
        nxt = _sample(hmap, q, budget)
        out.samples += 1
        # depth-first bisection of the segment cur -> nxt
        stack = [(nxt, 0)]
        while stack:
            target, depth = stack[-1]
            m, re, im = _step_value(d, cur, target)
            if abs(im) >= step_bound:
                if depth >= max_depth:
                    raise HenonError("path-too-wild", f"step bound not met after {max_depth} bisections")
                mid = _sample(hmap, _midpoint(cur.point, target.point), budget)
                out.samples += 1
                stack.append((mid, depth + 1))
                continue
            stack.pop()
            out.delta += complex(re, im) / d**m
            out.steps.append((m, im))
            out.max_abs_step = max(out.max_abs_step, abs(im))
            cur = target
    out.end = cur
    return out


def _check_uplus(hmap: HenonMap, path: SampledPath, c: float | None, budget: int):
    for p in path.points:
        est = green_plus(hmap, p, tol=1e-10, budget=budget)
        if c is None:
            if not (est.escaped and est.lower > 0):
                raise HenonError("path-leaves-Uplus", f"{p} is not certified in U+")
            continue
        tag = classify_estimate(est, c)
        if tag is Membership.OMEGA_PRIME:
            continue
        if tag is Membership.OUTSIDE:
            raise HenonError("path-leaves-level", f"{p} has G+ >= {c}")
        raise HenonError("path-leaves-Uplus", f"{p} is not certified in 0 < G+ < {c}")


def continue_log_phi(hmap: HenonMap, path: SampledPath, seed: BranchValue,
                     budget: int = DEFAULT_BUDGET, check: bool = True) -> BranchValue:
    """Analytically continue log phi+ from ``seed`` (at path start) to the path end."""
    if check:
        _check_uplus(hmap, path, None, budget)
    cont = track(hmap, path, budget)
    start_green = cont.start.log_phi.real / hmap.d**cont.start.level
    if abs(seed.log_phi.real - start_green) > 1e-6 * max(1.0, abs(start_green)):
        raise HenonError("seed-inconsistent", "Re(seed) does not match G+ at the path start")
    return BranchValue(seed.log_phi + cont.delta)


def default_base(hmap: HenonMap) -> ComplexPair:
    return ComplexPair(0, 2.0 * escape_radius(hmap))


def hat_phi(hmap: HenonMap, path: SampledPath, c: float, base: ComplexPair | None = None,
            budget: int = DEFAULT_BUDGET) -> complex:
    """phi+(a) exp(integral of d log phi+ along the path), a the base point."""
    base = base or default_base(hmap)
    if path.start != base:
        raise ValueError("path must start at the base point")
    _check_uplus(hmap, path, c, budget)
    seed = phi_plus(hmap, base).log_value
    cont = track(hmap, path, budget)
    return cmath.exp(seed + cont.delta)


def winding_class(hmap: HenonMap, loop: SampledPath, c: float | None = None,
                  budget: int = DEFAULT_BUDGET) -> DyadicClass:
    """(1 / 2 pi i) times the integral of d log phi+ around the loop, as k/d^n."""
    if not loop.is_loop:
        raise ValueError("winding_class needs a closed loop")
    if c is not None:
        _check_uplus(hmap, loop, c, budget)
    d = hmap.d
    step_bound = math.pi / 2
    for _ in range(4):
        cont = track(hmap, loop, budget, step_bound=step_bound)
        top = max(m for m, _ in cont.steps)
        turns = sum(im * d ** (top - m) for m, im in cont.steps) / TWO_PI
        k = round(turns)
        if abs(turns - k) < 0.25:
            return DyadicClass(k, top, d)
        step_bound /= 2
    raise HenonError("path-too-wild", f"winding drift {abs(turns - k):.3f} turns")
