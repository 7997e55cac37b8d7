"""Paths in the punctured sub-level set {0 < G+ < c}: connecting paths,
canonical loops, and pull-backs / push-forwards of sampled paths.

Pulling a path back through H^-n (or pushing a pulled-back path forward)
passes through heavy cancellation, so these routines work in mpmath with a
precision chosen from the magnitudes involved and only drop to doubles when
nothing is lost.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

from .arith import bits_of, log_abs, mp_context
from .boettcher import SampledPath, _midpoint, _sample, _step_value
from .core import ComplexPair, HenonMap, escape_radius
from .errors import HenonError
from .greens import DEFAULT_BUDGET, Membership, classify_estimate, green_plus, radius_for_accuracy

MAX_DEPTH = 24
DEFAULT_EPS = 1e-3
MARGIN_FACTOR = 4.0
# endpoints below this fraction of c are raised before the top-level join
LIFT_FRACTION = 0.5


def canonical_loop(hmap: HenonMap, m: int, radius: float | None = None, per_turn: int | None = None) -> SampledPath:
    """t -> (0, R' e^{2 pi i m t}); R' defaults to R0 + 3/4, inside V+_R0."""
    radius = radius if radius is not None else escape_radius(hmap) + 0.75
    base = ComplexPair(0, radius)
    if m == 0:
        return SampledPath((base, base))
    per_turn = per_turn or 16 * hmap.d
    total = per_turn * abs(m)
    sign = 1 if m > 0 else -1
    pts = [base]
    for j in range(1, total):
        pts.append(ComplexPair(0, radius * cmath.exp(sign * 2j * math.pi * j / per_turn)))
    pts.append(base)
    return SampledPath(tuple(pts))


def _max_log2(points) -> float:
    best = 0.0
    for p in points:
        for v in (p.x, p.y):
            if v != 0:
                best = max(best, log_abs(v) / math.log(2))
    return best


def _image(hmap: HenonMap, p: ComplexPair, n: int, ctx) -> ComplexPair:
    x, y = ctx.mpc(p.x), ctx.mpc(p.y)
    step = hmap.step if n >= 0 else hmap.step_inverse
    for _ in range(abs(n)):
        x, y = step(x, y)
    return ComplexPair(x, y)


def _far(p: ComplexPair, q: ComplexPair, tol: float) -> bool:
    gap = float(max(abs(p.x - q.x), abs(p.y - q.y)))
    size = float(min(max(abs(p.x), abs(p.y)), max(abs(q.x), abs(q.y))))
    return gap > tol * (1.0 + size)


def _adaptive(curve, params, tol: float) -> list[ComplexPair]:
    """Evaluate ``curve`` at ``params``, bisecting parameter intervals whose image is not short.

    An interval is accepted once both halves have short chords, which guards
    against aliasing when the image wraps around an integer number of times.
    """
    out = [curve(params[0])]
    for t0, t1 in zip(params, params[1:]):
        left_t, left_img = t0, out[-1]
        stack = [(t1, curve(t1), 0)]
        while stack:
            t, img, depth = stack[-1]
            tm = 0.5 * (left_t + t)
            mid = curve(tm)
            if _far(left_img, mid, tol) or _far(mid, img, tol):
                if depth >= MAX_DEPTH:
                    raise HenonError("path-too-wild", "refinement depth exceeded")
                stack.append((tm, mid, depth + 1))
                continue
            stack.pop()
            out.append(img)
            left_t, left_img = t, img
    return out


def _polyline(points):
    last = len(points) - 1

    def at(t: float) -> ComplexPair:
        i = min(int(math.floor(t)), last)
        s = t - i
        if s == 0:
            return points[i]
        p, q = points[i], points[i + 1]
        return ComplexPair(p.x + s * (q.x - p.x), p.y + s * (q.y - p.y))

    return at


def _maybe_float(points, bits_needed: int) -> tuple[ComplexPair, ...]:
    if bits_needed > 53 + 96:
        return tuple(points)
    return tuple(ComplexPair(complex(p.x), complex(p.y)) for p in points)


def map_path(hmap: HenonMap, path: SampledPath, n: int, tol: float | None = None) -> SampledPath:
    """Apply H^n (n may be negative) sample-wise, refining until image chords are short.

    Precision is chosen from the coarse image magnitudes: 2 bits per bit of
    magnitude plus a guard, never less than the precision the input carries.
    """
    tol = tol if tol is not None else path.refinement_tol
    if n == 0:
        return path
    coarse = mp_context(64)
    images = [_image(hmap, p, n, coarse) for p in path.points]
    magnitude = max(_max_log2(path.points), _max_log2(images))
    bits = 96 + 2 * int(math.ceil(magnitude))
    bits = max(bits, max(bits_of(p.x) for p in path.points) + 32)
    ctx = mp_context(bits)
    source = _polyline(path.points)
    refined = _adaptive(lambda t: _image(hmap, source(t), n, ctx), list(range(len(path.points))), tol)
    if path.is_loop:
        refined[-1] = refined[0]
    return SampledPath(_maybe_float(refined, bits), path.refinement_tol)


def pull_back_loop(hmap: HenonMap, loop: SampledPath, n: int, c: float | None = None,
                   budget: int = DEFAULT_BUDGET) -> SampledPath:
    """H^-n of a loop; its class in Z[1/d] is divided by d^n."""
    if n < 1:
        raise ValueError("n must be at least 1")
    if c is not None:
        certify_samples(hmap, loop, c, budget)
    if len(set(loop.points)) == 1:
        p = _image(hmap, loop.points[0], -n, mp_context(96 + 2 * int(_max_log2(loop.points)) + 64 * n))
        return SampledPath((p, p), loop.refinement_tol)
    return map_path(hmap, loop, -n)


def push_forward(hmap: HenonMap, path: SampledPath, n: int = 1) -> SampledPath:
    if n < 1:
        raise ValueError("n must be at least 1")
    return map_path(hmap, path, n)


def certify_samples(hmap: HenonMap, path: SampledPath, c: float, budget: int = DEFAULT_BUDGET) -> float:
    """Check 0 < G+ < c (with certified bounds) at every sample; returns the max G+ seen."""
    top = 0.0
    for p in path.points:
        est = green_plus(hmap, p, tol=1e-10, budget=budget)
        tag = classify_estimate(est, c)
        if tag is not Membership.OMEGA_PRIME:
            raise HenonError("path-uncertified", f"sample {p} is {tag.value}")
        top = max(top, est.upper)
    return top


@dataclass(frozen=True)
class ConnectInfo:
    n0: int
    eps: float
    radius: float
    margin_factor: float
    bits: int
    max_green: float


def _sigma_samples(a: ComplexPair, b: ComplexPair, ctx, log_step: float, angle_step: float, x_steps: int):
    """Samples of the three-leg path in V+ from a to b (|y(a)| <= |y(b)|).

    Leg 1 moves |y| geometrically from |y(a)| to |y(b)| while x shrinks linearly
    to 0, leg 2 turns arg y to arg y(b) on that circle with x = 0, leg 3 moves x
    linearly out to x(b). |y| never exceeds |y(b)| and |x| <= |y| throughout.
    """
    ra, rb = abs(a.y), abs(b.y)
    ta = ctx.arg(a.y)
    turn = ctx.mpf(math.remainder(float(ctx.arg(b.y) - ta), 2 * math.pi))
    log_ratio = ctx.log(rb / ra)
    out = [a]
    n1 = max(2, int(math.ceil(float(log_ratio) / log_step)))
    for j in range(1, n1 + 1):
        t = ctx.mpf(j) / n1
        out.append(ComplexPair((1 - t) * a.x, ra * ctx.exp(t * log_ratio) * ctx.expj(ta)))
    n2 = max(2, int(math.ceil(abs(float(turn)) / angle_step)))
    for j in range(1, n2 + 1):
        out.append(ComplexPair(ctx.mpc(0), rb * ctx.expj(ta + turn * j / n2)))
    for j in range(1, x_steps):
        out.append(ComplexPair(b.x * ctx.mpf(j) / x_steps, b.y))
    out.append(b)
    return out


def _far_moderate(p: ComplexPair, q: ComplexPair, tol: float) -> bool:
    if min(p.norm(), q.norm()) > 1e8:
        return False
    return _far(p, q, tol)


def _storable(p: ComplexPair) -> ComplexPair:
    if p.norm() < 2.0**26:
        return ComplexPair(complex(p.x), complex(p.y))
    return p


def _slice_derivative(hmap: HenonMap, z: ComplexPair, budget: int) -> complex:
    """d/dy of the local branch of log phi+ restricted to the line {x = x(z)}."""
    h = 1e-7 * (1.0 + abs(z.y))
    here = _sample(hmap, z, budget)
    there = _sample(hmap, ComplexPair(z.x, z.y + h), budget)
    m, re, im = _step_value(hmap.d, here, there)
    return complex(re, im) / hmap.d**m / h


def _ascend(hmap: HenonMap, z: ComplexPair, target: float, tol: float, budget: int) -> list[ComplexPair]:
    """Raise G+ to ``target`` along the gradient line of G+ in the slice {x = x(z)}.

    Newton steps dy = delta / L'(y) on the local holomorphic branch L of log phi+
    move Re L by delta and keep Im L fixed, so the samples follow a gradient
    line of G+ in that slice. The rise per step is capped at half the current value.
    """
    g = green_plus(hmap, z, tol=1e-12, budget=budget).value
    knots = [z]
    for _ in range(10_000):
        if abs(target - g) <= 1e-10 * max(1.0, target):
            break
        slope = _slice_derivative(hmap, z, budget)
        delta = max(-0.5 * g, min(target - g, 0.5 * g))
        for _ in range(60):
            dy = delta / slope
            if abs(dy) <= 0.5 * (1.0 + abs(z.y)):
                cand = ComplexPair(z.x, z.y + dy)
                est = green_plus(hmap, cand, tol=1e-12, budget=budget)
                if est.escaped and abs(est.value - g - delta) <= 0.25 * abs(delta):
                    break
            delta /= 2
        else:
            raise HenonError("path-too-wild", "gradient ascent stalled")
        z, g = cand, est.value
        knots.append(z)
    else:
        raise HenonError("path-too-wild", "gradient ascent did not converge")
    if len(knots) == 1:
        return knots
    line = _polyline(knots)
    return _adaptive(line, list(range(len(knots))), tol)


def _top_level_join(hmap: HenonMap, lo: ComplexPair, hi: ComplexPair, c: float, c1: float, eps: float,
                    r_eps: float, tol: float, log_step: float, angle_step: float) -> tuple[list, int, int]:
    """H^-n0 of the three-leg path joining H^n0(lo) and H^n0(hi) in V+_{R_eps}."""
    d = hmap.d
    probe = mp_context(64)
    n0 = 0
    pa = _image(hmap, lo, 0, probe)
    pb = _image(hmap, hi, 0, probe)
    while not (d**n0 * (c - c1) > MARGIN_FACTOR * eps and _in_vplus(pa, r_eps) and _in_vplus(pb, r_eps)):
        pa = ComplexPair(*hmap.step(pa.x, pa.y))
        pb = ComplexPair(*hmap.step(pb.x, pb.y))
        n0 += 1
        if n0 > 64:
            raise HenonError("path-too-wild", "no admissible push-forward level")
    flipped = abs(pa.y) > abs(pb.y)
    if flipped:
        lo, hi = hi, lo

    # coarse pass: magnitudes of the pulled-back legs fix the working precision
    coarse = _sigma_samples(_image(hmap, lo, n0, probe), _image(hmap, hi, n0, probe), probe, log_step, angle_step, 8)
    magnitude = max(_max_log2(coarse), _max_log2([_image(hmap, w, -n0, probe) for w in coarse]))
    bits = 128 + 2 * int(math.ceil(magnitude)) + 16 * n0
    ctx = mp_context(bits)
    top = _sigma_samples(_image(hmap, lo, n0, ctx), _image(hmap, hi, n0, ctx), ctx, log_step, angle_step, 8)

    def pulled(w: ComplexPair) -> ComplexPair:
        return _image(hmap, w, -n0, ctx)

    # H^-n0 expands directions transverse to the escaping tube by about 2^magnitude
    max_depth = MAX_DEPTH + int(math.ceil(magnitude))
    images = [pulled(w) for w in top]
    pts = [images[0]]
    for w0, w1, img in zip(top, top[1:], images[1:]):
        # refine where the pulled-back chord is long and still in the moderate region
        stack = [(w1, img, 0)]
        left = w0
        while stack:
            w, im, depth = stack[-1]
            if _far_moderate(pts[-1], im, tol):
                if depth >= max_depth:
                    raise HenonError("path-too-wild", "refinement depth exceeded")
                mid = _midpoint(left, w)
                stack.append((mid, pulled(mid), depth + 1))
                continue
            stack.pop()
            pts.append(im)
            left = w
    pts = [_storable(p) for p in pts]
    pts[0], pts[-1] = lo, hi
    if flipped:
        pts.reverse()
    return pts, n0, bits


def connect_points(hmap: HenonMap, a_pt: ComplexPair, b_pt: ComplexPair, c: float,
                   eps: float = DEFAULT_EPS, tol: float = 0.1, log_step: float = 0.5,
                   angle_step: float = math.pi / 16, budget: int = DEFAULT_BUDGET, with_info: bool = False):
    """A sampled path from A to B inside {0 < G+ < c}.

    Each endpoint whose value is below the working level g* = max(c1, c/2)
    (c1 the larger endpoint value) is first raised to g* along a gradient line
    of G+ in its x-slice. The two raised points are then pushed by the least
    H^n0 landing in V+_{R_eps} with d^n0 (c - g*) > 4 eps, joined there by a
    three-leg path whose |y| never exceeds the larger image's, and pulled back
    by H^-n0. Samples far from the origin after the pull-back are kept in
    extended precision. Every returned sample is certified.
    """
    if a_pt == b_pt:
        path = SampledPath((a_pt, a_pt))
        return (path, ConnectInfo(0, eps, 0.0, MARGIN_FACTOR, 53, 0.0)) if with_info else path
    greens = []
    for p in (a_pt, b_pt):
        est = green_plus(hmap, p, tol=1e-12, budget=budget)
        tag = classify_estimate(est, c)
        if tag is Membership.OUTSIDE:
            raise HenonError("endpoint-outside", f"{p} has G+ >= {c}")
        if tag is not Membership.OMEGA_PRIME:
            raise HenonError("endpoint-undecided", f"{p} is {tag.value}")
        greens.append(est)
    c1 = max(e.value for e in greens)
    level = max(c1, LIFT_FRACTION * c)
    r_eps = radius_for_accuracy(hmap, eps)

    rise_a = _ascend(hmap, a_pt, level, tol, budget) if greens[0].value < level else [a_pt]
    rise_b = _ascend(hmap, b_pt, level, tol, budget) if greens[1].value < level else [b_pt]
    top_c1 = max(green_plus(hmap, p, tol=1e-12, budget=budget).upper for p in (rise_a[-1], rise_b[-1]))
    middle, n0, bits = _top_level_join(hmap, rise_a[-1], rise_b[-1], c, top_c1, eps, r_eps, tol, log_step, angle_step)
    pts = rise_a[:-1] + middle + rise_b[-2::-1]
    pts[0], pts[-1] = a_pt, b_pt
    path = SampledPath(tuple(pts), tol)
    peak = certify_samples(hmap, path, c, budget)
    if with_info:
        return path, ConnectInfo(n0, eps, r_eps, MARGIN_FACTOR, bits, peak)
    return path


def _in_vplus(p: ComplexPair, radius: float) -> bool:
    ay = abs(p.y)
    return ay >= radius and ay >= abs(p.x)
