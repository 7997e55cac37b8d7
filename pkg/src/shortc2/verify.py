"""Invariant batteries. Each check returns a Report; suites bundle them."""

from __future__ import annotations

import math
import random
from dataclasses import dataclass
from fractions import Fraction

from .affine import (DiagonalSym, affine_preservers, green_invariance, verify_commute_H2,
                     verify_L_semiconjugacy)
from .biholo import biholo_criterion, continuum_family, involution_check
from .boettcher import winding_class
from .core import ComplexPair, HenonMap, apply, escape_radius
from .dyadic import DyadicClass
from .errors import HenonError
from .greens import green_minus, green_plus, radius_for_accuracy
from .modelspace import (DeckTransform, ModelAut, model_aut_normalizes_deck, verify_comm_cover,
                         verify_deck_group_law, verify_g_chain, verify_integer_deck_identity)
from .reports import Report, combine
from .topology import canonical_loop, pull_back_loop, push_forward

SUITES = ("green", "affine", "model", "winding", "bihol", "involution")


@dataclass(frozen=True)
class VerifyConfig:
    seed: int = 0
    samples: int = 1000
    tol: float = 1e-8
    max_n: int = 6
    box: float = 3.0


def random_points(rng: random.Random, count: int, box: float) -> list[ComplexPair]:
    return [ComplexPair(complex(rng.uniform(-box, box), rng.uniform(-box, box)),
                        complex(rng.uniform(-box, box), rng.uniform(-box, box))) for _ in range(count)]


def escaping_points(hmap: HenonMap, rng: random.Random, count: int, box: float, budget: int = 500) -> list[ComplexPair]:
    out = []
    while len(out) < count:
        for z in random_points(rng, count, box):
            if green_plus(hmap, z, budget=budget).escaped:
                out.append(z)
                if len(out) == count:
                    break
    return out


def check_functional_equation(hmap: HenonMap, points, tol: float = 1e-8) -> Report:
    """|G+(H z) - d G+(z)| against the bound of G+(H z) plus d times the bound of G+(z)."""
    d = hmap.d
    worst, ratio, used = 0.0, 0.0, 0
    for z in points:
        g0 = green_plus(hmap, z, tol=tol)
        g1 = green_plus(hmap, apply(hmap, z), tol=tol)
        if not (g0.escaped and g1.escaped):
            continue
        used += 1
        gap = abs(g1.value - d * g0.value)
        worst = max(worst, gap)
        ratio = max(ratio, gap / (g1.error_bound + d * g0.error_bound))
    return Report(f"G+ o H = {d} G+", ratio <= 1.0 and used > 0, worst, tol, used, {"worst_gap_over_bound": ratio})


def check_log_y_accuracy(hmap: HenonMap, rng: random.Random, count: int, eps: float = 1e-3) -> Report:
    """On V+_{R_eps}: |G+ - log|y|| <= eps."""
    radius = radius_for_accuracy(hmap, eps)
    worst = 0.0
    for _ in range(count):
        r = radius * math.exp(rng.uniform(0, 3))
        y = r * complex(math.cos(t := rng.uniform(0, 2 * math.pi)), math.sin(t))
        x = rng.uniform(0, 1) * r * complex(math.cos(s := rng.uniform(0, 2 * math.pi)), math.sin(s))
        est = green_plus(hmap, ComplexPair(x, y), tol=1e-12)
        worst = max(worst, abs(est.value - math.log(r)) - est.error_bound)
    return Report(f"|G+ - log|y|| <= {eps} on V+_R_eps", worst <= eps, max(worst, 0.0), eps, count,
                  {"R_eps": radius})


def check_swap_symmetry(hmap: HenonMap, points, tol: float = 1e-8) -> Report:
    """G+(x, y) = G-(y, x) (holds when a = 1)."""
    worst, ratio, used = 0.0, 0.0, 0
    for z in points:
        gp = green_plus(hmap, z, tol=tol)
        gm = green_minus(hmap, ComplexPair(z.y, z.x), tol=tol)
        if gp.escaped and gm.escaped:
            used += 1
            gap = abs(gp.value - gm.value)
            worst = max(worst, gap)
            ratio = max(ratio, gap / (gp.error_bound + gm.error_bound))
    return Report("G+(x,y) = G-(y,x)", ratio <= 1.0, worst, tol, used, {"worst_gap_over_bound": ratio})


def green_suite(hmap: HenonMap, cfg: VerifyConfig) -> list[Report]:
    rng = random.Random(cfg.seed)
    pts = escaping_points(hmap, rng, cfg.samples, cfg.box)
    out = [check_functional_equation(hmap, pts, cfg.tol), check_log_y_accuracy(hmap, rng, min(cfg.samples, 200))]
    for sym in affine_preservers(hmap).elements[1:]:
        out.append(green_invariance(hmap, sym, pts, cfg.tol))
    if hmap.d == 2 and hmap.a == 1 and hmap.p.is_pure_power():
        out.append(check_swap_symmetry(hmap, pts, cfg.tol))
    return out


def affine_suite(hmap: HenonMap, cfg: VerifyConfig) -> list[Report]:
    group = affine_preservers(hmap)
    n = hmap.d**2 - 1
    out = [Report("preservers form a subgroup", (n % group.order == 0) and len(group.elements) == group.order,
                  0.0, 0.0, len(group.elements), group.to_json())]
    for sym in group.elements:
        if hmap.p.is_pure_power():
            out.append(verify_L_semiconjugacy(hmap, sym.exponent))
        out.append(verify_commute_H2(hmap, sym, samples=min(cfg.samples, 1000), seed=cfg.seed))
    return out


def model_suite(hmap: HenonMap, cfg: VerifyConfig) -> list[Report]:
    if hmap.d not in (2, 3):
        return [Report("model space", True, 0.0, 0.0, 0, {"skipped": "Q is tabulated only for d in (2, 3)"})]
    out = [verify_integer_deck_identity(hmap, seed=cfg.seed)]
    out.append(verify_deck_group_law(hmap, cfg.max_n, cfg.samples, cfg.seed))
    for n in range(1, cfg.max_n + 1):
        out.append(verify_comm_cover(hmap, n, 0, cfg.samples, cfg.seed + n))
    out.append(verify_comm_cover(hmap, 1, 2, cfg.samples, cfg.seed))
    for n in (1, 2, 3):
        out.append(verify_g_chain(hmap, n, min(cfg.samples, 100), cfg.seed))
    if hmap.p.is_pure_power():
        d = hmap.d
        for s in range(d * d - 1):
            aut = ModelAut(d, s, complex(0.5, -0.25))
            out.append(model_aut_normalizes_deck(hmap, aut, DeckTransform.of(1, 1, d), 50, cfg.seed))
    return out


def winding_suite(hmap: HenonMap, cfg: VerifyConfig) -> list[Report]:
    d = hmap.d
    out = []
    base = canonical_loop(hmap, 1)
    got = winding_class(hmap, base)
    out.append(Report("class of C0 is 1", got == DyadicClass(1, 0, d), float(abs(got.as_fraction() - 1)), 0.0, 1,
                      {"class": got.to_json()}))
    for m in (2, -1, -2):
        got = winding_class(hmap, canonical_loop(hmap, m))
        out.append(Report(f"class of C0 traversed {m} times", got == DyadicClass(m, 0, d),
                          float(abs(got.as_fraction() - m)), 0.0, 1, {"class": got.to_json()}))
    for n in range(1, cfg.max_n + 1):
        loop = pull_back_loop(hmap, base, n)
        got = winding_class(hmap, loop)
        want = DyadicClass(1, n, d)
        out.append(Report(f"class of H^-{n}(C0) is 1/{d}^{n}", got == want,
                          float(abs(got.as_fraction() - want.as_fraction())), 0.0, len(loop), {"class": got.to_json()}))
    half = pull_back_loop(hmap, base, 1)
    joined = half.then(half)
    got = winding_class(hmap, joined)
    want = DyadicClass(2, 1, d)
    out.append(Report("additivity under concatenation", got == want,
                      float(abs(got.as_fraction() - want.as_fraction())), 0.0, len(joined), {"class": got.to_json()}))
    got = winding_class(hmap, half.reversed())
    out.append(Report("orientation reversal negates", got == DyadicClass(-1, 1, d),
                      float(abs(got.as_fraction() + Fraction(1, d))), 0.0, len(half), {"class": got.to_json()}))
    pushed = push_forward(hmap, half, 1)
    got = winding_class(hmap, pushed)
    out.append(Report("push-forward multiplies by d", got == DyadicClass(1, 0, d),
                      float(abs(got.as_fraction() - 1)), 0.0, len(pushed), {"class": got.to_json()}))
    return out


def bihol_suite(hmap: HenonMap, cfg: VerifyConfig) -> list[Report]:
    d = hmap.d
    out = []
    bad = []
    for n in range(-5, 6):
        c2 = Fraction(3, 7)
        c1 = c2 * Fraction(d) ** n
        got = biholo_criterion(c1, c2, d)
        if got != n:
            bad.append(n)
        if biholo_criterion(c2, c1, d) != -n:
            bad.append(-n)
    out.append(Report("criterion recovers n for |n| <= 5", not bad, float(len(bad)), 0.0, 11, {"failures": bad}))
    neg = biholo_criterion(3 if d != 3 else 5, 1, d)
    out.append(Report("non-power ratio gives none", neg is None, 0.0, 0.0, 1))
    fam = continuum_family(2, d, 10)
    out.append(Report("continuum family pairwise non-biholomorphic", fam.all_distinct, 0.0, 0.0,
                      len(fam.certificates), {"levels": [str(v) for v in fam.levels]}))
    return out


def involution_suite(hmap: HenonMap, cfg: VerifyConfig) -> list[Report]:
    return [involution_check(samples=cfg.samples, seed=cfg.seed)]


_SUITE_FUNCS = {
    "green": green_suite,
    "affine": affine_suite,
    "model": model_suite,
    "winding": winding_suite,
    "bihol": bihol_suite,
    "involution": involution_suite,
}


def run_suite(name: str, hmap: HenonMap, cfg: VerifyConfig | None = None) -> dict:
    cfg = cfg or VerifyConfig()
    names = SUITES if name == "all" else (name,)
    reports: list[Report] = []
    for n in names:
        if n not in _SUITE_FUNCS:
            raise HenonError("invalid-input", f"unknown suite {n!r}; choose from {', '.join(('all',) + SUITES)}")
        for rep in _SUITE_FUNCS[n](hmap, cfg):
            reports.append(Report(f"{n}: {rep.name}", rep.passed, rep.max_error, rep.tolerance, rep.samples, rep.details))
    return combine(name, reports)


__all__ = ["SUITES", "VerifyConfig", "run_suite", "escape_radius", "DiagonalSym"]
