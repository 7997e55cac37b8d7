"""When are two sub-level sets {G+ < c1}, {G+ < c2} of one map biholomorphic?

Exactly when c1 / c2 is an integer power of d; H^n realises the map.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass
from decimal import Decimal
from fractions import Fraction
from numbers import Rational

from .core import ComplexPair, HenonMap, iterate
from .errors import HenonError
from .greens import DEFAULT_TOL, green_minus, green_plus
from .reports import Report

FLOAT_REL_TOL = 1e-12


def _as_exact(v) -> Fraction | None:
    if isinstance(v, bool):
        raise HenonError("bad-level", "boolean is not a level")
    if isinstance(v, (int, Rational)):
        return Fraction(v)
    if isinstance(v, Decimal):
        return Fraction(v)
    if isinstance(v, str):
        try:
            return Fraction(v.strip())
        except (ValueError, ZeroDivisionError) as exc:
            raise HenonError("bad-level", f"cannot parse level {v!r}") from exc
    return None


def _power_of(value: int, d: int) -> int | None:
    n = 0
    while value > 1 and value % d == 0:
        value //= d
        n += 1
    return n if value == 1 else None


def biholo_criterion(c1, c2, d: int) -> int | None:
    """n with c1 = c2 d^n, or None. Rational inputs are decided exactly."""
    if d < 2:
        raise HenonError("bad-level", "degree must be at least 2")
    e1, e2 = _as_exact(c1), _as_exact(c2)
    if e1 is not None and e2 is not None:
        if e1 <= 0 or e2 <= 0:
            raise HenonError("bad-level", "levels must be positive")
        r = e1 / e2
        if r.denominator == 1:
            return _power_of(r.numerator, d)
        if r.numerator == 1:
            n = _power_of(r.denominator, d)
            return -n if n is not None else None
        return None
    f1, f2 = float(c1), float(c2)
    if not (f1 > 0 and f2 > 0 and math.isfinite(f1) and math.isfinite(f2)):
        raise HenonError("bad-level", "levels must be positive and finite")
    n = round(math.log(f1 / f2) / math.log(d))
    if abs(f1 - f2 * float(d) ** n) <= FLOAT_REL_TOL * f1:
        return n
    return None


@dataclass(frozen=True)
class PairCertificate:
    i: int
    j: int
    ratio: str
    n: int | None

    def to_json(self) -> dict:
        return {"i": self.i, "j": self.j, "ratio": self.ratio, "n": self.n}


@dataclass(frozen=True)
class Family:
    c: object
    d: int
    levels: tuple
    certificates: tuple[PairCertificate, ...]

    @property
    def all_distinct(self) -> bool:
        return all(cert.n is None for cert in self.certificates)

    def to_json(self) -> dict:
        return {
            "c": str(self.c),
            "d": self.d,
            "levels": [str(v) for v in self.levels],
            "certificates": [cert.to_json() for cert in self.certificates],
            "pairwise_non_biholomorphic": self.all_distinct,
        }


def continuum_family(c, d: int, count: int) -> Family:
    """``count`` equally spaced levels strictly inside (c/d, c) with pairwise certificates."""
    if count < 2:
        raise ValueError("count must be at least 2")
    exact = _as_exact(c)
    base = exact if exact is not None else float(c)
    if not base > 0:
        raise HenonError("bad-level", "level must be positive")
    lo = base / d
    levels = tuple(lo + (base - lo) * Fraction(i, count + 1) if exact is not None
                   else lo + (base - lo) * i / (count + 1) for i in range(1, count + 1))
    certs = []
    for i in range(count):
        for j in range(i + 1, count):
            n = biholo_criterion(levels[i], levels[j], d)
            ratio = levels[i] / levels[j]
            certs.append(PairCertificate(i, j, str(ratio), n))
    return Family(base, d, levels, tuple(certs))


def involution_map() -> HenonMap:
    return HenonMap.make(2, (0,), 1)


def involution_check(points=None, samples: int = 1000, seed: int = 0, box: float = 3.0,
                     tol: float = DEFAULT_TOL, budget: int = 2000) -> Report:
    """G+(x, y) against G-(y, x) for H = (y, y^2 - x), where swapping x and y conjugates H to H^-1."""
    hmap = involution_map()
    if points is None:
        rng = random.Random(seed)
        points = [ComplexPair(complex(rng.uniform(-box, box), rng.uniform(-box, box)),
                              complex(rng.uniform(-box, box), rng.uniform(-box, box))) for _ in range(samples)]
    worst, worst_ratio, mismatched, compared = 0.0, 0.0, 0, 0
    for z in points:
        gp = green_plus(hmap, z, tol=tol, budget=budget)
        gm = green_minus(hmap, ComplexPair(z.y, z.x), tol=tol, budget=budget)
        if gp.escaped and gm.escaped:
            compared += 1
            gap = abs(gp.value - gm.value)
            worst = max(worst, gap)
            worst_ratio = max(worst_ratio, gap / (gp.error_bound + gm.error_bound))
        elif gp.escaped != gm.escaped and "undecided" not in (gp.status, gm.status):
            mismatched += 1
    return Report("G+(x,y) = G-(y,x)", worst_ratio <= 1.0 and mismatched == 0, worst, 2 * tol, len(points),
                  {"escaping_compared": compared, "status_mismatches": mismatched, "worst_gap_over_bound": worst_ratio})


def level_transport_check(hmap: HenonMap, c2: float, n: int, points) -> Report:
    """Points with G+ < c2 land in G+ < c2 d^n under H^n (n >= 0)."""
    if n < 0:
        raise ValueError("n must be nonnegative")
    bad, used, worst = 0, 0, 0.0
    for z in points:
        est = green_plus(hmap, z)
        if not (est.escaped and est.upper < c2):
            continue
        used += 1
        img = green_plus(hmap, iterate(hmap, z, n))
        if not img.escaped:
            continue
        worst = max(worst, img.lower - c2 * hmap.d**n)
        if img.lower >= c2 * hmap.d**n:
            bad += 1
    return Report(f"H^{n} maps G+ < {c2} into G+ < {c2 * hmap.d ** n}", bad == 0, max(worst, 0.0), 0.0, used)
