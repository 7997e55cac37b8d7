"""Acceptance suite: ten criteria at their stated tolerances and time limits.

Each criterion prints one PASS/FAIL line (visible with or without -s).
Run directly with ``python3 tests/test_acceptance.py`` for the summary alone.
"""

from __future__ import annotations

import io
import math
import random
import sys
import time
from fractions import Fraction
from pathlib import Path

import pytest

from shortc2.affine import DiagonalSym, affine_preservers, green_invariance
from shortc2.biholo import biholo_criterion, continuum_family, involution_check
from shortc2.boettcher import default_base, hat_phi, winding_class
from shortc2.cli import run
from shortc2.core import ComplexPair, HenonMap
from shortc2.dyadic import DyadicClass
from shortc2.greens import Membership, green_plus, membership
from shortc2.modelspace import (verify_comm_cover, verify_deck_group_law, verify_g_chain,
                                verify_integer_deck_identity)
from shortc2.topology import canonical_loop, certify_samples, connect_points, pull_back_loop
from shortc2.verify import check_functional_equation, escaping_points


def quad(a=1) -> HenonMap:
    return HenonMap.make(2, (0,), a)


def cubic() -> HenonMap:
    return HenonMap.make(3, (0, 0), 1)


def random_pair(rng: random.Random, box: float) -> ComplexPair:
    return ComplexPair(complex(rng.uniform(-box, box), rng.uniform(-box, box)),
                       complex(rng.uniform(-box, box), rng.uniform(-box, box)))


def sample_omega_prime(hmap, rng, c, count, box=3.0):
    out = []
    while len(out) < count:
        z = random_pair(rng, box)
        if membership(hmap, z, c, budget=200) is Membership.OMEGA_PRIME:
            out.append(z)
    return out


def criterion_1():
    t0 = time.perf_counter()
    reps = [check_functional_equation(h, escaping_points(h, random.Random(1), 1000, 3.0), tol=1e-8)
            for h in (quad(), cubic())]
    dt = time.perf_counter() - t0
    ok = all(r.passed and r.samples == 1000 for r in reps) and dt < 10
    worst = max(r.details["worst_gap_over_bound"] for r in reps)
    return ok, f"worst gap/bound {worst:.3g}, {dt:.2f}s (limit 10s)"


def criterion_2():
    t0 = time.perf_counter()
    cases = [((2, (0,)), 3), ((3, (0, 0)), 8), ((2, (1,)), 1), ((4, (0, 0, 1)), 1)]
    got = [affine_preservers(HenonMap.make(d, q, 1)).order for (d, q), _ in cases]
    dt = time.perf_counter() - t0
    ok = got == [want for _, want in cases] and dt < 1
    return ok, f"orders {got}, {dt:.3f}s (limit 1s)"


def criterion_3():
    t0 = time.perf_counter()
    omega = DiagonalSym(2, 1)
    reps = []
    for a in (1, 2j):
        h = quad(a)
        reps.append(green_invariance(h, omega, escaping_points(h, random.Random(3), 1000, 3.0), tol=1e-10))
    dt = time.perf_counter() - t0
    ok = all(r.passed and r.samples == 1000 for r in reps) and dt < 10
    worst = max(r.details["worst_gap_over_bound"] for r in reps)
    return ok, f"worst gap/bound {worst:.3g}, {dt:.2f}s (limit 10s)"


def criterion_4():
    t0 = time.perf_counter()
    maps = [HenonMap.make(2, (0,), 1), HenonMap.make(2, (0.5 - 0.25j,), 1),
            HenonMap.make(3, (0, 0), 1), HenonMap.make(3, (0.5, -1 + 0.5j), 1)]
    reps = []
    for h in maps:
        ident = verify_integer_deck_identity(h, samples=1000)
        reps.append(ident.passed and ident.max_error == 0.0)
        reps.append(verify_deck_group_law(h, 6, 1000, 0, tol=1e-12).passed)
        reps.extend(verify_comm_cover(h, n, 0, 1000, n, tol=1e-10).passed for n in range(1, 7))
        reps.extend(verify_g_chain(h, n, 1000, n, tol=1e-12).passed for n in range(1, 7))
    dt = time.perf_counter() - t0
    return all(reps) and dt < 30, f"{sum(reps)}/{len(reps)} checks, {dt:.2f}s (limit 30s)"


def criterion_5():
    t0 = time.perf_counter()
    results = []
    for d, h in ((2, quad()), (3, cubic())):
        c0 = canonical_loop(h, 1)
        results.append(winding_class(h, c0) == DyadicClass(1, 0, d))
        for n in range(1, 7):
            results.append(winding_class(h, pull_back_loop(h, c0, n)) == DyadicClass(1, n, d))
        half = pull_back_loop(h, c0, 1)
        quarter = pull_back_loop(h, c0, 2)
        a_half, a_quarter = winding_class(h, half), winding_class(h, quarter)
        results.append(winding_class(h, half.then(half)) == a_half + a_half)
        results.append(winding_class(h, quarter.repeated(3)) == a_quarter * 3)
        results.append(winding_class(h, c0.then(c0.reversed())) == DyadicClass(0, 0, d))
    dt = time.perf_counter() - t0
    return all(results) and dt < 30, f"{sum(results)}/{len(results)} exact classes, {dt:.2f}s (limit 30s)"


def criterion_6():
    h = quad()
    c = 3.0
    base = default_base(h)
    rng = random.Random(6)
    worst = 0.0
    for b in sample_omega_prime(h, rng, c, 100):
        path = connect_points(h, base, b, c)
        v = hat_phi(h, path, c)
        g = green_plus(h, b, tol=1e-12)
        worst = max(worst, abs(abs(v) - math.exp(g.value)))
    loop = pull_back_loop(h, canonical_loop(h, 1), 1)
    assert winding_class(h, loop) == DyadicClass(1, 1, 2)
    to_loop = connect_points(h, base, loop.start, c)
    target = sample_omega_prime(h, rng, c, 1)[0]
    path = connect_points(h, base, target, c)
    twisted = to_loop.then(loop).then(to_loop.reversed()).then(path)
    ratio_err = abs(hat_phi(h, twisted, c) / hat_phi(h, path, c) + 1)
    ok = worst <= 1e-5 and ratio_err <= 1e-6
    return ok, f"max ||phi|-e^G| {worst:.2e} (tol 1e-5), |ratio+1| {ratio_err:.2e} (tol 1e-6), c={c}"


def criterion_7():
    t0 = time.perf_counter()
    c2 = Fraction(5, 7)
    exact = all(biholo_criterion(c2 * Fraction(2) ** n, c2, 2) == n for n in range(-5, 6))
    none = biholo_criterion(3, 1, 2) is None
    fam = continuum_family(2, 2, 10)
    fam_ok = len(fam.certificates) == 45 and fam.all_distinct
    dt = time.perf_counter() - t0
    return exact and none and fam_ok and dt < 1, f"|n|<=5 {exact}, (3,1,2) none {none}, 45 pairs none {fam_ok}, {dt:.3f}s"


def criterion_8():
    t0 = time.perf_counter()
    rep = involution_check(samples=1000, seed=8)
    dt = time.perf_counter() - t0
    return rep.passed and dt < 10, (f"{rep.details['escaping_compared']} escaping compared, "
                                    f"worst gap/bound {rep.details['worst_gap_over_bound']:.3g}, {dt:.2f}s (limit 10s)")


def criterion_9():
    h = quad()
    c = 2.0
    pts = sample_omega_prime(h, random.Random(9), c, 40)
    t0 = time.perf_counter()
    top, samples = 0.0, 0
    for a, b in zip(pts[::2], pts[1::2]):
        path = connect_points(h, a, b, c)
        assert path.start == a and path.end == b
        top = max(top, certify_samples(h, path, c))
        samples += len(path)
    dt = time.perf_counter() - t0
    return dt < 60, f"20 paths, {samples} samples certified, max upper G+ {top:.4f} < {c}, {dt:.2f}s (limit 60s)"


def criterion_10(tmp: Path):
    args = ["render", "--nx", "48", "--ny", "32", "--bounds", "-2.5", "2.5", "-2.5", "2.5", "--workers", "2"]
    for sub in ("first", "second"):
        code = run(args + ["--out", str(tmp / sub)], stdout=io.StringIO(), stderr=io.StringIO())
        if code != 0:
            return False, f"render exited {code}"
    same = all((tmp / "first" / n).read_bytes() == (tmp / "second" / n).read_bytes()
               for n in ("render.csv", "render.pgm"))
    return same, "CSV and PGM byte-identical" if same else "outputs differ"


CRITERIA = {
    1: ("functional equation G+ o H = d G+", criterion_1),
    2: ("affine classification orders 3, 8, 1, 1", criterion_2),
    3: ("L_omega symmetry for a in {1, 2i}", criterion_3),
    4: ("lift / deck suite", criterion_4),
    5: ("winding classes as exact dyadics", criterion_5),
    6: ("covering coordinate modulus and class-1/2 sign", criterion_6),
    7: ("biholomorphism criterion", criterion_7),
    8: ("G+(x,y) = G-(y,x)", criterion_8),
    9: ("connect_points on 20 random pairs", criterion_9),
    10: ("render determinism", criterion_10),
}


def _line(num: int, ok: bool, detail: str) -> str:
    return f"CRITERION {num:2d} {'PASS' if ok else 'FAIL'}  {CRITERIA[num][0]}: {detail}"


def _evaluate(num: int, tmp: Path):
    fn = CRITERIA[num][1]
    try:
        return fn(tmp) if num == 10 else fn()
    except Exception as exc:  # a crash is a failure, reported on the same line
        return False, f"{type(exc).__name__}: {exc}"


@pytest.mark.parametrize("num", sorted(CRITERIA))
def test_criterion(num, tmp_path, capsys):
    ok, detail = _evaluate(num, tmp_path)
    with capsys.disabled():
        print("\n" + _line(num, ok, detail))
    assert ok, detail


if __name__ == "__main__":
    import tempfile
    failures = 0
    with tempfile.TemporaryDirectory() as tmp:
        for num in sorted(CRITERIA):
            ok, detail = _evaluate(num, Path(tmp) / str(num))
            failures += not ok
            print(_line(num, ok, detail), flush=True)
    sys.exit(1 if failures else 0)
