import math
import random

import mpmath
import pytest
from hypothesis import given
from hypothesis import strategies as st

from shortc2.core import ComplexPair, HenonMap, apply
from shortc2.greens import (GreenEstimate, Membership, classify_estimate, green_minus, green_plus, membership,
                            radius_for_accuracy, tail_bound)


def raw_green_oracle(d, q, a, x, y, steps=40, dps=60):
    """d^-n log|y_n| after ``steps`` iterations, in mpmath's unbounded exponent range."""
    with mpmath.workdps(dps):
        x, y = mpmath.mpc(x), mpmath.mpc(y)
        for _ in range(steps):
            p = y**d + sum(c * y**i for i, c in enumerate(q))
            x, y = y, p - a * x
        return float(mpmath.log(abs(y)) / mpmath.mpf(d) ** steps)


def test_fixed_point_is_bounded(quad):
    est = green_plus(quad, ComplexPair(0, 0))
    assert est.value == 0 and not est.escaped and est.status == "bounded"
    assert est.error_bound is None
    assert green_minus(quad, ComplexPair(0, 0)).value == 0


def test_value_at_0_4_matches_raw_oracle(quad):
    est = green_plus(quad, ComplexPair(0, 4))
    want = raw_green_oracle(2, [0], 1, 0, 4)
    assert est.escaped
    assert est.value == pytest.approx(1.3823, abs=1e-4)
    assert abs(est.value - want) <= max(est.error_bound, 1e-6)
    assert est.error_bound <= 1e-6


@pytest.mark.parametrize("pt", [(0.5 + 1j, 2 - 1j), (-1, 3j), (2.5, 2.5)])
def test_random_points_match_raw_oracle(pt):
    h = HenonMap.make(3, (0.5, -0.25j), 0.8)
    est = green_plus(h, ComplexPair(*pt))
    want = raw_green_oracle(3, [0.5, -0.25j], 0.8, *pt, steps=30)
    assert est.escaped and abs(est.value - want) <= est.error_bound + 1e-12


@pytest.mark.parametrize("y", [4, 4j, 2.5 - 1j])
def test_minus_of_swapped_point(quad, y):
    assert green_minus(quad, ComplexPair(y, 0)).value == pytest.approx(green_plus(quad, ComplexPair(0, y)).value,
                                                                       abs=1e-9)


def test_membership_examples(quad):
    assert membership(quad, ComplexPair(0, 0), 1) is Membership.K_PLUS
    assert membership(quad, ComplexPair(0, 4), 2) is Membership.OMEGA_PRIME
    assert membership(quad, ComplexPair(0, 4), 1) is Membership.OUTSIDE


def test_undecided_is_never_zero(quad):
    # out in V+ but the budget ends before the tail is small enough
    est = green_plus(quad, ComplexPair(0, 5), budget=1)
    assert est.status == "undecided" and not est.escaped
    assert classify_estimate(est, 1.0) is Membership.UNRESOLVED
    # stuck inside V for the whole budget: reported as bounded, value 0, no bound claimed
    slow = green_plus(quad, ComplexPair(0, 1.0001), budget=1)
    assert slow.status == "bounded" and slow.error_bound is None


def test_estimate_json_round_trip(quad):
    est = green_plus(quad, ComplexPair(1, 2))
    assert GreenEstimate.from_json(est.to_json()) == est
    assert set(est.to_json()) >= {"value", "error_bound", "iterations", "escaped"}


def test_tail_bound_shrinks_with_radius():
    a, b = tail_bound(10.0, 2, 0.0, 1.0), tail_bound(100.0, 2, 0.0, 1.0)
    assert 0 < b < a


def test_radius_for_accuracy_certifies_its_own_eps(quad):
    for eps in (1e-2, 1e-3, 1e-6):
        r = radius_for_accuracy(quad, eps)
        assert r >= 4
        rng = random.Random(1)
        for _ in range(50):
            y = r * math.exp(rng.uniform(0, 2)) * complex(math.cos(t := rng.uniform(0, 6.3)), math.sin(t))
            x = rng.uniform(0, 1) * abs(y) * complex(math.cos(s := rng.uniform(0, 6.3)), math.sin(s))
            est = green_plus(quad, ComplexPair(x, y), tol=1e-12)
            assert abs(est.value - math.log(abs(y))) <= eps + est.error_bound


def test_ray_is_monotone(quad):
    vals = [green_plus(quad, ComplexPair(0, 4 + 0.25 * i)).value for i in range(17)]
    assert all(b > a for a, b in zip(vals, vals[1:]))


box = st.floats(-3, 3)


@given(box, box, box, box)
def test_functional_equation_holds_within_bounds(a, b, c, d):
    h = HenonMap.make(2, (0,), 1)
    z = ComplexPair(complex(a, b), complex(c, d))
    g0 = green_plus(h, z, budget=500)
    if not g0.escaped:
        return
    g1 = green_plus(h, apply(h, z))
    assert abs(g1.value - 2 * g0.value) <= g1.error_bound + 2 * g0.error_bound


@given(box, box, box, box)
def test_swap_identity(a, b, c, d):
    h = HenonMap.make(2, (0,), 1)
    gp = green_plus(h, ComplexPair(complex(a, b), complex(c, d)), budget=500)
    gm = green_minus(h, ComplexPair(complex(c, d), complex(a, b)), budget=500)
    if gp.escaped and gm.escaped:
        assert abs(gp.value - gm.value) <= gp.error_bound + gm.error_bound


def test_huge_point_uses_extended_range(quad):
    est = green_plus(quad, ComplexPair(0, 1e200))
    assert est.escaped and est.value == pytest.approx(math.log(1e200), rel=1e-6)
