import math
import random

import pytest

from shortc2.boettcher import SampledPath, winding_class
from shortc2.core import ComplexPair, HenonMap
from shortc2.dyadic import DyadicClass
from shortc2.errors import HenonError
from shortc2.greens import Membership, green_plus, membership
from shortc2.topology import (canonical_loop, certify_samples, connect_points, map_path, pull_back_loop,
                              push_forward)


def certify_oracle(hmap, path, c):
    for p in path.points:
        est = green_plus(hmap, p, tol=1e-10)
        assert est.escaped and est.lower > 0 and est.upper < c, p


def test_degenerate_path(quad):
    a = ComplexPair(0, 4)
    path = connect_points(quad, a, a, 2.0)
    assert path.points == (a, a)


def test_connect_0_4_to_0_4i(quad):
    a, b = ComplexPair(0, 4), ComplexPair(0, 4j)
    path = connect_points(quad, a, b, 2.0)
    assert path.start == a and path.end == b
    certify_oracle(quad, path, 2.0)


def test_connect_respects_vertical_bound(quad):
    a, b = ComplexPair(0, 4), ComplexPair(0, 6)
    path, info = connect_points(quad, a, b, 2.0, with_info=True)
    top = max(green_plus(quad, p, tol=1e-12).value for p in path.points)
    assert top <= green_plus(quad, b, tol=1e-12).value + 2 * info.eps / 2**info.n0 + 1e-9
    assert info.margin_factor == 4.0
    assert 2**info.n0 * (2.0 - 1.7) > 4 * info.eps


def test_connect_rejects_outside_endpoint(quad):
    with pytest.raises(HenonError) as exc:
        connect_points(quad, ComplexPair(0, 4), ComplexPair(0, 100), 2.0)
    assert exc.value.code == "endpoint-outside"


def test_connect_rejects_k_plus_endpoint(quad):
    with pytest.raises(HenonError) as exc:
        connect_points(quad, ComplexPair(0, 0), ComplexPair(0, 4), 2.0)
    assert exc.value.code in ("endpoint-outside", "endpoint-undecided")


def test_connect_random_pairs(quad):
    rng = random.Random(7)
    pts = []
    while len(pts) < 6:
        z = ComplexPair(complex(rng.uniform(-3, 3), rng.uniform(-3, 3)), complex(rng.uniform(-3, 3), rng.uniform(-3, 3)))
        if membership(quad, z, 2.0, budget=200) is Membership.OMEGA_PRIME:
            pts.append(z)
    for a, b in zip(pts[::2], pts[1::2]):
        path = connect_points(quad, a, b, 2.0)
        assert path.start == a and path.end == b
        certify_oracle(quad, path, 2.0)


def test_connect_cubic():
    h = HenonMap.make(3, (0, 0), 1)
    a, b = ComplexPair(0.5, 2 + 1j), ComplexPair(-1j, -2.5)
    path = connect_points(h, a, b, 3.0)
    certify_oracle(h, path, 3.0)


def test_canonical_loop_shape(quad):
    loop = canonical_loop(quad, 1)
    assert loop.is_loop
    radii = {round(abs(p.y), 12) for p in loop.points}
    assert radii == {4.75} and all(p.x == 0 for p in loop.points)
    assert len(set(canonical_loop(quad, 0).points)) == 1


def test_constant_loop_pulls_back_to_constant(quad):
    const = canonical_loop(quad, 0)
    pulled = pull_back_loop(quad, const, 2)
    assert len(set(pulled.points)) == 1
    assert winding_class(quad, pulled) == DyadicClass(0, 0, 2)


def test_pull_back_then_push_forward(quad):
    loop = canonical_loop(quad, 1)
    there = pull_back_loop(quad, loop, 2)
    back = push_forward(quad, there, 2)
    assert winding_class(quad, back) == DyadicClass(1, 0, 2)


def test_pull_back_divides_class_of_multiple_loop(quad):
    loop = canonical_loop(quad, -3)
    assert winding_class(quad, pull_back_loop(quad, loop, 2)) == DyadicClass(-3, 2, 2)


def test_map_path_zero_is_identity(quad):
    loop = canonical_loop(quad, 1)
    assert map_path(quad, loop, 0) is loop


def test_certify_samples_reports_max(quad):
    loop = canonical_loop(quad, 1)
    top = certify_samples(quad, loop, 2.0)
    assert top == pytest.approx(max(green_plus(quad, p).upper for p in loop.points), abs=1e-12)
    with pytest.raises(HenonError) as exc:
        certify_samples(quad, loop, 1.0)
    assert exc.value.code == "path-uncertified"
