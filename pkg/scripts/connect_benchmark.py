"""Time connect_points on random endpoint pairs in {0 < G+ < c} and report path statistics."""

import argparse
import random
import time

from shortc2.core import ComplexPair, HenonMap
from shortc2.greens import Membership, membership
from shortc2.topology import certify_samples, connect_points


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--pairs", type=int, default=20)
    ap.add_argument("--level", type=float, default=2.0)
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--box", type=float, default=3.0)
    args = ap.parse_args()
    h = HenonMap.make(2, (0,), 1)
    rng = random.Random(args.seed)
    pts = []
    while len(pts) < 2 * args.pairs:
        z = ComplexPair(*(complex(rng.uniform(-args.box, args.box), rng.uniform(-args.box, args.box)) for _ in range(2)))
        if membership(h, z, args.level, budget=200) is Membership.OMEGA_PRIME:
            pts.append(z)
    total = 0.0
    for i, (a, b) in enumerate(zip(pts[::2], pts[1::2])):
        t0 = time.perf_counter()
        path, info = connect_points(h, a, b, args.level, with_info=True)
        top = certify_samples(h, path, args.level)
        dt = time.perf_counter() - t0
        total += dt
        print(f"{i:3d} samples={len(path):6d} n0={info.n0} bits={info.bits:5d} max G+={top:.4f} {dt:.2f}s")
    print(f"total {total:.2f}s")


if __name__ == "__main__":
    main()
